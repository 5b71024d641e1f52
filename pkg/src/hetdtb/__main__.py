from hetdtb.cli import main

main()
