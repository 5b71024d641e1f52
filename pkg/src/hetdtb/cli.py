"""Command-line front-end.

Exit codes: 0 success, 1 verification failure, 2 bad arguments.
Relative ``--out`` paths are resolved against ``$HETDTB_OUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from hetdtb import __version__
from hetdtb.analytics import corner_points, dtb_curve, dtb_optimal, fmt
from hetdtb.errors import HetDtbError, NotApplicable, NotCovered
from hetdtb.regimes import TIE_BREAK_ORDER, ChannelTriple, classify_regime, quantize_channel
from hetdtb.schemes import scheme_for
from hetdtb.search import brute_force_search
from hetdtb.sim import (
    build_decoders,
    check_decodability,
    decode,
    demands,
    random_files,
    recursive_reconstruct,
    simulate_delivery,
)
from hetdtb.verify import run_suite

OUT_DIR_ENV = "HETDTB_OUT_DIR"
CSV_HEADER = ["mu_num", "mu_den", "dtb_num", "dtb_den", "regime", "active_bounds"]
TIE_BREAK_NOTE = "tie-break: C1>C2>C3>C4; within classes " + ">".join(r.value for r in TIE_BREAK_ORDER)

_FRACTION_RE = re.compile(r"^\d+(/\d+)?$")


def exact_fraction(text: str) -> Fraction:
    if not _FRACTION_RE.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an exact fraction p/q, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError("zero denominator") from None


def int_range(text: str) -> tuple[int, int]:
    m = re.match(r"^(\d+)(?::(\d+))?$", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    return lo, hi


@dataclass(frozen=True)
class SweepSpec:
    nd: tuple[int, int]
    nr: tuple[int, int]
    ns: tuple[int, int]
    grid: int
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        for name in ("nd", "nr", "ns"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi <= 64:
                raise ValueError(f"{name} range must satisfy 1 <= lo <= hi <= 64")
        if not 1 <= self.grid <= 1024:
            raise ValueError("grid denominator must be in [1, 1024]")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    def channels(self):
        for nd in range(self.nd[0], self.nd[1] + 1):
            for nr in range(self.nr[0], self.nr[1] + 1):
                for ns in range(self.ns[0], self.ns[1] + 1):
                    yield ChannelTriple(nd, nr, ns)


def _channel(args) -> ChannelTriple:
    return ChannelTriple(args.nd, args.nr, args.ns)


def _row(n: ChannelTriple, mu: Fraction) -> dict:
    rep = dtb_optimal(mu, n)
    return {
        "mu_num": mu.numerator,
        "mu_den": mu.denominator,
        "dtb_num": rep.optimal.numerator,
        "dtb_den": rep.optimal.denominator,
        "regime": rep.regime.fine.value,
        "active_bounds": "|".join(rep.active_bound_ids),
    }


def _render(rows: list[dict], header: list[str], kind: str) -> str:
    if kind == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if not path.is_absolute() and os.environ.get(OUT_DIR_ENV):
        path = Path(os.environ[OUT_DIR_ENV]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_regime(args) -> int:
    n = _channel(args)
    lab = classify_regime(n)
    yn = {True: "yes", False: "no"}
    print(f"regime={lab.fine.value} class={lab.coarse} I0={yn[lab.in_I0]} I1={yn[lab.in_I1]}")
    print(TIE_BREAK_NOTE)
    return 0


def cmd_dtb(args) -> int:
    rep = dtb_optimal(args.mu, _channel(args))
    print(f"regime={rep.regime.fine.value} dtb={fmt(rep.optimal)} active={{{','.join(rep.active_bound_ids)}}}")
    for b in rep.bounds:
        print(f"{b.id}={fmt(b.value)} {'applicable' if b.applicable else 'inapplicable'}")
    print(f"lower_bound={fmt(rep.lower_bound)} tight={'yes' if rep.tight else 'NO'}")
    return 0 if rep.tight else 1


def cmd_curve(args) -> int:
    n = _channel(args)
    mus = [mu for mu, _ in corner_points(n)] if args.corners else [mu for mu, _ in dtb_curve(n, args.grid)]
    _emit(_render([_row(n, mu) for mu in mus], CSV_HEADER, args.format), args.out)
    return 0


def _sweep_rows(n: ChannelTriple, grid: int) -> list[dict]:
    return [{"n_d": n.n_d, "n_r": n.n_r, "n_s": n.n_s, **_row(n, mu)} for mu, _ in dtb_curve(n, grid)]


def cmd_sweep(args) -> int:
    spec = SweepSpec(args.nd, args.nr, args.ns, args.grid, args.format, args.out)
    chans = list(spec.channels())
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            chunks = list(pool.map(_sweep_rows, chans, [spec.grid] * len(chans)))
    else:
        chunks = [_sweep_rows(n, spec.grid) for n in chans]
    rows = [r for chunk in chunks for r in chunk]
    _emit(_render(rows, ["n_d", "n_r", "n_s", *CSV_HEADER], spec.fmt), spec.out)
    return 0


def cmd_simulate(args) -> int:
    n = _channel(args)
    try:
        point = scheme_for(args.mu, n, args.length)
    except NotCovered as exc:
        print(f"not covered: {exc}")
        print("hint: run `hetdtb oracle` for a brute-force achievable point")
        return 0
    scheme = point.scheme
    rng = random.Random(args.seed)
    report = check_decodability(scheme)
    sampled = True
    recursion = None if n.n_s < n.n_d else True
    for d in demands(scheme.N):
        dec = build_decoders(scheme, d)
        for _ in range(args.trials):
            files = random_files(scheme, rng)
            tr = simulate_delivery(scheme, files, d)
            if dec.ue_ok and dec.rn_ok:
                w_r, w_u = decode(scheme, tr, dec)
                sampled &= w_r == tr.files[d[0] - 1] and w_u == tr.files[d[1] - 1]
            if recursion is not None and dec.ue_ok:
                try:
                    recursion &= recursive_reconstruct(scheme, files, d)[1]
                except NotApplicable:
                    recursion = None
    report.recursion_ok = recursion
    report.notes.append(f"sampled_zero_error={'ok' if sampled else 'FAIL'} trials={args.trials}")
    print(f"scheme={scheme.name} n={n} mu={fmt(point.mu)} T={scheme.T} L={scheme.L}")
    for line in report.lines():
        print(line)
    if args.dump:
        first = simulate_delivery(scheme, random_files(scheme, random.Random(args.seed)), (1, 2))
        _emit(json.dumps({"scheme": scheme.to_json(), "transcript": first.to_json()}, sort_keys=True) + "\n", args.dump)
    return 0 if report.ok and sampled else 1


def cmd_verify(args) -> int:
    results = run_suite(args.max, args.grid)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"summary: {len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    n = _channel(args)
    res = brute_force_search(n, args.mu, L_max=args.lmax, T_max=args.tmax)
    if res is None:
        print(f"no decodable scheme in the search space (L<={args.lmax}, T<={args.tmax})")
        return 0
    lb = dtb_optimal(args.mu, n).lower_bound
    print(f"found L={res.L} T={res.T} dtb={fmt(res.dtb)} lower_bound={fmt(lb)}")
    print(f"restriction: {res.restriction}")
    if args.show:
        print(res.scheme.dumps())
    return 0 if res.dtb >= lb else 1


def cmd_quantize(args) -> int:
    print(quantize_channel(args.h2, args.power))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hetdtb", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def chan(sp):
        sp.add_argument("--nd", type=int, required=True)
        sp.add_argument("--nr", type=int, required=True)
        sp.add_argument("--ns", type=int, required=True)

    sp = sub.add_parser("regime", help="classify a channel")
    chan(sp)
    sp.set_defaults(func=cmd_regime)

    sp = sub.add_parser("dtb", help="optimal DTB and converse bounds")
    chan(sp)
    sp.add_argument("--mu", type=exact_fraction, required=True)
    sp.set_defaults(func=cmd_dtb)

    sp = sub.add_parser("curve", help="DTB versus mu on a grid, or its exact corners")
    chan(sp)
    sp.add_argument("--grid", type=int, default=16)
    sp.add_argument("--corners", action="store_true", help="emit only the exact breakpoints")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("sweep", help="DTB table over ranges of channels")
    sp.add_argument("--nd", type=int_range, default=(1, 8))
    sp.add_argument("--nr", type=int_range, default=(1, 8))
    sp.add_argument("--ns", type=int_range, default=(1, 8))
    sp.add_argument("--grid", type=int, default=16)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("simulate", help="build, run and verify an explicit scheme")
    chan(sp)
    sp.add_argument("--mu", type=exact_fraction, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--length", type=int, help="file length of the cache-less scheme")
    sp.add_argument("--dump", help="write scheme and a d=(1,2) transcript as JSON")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("--max", type=int, default=8)
    sp.add_argument("--grid", type=int, default=16)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force scheme search")
    chan(sp)
    sp.add_argument("--mu", type=exact_fraction, required=True)
    sp.add_argument("--tmax", type=int, default=2)
    sp.add_argument("--lmax", type=int, default=8)
    sp.add_argument("--show", action="store_true", help="print the scheme found")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("quantize", help="LDM strength of a Gaussian link")
    sp.add_argument("--h2", type=float, required=True, help="|h|^2")
    sp.add_argument("--power", type=float, required=True)
    sp.set_defaults(func=cmd_quantize)
    return p


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HetDtbError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())
