import itertools
from fractions import Fraction

import pytest

from hetdtb.analytics import regime_formula
from hetdtb.errors import InvalidChannel
from hetdtb.regimes import ChannelTriple, Regime, classify_regime, matching_regimes, quantize_channel

CUBE10 = [ChannelTriple(*v) for v in itertools.product(range(1, 11), repeat=3)]


@pytest.mark.parametrize(
    "h2, P, expected", [(1, 100, 7), (1, 8, 3), (0.001, 4, 1)]
)
def test_quantize_examples(h2, P, expected):
    assert quantize_channel(h2, P) == expected


@pytest.mark.parametrize("h2, P", [(0, 4), (-1, 2), (1, 0)])
def test_quantize_rejects_nonpositive(h2, P):
    with pytest.raises(InvalidChannel):
        quantize_channel(h2, P)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -2, 1), (1, 1, 1.5)])
def test_channel_triple_validation(bad):
    with pytest.raises(InvalidChannel):
        ChannelTriple(*bad)


@pytest.mark.parametrize(
    "n, label",
    [
        ((4, 3, 2), Regime.R1),
        ((2, 4, 3), Regime.R31),
        ((5, 4, 2), Regime.R1P),
        ((3, 5, 2), Regime.R2),
        ((1, 1, 5), Regime.R3P),
        ((3, 1, 4), Regime.R4),
    ],
)
def test_classify_examples(n, label):
    assert classify_regime(ChannelTriple(*n)).fine is label


def test_classify_flags():
    lab = classify_regime(ChannelTriple(2, 4, 3))
    assert lab.coarse == "C3" and lab.in_I1 and not lab.in_I0
    lab = classify_regime(ChannelTriple(4, 3, 2))
    assert lab.coarse == "C1" and lab.in_I0


def test_every_channel_gets_exactly_one_label():
    # total: at least one predicate always holds, and the first match wins
    for n in CUBE10:
        matches = matching_regimes(n)
        assert matches, n
        assert classify_regime(n).fine is matches[0]


def test_union_covers_the_cube():
    seen = {classify_regime(n).fine for n in CUBE10}
    assert seen == set(Regime)


def test_boundary_formulas_agree():
    grid = [Fraction(k, 8) for k in range(9)]
    boundary = [n for n in CUBE10 if len(matching_regimes(n)) > 1]
    assert boundary
    for n in boundary:
        for mu in grid:
            vals = {regime_formula(r, mu, n) for r in matching_regimes(n)}
            assert len(vals) == 1, (n, mu, vals)


def test_regime_predicates_from_definitions():
    # independent restatement of the coarse classes and sub-regimes
    for n in CUBE10:
        nd, nr, ns = n.n_d, n.n_r, n.n_s
        fine = classify_regime(n).fine
        if fine in (Regime.R1, Regime.R1P):
            assert nd >= max(nr, ns)
        elif fine in (Regime.R2, Regime.R2P):
            assert nr >= nd >= ns and not nd >= max(nr, ns)
        elif fine in (Regime.R31, Regime.R32, Regime.R3P):
            assert min(nr, ns) >= nd
        else:
            assert ns >= nd >= nr
        if fine is Regime.R3P or fine is Regime.R4P:
            assert 2 * max(nd, nr) <= ns
