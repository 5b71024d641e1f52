from fractions import Fraction as F

import pytest

from hetdtb.analytics import dtb_lower_bound
from hetdtb.errors import SearchBudgetExceeded
from hetdtb.regimes import ChannelTriple as C
from hetdtb.search import brute_force_search
from hetdtb.sim import check_decodability


@pytest.mark.parametrize(
    "n, mu, tmax, lmax, dtb",
    [
        ((2, 4, 3), F(3, 4), 1, 4, F(1, 4)),
        ((1, 1, 1), F(1), 1, 2, F(1)),
        ((1, 2, 1), F(1), 1, 4, F(1, 2)),
    ],
)
def test_search_examples(n, mu, tmax, lmax, dtb):
    res = brute_force_search(C(*n), mu, L_max=lmax, T_max=tmax)
    assert res is not None and res.dtb == dtb
    assert res.scheme.mu == mu
    assert check_decodability(res.scheme).all_decoded


def test_search_mu0_two_uses():
    res = brute_force_search(C(2, 4, 3), 0, L_max=3, T_max=2)
    assert res.dtb == F(2, 3)


def test_search_none_when_nothing_fits():
    # one use of a single-level link cannot carry two fresh bits
    assert brute_force_search(C(1, 1, 1), 0, L_max=1, T_max=1) is None


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        brute_force_search(C(6, 1, 1), 0)
    with pytest.raises(SearchBudgetExceeded):
        brute_force_search(C(1, 1, 1), 0, T_max=3)
    with pytest.raises(SearchBudgetExceeded):
        brute_force_search(C(1, 1, 1), 0, L_max=9)


def test_workers_agree():
    a = brute_force_search(C(2, 4, 3), F(3, 4), L_max=4, T_max=1)
    b = brute_force_search(C(2, 4, 3), F(3, 4), L_max=4, T_max=1, workers=2)
    assert (a.L, a.T, a.scheme) == (b.L, b.T, b.scheme)


@pytest.mark.parametrize("n", [(1, 2, 2), (2, 3, 2), (2, 1, 2), (1, 1, 2)])
def test_found_respects_converse(n):
    n = C(*n)
    for mu in (F(0), F(1, 2), F(1)):
        res = brute_force_search(n, mu, L_max=4, T_max=2)
        if res is not None:
            assert res.dtb >= dtb_lower_bound(mu, n)
