"""Exhaustive search over a restricted family of linear schemes.

Search space, per ``(L, T)`` with ``mu * L`` integral:

* every DeNB level of every use carries silence or one fresh *uncached*
  bit of the relay's file or of the user's file; each uncached bit is sent
  exactly once;
* every relay level carries silence, one fresh cached bit of the user's
  file (each sent exactly once), or a copy of one earlier received level
  that carried a user bit.

Bits of one role are interchangeable, so fresh bits are numbered in slot
order and only their slot *sets* are enumerated.  The oracle exhibits
achievable points only; it never proves a lower bound.
"""

from __future__ import annotations

import itertools
from math import comb
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from hetdtb.analytics import check_mu
from hetdtb.errors import SearchBudgetExceeded
from hetdtb.regimes import ChannelTriple
from hetdtb.schemes import Bit, Level, LinearScheme, Placement, Recv, rx_pos
from hetdtb.sim import build_decoders, demands

MAX_COMPONENT = 5
MAX_T = 2
MAX_L = 8
MAX_CANDIDATES = 2_000_000

RESTRICTION = (
    "uncoded levels: DeNB sends fresh uncached bits or silence; relay sends "
    "fresh cached user-file bits, earlier received user-bit levels, or silence"
)


@dataclass(frozen=True)
class SearchResult:
    L: int
    T: int
    scheme: LinearScheme
    examined: int
    restriction: str = RESTRICTION

    @property
    def dtb(self) -> Fraction:
        return Fraction(self.T, self.L)


def _count(n: ChannelTriple, L: int, T: int, c: int) -> int:
    """Upper estimate of the candidates enumerated for one ``(L, T)``."""
    fresh = L - c
    denb = comb(T * n.n_s, fresh) * comb(T * max(n.n_d, n.n_s) - fresh, fresh) if fresh <= T * n.n_s else 0
    rn_slots = T * n.n_r
    fwd_opts = 1 + min(fresh, (T - 1) * n.n_s)
    return denb * comb(rn_slots, c) * fwd_opts ** max(0, rn_slots - c)


def _candidates(n: ChannelTriple, L: int, T: int, c: int) -> Iterator[LinearScheme]:
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    q = n.q
    fresh = L - c
    placement = Placement(2, L, frozenset(range(fresh, L)))
    relay_seen = [(t, k) for t in range(T) for k in range(ns)]
    visible = [(t, k) for t in range(T) for k in range(max(nd, ns))]
    rn_slots = [(t, j) for t in range(T) for j in range(nr)]
    for r_slots in itertools.combinations(relay_seen, fresh):
        taken = set(r_slots)
        rest = [s for s in visible if s not in taken]
        for u_slots in itertools.combinations(rest, fresh):
            denb = [[frozenset()] * q for _ in range(T)]
            for i, (t, k) in enumerate(sorted(r_slots)):
                denb[t][k] = Level({Bit("r", i)})
            for i, (t, k) in enumerate(sorted(u_slots)):
                denb[t][k] = Level({Bit("u", i)})
            # user bits the relay has heard, by reception time
            heard = sorted((t, k) for t, k in u_slots if k < ns)
            denb_fz = tuple(tuple(use) for use in denb)
            for c_slots in itertools.combinations(rn_slots, c):
                cset = set(c_slots)
                free = [s for s in rn_slots if s not in cset]
                options = []
                for t, _ in free:
                    opts = [frozenset()]
                    opts += [Level({Recv(t0, rx_pos(k0, ns, q))}) for t0, k0 in heard if t0 < t]
                    options.append(opts)
                for choice in itertools.product(*options):
                    rn = [[frozenset()] * q for _ in range(T)]
                    for i, (t, j) in enumerate(sorted(c_slots)):
                        rn[t][j] = Level({Bit("u", fresh + i)})
                    for (t, j), lvl in zip(free, choice):
                        rn[t][j] = lvl
                    yield LinearScheme(n, T, L, placement, denb_fz, tuple(tuple(u) for u in rn), "search")


def _decodable(scheme: LinearScheme) -> bool:
    # distinct demands first: they fail most often
    order = sorted(demands(scheme.N), key=lambda d: d[0] == d[1])
    for d in order:
        dec = build_decoders(scheme, d)
        if not (dec.ue_ok and dec.rn_ok):
            return False
    return True


def _search_pair(args) -> tuple[int, LinearScheme | None]:
    n, L, T, c = args
    examined = 0
    for scheme in _candidates(n, L, T, c):
        examined += 1
        if _decodable(scheme):
            return examined, scheme
    return examined, None


def brute_force_search(n: ChannelTriple, mu, L_max: int = MAX_L, T_max: int = MAX_T, workers: int = 1) -> SearchResult | None:
    """Smallest ``T/L`` over the restricted family, or ``None`` if nothing decodes.

    Pairs ``(L, T)`` are tried in increasing ``T/L`` (then ``L``); within a
    pair candidates are enumerated in a fixed lexicographic order and the
    first decodable one is kept, so the answer does not depend on
    ``workers``.
    """
    mu = check_mu(mu)
    if max(n.n_d, n.n_r, n.n_s) > MAX_COMPONENT or T_max > MAX_T or L_max > MAX_L:
        raise SearchBudgetExceeded(
            f"budget is components <= {MAX_COMPONENT}, T <= {MAX_T}, L <= {MAX_L}"
        )
    pairs = []
    for L in range(1, L_max + 1):
        c = mu * L
        if c.denominator != 1:
            continue
        for T in range(1, T_max + 1):
            pairs.append((Fraction(T, L), L, T, int(c)))
    pairs.sort()
    total = sum(_count(n, L, T, c) for _, L, T, c in pairs)
    if total > MAX_CANDIDATES:
        raise SearchBudgetExceeded(f"about {total} candidates exceeds {MAX_CANDIDATES}")
    jobs = [(n, L, T, c) for _, L, T, c in pairs]
    examined = 0
    if workers <= 1:
        for job in jobs:
            k, found = _search_pair(job)
            examined += k
            if found is not None:
                return SearchResult(found.L, found.T, found, examined)
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_search_pair, jobs))
    for (k, found) in results:
        examined += k
    for (k, found) in results:
        if found is not None:
            return SearchResult(found.L, found.T, found, examined)
    return None
