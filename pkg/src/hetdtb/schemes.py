"""Executable delivery policies over the deterministic channel.

A policy is fixed for the two *roles* ``"r"`` (the file the relay asked
for) and ``"u"`` (the file the user asked for); a demand vector binds the
roles to concrete files at simulation time.  Every transmit level carries
the XOR of a set of terms:

* ``Bit(role, j)``: bit ``j`` of the file bound to ``role``;
* ``Recv(t, p)``: position ``p`` of the relay's received word at use ``t``
  (relay only, and only for ``t`` strictly earlier than the current use).

Levels and positions are 0-based with 0 the most significant.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from hetdtb.analytics import check_mu
from hetdtb.errors import (
    CausalityError,
    IndivisibleCache,
    InterpolationRange,
    NotCovered,
    RegimeMismatch,
)
from hetdtb.regimes import ChannelTriple, Regime, classify_regime

ROLES = ("r", "u")


class Bit(NamedTuple):
    role: str
    index: int


class Recv(NamedTuple):
    t: int
    pos: int


Level = frozenset


@dataclass(frozen=True)
class Placement:
    """Symmetric cache placement: the same bit positions of every file."""

    N: int
    L: int
    cached: frozenset[int]

    def __post_init__(self):
        if self.N < 1 or self.L < 1:
            raise ValueError("need N >= 1 files of L >= 1 bits")
        if any(not 0 <= j < self.L for j in self.cached):
            raise ValueError("cached position outside the file")

    @property
    def cached_indices(self) -> tuple[frozenset[int], ...]:
        return (self.cached,) * self.N

    @property
    def mu(self) -> Fraction:
        return Fraction(len(self.cached), self.L)


def make_placement(N: int, L: int, mu) -> Placement:
    """Cache the last ``mu * L`` bits of every file."""
    mu = check_mu(mu)
    c = mu * L
    if c.denominator != 1:
        raise IndivisibleCache(f"mu*L = {c} is not an integer")
    c = int(c)
    return Placement(N, L, frozenset(range(L - c, L)))


def rx_pos(level: int, strength: int, q: int) -> int:
    """Received position of transmit ``level`` over a link of ``strength``."""
    return q - strength + level


@dataclass(frozen=True)
class LinearScheme:
    n: ChannelTriple
    T: int
    L: int
    placement: Placement
    denb_plan: tuple[tuple[Level, ...], ...]
    rn_plan: tuple[tuple[Level, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        q = self.n.q
        if len(self.denb_plan) != self.T or len(self.rn_plan) != self.T:
            raise ValueError("plans must cover exactly T channel uses")
        for plan in (self.denb_plan, self.rn_plan):
            if any(len(use) != q for use in plan):
                raise ValueError(f"every channel use must assign q={q} levels")
        for use in self.denb_plan:
            for lvl in use:
                if any(not isinstance(term, Bit) for term in lvl):
                    raise ValueError("DeNB levels may only carry file bits")

    @property
    def q(self) -> int:
        return self.n.q

    @property
    def N(self) -> int:
        return self.placement.N

    @property
    def mu(self) -> Fraction:
        return self.placement.mu

    @property
    def dtb(self) -> Fraction:
        return Fraction(self.T, self.L)

    def causality_violations(self) -> list[str]:
        out = []
        for t, use in enumerate(self.rn_plan):
            for k, lvl in enumerate(use):
                for term in lvl:
                    if isinstance(term, Bit):
                        if term.index not in self.placement.cached:
                            out.append(f"t={t} level={k}: uncached bit {term}")
                    elif not 0 <= term.t < t:
                        out.append(f"t={t} level={k}: non-causal reception {term}")
                    elif not 0 <= term.pos < self.q:
                        out.append(f"t={t} level={k}: no such received position {term}")
        for t, use in enumerate(self.denb_plan):
            for k, lvl in enumerate(use):
                for term in lvl:
                    if term.role not in ROLES or not 0 <= term.index < self.L:
                        out.append(f"DeNB t={t} level={k}: bad term {term}")
        return out

    def check_causality(self) -> None:
        bad = self.causality_violations()
        if bad:
            raise CausalityError("; ".join(bad))

    def to_json(self) -> dict:
        def enc(term):
            if isinstance(term, Bit):
                return [term.role, term.index]
            return ["y", term.t, term.pos]

        def plan(p):
            return [[sorted(enc(x) for x in lvl) for lvl in use] for use in p]

        return {
            "name": self.name,
            "n": [self.n.n_d, self.n.n_r, self.n.n_s],
            "T": self.T,
            "L": self.L,
            "N": self.N,
            "cached": sorted(self.placement.cached),
            "denb": plan(self.denb_plan),
            "rn": plan(self.rn_plan),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: dict) -> LinearScheme:
        def dec(term):
            if term[0] == "y":
                return Recv(int(term[1]), int(term[2]))
            return Bit(term[0], int(term[1]))

        def plan(p):
            return tuple(tuple(Level(dec(x) for x in lvl) for lvl in use) for use in p)

        return cls(
            ChannelTriple(*doc["n"]),
            doc["T"],
            doc["L"],
            Placement(doc["N"], doc["L"], frozenset(doc["cached"])),
            plan(doc["denb"]),
            plan(doc["rn"]),
            doc.get("name", ""),
        )


@dataclass(frozen=True)
class SchemePoint:
    mu: Fraction
    dtb: Fraction
    scheme: LinearScheme

    def __post_init__(self):
        if self.mu != self.scheme.mu:
            raise ValueError(f"mu {self.mu} != cached fraction {self.scheme.mu}")
        if self.dtb != self.scheme.dtb:
            raise ValueError(f"dtb {self.dtb} != T/L {self.scheme.dtb}")

    @classmethod
    def of(cls, scheme: LinearScheme) -> SchemePoint:
        return cls(scheme.mu, scheme.dtb, scheme)


class _Plan:
    """Mutable per-use level assignment used while constructing a scheme."""

    def __init__(self, q: int):
        self.q = q
        self.denb: list[list[set]] = []
        self.rn: list[list[set]] = []

    def new_use(self) -> int:
        self.denb.append([set() for _ in range(self.q)])
        self.rn.append([set() for _ in range(self.q)])
        return len(self.denb) - 1

    def freeze(self, n, L, placement, name) -> LinearScheme:
        def fz(p):
            return tuple(tuple(Level(s) for s in use) for use in p)

        return LinearScheme(n, len(self.denb), L, placement, fz(self.denb), fz(self.rn), name)


def build_scheme_mu0(n: ChannelTriple, L: int) -> LinearScheme:
    """Cache-less broadcast with decode-and-forward at the relay.

    Each channel use, the DeNB splits its levels between fresh relay bits
    and fresh user bits so that both files progress at the same pace.  User
    bits sit on levels the user sees directly; when the direct link is too
    weak for that (``n_s > 2 n_d``) extra user bits are routed through the
    relay, which forwards them one use later on levels left clear of the
    DeNB's direct signal.
    """
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    q = n.q
    placement = make_placement(2, L, 0)
    plan = _Plan(q)
    next_u = next_r = 0
    delivered = 0
    buf: deque[Recv] = deque()
    relay_route = ns > 2 * nd
    spare = max(0, nr - nd)  # relay levels never hit by the DeNB at the user
    guard = 4 * L + 4 * q + 8
    while delivered < L or next_r < L:
        t = plan.new_use()
        if t > guard:
            raise RuntimeError(f"allocator failed to terminate on {n}, L={L}")
        denb, rn = plan.denb[t], plan.rn[t]
        if nd >= ns:
            # relay sees only the top ns levels; user sees all nd
            kr = min(ns, L - next_r, max(0, math.ceil((nd + next_u - next_r) / 2)))
            ku = min(nd - kr, L - next_u)
            kr = min(ns, L - next_r, nd - ku)
            for k in range(kr):
                denb[k].add(Bit("r", next_r))
                next_r += 1
            for k in range(kr, kr + ku):
                denb[k].add(Bit("u", next_u))
                next_u += 1
            delivered = next_u
            continue

        want_u = max(0, math.ceil((ns + next_r - next_u) / 2)) if next_r < L else ns
        direct = min(nd, L - next_u, want_u)
        for k in range(direct):
            denb[k].add(Bit("u", next_u))
            next_u += 1
        routed = 0
        if relay_route:
            routed = max(0, min(spare - max(0, len(buf) - spare), L - next_u, want_u - direct, ns - nd))
        routed_now = []
        for k in range(nd, nd + routed):
            denb[k].add(Bit("u", next_u))
            next_u += 1
            routed_now.append(Recv(t, rx_pos(k, ns, q)))
        free = [k for k in range(ns) if not denb[k]]
        free = [k for k in free if k >= nd] + [k for k in reversed(free) if k < nd]
        for k in free[: L - next_r]:
            denb[k].add(Bit("r", next_r))
            next_r += 1
        forwarded = 0
        for j in range(nr):
            k = rx_pos(j, nr, q) - (q - nd)  # DeNB level landing on the same user position
            if 0 <= k < nd and denb[k]:
                continue
            if not buf:
                break
            rn[j].add(buf.popleft())
            forwarded += 1
        buf.extend(routed_now)
        delivered += direct + forwarded
    return plan.freeze(n, L, placement, "mu0")


def _require_r31(n: ChannelTriple) -> None:
    if classify_regime(n).fine is not Regime.R31 or n.n_r < n.n_s:
        raise RegimeMismatch(f"{n} is not in R31 with n_r >= n_s")


def build_corner_scheme_B(n: ChannelTriple) -> SchemePoint:
    """Corner where the user's uncached half and the relay's uncached half
    share the DeNB signal and the relay adds ``n_r - n_d`` cached bits on
    its interference-free top levels."""
    _require_r31(n)
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    q = n.q
    rounds = 1 if ns % 2 == 0 else 2
    boost = nr - nd
    uncached = rounds * ns // 2
    L = uncached + rounds * boost
    placement = Placement(2, L, frozenset(range(uncached, L)))
    plan = _Plan(q)
    nu = nr_ = 0
    nc = uncached
    for t in range(rounds):
        plan.new_use()
        # odd n_s: the extra user level goes in the first of the two uses
        ku = (ns + 1) // 2 if rounds == 2 and t == 0 else ns // 2
        for k in range(ku):
            plan.denb[t][k].add(Bit("u", nu))
            nu += 1
        for k in range(ku, ns):
            plan.denb[t][k].add(Bit("r", nr_))
            nr_ += 1
        for j in range(boost):
            plan.rn[t][j].add(Bit("u", nc))
            nc += 1
    assert nu == nr_ == uncached and nc == L
    return SchemePoint.of(plan.freeze(n, L, placement, "B"))


def build_corner_scheme_C(n: ChannelTriple) -> SchemePoint:
    """Corner where the relay fills every user position the DeNB leaves
    silent with cached bits; DTB ``1/n_r``."""
    _require_r31(n)
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    q = n.q
    L = nr
    fresh = ns - nd
    placement = Placement(2, L, frozenset(range(fresh, L)))
    plan = _Plan(q)
    plan.new_use()
    denb, rn = plan.denb[0], plan.rn[0]
    for k in range(fresh):
        denb[k].add(Bit("u", k))
    for i, k in enumerate(range(nd, ns)):
        denb[k].add(Bit("r", i))
    # DeNB level k reaches the user where relay level nr - nd + k does
    busy = {nr - nd + k for k in range(fresh)}
    nc = fresh
    for j in range(nr):
        if j not in busy:
            rn[j].add(Bit("u", nc))
            nc += 1
    assert nc == L
    return SchemePoint.of(plan.freeze(n, L, placement, "C"))


def build_full_cache_scheme(n: ChannelTriple) -> SchemePoint:
    """mu = 1: the relay needs nothing; the stronger link to the user
    carries ``max(n_d, n_r)`` bits per use."""
    nd, nr = n.n_d, n.n_r
    q = n.q
    L = max(nd, nr)
    placement = Placement(2, L, frozenset(range(L)))
    plan = _Plan(q)
    plan.new_use()
    side = plan.rn[0] if nr >= nd else plan.denb[0]
    for k in range(L):
        side[k].add(Bit("u", k))
    return SchemePoint.of(plan.freeze(n, L, placement, "full"))


def concat_schemes(parts: list[LinearScheme], name: str = "") -> LinearScheme:
    """Serve consecutive file chunks with the given schemes back to back."""
    n = parts[0].n
    N = parts[0].N
    if any(p.n != n or p.N != N for p in parts):
        raise ValueError("all parts must share channel and file count")
    denb, rn, cached = [], [], set()
    boff = toff = 0
    for p in parts:
        def shift(term, boff=boff, toff=toff):
            if isinstance(term, Bit):
                return Bit(term.role, term.index + boff)
            return Recv(term.t + toff, term.pos)

        for use in p.denb_plan:
            denb.append(tuple(Level(shift(x) for x in lvl) for lvl in use))
        for use in p.rn_plan:
            rn.append(tuple(Level(shift(x) for x in lvl) for lvl in use))
        cached.update(j + boff for j in p.placement.cached)
        boff += p.L
        toff += p.T
    return LinearScheme(n, toff, boff, Placement(N, boff, frozenset(cached)), tuple(denb), tuple(rn), name)


def _repeat_count(frac: Fraction, chunk: int) -> int:
    # smallest m such that frac * m is a multiple of chunk
    whole = frac.denominator * chunk
    return whole // math.gcd(frac.numerator, whole)


def time_share(p1: SchemePoint, p2: SchemePoint, mu) -> SchemePoint:
    """File splitting between two policies; ``lam`` of every file via ``p1``."""
    mu = check_mu(mu)
    if p1.scheme.n != p2.scheme.n:
        raise ValueError("schemes are for different channels")
    if not p1.mu <= mu <= p2.mu or p1.mu == p2.mu and mu != p1.mu:
        raise InterpolationRange(f"mu={mu} outside [{p1.mu}, {p2.mu}]")
    if mu == p1.mu:
        return p1
    if mu == p2.mu:
        return p2
    lam = (p2.mu - mu) / (p2.mu - p1.mu)
    L1, L2 = p1.scheme.L, p2.scheme.L
    L = math.lcm(_repeat_count(lam, L1), _repeat_count(1 - lam, L2))
    a = lam * L / L1
    b = (1 - lam) * L / L2
    assert a.denominator == b.denominator == 1
    parts = [p1.scheme] * int(a) + [p2.scheme] * int(b)
    point = SchemePoint.of(concat_schemes(parts, f"share({p1.scheme.name},{p2.scheme.name})"))
    assert point.mu == mu and point.dtb == lam * p1.dtb + (1 - lam) * p2.dtb
    return point


def mu0_default_length(n: ChannelTriple) -> int:
    return 2 * n.n_s * n.n_d


def corner_library(n: ChannelTriple) -> list[SchemePoint]:
    """Explicit corner policies A, B, C and the full-cache policy, by mu."""
    _require_r31(n)
    pts = [
        SchemePoint.of(build_scheme_mu0(n, mu0_default_length(n))),
        build_corner_scheme_B(n),
        build_corner_scheme_C(n),
        build_full_cache_scheme(n),
    ]
    out: list[SchemePoint] = []
    for p in pts:
        if not out or p.mu > out[-1].mu:
            out.append(p)
    return out


def scheme_for(mu, n: ChannelTriple, L: int | None = None) -> SchemePoint:
    """Pick or compose an explicit policy for ``(mu, n)``.

    ``L`` overrides the file length of the cache-less policy.
    Raises :class:`NotCovered` where no explicit construction exists.
    """
    mu = check_mu(mu)
    if mu == 0:
        return SchemePoint.of(build_scheme_mu0(n, L or mu0_default_length(n)))
    if mu == 1:
        return build_full_cache_scheme(n)
    if classify_regime(n).fine is Regime.R31 and n.n_r >= n.n_s:
        lib = corner_library(n)
        for p1, p2 in zip(lib, lib[1:]):
            if p1.mu <= mu <= p2.mu:
                return time_share(p1, p2, mu)
    raise NotCovered(f"no explicit policy for mu={mu} on {n} ({classify_regime(n)})")
