"""Exact rational DTB: converse bounds, regime-cased optimum, corner points.

The cased optimum and the converse bounds are coded independently of each
other; their agreement on every channel is checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from hetdtb.errors import InvalidCacheFraction
from hetdtb.regimes import ChannelTriple, Regime, RegimeLabel, classify_regime

BOUND_IDS = ("B1", "B2", "B3", "B4", "B5")


def as_fraction(mu) -> Fraction:
    """Coerce an exact cache fraction; floats are refused."""
    if type(mu) is Fraction:
        return mu
    if isinstance(mu, float):
        raise InvalidCacheFraction(f"cache fraction must be exact, got float {mu!r}")
    try:
        return Fraction(mu)
    except (TypeError, ValueError) as exc:
        raise InvalidCacheFraction(f"not a fraction: {mu!r}") from exc


def check_mu(mu) -> Fraction:
    mu = as_fraction(mu)
    if not 0 <= mu <= 1:
        raise InvalidCacheFraction(f"mu={mu} outside [0, 1]")
    return mu


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Affine(NamedTuple):
    """``intercept + slope * mu``."""

    intercept: Fraction
    slope: Fraction

    def __call__(self, mu: Fraction) -> Fraction:
        # one normalization instead of one per operation
        a, b = self.intercept.numerator, self.intercept.denominator
        c, d = self.slope.numerator, self.slope.denominator
        mu = Fraction(mu)
        p, q = mu.numerator, mu.denominator
        return Fraction(a * d * q + c * b * p, b * d * q)


def _line(c0: int, c1: int, den: int) -> Affine:
    # (c0 - c1 * mu) / den
    return Affine(Fraction(c0, den), Fraction(-c1, den))


def delta_lb(n: ChannelTriple) -> Fraction:
    return Fraction(1, max(n.n_d, n.n_r))


def no_cache_dtb(n: ChannelTriple) -> Fraction:
    """Optimal DTB without a cache."""
    return max(
        Fraction(2, max(n.n_d, n.n_s)),
        Fraction(1, n.n_s),
        Fraction(1, max(n.n_d, n.n_r)),
    )


def regime_pieces(regime: Regime, n: ChannelTriple) -> list[Affine]:
    """Affine pieces whose pointwise max is the cased optimal DTB."""
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    m = max(nd, nr)
    eff = ns + max(0, nr - nd)
    flat = Affine(Fraction(1, m), Fraction(0))
    if regime is Regime.R1:
        return [_line(2, 1, nd)]
    if regime is Regime.R2:
        return [_line(2, 2, nd), _line(2, 1, nr)]
    if regime in (Regime.R1P, Regime.R2P):
        return [_line(1, 1, ns), _line(2, 1, m)]
    if regime is Regime.R31:
        return [_line(2, 2, ns), _line(2, 1, eff), flat]
    if regime is Regime.R32:
        return [_line(2, 2, ns), flat]
    if regime is Regime.R4:
        return [_line(2, 1, eff), flat]
    return [flat]


def regime_formula(regime: Regime, mu, n: ChannelTriple) -> Fraction:
    return _formula(regime, check_mu(mu), n)


def _formula(regime: Regime, mu: Fraction, n: ChannelTriple) -> Fraction:
    return max(p(mu) for p in regime_pieces(regime, n))


@dataclass(frozen=True)
class BoundValue:
    id: str
    value: Fraction
    applicable: bool


def converse_bounds(mu, n: ChannelTriple) -> list[BoundValue]:
    """The five per-bit converse bounds with their applicability flags."""
    return _bounds(check_mu(mu), n)


def _bounds(mu: Fraction, n: ChannelTriple) -> list[BoundValue]:
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    p, q = mu.numerator, mu.denominator
    return [
        BoundValue("B1", Fraction(q - p, q * ns), True),
        BoundValue("B2", Fraction(1, max(nd, nr)), True),
        BoundValue("B3", Fraction(2 * (q - p), q * max(nd, ns)), True),
        BoundValue("B4", Fraction(2 * q - p, q * max(nd, nr)), nd >= ns),
        BoundValue("B5", Fraction(2 * q - p, q * (ns + max(0, nr - nd))), ns >= nd),
    ]


def dtb_lower_bound(mu, n: ChannelTriple) -> Fraction:
    return max(b.value for b in converse_bounds(mu, n) if b.applicable)


@dataclass(frozen=True)
class DtbReport:
    n: ChannelTriple
    regime: RegimeLabel
    mu: Fraction
    optimal: Fraction
    lower_bound: Fraction
    bounds: tuple[BoundValue, ...]
    active_bound_ids: tuple[str, ...]

    @property
    def tight(self) -> bool:
        return self.optimal == self.lower_bound


def dtb_optimal(mu, n: ChannelTriple) -> DtbReport:
    mu = check_mu(mu)
    label = classify_regime(n)
    optimal = _formula(label.fine, mu, n)
    bounds = tuple(_bounds(mu, n))
    lb = max(b.value for b in bounds if b.applicable)
    active = tuple(b.id for b in bounds if b.applicable and b.value == lb)
    return DtbReport(n, label, mu, optimal, lb, bounds, active)


def upper_envelope(lines: list[Affine], lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> list[tuple[Fraction, Fraction]]:
    """Exact breakpoints of ``max(lines)`` on ``[lo, hi]``, endpoints included."""
    x = Fraction(lo)
    best = max(l(x) for l in lines)
    # to the right of lo the steepest tied line dominates
    cur = max((l for l in lines if l(x) == best), key=lambda l: l.slope)
    pts = [(x, cur(x))]
    while True:
        nxt = None
        for l in lines:
            if l.slope <= cur.slope:
                continue
            xi = (cur.intercept - l.intercept) / (l.slope - cur.slope)
            if x < xi < hi and (nxt is None or xi < nxt[0] or (xi == nxt[0] and l.slope > nxt[1].slope)):
                nxt = (xi, l)
        if nxt is None:
            break
        x, cur = nxt
        pts.append((x, cur(x)))
    if pts[-1][0] != hi:
        pts.append((Fraction(hi), cur(Fraction(hi))))
    return pts


def corner_points(n: ChannelTriple) -> list[tuple[Fraction, Fraction]]:
    """Breakpoints of the optimal DTB curve on [0, 1], from mu=0 to mu=1."""
    return upper_envelope(regime_pieces(classify_regime(n).fine, n))


def dtb_curve(n: ChannelTriple, grid_denominator: int) -> list[tuple[Fraction, Fraction]]:
    if grid_denominator < 1:
        raise ValueError("grid denominator must be >= 1")
    label = classify_regime(n)
    out = []
    for k in range(grid_denominator + 1):
        mu = Fraction(k, grid_denominator)
        out.append((mu, regime_formula(label.fine, mu, n)))
    return out


def interpolate(points: list[tuple[Fraction, Fraction]], mu: Fraction) -> Fraction:
    """Piecewise-linear interpolation through exact (mu, dtb) points."""
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if x0 <= mu <= x1:
            return y0 + (y1 - y0) * (mu - x0) / (x1 - x0)
    raise ValueError(f"mu={mu} outside interpolation range")
