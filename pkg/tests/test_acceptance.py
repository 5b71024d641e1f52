"""Acceptance criteria, each at its stated tolerance.

Every test appends one ``PASS``/``FAIL`` line to the shared log, printed in
the terminal summary, then asserts.
"""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from hetdtb.analytics import converse_bounds, corner_points, dtb_curve, dtb_lower_bound, dtb_optimal, interpolate
from hetdtb.regimes import ChannelTriple, Regime, classify_regime
from hetdtb.schemes import (
    build_corner_scheme_B,
    build_corner_scheme_C,
    build_full_cache_scheme,
    build_scheme_mu0,
    scheme_for,
)
from hetdtb.search import brute_force_search
from hetdtb.sim import check_decodability, demands, recursive_reconstruct, simulate_delivery

CUBE8 = [ChannelTriple(*v) for v in itertools.product(range(1, 9), repeat=3)]
GRID16 = [F(k, 16) for k in range(17)]


def r31_wide(M):
    return [
        n for n in CUBE8
        if max(n.n_d, n.n_r, n.n_s) <= M and classify_regime(n).fine is Regime.R31 and n.n_r >= n.n_s
    ]


def record(log, num, label, ok, detail=""):
    log.append(f"{'PASS' if ok else 'FAIL'} criterion {num}: {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num}: {label} {detail}"


def no_cache_oracle(n):
    # direct statement of the no-cache value
    return max(F(2, max(n.n_d, n.n_s)), F(1, n.n_s), F(1, max(n.n_d, n.n_r)))


def max_applicable(bounds):
    return max(b.value for b in bounds if b.applicable)


def test_criterion_1_tightness(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for n in CUBE8:
        for mu in GRID16:
            rep = dtb_optimal(mu, n)
            if rep.optimal != max_applicable(rep.bounds):
                bad.append((n, mu))
    dt = time.perf_counter() - t0
    record(acceptance_log, 1, "optimal DTB equals max of applicable bounds",
           not bad and dt < 1.0, f"{len(CUBE8) * len(GRID16)} cases, {len(bad)} exceptions, {dt:.2f}s")


def test_criterion_2_endpoints(acceptance_log):
    bad = [n for n in CUBE8
           if dtb_optimal(0, n).optimal != no_cache_oracle(n)
           or dtb_optimal(1, n).optimal != F(1, max(n.n_d, n.n_r))]
    record(acceptance_log, 2, "endpoint values at mu=0 and mu=1", not bad, f"{len(CUBE8)} channels, {len(bad)} failures")


def test_criterion_3_corner_schemes(acceptance_log):
    bad = []
    chans = r31_wide(8)
    for n in chans:
        h = F(n.n_s, 2) + n.n_r - n.n_d
        want_b = ((n.n_r - n.n_d) / h, 1 / h)
        want_c = (F(n.n_d + n.n_r - n.n_s, n.n_r), F(1, n.n_r))
        for build, want in ((build_corner_scheme_B, want_b), (build_corner_scheme_C, want_c)):
            p = build(n)
            ok = (
                (p.mu, p.dtb) == want
                and p.dtb == dtb_optimal(p.mu, n).optimal
                and check_decodability(p.scheme).all_decoded
            )
            if not ok:
                bad.append((n, build.__name__))
    n = ChannelTriple(2, 4, 3)
    b, c = build_corner_scheme_B(n), build_corner_scheme_C(n)
    example = (b.mu, b.dtb) == (F(4, 7), F(2, 7)) and (c.mu, c.dtb) == (F(3, 4), F(1, 4))
    record(acceptance_log, 3, "corner schemes B and C on R31 with n_r >= n_s",
           bool(chans) and not bad and example, f"{len(chans)} channels, {len(bad)} failures, (2,4,3) ok={example}")


def test_criterion_4_convex_monotone(acceptance_log):
    bad = []
    for n in CUBE8:
        y = [dtb_optimal(mu, n).optimal for mu in GRID16]
        for i in range(1, 16):
            if 2 * y[i] > y[i - 1] + y[i + 1]:
                bad.append((n, "convex", i))
        for i in range(16):
            if y[i + 1] > y[i]:
                bad.append((n, "monotone", i))
        # midpoints of every grid pair with an on-grid midpoint
        for i, j in itertools.combinations(range(17), 2):
            if (i + j) % 2 == 0 and 2 * y[(i + j) // 2] > y[i] + y[j]:
                bad.append((n, "midpoint", i, j))
    record(acceptance_log, 4, "midpoint convexity and non-increase in mu", not bad, f"{len(bad)} violations")


def scheme_corpus():
    out = []
    for n in CUBE8:
        out.append(build_scheme_mu0(n, 2 * n.n_s * n.n_d))
        out.append(build_full_cache_scheme(n).scheme)
    for n in r31_wide(8):
        out += [build_corner_scheme_B(n).scheme, build_corner_scheme_C(n).scheme]
    for n in r31_wide(5):
        for mu in (F(1, 4), F(1, 2), F(2, 3), F(5, 6)):
            out.append(scheme_for(mu, n).scheme)
    for v in itertools.product(range(1, 4), repeat=3):
        n = ChannelTriple(*v)
        for mu in (F(0), F(1, 2), F(1)):
            res = brute_force_search(n, mu, L_max=4, T_max=2)
            if res is not None:
                out.append(res.scheme)
    return out


def test_criterion_5_converse_consistency(acceptance_log):
    corpus = scheme_corpus()
    bad = [s for s in corpus if s.dtb < dtb_lower_bound(s.mu, s.n)]
    record(acceptance_log, 5, "achieved T/L never below the converse", not bad, f"{len(corpus)} schemes, {len(bad)} violations")


def test_criterion_6_recursion(acceptance_log):
    rng = random.Random(2024)
    schemes = []
    for n in r31_wide(8):
        schemes += [build_corner_scheme_B(n).scheme, build_corner_scheme_C(n).scheme]
    for n in CUBE8:
        if n.n_s >= n.n_d:
            schemes.append(build_scheme_mu0(n, 2 * n.n_s * n.n_d))
    runs = fails = 0
    for s in schemes:
        files = [[rng.randrange(2) for _ in range(s.L)] for _ in range(s.N)]
        for d in demands(s.N):
            words, ok = recursive_reconstruct(s, files, d)
            runs += 1
            if not ok or words != simulate_delivery(s, files, d).y_r:
                fails += 1
    record(acceptance_log, 6, "relay receptions rebuilt bit-exactly", runs > 0 and fails == 0,
           f"{len(schemes)} schemes, {runs} runs, {fails} failures")


def test_criterion_7_oracle(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    chans = r31_wide(4)
    for n in chans:
        mu = F(n.n_d + n.n_r - n.n_s, n.n_r)
        res = brute_force_search(n, mu, T_max=1)
        if res is None or res.dtb != F(1, n.n_r):
            bad.append(n)
    dt = time.perf_counter() - t0
    record(acceptance_log, 7, "search at mu'' finds 1/n_r", bool(chans) and not bad and dt < 60,
           f"{len(chans)} channels, {len(bad)} failures, {dt:.2f}s")


def test_criterion_8_mu0_rates(acceptance_log):
    bad = []
    exact = [n for n in CUBE8 if n.n_d >= n.n_s]
    for n in exact:
        for k in (1, 2):
            s = build_scheme_mu0(n, k * 2 * n.n_s * n.n_d)
            if s.dtb != no_cache_oracle(n) or not check_decodability(s).all_decoded:
                bad.append((n, k))
    near = [n for n in CUBE8 if n.n_s >= n.n_d]
    worst = F(0)
    for n in near:
        s = build_scheme_mu0(n, 256)
        gap = abs(s.dtb - no_cache_oracle(n))
        worst = max(worst, gap)
        if gap > F(2, 256) or not check_decodability(s).all_decoded:
            bad.append((n, 256))
    record(acceptance_log, 8, "no-cache scheme rates", not bad,
           f"{len(exact)} exact, {len(near)} at L=256, worst gap {worst}, {len(bad)} failures")


def test_criterion_9_curve_shape(acceptance_log):
    n = ChannelTriple(2, 4, 3)
    denom = 7 * 4 * 4
    curve = dtb_curve(n, denom)
    corners = corner_points(n)
    # breakpoints of the emitted curve: grid points where the slope changes
    slopes = [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(curve, curve[1:])]
    breaks = [curve[i][0] for i in range(1, len(slopes)) if slopes[i] != slopes[i - 1]]
    inner = [mu for mu, _ in corners[1:-1]]
    shape_ok = breaks == inner and all(interpolate(corners, mu) == y for mu, y in curve)
    flat = [m for m in CUBE8 if classify_regime(m).fine in (Regime.R3P, Regime.R4P)]
    flat_bad = [m for m in flat if len({y for _, y in dtb_curve(m, 16)}) != 1]
    record(acceptance_log, 9, "curve breakpoints and flat curves",
           shape_ok and bool(flat) and not flat_bad,
           f"breakpoints {[str(b) for b in breaks]}, {len(flat)} flat channels, {len(flat_bad)} failures")
