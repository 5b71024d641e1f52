"""Whole-grid invariant checks shared by the ``verify`` command."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from hetdtb.analytics import (
    corner_points,
    dtb_curve,
    dtb_lower_bound,
    dtb_optimal,
    delta_lb,
    interpolate,
    no_cache_dtb,
    regime_formula,
)
from hetdtb.regimes import ChannelTriple, Regime, classify_regime, matching_regimes
from hetdtb.schemes import (
    build_corner_scheme_B,
    build_corner_scheme_C,
    build_scheme_mu0,
    mu0_default_length,
)
from hetdtb.sim import check_decodability, random_files, recursive_reconstruct, demands


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    failures: list[str]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name} ({self.checked} cases){extra}"


def channels(max_component: int) -> Iterator[ChannelTriple]:
    for nd, nr, ns in itertools.product(range(1, max_component + 1), repeat=3):
        yield ChannelTriple(nd, nr, ns)


def grid(denominator: int) -> list[Fraction]:
    return [Fraction(k, denominator) for k in range(denominator + 1)]


def _run(name: str, cases: Iterator[tuple[str, bool]]) -> CheckResult:
    failures, count = [], 0
    for label, ok in cases:
        count += 1
        if not ok:
            failures.append(label)
    return CheckResult(name, not failures, count, failures)


def check_tightness(M: int, G: int) -> CheckResult:
    return _run("tightness", (
        (f"{n} mu={mu}", dtb_optimal(mu, n).optimal == dtb_lower_bound(mu, n))
        for n in channels(M) for mu in grid(G)
    ))


def check_endpoints(M: int) -> CheckResult:
    def cases():
        for n in channels(M):
            yield f"{n} mu=0", dtb_optimal(0, n).optimal == no_cache_dtb(n)
            yield f"{n} mu=1", dtb_optimal(1, n).optimal == delta_lb(n)
    return _run("endpoints", cases())


def check_convexity(M: int, G: int) -> CheckResult:
    def cases():
        for n in channels(M):
            ys = [y for _, y in dtb_curve(n, G)]
            for i in range(1, len(ys) - 1):
                yield f"{n} k={i}", 2 * ys[i] <= ys[i - 1] + ys[i + 1]
    return _run("convexity", cases())


def check_monotone(M: int, G: int) -> CheckResult:
    def cases():
        for n in channels(M):
            ys = [y for _, y in dtb_curve(n, G)]
            yield str(n), all(a >= b for a, b in zip(ys, ys[1:]))
    return _run("monotonicity", cases())


def check_boundaries(M: int, G: int) -> CheckResult:
    def cases():
        for n in channels(M):
            labels = matching_regimes(n)
            if len(labels) < 2:
                continue
            for mu in grid(G):
                vals = {regime_formula(r, mu, n) for r in labels}
                yield f"{n} {[str(r) for r in labels]} mu={mu}", len(vals) == 1
    return _run("boundary consistency", cases())


def check_corner_interpolation(M: int, G: int) -> CheckResult:
    def cases():
        for n in channels(M):
            pts = corner_points(n)
            for mu, y in dtb_curve(n, G):
                yield f"{n} mu={mu}", interpolate(pts, mu) == y
    return _run("corner interpolation", cases())


def r31_wide(M: int) -> list[ChannelTriple]:
    return [n for n in channels(M) if classify_regime(n).fine is Regime.R31 and n.n_r >= n.n_s]


def check_corner_schemes(M: int) -> CheckResult:
    def cases():
        for n in r31_wide(M):
            for build in (build_corner_scheme_B, build_corner_scheme_C):
                p = build(n)
                rep = check_decodability(p.scheme)
                ok = rep.all_decoded and p.dtb == dtb_optimal(p.mu, n).optimal
                yield f"{p.scheme.name} on {n}", ok
    return _run("corner achievability", cases())


def check_mu0_schemes(M: int) -> CheckResult:
    def cases():
        for n in channels(M):
            s = build_scheme_mu0(n, mu0_default_length(n))
            rep = check_decodability(s)
            yield str(n), rep.all_decoded and rep.achieved_dtb >= rep.lower_bound
    return _run("mu0 schemes", cases())


def check_recursion(M: int, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)

    def cases():
        for n in channels(M):
            if n.n_s < n.n_d:
                continue
            schemes = [build_scheme_mu0(n, mu0_default_length(n))]
            if classify_regime(n).fine is Regime.R31 and n.n_r >= n.n_s:
                schemes += [build_corner_scheme_B(n).scheme, build_corner_scheme_C(n).scheme]
            for s in schemes:
                for d in demands(s.N):
                    _, ok = recursive_reconstruct(s, random_files(s, rng), d)
                    yield f"{s.name} on {n} d={d}", ok
    return _run("recursion", cases())


SUITE: list[tuple[str, Callable[[int, int], CheckResult]]] = [
    ("tightness", check_tightness),
    ("endpoints", lambda M, G: check_endpoints(M)),
    ("convexity", check_convexity),
    ("monotonicity", check_monotone),
    ("boundaries", check_boundaries),
    ("corners", check_corner_interpolation),
    ("corner-schemes", lambda M, G: check_corner_schemes(M)),
    ("mu0-schemes", lambda M, G: check_mu0_schemes(M)),
    ("recursion", lambda M, G: check_recursion(M)),
]


def run_suite(M: int, G: int) -> list[CheckResult]:
    return [fn(M, G) for _, fn in SUITE]
