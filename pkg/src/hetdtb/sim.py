"""Bit-exact execution and verification of linear schemes.

The same evaluator runs on concrete bits (0/1) and on symbolic GF(2)
functionals (int masks over the ``N * L`` library bits), since both only
need XOR.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from hetdtb.analytics import dtb_lower_bound, dtb_optimal
from hetdtb.errors import CausalityError, DimensionError, NoUniqueSolution, NotApplicable
from hetdtb.gf2 import combination_decoder
from hetdtb.ldm import LevelWord, apply_downshift
from hetdtb.schemes import Bit, LinearScheme

Demand = tuple[int, int]


def demands(N: int) -> list[Demand]:
    """All demand vectors ``(d_r, d_u)`` in ``[N]^2`` (1-based files)."""
    return list(itertools.product(range(1, N + 1), repeat=2))


def _shift(x: list[int], n: int, q: int) -> list[int]:
    return [0] * (q - n) + x[:n]


def _evaluate(scheme: LinearScheme, d: Demand, value: Callable[[int, int], int], cache_value=None):
    """Run the plans in time order; ``value(file, j)`` gives a library bit.

    ``cache_value`` (defaults to ``value``) is what the relay's encoder
    reads for cached bits.
    """
    q = scheme.q
    nd, nr, ns = scheme.n.n_d, scheme.n.n_r, scheme.n.n_s
    cache_value = cache_value or value
    files = {"r": d[0] - 1, "u": d[1] - 1}
    xs, xr, yr, yu = [], [], [], []
    for t in range(scheme.T):
        s = [0] * q
        for k, lvl in enumerate(scheme.denb_plan[t]):
            for term in lvl:
                s[k] ^= value(files[term.role], term.index)
        xs.append(s)
        yr.append(_shift(s, ns, q))
        r = [0] * q
        for k, lvl in enumerate(scheme.rn_plan[t]):
            for term in lvl:
                if isinstance(term, Bit):
                    r[k] ^= cache_value(files[term.role], term.index)
                else:
                    r[k] ^= yr[term.t][term.pos]
        xr.append(r)
        yu.append([a ^ b for a, b in zip(_shift(s, nd, q), _shift(r, nr, q))])
    return xs, xr, yr, yu


@dataclass(frozen=True)
class Transcript:
    n: tuple[int, int, int]
    d: Demand
    files: tuple[tuple[int, ...], ...]
    x_s: tuple[LevelWord, ...]
    x_r: tuple[LevelWord, ...]
    y_r: tuple[LevelWord, ...]
    y_u: tuple[LevelWord, ...]

    @property
    def T(self) -> int:
        return len(self.x_s)

    def consistent(self) -> bool:
        """Recompute both receptions from the transmit words."""
        nd, nr, ns = self.n
        for s, r, yr, yu in zip(self.x_s, self.x_r, self.y_r, self.y_u):
            if apply_downshift(s, ns) != yr:
                return False
            if apply_downshift(s, nd) ^ apply_downshift(r, nr) != yu:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "n": list(self.n),
            "d": list(self.d),
            "x_s": [str(w) for w in self.x_s],
            "x_r": [str(w) for w in self.x_r],
            "y_r": [str(w) for w in self.y_r],
            "y_u": [str(w) for w in self.y_u],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _check_files(scheme: LinearScheme, files) -> tuple[tuple[int, ...], ...]:
    files = tuple(tuple(int(b) for b in f) for f in files)
    if len(files) != scheme.N or any(len(f) != scheme.L for f in files):
        raise DimensionError(f"need {scheme.N} files of {scheme.L} bits")
    if any(b not in (0, 1) for f in files for b in f):
        raise ValueError("file bits must be 0 or 1")
    return files


def simulate_delivery(scheme: LinearScheme, files, d: Demand) -> Transcript:
    scheme.check_causality()
    files = _check_files(scheme, files)
    xs, xr, yr, yu = _evaluate(scheme, d, lambda i, j: files[i][j])
    tr = Transcript(
        (scheme.n.n_d, scheme.n.n_r, scheme.n.n_s),
        tuple(d),
        files,
        *(tuple(LevelWord(tuple(w)) for w in seq) for seq in (xs, xr, yr, yu)),
    )
    assert tr.consistent()
    return tr


def random_files(scheme: LinearScheme, rng: random.Random) -> list[list[int]]:
    return [[rng.getrandbits(1) for _ in range(scheme.L)] for _ in range(scheme.N)]


@dataclass
class Observations:
    """Symbolic receptions: one GF(2) functional per observed bit."""

    nvars: int
    ue_rows: list[int]
    rn_rows: list[int]


def observations(scheme: LinearScheme, d: Demand) -> Observations:
    L = scheme.L
    xs, xr, yr, yu = _evaluate(scheme, d, lambda i, j: 1 << (i * L + j))
    ue = [v for use in yu for v in use]
    cache = [1 << (i * L + j) for i in range(scheme.N) for j in sorted(scheme.placement.cached)]
    rn = [v for use in yr for v in use] + cache
    return Observations(scheme.N * L, ue, rn)


@dataclass
class Decoders:
    """For every demanded bit, the set of observed bits that XOR to it."""

    d: Demand
    ue: list[int | None]
    rn: list[int | None]

    @property
    def ue_ok(self) -> bool:
        return all(m is not None for m in self.ue)

    @property
    def rn_ok(self) -> bool:
        return all(m is not None for m in self.rn)


def build_decoders(scheme: LinearScheme, d: Demand) -> Decoders:
    obs = observations(scheme, d)
    L = scheme.L
    ue_t = [1 << ((d[1] - 1) * L + j) for j in range(L)]
    rn_t = [1 << ((d[0] - 1) * L + j) for j in range(L)]
    return Decoders(
        d,
        combination_decoder(obs.ue_rows, obs.nvars, ue_t),
        combination_decoder(obs.rn_rows, obs.nvars, rn_t),
    )


def _apply(masks: Sequence[int | None], bits: Sequence[int]) -> tuple[int, ...]:
    if any(m is None for m in masks):
        raise NoUniqueSolution("demanded file is not determined by the receptions")
    word = sum(b << i for i, b in enumerate(bits))
    return tuple((m & word).bit_count() & 1 for m in masks)


def ue_observed_bits(tr: Transcript) -> list[int]:
    return [b for w in tr.y_u for b in w.bits]


def rn_observed_bits(scheme: LinearScheme, tr: Transcript) -> list[int]:
    cache = [tr.files[i][j] for i in range(scheme.N) for j in sorted(scheme.placement.cached)]
    return [b for w in tr.y_r for b in w.bits] + cache


def decode(scheme: LinearScheme, tr: Transcript, dec: Decoders | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Estimates ``(W_{d_r}, W_{d_u})`` at the relay and the user."""
    dec = dec or build_decoders(scheme, tr.d)
    return _apply(dec.rn, rn_observed_bits(scheme, tr)), _apply(dec.ue, ue_observed_bits(tr))


@dataclass
class VerificationReport:
    decode_ok: dict[tuple[Demand, str], bool]
    achieved_dtb: Fraction
    lower_bound: Fraction
    optimal: Fraction
    recursion_ok: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def all_decoded(self) -> bool:
        return all(self.decode_ok.values())

    @property
    def ok(self) -> bool:
        return (
            self.all_decoded
            and self.achieved_dtb >= self.lower_bound
            and self.recursion_ok is not False
        )

    def lines(self) -> list[str]:
        from hetdtb.analytics import fmt

        out = []
        for (d, who), ok in sorted(self.decode_ok.items()):
            out.append(f"decode d=({d[0]},{d[1]}) {who}: {'ok' if ok else 'FAIL'}")
        out.append(f"achieved_dtb={fmt(self.achieved_dtb)}")
        out.append(f"lower_bound={fmt(self.lower_bound)}")
        out.append(f"optimal={fmt(self.optimal)}")
        if self.recursion_ok is not None:
            out.append(f"recursion={'ok' if self.recursion_ok else 'FAIL'}")
        out.extend(self.notes)
        return out


def check_decodability(scheme: LinearScheme, demand_vectors: Sequence[Demand] | None = None) -> VerificationReport:
    """Zero-error decodability for every demand vector, by GF(2) rank."""
    ok = {}
    for d in demand_vectors or demands(scheme.N):
        dec = build_decoders(scheme, d)
        ok[(d, "rn")] = dec.rn_ok
        ok[(d, "ue")] = dec.ue_ok
    mu = scheme.mu
    return VerificationReport(
        ok, scheme.dtb, dtb_lower_bound(mu, scheme.n), dtb_optimal(mu, scheme.n).optimal
    )


def sampled_zero_error(scheme: LinearScheme, trials: int, rng: random.Random) -> bool:
    """Decode random file instances for every demand and compare bit-exactly."""
    for d in demands(scheme.N):
        dec = build_decoders(scheme, d)
        if not (dec.ue_ok and dec.rn_ok):
            return False
        for _ in range(trials):
            files = random_files(scheme, rng)
            tr = simulate_delivery(scheme, files, d)
            w_r, w_u = decode(scheme, tr, dec)
            if w_r != tr.files[d[0] - 1] or w_u != tr.files[d[1] - 1]:
                return False
    return True


def recursive_reconstruct(scheme: LinearScheme, files, d: Demand) -> tuple[tuple[LevelWord, ...], bool]:
    """Rebuild the relay's receptions from the user's receptions, the
    relay-only DeNB levels and the relay's own-file cache.

    The user's file (hence its cached part) is decoded from the user's
    receptions first; then, use by use, the relay's transmit word is
    re-encoded, peeled off the user's reception to expose the DeNB's top
    ``n_d`` levels, and combined with the genie levels ``n_d .. n_s-1``.
    """
    nd, nr, ns = scheme.n.n_d, scheme.n.n_r, scheme.n.n_s
    if ns < nd:
        raise NotApplicable(f"needs n_s >= n_d, got {scheme.n}")
    q = scheme.q
    tr = simulate_delivery(scheme, files, d)
    dec = build_decoders(scheme, d)
    w_u = _apply(dec.ue, ue_observed_bits(tr))
    own = tr.files[d[0] - 1]
    cached = scheme.placement.cached
    r_idx, u_idx = d[0] - 1, d[1] - 1

    def cache_bit(i: int, j: int) -> int:
        if j not in cached:
            raise CausalityError(f"relay reads uncached bit {j}")
        if i == u_idx:
            return w_u[j]
        if i == r_idx:
            return own[j]
        raise AssertionError("relay plan references an undemanded file")

    yr_hat: list[list[int]] = []
    for t in range(scheme.T):
        x_r = [0] * q
        for k, lvl in enumerate(scheme.rn_plan[t]):
            for term in lvl:
                if isinstance(term, Bit):
                    x_r[k] ^= cache_bit(u_idx if term.role == "u" else r_idx, term.index)
                else:
                    x_r[k] ^= yr_hat[term.t][term.pos]
        peeled = [a ^ b for a, b in zip(tr.y_u[t].bits, _shift(x_r, nr, q))]
        x_s = [0] * q
        for k in range(nd):
            x_s[k] = peeled[q - nd + k]
        for k in range(nd, ns):
            x_s[k] = tr.x_s[t].bits[k]
        yr_hat.append(_shift(x_s, ns, q))
    words = tuple(LevelWord(tuple(w)) for w in yr_hat)
    return words, words == tr.y_r
