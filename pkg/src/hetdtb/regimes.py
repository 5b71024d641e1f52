"""Channel triples, Gaussian-to-LDM quantization and regime classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from hetdtb.errors import InvalidChannel


@dataclass(frozen=True, order=True)
class ChannelTriple:
    """Integer link strengths: DeNB->UE (n_d), RN->UE (n_r), DeNB->RN (n_s)."""

    n_d: int
    n_r: int
    n_s: int

    def __post_init__(self):
        for name in ("n_d", "n_r", "n_s"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidChannel(f"{name} must be a positive integer, got {v!r}")

    @property
    def q(self) -> int:
        return max(self.n_d, self.n_r, self.n_s)

    def __str__(self) -> str:
        return f"({self.n_d},{self.n_r},{self.n_s})"


class Regime(str, enum.Enum):
    R1 = "R1"
    R1P = "R1'"
    R2 = "R2"
    R2P = "R2'"
    R31 = "R31"
    R32 = "R32"
    R3P = "R3'"
    R4 = "R4"
    R4P = "R4'"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RegimeLabel:
    fine: Regime
    coarse: str
    in_I0: bool
    in_I1: bool

    def __str__(self) -> str:
        return self.fine.value


# Fixed evaluation order; boundary channels go to the first match.
TIE_BREAK_ORDER = (
    Regime.R1, Regime.R1P, Regime.R2, Regime.R2P,
    Regime.R31, Regime.R32, Regime.R3P, Regime.R4, Regime.R4P,
)


def quantize_channel(h_mag_sq: float, P: float) -> int:
    """Bits per channel use of a Gaussian link, ``max(1, ceil(log2(P |h|^2)))``."""
    snr = P * h_mag_sq
    if not snr > 0:
        raise InvalidChannel(f"P*|h|^2 must be positive, got {snr}")
    return max(1, math.ceil(math.log2(snr)))


def coarse_classes(n: ChannelTriple) -> list[str]:
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    out = []
    if nd >= max(nr, ns):
        out.append("C1")
    if nr >= nd >= ns:
        out.append("C2")
    if min(nr, ns) >= nd:
        out.append("C3")
    if ns >= nd >= nr:
        out.append("C4")
    return out


def in_I0(n: ChannelTriple) -> bool:
    return 2 * n.n_s >= n.n_d >= n.n_s


def in_I1(n: ChannelTriple) -> bool:
    return 2 * max(n.n_d, n.n_r) >= n.n_s >= n.n_d


def regime_predicates(n: ChannelTriple) -> dict[Regime, bool]:
    """Non-strict membership test for every fine regime."""
    nd, nr, ns = n.n_d, n.n_r, n.n_s
    C = set(coarse_classes(n))
    i0 = in_I0(n)
    i0c = 2 * ns <= nd
    i1c = 2 * max(nd, nr) <= ns
    return {
        Regime.R1: "C1" in C and i0,
        Regime.R1P: "C1" in C and i0c,
        Regime.R2: "C2" in C and i0,
        Regime.R2P: "C2" in C and i0c,
        Regime.R31: "C3" in C and nd <= ns <= 2 * nd,
        Regime.R32: "C3" in C and 2 * nd <= ns <= 2 * nr,
        Regime.R3P: "C3" in C and i1c,
        Regime.R4: "C4" in C and in_I1(n),
        Regime.R4P: "C4" in C and i1c,
    }


def matching_regimes(n: ChannelTriple) -> list[Regime]:
    preds = regime_predicates(n)
    return [r for r in TIE_BREAK_ORDER if preds[r]]


def classify_regime(n: ChannelTriple) -> RegimeLabel:
    """Assign the fine regime; ties resolved by ``TIE_BREAK_ORDER``."""
    matches = matching_regimes(n)
    # totality is checked exhaustively in the test-suite
    fine = matches[0]
    coarse = {
        Regime.R1: "C1", Regime.R1P: "C1", Regime.R2: "C2", Regime.R2P: "C2",
        Regime.R31: "C3", Regime.R32: "C3", Regime.R3P: "C3",
        Regime.R4: "C4", Regime.R4P: "C4",
    }[fine]
    return RegimeLabel(fine, coarse, in_I0(n), in_I1(n))
