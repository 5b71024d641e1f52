"""Linear deterministic channel: level words, down-shifts and superposition.

Level 0 is the most significant level.  A link of strength ``n`` delivers
the top ``n`` levels of the transmit word into the bottom ``n`` positions of
the received word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from hetdtb.errors import DimensionError, InvalidShift
from hetdtb.gf2 import Gf2Matrix


@dataclass(frozen=True)
class LevelWord:
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 1:
            raise DimensionError("a level word has at least one level")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"non-binary level in {self.bits}")

    @classmethod
    def of(cls, bits: Iterable[int] | str) -> LevelWord:
        if isinstance(bits, str):
            return cls(tuple(int(c) for c in bits))
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def zeros(cls, q: int) -> LevelWord:
        return cls((0,) * q)

    @property
    def q(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __xor__(self, other: LevelWord) -> LevelWord:
        return superpose(self, other)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def apply_downshift(x: LevelWord, n: int) -> LevelWord:
    """Received word ``S^(q-n) x`` for a link of strength ``n``."""
    q = x.q
    if not 0 <= n <= q:
        raise InvalidShift(f"link strength {n} outside [0, {q}]")
    return LevelWord((0,) * (q - n) + x.bits[:n])


def superpose(a: LevelWord, b: LevelWord) -> LevelWord:
    if a.q != b.q:
        raise DimensionError(f"word sizes differ: {a.q} vs {b.q}")
    return LevelWord(tuple(x ^ y for x, y in zip(a.bits, b.bits)))


def shift_matrix(q: int) -> Gf2Matrix:
    """The q x q down-shift matrix (ones on the first sub-diagonal)."""
    return Gf2Matrix(q, q, tuple(int(i == j + 1) for i in range(q) for j in range(q)))


def matrix_power(S: Gf2Matrix, k: int) -> Gf2Matrix:
    out = Gf2Matrix.identity(S.rows)
    for _ in range(k):
        out = out @ S
    return out
