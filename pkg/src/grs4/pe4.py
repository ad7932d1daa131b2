"""Linear algebra in flat 4-space with the neutral (+,+,-,-) metric."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

DEFAULT_CAUSAL_EPS = 1e-12


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


@dataclass(frozen=True, slots=True)
class PEVector4:
    """Point/vector of the ambient 4-space, signature (+,+,-,-)."""

    x1: float
    x2: float
    x3: float
    x4: float

    def __add__(self, other: "PEVector4") -> "PEVector4":
        return PEVector4(self.x1 + other.x1, self.x2 + other.x2,
                         self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "PEVector4") -> "PEVector4":
        return PEVector4(self.x1 - other.x1, self.x2 - other.x2,
                         self.x3 - other.x3, self.x4 - other.x4)

    def __neg__(self) -> "PEVector4":
        return PEVector4(-self.x1, -self.x2, -self.x3, -self.x4)

    def __mul__(self, s: float) -> "PEVector4":
        if not isinstance(s, (int, float)):
            return NotImplemented
        return PEVector4(self.x1 * s, self.x2 * s, self.x3 * s, self.x4 * s)

    __rmul__ = __mul__

    def components(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)

    def euclid_norm2(self) -> float:
        return self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 + self.x4 * self.x4

    def euclid_norm(self) -> float:
        return math.sqrt(self.euclid_norm2())

    def is_zero(self) -> bool:
        return self.x1 == 0.0 and self.x2 == 0.0 and self.x3 == 0.0 and self.x4 == 0.0


ZERO4 = PEVector4(0.0, 0.0, 0.0, 0.0)


def inner(a: PEVector4, b: PEVector4) -> float:
    """Indefinite inner product a1*b1 + a2*b2 - a3*b3 - a4*b4."""
    return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3 - a.x4 * b.x4


def causal_character(v: PEVector4, eps: float = DEFAULT_CAUSAL_EPS) -> CausalCharacter:
    """Classify v by the sign of inner(v, v).

    The zero test is relative: |inner(v,v)| <= eps * max(1, Euclidean norm
    squared), so lightlike classification is robust on computed vectors.
    The exact zero vector classifies as ZERO, never LIGHTLIKE.
    """
    if v.is_zero():
        return CausalCharacter.ZERO
    q = inner(v, v)
    scale = max(1.0, v.euclid_norm2())
    if abs(q) <= eps * scale:
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.SPACELIKE if q > 0.0 else CausalCharacter.TIMELIKE
