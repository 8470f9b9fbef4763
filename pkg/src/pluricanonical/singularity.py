"""Cyclic quotient singularities 1/m(a_1, ..., a_n)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = ["CyclicSingularityType", "ReidTaiClass", "age", "reid_tai_class", "canonical_form"]


class ReidTaiClass(str, enum.Enum):
    TERMINAL = "terminal"
    CANONICAL = "canonical_not_terminal"
    NONCANONICAL = "noncanonical"


@dataclass(frozen=True)
class CyclicSingularityType:
    """The germ C^n / Z_m where the generator acts by diag(xi^a_1, ..., xi^a_n).

    Weights are kept in the order given; that order is the order of the local
    coordinates and matters for the stalk ideals.
    """

    order: int
    weights: tuple[int, ...]

    def __post_init__(self):
        m = int(self.order)
        w = tuple(int(a) % m if m else int(a) for a in self.weights)
        if m < 2:
            raise ValueError(f"order must be >= 2, got {m}")
        if len(w) < 2:
            raise ValueError("dimension must be at least 2")
        if any(a == 0 or gcd(a, m) != 1 for a in w):
            raise ValueError(f"weights {tuple(self.weights)} not all coprime to {m}")
        object.__setattr__(self, "order", m)
        object.__setattr__(self, "weights", w)

    @classmethod
    def parse(cls, text: str) -> "CyclicSingularityType":
        """Parse ``"m,a1,...,an"``."""
        parts = [int(p) for p in str(text).replace(" ", "").split(",") if p]
        if len(parts) < 3:
            raise ValueError(f"expected m,a1,...,an got {text!r}")
        return cls(parts[0], tuple(parts[1:]))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def scaled(self, u: int) -> "CyclicSingularityType":
        return CyclicSingularityType(self.order, tuple(a * u for a in self.weights))

    def __str__(self):
        return f"1/{self.order}({','.join(map(str, self.weights))})"


def age(sing: CyclicSingularityType, j: int) -> Fraction:
    """Age of the j-th power of the generator: sum_i (j*a_i mod m) / m."""
    m = sing.order
    if not 1 <= j < m:
        raise ValueError(f"j={j} outside 1..{m - 1}")
    return Fraction(sum(j * a % m for a in sing.weights), m)


def reid_tai_class(sing: CyclicSingularityType) -> ReidTaiClass:
    least = min(age(sing, j) for j in range(1, sing.order))
    if least < 1:
        return ReidTaiClass.NONCANONICAL
    if least == 1:
        return ReidTaiClass.CANONICAL
    return ReidTaiClass.TERMINAL


def canonical_form(sing: CyclicSingularityType) -> CyclicSingularityType:
    """Lexicographically least weight tuple over unit multiples and permutations.

    Sorting the scaled tuple gives the least permutation, so the minimum is
    taken over units only.  This ordering is part of the report format.
    """
    m = sing.order
    best = min(
        tuple(sorted(u * a % m for a in sing.weights))
        for u in range(1, m)
        if gcd(u, m) == 1
    )
    return CyclicSingularityType(m, best)


def equivalent(a: CyclicSingularityType, b: CyclicSingularityType) -> bool:
    return canonical_form(a) == canonical_form(b)


def is_a_type(sing: CyclicSingularityType) -> bool:
    """Surface A_{m-1} points 1/m(1, m-1) (Du Val)."""
    return sing.dim == 2 and canonical_form(sing).weights == (1, sing.order - 1)

