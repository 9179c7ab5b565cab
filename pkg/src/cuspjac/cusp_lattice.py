"""Cusps of X_0(N) by level and the lattices S(N), S(N)^0.

A divisor ``sum a_d P_d`` is stored as one coefficient per divisor of ``N``
in ascending order. ``P_d`` is the sum of the ``phi(gcd(d, N/d))`` cusps of
level ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

from .arith import divisors, phi

Number = Union[int, Fraction]


@dataclass(frozen=True)
class CuspLevel:
    d: int
    M_d: int
    count: int


@lru_cache(maxsize=None)
def cusp_table(N: int) -> tuple[CuspLevel, ...]:
    """One entry per divisor of ``N``.

    >>> [c.count for c in cusp_table(45)]
    [1, 2, 1, 1, 2, 1]
    """
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    for d in divisors(N):
        M = gcd(d, N // d)
        out.append(CuspLevel(d, M, phi(M)))
    return tuple(out)


def cusp_count(N: int) -> int:
    return sum(c.count for c in cusp_table(N))


@dataclass(frozen=True)
class DivisorVector:
    """Coefficients ``a_d`` of ``sum a_d P_d``, divisors ascending."""

    N: int
    entries: tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(divisors(self.N)):
            raise ValueError(f"expected {len(divisors(self.N))} entries for N={self.N}")

    @classmethod
    def zero(cls, N: int) -> "DivisorVector":
        return cls(N, (0,) * len(divisors(N)))

    @classmethod
    def from_map(cls, N: int, coeffs: Mapping[int, Number]) -> "DivisorVector":
        ds = divisors(N)
        bad = [d for d in coeffs if d not in ds]
        if bad:
            raise ValueError(f"{bad} do not divide {N}")
        return cls(N, tuple(coeffs.get(d, 0) for d in ds))

    @classmethod
    def unit(cls, N: int, d: int) -> "DivisorVector":
        return cls.from_map(N, {d: 1})

    @property
    def divisors(self) -> tuple[int, ...]:
        return divisors(self.N)

    def __getitem__(self, d: int) -> Number:
        return self.entries[self.divisors.index(d)]

    def as_map(self) -> dict[int, Number]:
        return dict(zip(self.divisors, self.entries))

    def _same(self, other: "DivisorVector") -> None:
        if self.N != other.N:
            raise ValueError("level mismatch")

    def __add__(self, other: "DivisorVector") -> "DivisorVector":
        self._same(other)
        return type(self)(self.N, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "DivisorVector") -> "DivisorVector":
        self._same(other)
        return type(self)(self.N, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "DivisorVector":
        return type(self)(self.N, tuple(-a for a in self.entries))

    def scale(self, c: Number) -> "DivisorVector":
        return type(self)(self.N, tuple(c * a for a in self.entries))

    def __rmul__(self, c: Number) -> "DivisorVector":
        return self.scale(c)

    def normalized(self) -> "DivisorVector":
        """Integral Fractions become ints."""
        return type(self)(self.N, tuple(_norm(a) for a in self.entries))

    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def degree(self) -> Number:
        return sum(a * c.count for a, c in zip(self.entries, cusp_table(self.N)))


def _norm(a: Number) -> Number:
    if isinstance(a, Fraction) and a.denominator == 1:
        return int(a)
    return a


DegreeZeroVector = DivisorVector


def degree_check(v: DivisorVector) -> bool:
    """True iff ``v`` lies in S(N)^0."""
    return v.degree() == 0


def C_vector(N: int, d: int) -> DivisorVector:
    """``C_d = phi(M_d) P_1 - P_d`` for ``d != 1``."""
    if d == 1 or N % d:
        raise ValueError(f"C_d needs a divisor d > 1 of {N}")
    M = gcd(d, N // d)
    return DivisorVector.from_map(N, {1: phi(M), d: -1})


def C_basis(N: int) -> list[DivisorVector]:
    """The Z-basis ``{C_d : d | N, d > 1}`` of S(N)^0."""
    return [C_vector(N, d) for d in divisors(N) if d > 1]


def tensor(v1: DivisorVector, v2: DivisorVector) -> DivisorVector:
    """Entry at ``d1 * d2`` is ``v1[d1] * v2[d2]``; levels must be coprime.

    >>> tensor(DivisorVector(5, (1, 0)), DivisorVector(49, (7, -1, -1))).entries
    (7, 0, -1, 0, -1, 0)
    """
    if gcd(v1.N, v2.N) != 1:
        raise ValueError(f"levels {v1.N} and {v2.N} are not coprime")
    coeffs = {d1 * d2: a * b for d1, a in v1.as_map().items() for d2, b in v2.as_map().items()}
    return DivisorVector.from_map(v1.N * v2.N, coeffs)


def tensor_all(vs: Iterable[DivisorVector]) -> DivisorVector:
    vs = list(vs)
    out = vs[0]
    for v in vs[1:]:
        out = tensor(out, v)
    return out
