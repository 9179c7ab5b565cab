"""Exponent tuples ``f = (f_1, ..., f_s)`` and their index functions.

Indices are 1-based. Positions outside ``1..s`` read as 0, so guards such as
``n+ = s + 1`` are expressible. For tuples with a distinguished entry
``f_iota >= 2`` the successor and predecessor skip ``iota``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional

Kind = Literal["general", "iota", "sf"]


@dataclass(frozen=True)
class ExponentTuple:
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.f):
            raise ValueError(f"negative exponent in {self.f}")

    @property
    def s(self) -> int:
        return len(self.f)

    def at(self, i: int) -> int:
        return self.f[i - 1] if 1 <= i <= self.s else 0

    def count_ones(self) -> int:
        return sum(1 for x in self.f if x == 1)

    @property
    def w(self) -> int:
        return self.count_ones()

    @cached_property
    def kind(self) -> Optional[Kind]:
        """``general`` (two entries >= 2), ``iota``, ``sf`` or ``None`` if not in F."""
        if sum(1 for x in self.f if x >= 1) < 2:
            return None
        big = sum(1 for x in self.f if x >= 2)
        if big >= 2:
            return "general"
        if big == 1:
            return "iota"
        return "sf"

    @property
    def in_F(self) -> bool:
        return self.kind is not None

    @cached_property
    def iota(self) -> Optional[int]:
        if self.kind != "iota":
            return None
        return next(i for i in range(1, self.s + 1) if self.at(i) >= 2)

    @property
    def b(self) -> Optional[int]:
        return None if self.iota is None else self.at(self.iota)

    def plus(self, j: int) -> int:
        k = j + 1
        return k + 1 if self.iota is not None and k == self.iota else k

    def minus(self, j: int) -> int:
        k = j - 1
        return k - 1 if self.iota is not None and k == self.iota else k

    def _ones(self) -> list[int]:
        return [i for i in range(1, self.s + 1) if self.at(i) == 1]

    @cached_property
    def m(self) -> Optional[int]:
        ones = self._ones()
        return ones[0] if ones else None

    def _block_ends(self) -> list[int]:
        return [i for i in self._ones() if self.at(self.plus(i)) != 1]

    @cached_property
    def n(self) -> Optional[int]:
        ends = self._block_ends()
        return ends[0] if ends else None

    @cached_property
    def n_prime(self) -> Optional[int]:
        ones = self._ones()
        return ones[-1] if ones else None

    @cached_property
    def m_prime(self) -> Optional[int]:
        if self.n_prime is None:
            return None
        i = self.n_prime
        while self.at(self.minus(i)) == 1:
            i = self.minus(i)
        return i

    @cached_property
    def n_second(self) -> Optional[int]:
        ends = self._block_ends()
        return ends[1] if len(ends) > 1 else None

    def blocks(self) -> int:
        """Number of maximal runs of ones, adjacency taken through the successor."""
        return len(self._block_ends())

    def flip(self, *idx: int) -> "ExponentTuple":
        """Toggle the 0/1 entries at the given positions."""
        g = list(self.f)
        for i in idx:
            if not 1 <= i <= self.s or g[i - 1] > 1:
                raise ValueError(f"cannot flip position {i} of {self.f}")
            g[i - 1] = 1 - g[i - 1]
        return ExponentTuple(tuple(g))

    def as_dict(self) -> dict[str, object]:
        return {
            "f": self.f,
            "kind": self.kind,
            "iota": self.iota,
            "m": self.m,
            "n": self.n,
            "n_prime": self.n_prime,
            "m_prime": self.m_prime,
            "n_second": self.n_second,
            "w": self.w,
        }
