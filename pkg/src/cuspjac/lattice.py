"""Integer lattices: Hermite and Smith normal forms, kernels, congruence systems.

Vectors are plain lists of ints. A lattice is stored by a basis in row form
(each basis vector is a row); ``IntegerLattice`` keeps that basis in row
Hermite normal form so equality and membership are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from .linalg import Matrix


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_rows(rows: Sequence[Sequence[int]], ncols: Optional[int] = None,
             track: bool = False) -> tuple[Matrix, Optional[Matrix]]:
    """Row Hermite normal form.

    Returns the nonzero rows of ``H = U @ rows`` (pivots positive, entries
    above each pivot reduced into ``[0, pivot)``). With ``track`` the full
    unimodular ``U`` is returned as well, its rows ordered so that the first
    ``rank`` rows produce ``H`` and the remaining rows span the left kernel.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            ua, ub = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(Ar, Ai)]
            A[i] = [-ub * p + ua * q for p, q in zip(Ar, Ai)]
            if U is not None:
                Ur, Ui = U[r], U[i]
                U[r] = [x * p + y * q for p, q in zip(Ur, Ui)]
                U[i] = [-ub * p + ua * q for p, q in zip(Ur, Ui)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
            if U is not None:
                U[r] = [-v for v in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                if U is not None:
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return A[:r], U


def left_kernel(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of ``{x in Z^m : x @ rows == 0}`` (rows of the result)."""
    if not rows:
        return []
    H, U = hnf_rows(rows, ncols, track=True)
    assert U is not None
    ker = U[len(H):]
    if not ker:
        return []
    return hnf_rows(ker)[0]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``{x in Z^ncols : A @ x == 0}`` (rows of the result)."""
    if not A:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = [list(c) for c in zip(*A)]
    return left_kernel(cols, len(A))


def congruence_lattice(conds: Iterable[tuple[Sequence[int], int]], n: int) -> Matrix:
    """Basis of ``{x in Z^n : a . x = 0 mod q for every (a, q)}``.

    A modulus of 0 means exact equality.
    """
    conds = [(list(a), q) for a, q in conds]
    conds = [(a, q) for a, q in conds if q != 1 and any(a)]
    if not conds:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    k = len(conds)
    A = []
    for idx, (a, q) in enumerate(conds):
        A.append(list(a) + [q if j == idx else 0 for j in range(k)])
    K = integer_kernel(A, n + k)
    gens = [row[:n] for row in K]
    return hnf_rows(gens, n)[0]


def snf_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    """Smith invariants (nonzero, positive, each dividing the next)."""
    A = [list(map(int, r)) for r in M if any(r)]
    if not A:
        return []
    rows, cols = len(A), len(A[0])
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    best, piv = abs(A[i][j]), (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            best = None
            for i in range(t, rows):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best[0]][best[1]])):
                    best = (i, t)
            for j in range(t, cols):
                if A[t][j] and (best is None or abs(A[t][j]) < abs(A[best[0]][best[1]])):
                    best = (t, j)
            i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of ``Z^rank`` with a row-HNF basis."""

    rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], rank: int) -> "IntegerLattice":
        gens = [list(g) for g in gens]
        H = hnf_rows(gens, rank)[0] if gens else []
        return cls(rank, tuple(tuple(r) for r in H))

    @classmethod
    def full(cls, rank: int) -> "IntegerLattice":
        return cls.from_generators([[int(i == j) for j in range(rank)] for i in range(rank)], rank)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.dim == self.rank

    def index(self) -> int:
        """``[Z^rank : L]`` for a full-rank lattice."""
        if not self.is_full_rank:
            raise ValueError("index of a lattice that is not full rank")
        return prod(self.basis[i][i] for i in range(self.rank))

    def coordinates(self, v: Sequence[int]) -> Optional[list[int]]:
        """Integer coordinates of ``v`` in the basis, or ``None`` if ``v`` is not a member."""
        v = list(v)
        coords = []
        for row in self.basis:
            c = next(j for j, x in enumerate(row) if x)
            q, r = divmod(v[c], row[c])
            if r:
                return None
            coords.append(q)
            v = [a - q * b for a, b in zip(v, row)]
        return coords if not any(v) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        return all(self.contains(b) for b in other.basis)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Finite abelian group by invariant factors ``d_1 | d_2 | ...``."""

    invariants: tuple[int, ...]
    l: Optional[int] = None

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def is_trivial(self) -> bool:
        return not self.invariants

    def primary_part(self, l: int) -> "AbelianGroupStructure":
        parts = []
        for d in self.invariants:
            q = 1
            while d % l == 0:
                d //= l
                q *= l
            if q > 1:
                parts.append(q)
        return AbelianGroupStructure(tuple(sorted(parts)), l)

    def __str__(self) -> str:
        if not self.invariants:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariants)


def quotient_structure(K: IntegerLattice, L: IntegerLattice) -> AbelianGroupStructure:
    """Structure of ``K / L`` for full-rank lattices ``L <= K``."""
    if K.rank != L.rank:
        raise ValueError("lattices live in different ambient spaces")
    if not (K.is_full_rank and L.is_full_rank):
        raise ValueError("both lattices must be full rank")
    X = []
    for b in L.basis:
        c = K.coordinates(b)
        if c is None:
            raise ValueError("L is not contained in K")
        X.append(c)
    return AbelianGroupStructure(tuple(d for d in snf_diagonal(X) if d != 1))


def invariant_check(invs: Sequence[int]) -> bool:
    return all(b % a == 0 for a, b in zip(invs, invs[1:])) and all(d > 1 for d in invs)


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
