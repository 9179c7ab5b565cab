"""Independent lattice computation of C(N) and of the kernel of delta-bar.

Two paths are provided.

* The ambient path works in ``S(N)^0`` with the basis ``C_d``. Principal
  divisors are those whose eta quotient passes Ligozat's criteria; the
  kernel consists of divisors whose leading Fourier coefficients, read off
  the eta quotient directly, are integral in every ``Omega_{d'}``. Nothing
  here depends on the generators ``Z(d)``.
* The Z path works with coefficient vectors over the ``Z(d)`` and the
  tabulated classes of the ``h_d``.

Both quotients are computed with Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .arith import divisors, factorize, lcm, ord_p
from .cusp_lattice import C_basis
from .etaq import ligozat_matrix
from .generators import OrderedLevel, check_hypotheses, prime_ordering, z_vector
from .lattice import (
    AbelianGroupStructure,
    IntegerLattice,
    congruence_lattice,
    quotient_structure,
)

Row = list[Fraction]


def _scaled(row: Sequence[Fraction], modulus: int) -> tuple[list[int], int]:
    """``row . x = 0 mod modulus`` rewritten over the integers."""
    L = lcm(*(Fraction(a).denominator for a in row))
    return [int(a * L) for a in row], modulus * L


def _eta_forms(N: int, columns: Sequence[Sequence[int]]) -> list[Row]:
    """Rows of ``Lambda^-1 T`` where the columns of ``T`` are the given divisors."""
    Li = ligozat_matrix(N).inverse
    return [[sum(a * c[j] for j, a in enumerate(row)) for c in columns] for row in Li]


def _principal_conditions(N: int, R: list[Row]) -> list[tuple[list[int], int]]:
    ds = divisors(N)
    k = len(R[0])
    conds = [_scaled(row, 1) for row in R]
    combos = [
        ([sum(R[i][j] * d for i, d in enumerate(ds)) for j in range(k)], 24),
        ([sum(R[i][j] * (N // d) for i, d in enumerate(ds)) for j in range(k)], 24),
        ([sum(R[i][j] for i in range(len(ds))) for j in range(k)], 0),
    ]
    for p in factorize(N).primes:
        combos.append(([sum(R[i][j] * ord_p(d, p) for i, d in enumerate(ds)) for j in range(k)], 2))
    conds += [_scaled(row, q) for row, q in combos]
    return conds


def _leading_forms(N: int, R: list[Row]) -> list[tuple[Row, int]]:
    """Linear forms giving each ``Omega_{d'}`` coordinate, with the modulus 1.

    The exponent of ``sqrt p`` in the leading coefficient at a cusp of level
    ``d'`` is ``sum_k r_k (min(v_p d', v_p k) - v_p k)``. When ``p`` does not
    divide ``d'`` the generator of ``Omega_{d'}`` is ``p`` itself, so the
    coordinate is half of that exponent.
    """
    ds = divisors(N)
    k = len(R[0])
    out = []
    for dp in ds:
        if dp == N:
            continue
        for p in factorize(N).primes:
            a = ord_p(dp, p)
            w = [min(a, ord_p(d, p)) - ord_p(d, p) for d in ds]
            row = [sum(R[i][j] * w[i] for i in range(len(ds))) for j in range(k)]
            if a == 0:
                row = [x / 2 for x in row]
            out.append((row, 1))
    return out


def _lattice(conds, n: int) -> IntegerLattice:
    return IntegerLattice.from_generators(congruence_lattice(conds, n), n)


@dataclass(frozen=True)
class AmbientLattices:
    """``Prin <= K <= Z^(sigma_0 - 1)`` in the coordinates of the ``C_d`` basis."""

    N: int
    principal: IntegerLattice
    kernel: IntegerLattice


@lru_cache(maxsize=None)
def ambient_lattices(N: int) -> AmbientLattices:
    if N < 2:
        raise ValueError("N must be at least 2")
    cols = [list(c.entries) for c in C_basis(N)]
    R = _eta_forms(N, cols)
    n = len(cols)
    P = _lattice(_principal_conditions(N, R), n)
    K = _lattice([_scaled(row, q) for row, q in _leading_forms(N, R)], n)
    return AmbientLattices(N, P, K)


def _z_columns(level: OrderedLevel) -> tuple[list[int], list[list[int]]]:
    ds = [d for d in divisors(level.N) if d > 1]
    return ds, [list(z_vector(level, d).vector.entries) for d in ds]


@lru_cache(maxsize=None)
def relation_lattice(level: OrderedLevel) -> IntegerLattice:
    """``{c : sum c_d Z(d) is principal}`` inside ``Z^(number of d > 1)``."""
    ds, cols = _z_columns(level)
    R = _eta_forms(level.N, cols)
    return _lattice(_principal_conditions(level.N, R), len(ds))


@lru_cache(maxsize=None)
def kernel_lattice(level: OrderedLevel, source: str = "exact", halve: bool = True) -> IntegerLattice:
    """``{c : delta-bar(sum c_d Z(d)) = 0}`` from the classes of the ``h_d``.

    With ``halve`` the coordinate of a prime not dividing ``d'`` is half its
    ``sqrt`` exponent, as in ``Omega_{d'}``; without it the uniform square-root
    basis is used, which only changes the 2-primary part.
    """
    from .delta import omega_table

    table = omega_table(level, source)
    ds = [d for d in divisors(level.N) if d > 1]
    L = lcm(*(table[d][0] for d in ds))
    conds = []
    for dp in divisors(level.N):
        if dp == level.N:
            continue
        for i, p in enumerate(level.primes):
            row = [(L // table[d][0]) * table[d][1][dp][i] for d in ds]
            q = L * (2 if halve and dp % p else 1)
            conds.append((row, q))
    return _lattice(conds, len(ds))


def snf_structure(K: IntegerLattice, L: IntegerLattice, l: Optional[int] = None) -> AbelianGroupStructure:
    """``K / L`` by Smith normal form, or its ``l``-primary part."""
    if not K.contains_lattice(L):
        raise ValueError("L is not contained in K")
    G = quotient_structure(K, L)
    return G.primary_part(l) if l is not None else G


@lru_cache(maxsize=None)
def cuspidal_group(N: int) -> AbelianGroupStructure:
    """C(N) as the quotient of ``Z^(D_N)`` by the relations among the ``Z(d)``."""
    level = prime_ordering(N)
    n = len(divisors(N)) - 1
    return snf_structure(IntegerLattice.full(n), relation_lattice(level))


@lru_cache(maxsize=None)
def cuspidal_group_ambient(N: int) -> AbelianGroupStructure:
    A = ambient_lattices(N)
    return snf_structure(IntegerLattice.full(len(divisors(N)) - 1), A.principal)


@lru_cache(maxsize=None)
def kernel_group(N: int) -> AbelianGroupStructure:
    """``ker(delta-bar)`` on C(N) along the ambient path."""
    A = ambient_lattices(N)
    return snf_structure(A.kernel, A.principal)


@lru_cache(maxsize=None)
def kernel_group_z(N: int, source: str = "exact") -> AbelianGroupStructure:
    level = prime_ordering(N)
    return snf_structure(kernel_lattice(level, source), relation_lattice(level))


@dataclass(frozen=True)
class VerifyReport:
    N: int
    l: int
    formula: tuple[int, ...]
    oracle: tuple[int, ...]
    z_path: tuple[int, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def equal(self) -> bool:
        return self.formula == self.oracle

    def __str__(self) -> str:
        fmt = lambda xs: " + ".join(f"Z/{x}" for x in xs) or "0"  # noqa: E731
        head = "EQUAL" if self.equal else "NOT EQUAL"
        out = f"N={self.N} l={self.l}: {head}  formula {fmt(self.formula)}  oracle {fmt(self.oracle)}"
        if self.z_path != self.oracle:
            out += f"  (Z path {fmt(self.z_path)})"
        return out


def verify(N: int, l: int) -> VerifyReport:
    """Compare the closed-form torsion structure with the lattice computation."""
    from .kernel import torsion_structure

    T = torsion_structure(N, l)
    formula = tuple(sorted(s.cyclic_order for s in T.summands if s.valuation > 0))
    oracle = kernel_group(N).primary_part(l).invariants
    z_path = kernel_group_z(N).primary_part(l).invariants
    return VerifyReport(N, l, formula, tuple(oracle), tuple(z_path))


def verify_hypotheses(N: int, l: int) -> None:
    check_hypotheses(N, l)
