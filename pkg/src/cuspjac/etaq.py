"""Eta quotients on X_0(N): the Ligozat matrix, modularity and divisor orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from .arith import divisors, factorize, k_of_N, num, ord_p
from .cusp_lattice import DivisorVector, degree_check
from .lattice import content
from .linalg import integer_adjugate


class EtaExponentVector(DivisorVector):
    """Exponents ``r_d'`` of ``prod eta(d' z)^(r_d')``, divisors ascending."""


def vanishing_order(N: int, d: int, dp: int) -> Fraction:
    """``a_N(d, d')``: 24 times the order of ``eta(d' z)`` at a cusp of level ``d``.

    >>> vanishing_order(45, 3, 5)
    Fraction(1, 1)
    """
    if N % d or N % dp:
        raise ValueError(f"{d} and {dp} must divide {N}")
    M = gcd(d, N // d)
    return Fraction(N // M * gcd(d, dp) ** 2, d * dp)


@dataclass(frozen=True)
class LigozatMatrix:
    """``Lambda(N)`` with entries ``a_N(d, d') / 24`` and its exact inverse."""

    N: int
    divisors: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def apply(self, r: list) -> list[Fraction]:
        return [sum(a * x for a, x in zip(row, r)) for row in self.entries]

    def solve(self, D: list) -> list[Fraction]:
        return [sum(a * x for a, x in zip(row, D)) for row in self.inverse]


@lru_cache(maxsize=None)
def ligozat_matrix(N: int) -> LigozatMatrix:
    ds = divisors(N)
    entries = tuple(tuple(vanishing_order(N, d, dp) / 24 for dp in ds) for d in ds)
    # Lambda = diag(1/d) M' diag(1/d') / 24 with M' integral, so
    # Lambda^-1 = 24 diag(d') M'^-1 diag(d).
    Mp = [[N // gcd(d, N // d) * gcd(d, dp) ** 2 for dp in ds] for d in ds]
    det, adj = integer_adjugate(Mp)
    inverse = tuple(
        tuple(Fraction(24 * dp * adj[i][j] * d, det) for j, d in enumerate(ds))
        for i, dp in enumerate(ds)
    )
    return LigozatMatrix(N, ds, entries, inverse)


def _integral(x) -> bool:
    return Fraction(x).denominator == 1


def is_modular(r: EtaExponentVector) -> bool:
    """Ligozat's criteria for ``prod eta(d' z)^(r_d')`` to be a function on X_0(N)."""
    N = r.N
    rs = [Fraction(x) for x in r.entries]
    if not all(x.denominator == 1 for x in rs):
        return False
    rs_i = [int(x) for x in rs]
    ds = r.divisors
    if sum(x * d for x, d in zip(rs_i, ds)) % 24:
        return False
    if sum(x * (N // d) for x, d in zip(rs_i, ds)) % 24:
        return False
    if sum(rs_i):
        return False
    for p in factorize(N).primes:
        if sum(x * ord_p(d, p) for x, d in zip(rs_i, ds)) % 2:
            return False
    return True


def div_of_eta(r: EtaExponentVector) -> DivisorVector:
    """``Lambda(N) r``: the coefficient of ``P_d`` in the divisor of the quotient."""
    L = ligozat_matrix(r.N)
    return DivisorVector(r.N, tuple(L.apply(list(r.entries)))).normalized()


def eta_of_divisor(D: DivisorVector) -> EtaExponentVector:
    """``Lambda(N)^-1 D`` for ``D`` of degree zero."""
    if not degree_check(D):
        raise ValueError("divisor does not have degree zero")
    L = ligozat_matrix(D.N)
    return EtaExponentVector(D.N, tuple(L.solve(list(D.entries)))).normalized()


@dataclass(frozen=True)
class OrderData:
    N: int
    V: tuple[int, ...]
    GCD: Optional[int]
    Vnorm: tuple[int, ...]
    Pw: dict[int, int]
    h: int
    order: int
    degenerate: bool = False


def V_of(D: DivisorVector) -> tuple[int, ...]:
    """``V(D) = (k(N)/24) Lambda^-1 D``, an integer vector."""
    r = eta_of_divisor(D)
    k = k_of_N(D.N)
    V = [Fraction(k, 24) * Fraction(x) for x in r.entries]
    if not all(v.denominator == 1 for v in V):
        raise ArithmeticError(f"V(D) is not integral for N={D.N}")
    return tuple(int(v) for v in V)


def order_of_divisor(D: DivisorVector) -> OrderData:
    """Order of the class of ``D`` in the cuspidal class group.

    >>> order_of_divisor(DivisorVector(11, (1, -1))).order
    5
    """
    N = D.N
    if not D.is_integral():
        raise ValueError("order needs integer coefficients")
    if not degree_check(D):
        raise ValueError("divisor does not have degree zero")
    primes = factorize(N).primes
    if D.is_zero():
        n = len(D.entries)
        return OrderData(N, (0,) * n, None, (0,) * n, {p: 0 for p in primes}, 1, 1, True)
    V = V_of(D)
    g = content(V)
    W = tuple(v // g for v in V)
    ds = D.divisors
    Pw = {l: sum(w for w, d in zip(W, ds) if ord_p(d, l) % 2) for l in primes}
    h = 2 if any(x % 2 for x in Pw.values()) else 1
    order = num(k_of_N(N) * h, 24 * g)
    return OrderData(N, V, g, W, Pw, h, order)


def brute_force_order(D: DivisorVector) -> int:
    """Least ``n >= 1`` making ``n Lambda^-1 D`` a modular eta quotient."""
    r = eta_of_divisor(D)
    n0 = 1
    for x in r.entries:
        n0 = n0 * Fraction(x).denominator // gcd(n0, Fraction(x).denominator)
    for j in range(1, 25):
        if is_modular(r.scale(n0 * j)):
            return n0 * j
    raise ArithmeticError("no modular multiple within 24 steps")
