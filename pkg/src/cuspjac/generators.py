"""Prime orderings, the local vectors A_p and B_p, and the generators Z(d) of C(N)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Optional

from .arith import (
    K_p,
    factorize,
    gamma,
    is_prime,
    level_tuple,
    n_of,
    ord_p,
)
from .cusp_lattice import DivisorVector, degree_check, tensor_all
from .tuples import ExponentTuple


class HypothesisError(ValueError):
    """Raised when (N, l) falls outside the admissible range."""


def check_hypotheses(N: int, l: Optional[int]) -> None:
    if N < 3 or N % 2 == 0:
        raise HypothesisError(f"N={N} must be odd and at least 3 (N even or too small)")
    if l is None:
        return
    if l == 2:
        raise HypothesisError("l=2 is excluded")
    if l < 2 or not is_prime(l):
        raise HypothesisError(f"l={l} is not an odd prime")
    if (3 * N) % (l * l) == 0:
        raise HypothesisError(f"l^2 divides 3N for l={l}, N={N}")


@dataclass(frozen=True)
class OrderedLevel:
    """``N`` with its primes listed as ``p_1 < ... < p_s`` in the chosen order."""

    N: int
    l: Optional[int]
    primes: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.primes)

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        F = factorize(self.N)
        return tuple(F.exponent(p) for p in self.primes)

    @cached_property
    def gammas(self) -> tuple[int, ...]:
        return tuple(gamma(p, r) for p, r in zip(self.primes, self.exponents))

    def p(self, i: int) -> int:
        return self.primes[i - 1]

    def r(self, i: int) -> int:
        return self.exponents[i - 1]

    def gamma(self, i: int) -> int:
        return self.gammas[i - 1]

    def tuple_of(self, d: int) -> ExponentTuple:
        return level_tuple(self.N, d, self.primes)

    def divisor_of(self, f) -> int:
        f = f.f if isinstance(f, ExponentTuple) else tuple(f)
        if len(f) != self.s or any(not 0 <= a <= r for a, r in zip(f, self.exponents)):
            raise ValueError(f"{f} is out of range for N={self.N}")
        out = 1
        for p, a in zip(self.primes, f):
            out *= p**a
        return out


def ordering_is_valid(primes: tuple[int, ...], N: int, l: int) -> bool:
    F = factorize(N)
    g = [ord_p(gamma(p, F.exponent(p)), l) for p in primes]
    q = [ord_p(p - 1, l) for p in primes]
    return all(g[i] >= g[i + 1] and q[i] <= q[i + 1] for i in range(len(primes) - 1))


@lru_cache(maxsize=None)
def prime_ordering(N: int, l: Optional[int] = None) -> OrderedLevel:
    """Lexicographically first prime ordering meeting both monotonicity conditions.

    Without ``l`` the primes are taken in ascending order.

    >>> prime_ordering(35, 3).primes
    (5, 7)
    """
    check_hypotheses(N, l)
    primes = factorize(N).primes
    if l is None:
        return OrderedLevel(N, None, primes)
    for perm in permutations(primes):
        if ordering_is_valid(perm, N, l):
            return OrderedLevel(N, l, perm)
    raise HypothesisError(f"no prime ordering of N={N} fits l={l}")


def vector_A(p: int, r: int, f: int) -> tuple[int, ...]:
    """``A_p(r, f)``, indexed by ``p^k`` for ``k = 0..r``.

    >>> vector_A(7, 2, 1)
    (49, 1, 1)
    """
    if r < 1 or not 0 <= f <= r:
        raise ValueError(f"need 0 <= f <= r, got r={r}, f={f}")
    K = lambda j: K_p(p, j)  # noqa: E731
    if f == 0:
        return tuple(int(k == 0) for k in range(r + 1))
    if f == 1:
        return tuple(p ** max(r - 2 * k, 0) for k in range(r + 1))
    if f == 2:
        out = []
        if r % 2:
            for k in range(r + 1):
                if k == 0:
                    out.append(K((r - 3) // 2))
                elif k <= (r - 1) // 2:
                    out.append(K((r - 1 - 2 * k) // 2))
                elif k == (r + 1) // 2:
                    out.append(0)
                else:
                    out.append(-p * K((2 * k - r - 3) // 2))
        else:
            for k in range(r + 1):
                if k < r // 2:
                    out.append(K((r - 2 - 2 * k) // 2))
                elif k == r // 2:
                    out.append(0)
                else:
                    out.append(-K((2 * k - r - 2) // 2))
        return tuple(out)
    if (r - f) % 2 == 0:
        kap = (r - f) // 2
        return tuple(p**kap if k == 0 else -1 if k >= r - kap else 0 for k in range(r + 1))
    kap = (r - f + 1) // 2
    return tuple(1 if k <= kap else -(p**kap) if k == r else 0 for k in range(r + 1))


def vector_B(p: int, r: int, f: int) -> tuple[int, ...]:
    """``B_p(r, f)``; differs from ``A_p(r, f)`` only at ``f = 1``.

    >>> vector_B(7, 2, 1)
    (7, -1, -1)
    """
    if not 1 <= f <= r:
        raise ValueError(f"B_p(r, f) needs 1 <= f <= r, got r={r}, f={f}")
    if f != 1:
        return vector_A(p, r, f)
    a0 = vector_A(p, r, 0)
    a1 = vector_A(p, r, 1)
    c = p ** (r - 1) * (p + 1)
    return tuple(c * x - y for x, y in zip(a0, a1))


def _local(p: int, r: int, vec: tuple[int, ...]) -> DivisorVector:
    return DivisorVector(p**r, vec)


def is_squarefree_tuple(f: ExponentTuple) -> bool:
    return all(x <= 1 for x in f.f)


@dataclass(frozen=True)
class ZDivisor:
    d: int
    f: ExponentTuple
    vector: DivisorVector
    n_d: int


def z_local_factors(level: OrderedLevel, f: ExponentTuple) -> list[DivisorVector]:
    """The prime-power blocks whose tensor product is ``Z(d)``, in the level order."""
    m = f.m if is_squarefree_tuple(f) else None
    out = []
    for i, (p, r, a) in enumerate(zip(level.primes, level.exponents, f.f), start=1):
        vec = vector_B(p, r, a) if i == m else vector_A(p, r, a)
        out.append(_local(p, r, vec))
    return out


def z_vector(level: OrderedLevel, d: int) -> ZDivisor:
    """``Z(d)`` as a divisor vector over ascending divisors of ``N``.

    >>> z_vector(prime_ordering(245), 35).vector.entries
    (49, -49, 1, -1, 1, -1)
    """
    if d == 1:
        raise ValueError("Z(d) needs d > 1")
    f = level.tuple_of(d)
    vec = tensor_all(z_local_factors(level, f))
    return ZDivisor(d, f, vec, n_of(level.N, d, level.primes))


def z_vectors(level: OrderedLevel) -> list[ZDivisor]:
    return [z_vector(level, d) for d in factorize(level.N).divisors if d > 1]


@dataclass(frozen=True)
class CuspidalGroupPresentation:
    """Generators ``Z(d)`` of C(N) with the cyclic non-squarefree part."""

    level: OrderedLevel
    generators: tuple[ZDivisor, ...]

    @property
    def squarefree(self) -> tuple[ZDivisor, ...]:
        return tuple(z for z in self.generators if is_squarefree_tuple(z.f))

    @property
    def non_squarefree(self) -> tuple[ZDivisor, ...]:
        return tuple(z for z in self.generators if not is_squarefree_tuple(z.f))

    def nsf_orders(self) -> dict[int, int]:
        return {z.d: z.n_d for z in self.non_squarefree}

    def structure(self):
        """Full group structure of C(N) from the relation lattice."""
        from .oracle import cuspidal_group

        return cuspidal_group(self.level.N)

    def describe(self) -> str:
        sf = ", ".join(f"Z({z.d})" for z in self.squarefree) or "0"
        nsf = " + ".join(f"Z/{z.n_d} [Z({z.d})]" for z in self.non_squarefree)
        return f"<{sf}>" + (f" + {nsf}" if nsf else "")


def cuspidal_group_structure(level: OrderedLevel) -> CuspidalGroupPresentation:
    gens = tuple(z_vectors(level))
    for z in gens:
        if not degree_check(z.vector):
            raise ArithmeticError(f"Z({z.d}) is not of degree zero")
    return CuspidalGroupPresentation(level, gens)
