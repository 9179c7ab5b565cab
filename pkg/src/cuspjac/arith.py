"""Elementary arithmetic for odd levels N.

Factorisations, the normalisers ``num``, ``k(N)``, the per-prime factors
``G_p`` and ``g_p``, and the cyclic orders ``n(N, d)`` and ``epsilon(N, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from math import gcd, prod

from .tuples import ExponentTuple


@dataclass(frozen=True)
class Factorization:
    """Prime factorisation of a positive integer, primes ascending."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.factors)

    @property
    def s(self) -> int:
        return len(self.factors)

    def exponent(self, p: int) -> int:
        for q, r in self.factors:
            if q == p:
                return r
        return 0

    @cached_property
    def divisors(self) -> tuple[int, ...]:
        return divisors(self.n)

    def __iter__(self):
        return iter(self.factors)


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division.

    >>> factorize(245).factors
    ((5, 1), (7, 2))
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n!r}")
    out: list[tuple[int, int]] = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of ``n`` in ascending order."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


def ord_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def phi(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(n))


def rad(n: int) -> int:
    return prod(factorize(n).primes)


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def num(a: int, b: int) -> int:
    """Numerator of ``a/b`` in lowest terms, for ``a, b > 0``.

    >>> num(1152, 24)
    48
    """
    if a <= 0 or b <= 0:
        raise ValueError(f"num expects positive arguments, got {a}/{b}")
    return a // gcd(a, b)


def k_of_N(N: int) -> int:
    """``(N / rad N) * prod (p^2 - 1)``."""
    if N <= 1:
        raise ValueError("k(N) needs N > 1")
    F = factorize(N)
    return N // rad(N) * prod(p * p - 1 for p in F.primes)


def gamma(p: int, r: int) -> int:
    """``p^(r-1) (p^2 - 1)``."""
    return p ** (r - 1) * (p * p - 1)


def B_of(p: int) -> int:
    return num(p - 1, 24) * 24 // (p - 1)


def B3_of(p: int) -> int:
    return num(p - 1, 3) * 3 // (p - 1)


def A_of(p: int) -> int:
    return 3 if p == 3 else 1


def K_p(p: int, j: int) -> int:
    """``sum_{i=0}^{j} p^(2i)``; zero for negative ``j``."""
    return sum(p ** (2 * i) for i in range(j + 1))


def kappa(r: int, f: int) -> int:
    """The shift exponent attached to ``2 <= f <= r``."""
    if f == 2:
        return r - 1
    return (r + 1 - f) // 2


def _check_prime_level(p: int, r: int, f: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")
    if r < 1 or not 0 <= f <= r:
        raise ValueError(f"need 0 <= f <= r and r >= 1, got r={r}, f={f}")


def script_G_p(p: int, r: int, f: int) -> int:
    """Local factor ``G_p(r, f)``.

    >>> script_G_p(7, 2, 2), script_G_p(3, 1, 0)
    (48, 8)
    """
    _check_prime_level(p, r, f)
    if f == 0:
        return gamma(p, r)
    if f == 1:
        return 1
    return p ** (r - kappa(r, f) - 1) * (p * p - 1)


def g_p(p: int, r: int, f: int) -> int:
    """Scalar with ``Upsilon A_p(r, f) = g_p(r, f) AA_p(r, f)``."""
    _check_prime_level(p, r, f)
    if f == 0:
        return 1
    if f == 1:
        return gamma(p, r)
    return p ** kappa(r, f)


def level_tuple(N: int, d: int, ordering: tuple[int, ...]) -> ExponentTuple:
    """Exponent tuple of ``d | N`` read in the given prime ordering."""
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide {N}")
    F = factorize(N)
    if sorted(ordering) != list(F.primes):
        raise ValueError(f"ordering {ordering} is not a permutation of the primes of {N}")
    return ExponentTuple(tuple(ord_p(d, p) if d % p == 0 else 0 for p in ordering))


def script_G(N: int, d: int, ordering: tuple[int, ...]) -> int:
    F = factorize(N)
    f = level_tuple(N, d, ordering)
    rs = [F.exponent(p) for p in ordering]
    local = [script_G_p(p, r, fi) for p, r, fi in zip(ordering, rs, f.f)]
    if any(fi >= 2 for fi in f.f):
        return prod(local)
    if f.count_ones() == 0:
        raise ValueError("G(N, d) needs a 1 in the exponent tuple")
    m = f.m
    return (ordering[m - 1] - 1) * prod(local[i] for i in range(len(local)) if i != m - 1)


def n_of(N: int, d: int, ordering: tuple[int, ...]) -> int:
    """Order of ``Z(d)``: ``num(G(N, d) / 24)``."""
    return num(script_G(N, d, ordering), 24)


def script_M(f: ExponentTuple, ordering: tuple[int, ...]) -> int:
    """Correction factor attached to an exponent tuple in ``F``."""
    p = lambda i: ordering[i - 1]  # noqa: E731
    kind = f.kind
    if kind == "general":
        return 1
    if kind == "iota":
        return p(f.m) - 1 if f.plus(f.n) == f.s + 1 else 1
    if kind != "sf":
        raise ValueError(f"{f.f} is not in F")
    s = f.s
    if f.n_prime == f.n and f.n == s - 1:
        return p(f.m) - 1
    if f.n_prime == f.n and f.n == s:
        return (p(f.m) - 1) * (p(f.m + 1) - 1)
    if f.n_prime == s and f.blocks() == 2:
        if f.m == f.n:
            return p(f.m_prime) - 1
        if f.m_prime == f.n + 2:
            return p(f.m) - 1
    return 1


def script_G_M(N: int, d: int, ordering: tuple[int, ...]) -> int:
    F = factorize(N)
    f = level_tuple(N, d, ordering)
    rs = [F.exponent(p) for p in ordering]
    big = sum(1 for x in f.f if x >= 2)
    local = prod(script_G_p(p, r, fi) for p, r, fi in zip(ordering, rs, f.f))
    if big >= 2:
        return script_G(N, d, ordering)
    return script_M(f, ordering) * local


def epsilon_of(N: int, d: int, ordering: tuple[int, ...]) -> int:
    """Cyclic order attached to ``d`` in the torsion decomposition.

    >>> epsilon_of(481, 481, (13, 37))
    18
    """
    F = factorize(N)
    if F.s < 2:
        raise ValueError(f"{N} is a prime power")
    f = level_tuple(N, d, ordering)
    if f.kind is None:
        raise ValueError(f"{d} is not in the index set D_N^F")
    return num(script_G_M(N, d, ordering), 24)


def valuation_of_num(x: int, l: int) -> int:
    return ord_p(x, l)
