"""The eta quotients h_d, leading Fourier coefficient classes and the map delta-bar.

Classes in ``Omega_{d'}`` are integer vectors over the formal basis
``sqrt(p_1*), ..., sqrt(p_s*)``; a rational prime ``p`` has exponent 2.
Roots of unity are dropped throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Literal, Mapping, Optional

from .arith import A_of, B3_of, B_of, factorize, k_of_N, lcm, ord_p
from .etaq import EtaExponentVector, ligozat_matrix
from .generators import (
    OrderedLevel,
    is_squarefree_tuple,
    vector_A,
    vector_B,
    z_vector,
)
from .tuples import ExponentTuple

Source = Literal["table", "exact"]


def kappa_fourier(r: int, f: int) -> int:
    return (r - f + 1) // 2


# Upsilon and the image vectors AA_p, BB_p


def vector_AA(p: int, r: int, f: int) -> tuple[int, ...]:
    if not 0 <= f <= r:
        raise ValueError(f"need 0 <= f <= r, got r={r}, f={f}")
    v = [0] * (r + 1)
    if f == 0:
        v[0], v[1] = p, -1
    elif f == 1:
        v[0] = 1
    elif f == 2:
        if r % 2 == 0:
            v[0] = 1
        else:
            v[1] = 1
        v[r] -= 1
    elif (r - f) % 2 == 0:
        kap = (r - f) // 2
        v[0] += p
        v[1] -= 1
        v[r - kap - 1] += 1
        v[r - kap] -= p
    else:
        kap = (r - f + 1) // 2
        v[kap] += p
        v[kap + 1] -= 1
        v[r - 1] += 1
        v[r] -= p
    return tuple(v)


def vector_BB(p: int, r: int, f: int) -> tuple[int, ...]:
    if not 1 <= f <= r:
        raise ValueError(f"need 1 <= f <= r, got r={r}, f={f}")
    if f == 1:
        return tuple([1, -1] + [0] * (r - 1))
    return vector_AA(p, r, f)


def upsilon(p: int, r: int) -> list[list[Fraction]]:
    """``(k(p^r)/24) Lambda(p^r)^-1``."""
    L = ligozat_matrix(p**r)
    c = Fraction(k_of_N(p**r), 24)
    return [[c * x for x in row] for row in L.inverse]


def _apply(M, v) -> tuple[Fraction, ...]:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in M)


def upsilon_scalar(p: int, r: int, f: int) -> Optional[Fraction]:
    """The scalar ``c`` with ``Upsilon A_p(r, f) = c AA_p(r, f)``, or ``None``."""
    img = _apply(upsilon(p, r), vector_A(p, r, f))
    aa = vector_AA(p, r, f)
    i = next(j for j, x in enumerate(aa) if x)
    c = img[i] / aa[i]
    return c if all(x == c * y for x, y in zip(img, aa)) else None


def upsilon_check(p: int, r: int, f: int) -> bool:
    """Check ``Upsilon A = g_p AA`` and, for ``f >= 1``, the B variant."""
    from .arith import g_p

    U = upsilon(p, r)
    ok = _apply(U, vector_A(p, r, f)) == tuple(g_p(p, r, f) * x for x in vector_AA(p, r, f))
    if f >= 1:
        c = p ** (r - 1) * (p + 1) if f == 1 else g_p(p, r, f)
        ok = ok and _apply(U, vector_B(p, r, f)) == tuple(c * x for x in vector_BB(p, r, f))
    return ok


# h_d


@dataclass(frozen=True)
class IndexMachinery:
    d: int
    f: ExponentTuple
    I: tuple[tuple[int, ...], ...]
    I_prime: tuple[tuple[int, ...], ...]
    tau: dict
    eps: dict
    beta: int


def beta_of(level: OrderedLevel, d: int) -> int:
    N = level.N
    radN = prod(level.primes)
    p1 = level.primes[0]
    if d == radN:
        return B_of(p1)
    if N % 3 == 0 and (N // 3) % 3 and d * 3 == radN:
        return B3_of(p1)
    return 1


def index_machinery(level: OrderedLevel, d: int) -> IndexMachinery:
    if d == 1:
        raise ValueError("h_d needs d > 1")
    f = level.tuple_of(d)
    sf = is_squarefree_tuple(f)
    m = f.m if sf else None
    s = level.s
    I_axes = [(0,) if fi in (1, 2) else (0, 1) for fi in f.f]
    Ip_axes = [(0, 1) if fi not in (0, 1) or i == m else (0,)
               for i, fi in enumerate(f.f, start=1)]
    I = tuple(product(*I_axes))
    Ip = tuple(product(*Ip_axes))
    tau: dict = {}
    eps: dict = {}
    for t in I:
        for tp in Ip:
            vals = []
            for i in range(1, s + 1):
                fi, r = f.at(i), level.r(i)
                ti, tpi = t[i - 1], tp[i - 1]
                if fi > 2:
                    k = kappa_fourier(r, fi)
                    if (r - fi) % 2 == 0:
                        v = ti * (1 - tpi) * (r - k) + (1 - ti) * ((1 - tpi) * (r - k - 1) + tpi)
                    else:
                        v = ti * ((1 - tpi) * k + tpi * r) + (1 - ti) * ((1 - tpi) * (r - 1) + tpi * (k + 1))
                elif fi == 2:
                    v = tpi * r if r % 2 == 0 else tpi * (r - 1) + 1
                elif fi == 1:
                    v = tpi if i == m else 0
                else:
                    v = 1 - ti
                vals.append(v)
            parity = sum(1 - t[i] for i in range(s) if f.f[i] == 0) + sum(
                tp[i] for i in range(s) if f.f[i] != 0
            )
            mag = prod(p**ti for p, ti in zip(level.primes, t))
            tau[(t, tp)] = tuple(vals)
            eps[(t, tp)] = mag if parity % 2 == 0 else -mag
    return IndexMachinery(d, f, I, Ip, tau, eps, beta_of(level, d))


def eta_quotient_of_Z(level: OrderedLevel, d: int) -> EtaExponentVector:
    """Exponents of the eta quotient ``h_d`` attached to ``Z(d)``."""
    im = index_machinery(level, d)
    coeffs: dict[int, int] = {}
    for key, v in im.tau.items():
        dp = prod(p**e for p, e in zip(level.primes, v))
        coeffs[dp] = coeffs.get(dp, 0) + im.eps[key]
    coeffs = {k: im.beta * v for k, v in coeffs.items()}
    return EtaExponentVector.from_map(level.N, coeffs)


def eta_quotient_exact(level: OrderedLevel, d: int) -> EtaExponentVector:
    """``Lambda^-1 (n_d Z(d))`` computed by exact inversion."""
    z = z_vector(level, d)
    L = ligozat_matrix(level.N)
    r = L.solve([z.n_d * x for x in z.vector.entries])
    return EtaExponentVector(level.N, tuple(r)).normalized()


# Fourier classes


def generic_class(level: OrderedLevel, r: EtaExponentVector, dp: int) -> tuple[int, ...]:
    """Exponent vector of the leading coefficient of ``r`` at the cusp ``1/d'``.

    The coefficient is ``prod_k sqrt(gcd(d', k)/k)^(r_k)`` up to roots of unity.
    """
    out = []
    for p in level.primes:
        a = ord_p(dp, p) if dp % p == 0 else 0
        e = 0
        for k, rk in zip(r.divisors, r.entries):
            b = ord_p(k, p) if k % p == 0 else 0
            e += rk * (min(a, b) - b)
        out.append(e)
    return tuple(out)


def omega_class(level: OrderedLevel, d: int, dp: int, printed: bool = False) -> tuple[int, ...]:
    """Class of the leading coefficient of ``h_d`` at the cusp of level ``d'``, tabulated form.

    At ``f_iota = 2``, ``k_iota = 0`` and ``r_iota`` even the exponent is
    ``r_iota * A(p)``; ``printed=True`` gives ``(r_iota - 1) * A(p)`` instead,
    which disagrees with the eta quotient itself.
    """
    N = level.N
    if dp == N:
        raise ValueError("the cusp of level N is excluded")
    if N % dp or d == 1 or N % d:
        raise ValueError("d and d' must be divisors of N with d > 1")
    f = level.tuple_of(d)
    k = level.tuple_of(dp)
    s = level.s
    out = [0] * s
    big = [i for i in range(1, s + 1) if f.at(i) >= 2]
    if len(big) >= 2:
        return tuple(out)

    def P(skip: int) -> int:
        return prod((level.p(i) - 1) ** (1 - f.at(i)) for i in range(1, s + 1) if i != skip)

    if not big:
        m = f.m
        if k.at(m) == 0:
            out[m - 1] = beta_of(level, d) * P(m)
        return tuple(out)
    io = big[0]
    p, r, b, ki = level.p(io), level.r(io), f.at(io), k.at(io)
    if b == 2:
        if ki == 0:
            e = (r - 1 if printed or r % 2 else r) * A_of(p)
        else:
            e = (r - ki) * A_of(p)
    else:
        kap = kappa_fourier(r, b)
        if (r - b) % 2 == 0:
            if ki == 0:
                e = p * (r - kap) - (r - kap - 2)
            elif ki < r - kap:
                e = p * (r - kap - ki) - (r - kap - ki - 1)
            else:
                e = 0
        else:
            if ki <= kap:
                e = p * (r - kap) - (r - kap - 2)
            elif ki <= r - 1:
                e = p * (r - ki) - (r - ki - 1)
            else:
                e = 0
    out[io - 1] = e * P(io)
    return tuple(out)


@dataclass(frozen=True)
class OmegaTuple:
    """``(e(d'))_{d' != N} tensor 1/denominator`` in ``Omega tensor Q/Z``."""

    N: int
    coords: tuple[tuple[int, tuple[int, ...]], ...]
    denominator: int

    def as_fractions(self) -> dict[int, tuple[Fraction, ...]]:
        return {dp: tuple(Fraction(x, self.denominator) for x in e) for dp, e in self.coords}

    def is_zero(self) -> bool:
        return all(x % self.denominator == 0 for _, e in self.coords for x in e)

    def equals(self, other: "OmegaTuple") -> bool:
        a, b = self.as_fractions(), other.as_fractions()
        return a.keys() == b.keys() and all(
            (x - y).denominator == 1 for dp in a for x, y in zip(a[dp], b[dp])
        )

    def __add__(self, other: "OmegaTuple") -> "OmegaTuple":
        L = lcm(self.denominator, other.denominator)
        ca, cb = L // self.denominator, L // other.denominator
        bmap = dict(other.coords)
        coords = tuple(
            (dp, tuple(ca * x + cb * y for x, y in zip(e, bmap[dp]))) for dp, e in self.coords
        )
        return OmegaTuple(self.N, coords, L)


def omega_class_exact(level: OrderedLevel, d: int, dp: int) -> tuple[int, ...]:
    """Same class read off the exactly inverted eta quotient of ``n_d Z(d)``."""
    if dp == level.N:
        raise ValueError("the cusp of level N is excluded")
    return generic_class(level, eta_quotient_exact(level, d), dp)


@lru_cache(maxsize=None)
def omega_table(level: OrderedLevel, source: Source = "table"
                ) -> dict[int, tuple[int, dict[int, tuple[int, ...]]]]:
    """``d -> (n_d, {d' -> class})`` for every ``d > 1``."""
    if source not in ("table", "exact"):
        raise ValueError(f"unknown source {source!r}")
    out = {}
    cusp_levels = [dp for dp in factorize(level.N).divisors if dp != level.N]
    for d in factorize(level.N).divisors:
        if d == 1:
            continue
        n_d = z_vector(level, d).n_d
        if source == "exact":
            r = eta_quotient_exact(level, d)
            out[d] = (n_d, {dp: generic_class(level, r, dp) for dp in cusp_levels})
        else:
            out[d] = (n_d, {dp: omega_class(level, d, dp) for dp in cusp_levels})
    return out


def delta_bar(level: OrderedLevel, coeffs: Mapping[int, int], source: Source = "table") -> OmegaTuple:
    """``sum c_d v_f(d) tensor 1/n_d`` with common denominator ``lcm(n_d)``."""
    table = omega_table(level, source)
    bad = [d for d in coeffs if d not in table]
    if bad:
        raise ValueError(f"coefficients at {bad} are not indexed by divisors d > 1 of {level.N}")
    L = lcm(*(n for n, _ in table.values()))
    cusp_levels = [dp for dp in factorize(level.N).divisors if dp != level.N]
    coords = []
    for dp in cusp_levels:
        e = [0] * level.s
        for d, c in coeffs.items():
            if not c:
                continue
            n_d, cls = table[d]
            for i, x in enumerate(cls[dp]):
                e[i] += c * (L // n_d) * x
        coords.append((dp, tuple(e)))
    return OmegaTuple(level.N, tuple(coords), L)
