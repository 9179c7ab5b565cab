"""Kernel generators D(f), E(f), their selection entries and the torsion structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Optional, Sequence, Union

from .arith import epsilon_of, factorize, num, ord_p, script_G_p, script_M
from .cusp_lattice import DivisorVector
from .etaq import V_of, order_of_divisor
from .generators import (
    HypothesisError,
    OrderedLevel,
    check_hypotheses,
    prime_ordering,
    z_vector,
)
from .tuples import ExponentTuple

TupleLike = Union[ExponentTuple, Sequence[int]]


def index_functions(f: TupleLike, bounds: Optional[Sequence[int]] = None) -> ExponentTuple:
    """Wrap ``f`` as an ``ExponentTuple``, checking ``0 <= f_i <= r_i`` when bounds are given."""
    t = f if isinstance(f, ExponentTuple) else ExponentTuple(tuple(f))
    if bounds is not None:
        if len(bounds) != t.s or any(not 0 <= a <= r for a, r in zip(t.f, bounds)):
            raise ValueError(f"{t.f} is out of range for exponents {tuple(bounds)}")
    return t


def _as_tuple(level: OrderedLevel, f: TupleLike) -> ExponentTuple:
    t = index_functions(f, level.exponents)
    if not t.in_F:
        raise ValueError(f"{t.f} is not in F")
    return t


def tuples_in_F(level: OrderedLevel) -> list[ExponentTuple]:
    """All ``f`` in F, ordered by the divisor they describe."""
    out = []
    for f in product(*(range(r + 1) for r in level.exponents)):
        t = ExponentTuple(f)
        if t.in_F:
            out.append(t)
    return sorted(out, key=level.divisor_of)


# D(f)


def gamma_of(level: OrderedLevel, f: ExponentTuple) -> int:
    """``gamma(f)``: product of ``gamma_i`` over the zero entries, skipping ``iota``."""
    skip = f.iota
    return prod(level.gamma(i) ** (1 - f.at(i)) for i in range(1, level.s + 1)
                if i != skip and f.at(i) <= 1)


def _single(level: OrderedLevel, i: int, b: int) -> int:
    return level.p(i) ** b


def D_combo(level: OrderedLevel, f: TupleLike) -> dict[int, int]:
    """``D(f)`` as integer coefficients on the ``Z(d)``."""
    f = _as_tuple(level, f)
    d = level.divisor_of(f)
    kind = f.kind
    if kind == "general":
        return {d: 1}
    if kind == "iota":
        io = f.iota
        p = level.p(io)
        if p == 3 and f.b == 2 and all(f.at(i) == 1 for i in range(1, level.s + 1) if i != io):
            c = (p * p - 1) * prod(level.p(i) ** (level.r(i) - 1) * (level.p(i) + 1)
                                   for i in range(1, level.s + 1) if i != io)
            return {_single(level, io, 2): c}
        c = prod(level.gamma(i) ** f.at(i) for i in range(1, level.s + 1) if i != io)
        return _merge({d: 1}, {_single(level, io, f.b): -c})
    m = f.m
    c = prod(level.gamma(i) ** f.at(i) for i in range(1, level.s + 1) if i != m)
    return _merge({d: 1}, {_single(level, m, 1): -c})


def _merge(*maps: dict, scale: Sequence[int] = ()) -> dict:
    out: dict = {}
    for k, mp in enumerate(maps):
        c = scale[k] if k < len(scale) else 1
        for key, v in mp.items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def combo_vector(level: OrderedLevel, combo: dict[int, int]) -> DivisorVector:
    """``sum c_d Z(d)``."""
    out = DivisorVector.zero(level.N)
    for d, c in combo.items():
        out = out + z_vector(level, d).vector.scale(c)
    return out


def D_of_f(level: OrderedLevel, f: TupleLike) -> DivisorVector:
    return combo_vector(level, D_combo(level, f))


# E'(f) and E(f)


def e_case(f: ExponentTuple) -> str:
    """Label of the branch defining ``E'(f)``."""
    kind = f.kind
    if kind is None:
        raise ValueError(f"{f.f} is not in F")
    if kind == "general":
        return "i"
    s = f.s
    if kind == "iota":
        if f.plus(f.m) == s + 1:
            return "ii.1"
        return "ii.2" if f.plus(f.n) == s + 1 else "ii.3"
    m, n, n1, w = f.m, f.n, f.n_prime, f.w
    head = "1" if n1 < s - 1 else "2" if n1 == s - 1 else "3"
    sub = "A" if n1 == n else "B" if m == n else "C"
    label = f"iii.{head}.{sub}"
    if head != "3" or sub == "A":
        return label
    two_blocks = f.n_second == n1
    if sub == "B":
        if w == 2:
            return label + ".1"
        return label + (".2" if two_blocks else ".3")
    if two_blocks:
        if f.m_prime == n + 2:
            return label + ".1"
        return label + (".2" if n == m + 1 else ".3")
    return label + (".4" if n == m + 1 else ".5")


@lru_cache(maxsize=None)
def e_prime_ledger(level: OrderedLevel, f: ExponentTuple, switch: bool = False) -> dict[tuple, int]:
    """Coefficients of the ``D(f')`` in ``E'(f)``, keyed by ``f'.f``.

    ``switch`` reverses the signs of ``E'(f^m)`` in the last two branches of
    case iii.3.C, whose printed guards coincide.
    """
    case = e_case(f)
    if case == "i":
        return {f.f: 1}

    def Dg(*idx: int) -> dict[tuple, int]:
        g = f.flip(*idx) if idx else f
        if not g.in_F:
            raise ArithmeticError(f"{g.f} left F while expanding E'({f.f})")
        return {g.f: gamma_of(level, g)}

    def Ep(*idx: int) -> dict[tuple, int]:
        return e_prime_ledger(level, f.flip(*idx), switch)

    m, n, s = f.m, f.n, f.s
    P = f.plus
    n1 = f.n_prime
    if case == "ii.1":
        return Dg()
    if case == "ii.2":
        return _merge(Dg(), Dg(m), scale=(1, -1))
    if case == "ii.3":
        return _merge(Dg(), Dg(n, P(n)), scale=(1, -1))

    def square(a: tuple, b: tuple) -> dict:
        return _merge(Dg(), Dg(*a), Dg(*b), Dg(*a, *b), scale=(1, -1, -1, 1))

    nn = (n1, P(n1))
    if case == "iii.1.A":
        out = square(nn, (m, s))
        return _merge(out, Ep(m)) if f.w >= 3 else out
    if case in ("iii.1.B", "iii.2.B"):
        return square(nn, (m, P(m)))
    if case in ("iii.1.C", "iii.2.C"):
        return _merge(square(nn, (n, P(n))), Ep(m))
    if case == "iii.2.A":
        return _merge(Dg(), Dg(*nn), scale=(1, -1))
    if case == "iii.3.A":
        return Dg() if f.w == 2 else _merge(Dg(), Dg(P(m)), scale=(1, -1))
    if case == "iii.3.B.1":
        return _merge(Dg(), Dg(m, P(m)), scale=(1, -1))
    if case == "iii.3.B.2":
        return square((m, P(m)), (f.m_prime,))
    if case == "iii.3.B.3":
        n2 = f.n_second
        return square((m, P(m)), (n2, P(n2)))
    base = _merge(Dg(), Dg(n, P(n)), scale=(1, -1))
    if case == "iii.3.C.1":
        return base
    if case == "iii.3.C.2":
        mm = f.minus(f.m_prime)
        return _merge(base, Ep(m, mm), scale=(1, -level.p(mm)))
    if case == "iii.3.C.3":
        return _merge(base, Ep(m))
    n2 = f.n_second
    sq = square((n, P(n)), (n2, P(n2)))
    sign = -1 if case == "iii.3.C.4" else 1
    if switch:
        sign = -sign
    return _merge(sq, Ep(m), scale=(1, sign))


@dataclass(frozen=True)
class KernelDivisor:
    """``E(f) = E'(f) / G(E'(f))`` with its ledger of ``D(f')`` coefficients."""

    f: ExponentTuple
    case: str
    combo: dict[tuple, int] = field(repr=False)
    Gcoef: int
    vector: DivisorVector = field(repr=False)
    order: int
    order_val: Optional[int] = None


def E_of_f(level: OrderedLevel, f: TupleLike, switch: bool = False) -> KernelDivisor:
    f = _as_tuple(level, f)
    ledger = e_prime_ledger(level, f, switch)
    G = 0
    for c in ledger.values():
        G = gcd(G, c)
    vec = DivisorVector.zero(level.N)
    for g, c in ledger.items():
        vec = vec + D_of_f(level, g).scale(c // G)
    order = order_of_divisor(vec).order
    val = ord_p(order, level.l) if level.l is not None else None
    return KernelDivisor(f, e_case(f), dict(ledger), G, vec, order, val)


def E_coefficients(level: OrderedLevel, f: TupleLike, switch: bool = False) -> dict[int, int]:
    """``E(f)`` as integer coefficients on the ``Z(d)``."""
    f = _as_tuple(level, f)
    ledger = e_prime_ledger(level, f, switch)
    G = 0
    for c in ledger.values():
        G = gcd(G, c)
    out: dict[int, int] = {}
    for g, c in ledger.items():
        for d, a in D_combo(level, g).items():
            out[d] = out.get(d, 0) + (c // G) * a
    return {d: a for d, a in out.items() if a}


# closed forms for V(D(f))


def _pw(p: int, e: int) -> int:
    return p ** (1 - e)


def V_D_closed(level: OrderedLevel, f: TupleLike, printed: bool = False) -> dict[int, int]:
    """``V(D(f))`` in closed form, for ``f`` in ``F_sf`` or ``F_iota^b``.

    The default tensors the local images ``g_p AA_p`` and ``p^(r-1)(p+1) BB_p``
    together. With ``printed`` each ``j | f`` contributes ``p_j^(1-delta_j) - 1``
    and the leading scalar is ``prod gamma_j^(f_j)`` (with ``p_iota^kappa`` and
    ``kappa = [(r-1-b)/2]`` for ``b >= 3``); that variant disagrees with the
    direct evaluation and is kept for comparison only.
    """
    from .arith import g_p
    from .delta import vector_AA

    f = _as_tuple(level, f)
    s = level.s
    out: dict[int, int] = {}
    if f.kind == "sf":
        m = f.m
        others = [j for j in range(1, s + 1) if j != m]
        if printed:
            g = prod(level.gamma(j) ** f.at(j) for j in range(1, s + 1))
        else:
            pm, rm = level.p(m), level.r(m)
            g = pm ** (rm - 1) * (pm + 1) * prod(level.gamma(j) ** f.at(j) for j in others)
        for dl in product((0, 1), repeat=s):
            out[level.divisor_of(dl)] = (-1) ** sum(dl) * g * _bracket(level, f, others, dl, printed)
        return out
    if f.kind != "iota":
        raise ValueError(f"{f.f} has no closed form")
    io, b = f.iota, f.b
    p, r = level.p(io), level.r(io)
    if printed:
        scale = Fraction(p) ** (r - 1 if b == 2 else (r - 1 - b) // 2)
    else:
        scale = g_p(p, r, b)
    AA = vector_AA(p, r, b)
    others = [j for j in range(1, s + 1) if j != io]
    g = prod(level.gamma(j) ** f.at(j) for j in others)
    special = set(D_combo(level, f)) == {_single(level, io, 2)} and f.b == 2
    if special and not printed:
        # D(f) is a multiple of Z(p_iota^2): only the second tensor term survives
        c = -D_combo(level, f)[_single(level, io, 2)]
        for k in range(r + 1):
            for dl in product((0, 1), repeat=s - 1):
                full = list(dl)
                full.insert(io - 1, k)
                b_term = prod(_pw(level.p(j), e) for j, e in zip(others, dl))
                out[level.divisor_of(full)] = -c * scale * AA[k] * (-1) ** sum(dl) * b_term
        return out
    for k in range(r + 1):
        for dl in product((0, 1), repeat=s - 1):
            full = list(dl)
            full.insert(io - 1, k)
            sign = (-1) ** sum(dl)
            out[level.divisor_of(full)] = scale * AA[k] * sign * g * _bracket(level, f, others, full, printed)
    return out


def _bracket(level: OrderedLevel, f: ExponentTuple, others: list[int], dl: Sequence[int], printed: bool) -> int:
    """The difference of the two tensor terms at the squarefree part ``dl``."""
    if any(dl[j - 1] > 1 for j in others):
        return 0
    a = 1
    for j in others:
        e = dl[j - 1]
        if f.at(j):
            a *= _pw(level.p(j), e) - 1 if printed else int(e == 0)
        else:
            a *= _pw(level.p(j), e)
    b = prod(_pw(level.p(j), dl[j - 1]) for j in others)
    return a - b


def V_E_from_closed(
    level: OrderedLevel, f: TupleLike, switch: bool = False, printed: bool = False
) -> dict[int, int]:
    """``V(E(f))`` by expanding the ledger through ``V_D_closed``."""
    f = _as_tuple(level, f)
    ledger = e_prime_ledger(level, f, switch)
    G = 0
    for c in ledger.values():
        G = gcd(G, c)
    out: dict[int, int] = {}
    for g, c in ledger.items():
        for dl, v in V_D_closed(level, g, printed).items():
            out[dl] = out.get(dl, 0) + (c // G) * v
    return out


def V_direct(vec: DivisorVector) -> dict[int, int]:
    return dict(zip(vec.divisors, V_of(vec)))


# selection entries and orderings


def squarefree_key(level: OrderedLevel, delta: int) -> tuple:
    """Sort key realising the order on squarefree divisors: size, then lexicographic in the primes."""
    bits = tuple(1 if delta % p == 0 else 0 for p in level.primes)
    return (sum(bits), tuple(1 - x for x in bits))


def u_iota(r: int, b: int) -> int:
    if b == 2:
        return 0 if r % 2 == 0 else 1
    return 1 if (r - b) % 2 == 0 else r - 1


@dataclass(frozen=True)
class SelectionEntry:
    f: ExponentTuple
    delta: int
    index_set: tuple[int, ...]

    def later(self) -> tuple[int, ...]:
        """Entries strictly after ``delta`` in the order."""
        i = self.index_set.index(self.delta)
        return self.index_set[i + 1:]


def selection_entry(level: OrderedLevel, f: TupleLike) -> SelectionEntry:
    """The entry ``delta_f`` and the ordered index set it is compared in."""
    f = _as_tuple(level, f)
    s = level.s
    base = [i for i in range(1, s + 1) if f.at(i) == 0]
    if f.kind == "iota":
        io = f.iota
        u = u_iota(level.r(io), f.b)
        extra = [f.m] if f.plus(f.n) == s + 1 else []
        delta = level.p(io) ** u * prod(level.p(i) for i in base + extra)
        others = [j for j in range(1, s + 1) if j != io]
        idx = []
        for dl in product((0, 1), repeat=s - 1):
            idx.append(level.p(io) ** u * prod(level.p(j) for j, e in zip(others, dl) if e))
        idx.sort(key=lambda x: squarefree_key(level, x // level.p(io) ** u))
        return SelectionEntry(f, delta, tuple(idx))
    if f.kind != "sf":
        raise ValueError(f"{f.f} is not in F_sf or F_iota^b")
    case = e_case(f)
    m = f.m
    if case == "iii.2.A":
        extra = [m]
    elif case == "iii.3.A":
        extra = [m, f.plus(m)]
    elif case == "iii.3.B.1" or case == "iii.3.B.2":
        extra = [f.m_prime]
    elif case == "iii.3.C.1":
        extra = [m]
    else:
        extra = []
    delta = prod(level.p(i) for i in base + extra)
    idx = sorted((prod(level.p(j) for j, e in zip(range(1, s + 1), dl) if e)
                  for dl in product((0, 1), repeat=s)), key=lambda x: squarefree_key(level, x))
    return SelectionEntry(f, delta, tuple(idx))


# orders


def script_M_orderE(level: OrderedLevel, f: TupleLike) -> int:
    """The correction factor as listed with the order of ``E(f)``."""
    f = _as_tuple(level, f)
    p = level.p
    if f.kind == "iota":
        return p(f.m) - 1 if f.plus(f.n) == f.s + 1 else 1
    if f.kind != "sf":
        return 1
    case = e_case(f)
    table = {
        "iii.2.A": lambda: p(f.m) - 1,
        "iii.3.A": lambda: (p(f.m) - 1) * (p(f.m + 1) - 1),
        "iii.3.B.1": lambda: p(f.m_prime) - 1,
        "iii.3.B.2": lambda: p(f.m_prime) - 1,
        "iii.3.C.1": lambda: p(f.m) - 1,
    }
    return table.get(case, lambda: 1)()


def order_E_formula(level: OrderedLevel, f: TupleLike) -> int:
    """``num(M(f) prod (p_j - 1)^(1 - f_j) prod gamma_j^(1 - f_j) G_iota / 24)`` as listed for ``E(f)``."""
    f = _as_tuple(level, f)
    s = level.s
    if f.kind == "general":
        return epsilon_of(level.N, level.divisor_of(f), level.primes)
    skip = f.iota
    x = script_M_orderE(level, f)
    for j in range(1, s + 1):
        if j == skip:
            x *= script_G_p(level.p(j), level.r(j), f.b)
        elif f.at(j) == 0:
            x *= (level.p(j) - 1) * level.gamma(j)
    return num(x, 24)


@dataclass(frozen=True)
class TorsionSummand:
    d: int
    f: tuple[int, ...]
    epsilon: int
    valuation: int
    cyclic_order: int
    # v_l of the order of E(f) from its own case list; None for D(f) = Z(d)
    orderE_valuation: Optional[int] = None

    @property
    def trivial(self) -> bool:
        return self.valuation == 0

    @property
    def cross_checked(self) -> bool:
        return self.orderE_valuation is None or self.orderE_valuation == self.valuation


@dataclass(frozen=True)
class TorsionStructure:
    N: int
    l: int
    ordering: tuple[int, ...]
    summands: tuple[TorsionSummand, ...]
    ordering_valid: bool = True

    def invariants(self) -> tuple[int, ...]:
        return tuple(sorted(s.cyclic_order for s in self.summands if not s.trivial))

    def __str__(self) -> str:
        parts = [f"Z/{s.cyclic_order}" for s in self.summands if not s.trivial]
        return " + ".join(parts) or "0"


def check_torsion_hypotheses(N: int, l: int) -> None:
    check_hypotheses(N, l)
    if l == 3 and N % 3 == 0:
        raise HypothesisError("l=3 with 3 | N is excluded")


def ordering_for(N: int, l: int) -> tuple[OrderedLevel, bool]:
    """The ``l``-ordering, or ascending primes flagged invalid when none exists."""
    try:
        return prime_ordering(N, l), True
    except HypothesisError:
        check_hypotheses(N, l)
        return OrderedLevel(N, l, factorize(N).primes), False


@lru_cache(maxsize=None)
def torsion_structure(N: int, l: int) -> TorsionStructure:
    """``ker(delta-bar)[l^infinity]`` as ``sum_d Z/l^v_l(epsilon(N, d))``.

    >>> str(torsion_structure(481, 3))
    'Z/9'
    """
    check_torsion_hypotheses(N, l)
    level, valid = ordering_for(N, l)
    if factorize(N).s < 2:
        return TorsionStructure(N, l, level.primes, (), valid)
    out = []
    for f in tuples_in_F(level):
        d = level.divisor_of(f)
        eps = epsilon_of(N, d, level.primes)
        v = ord_p(eps, l)
        ve = None if f.kind == "general" else ord_p(order_E_formula(level, f), l)
        out.append(TorsionSummand(d, f.f, eps, v, l**v, ve))
    return TorsionStructure(N, l, level.primes, tuple(out), valid)


def script_M_agree(level: OrderedLevel, f: TupleLike) -> bool:
    """The two listings of the correction factor agree on ``f``."""
    f = _as_tuple(level, f)
    return script_M(f, level.primes) == script_M_orderE(level, f)
