from fractions import Fraction
from math import gcd, prod

import pytest

from cuspjac.arith import factorize, is_prime, ord_p, script_M
from cuspjac.etaq import order_of_divisor
from cuspjac.generators import HypothesisError, OrderedLevel, prime_ordering
from cuspjac.kernel import (
    D_combo,
    D_of_f,
    E_of_f,
    V_D_closed,
    V_E_from_closed,
    V_direct,
    order_E_formula,
    ordering_for,
    script_M_agree,
    selection_entry,
    torsion_structure,
    tuples_in_F,
)
from cuspjac.tuples import ExponentTuple

ODD_L = [p for p in range(3, 50) if is_prime(p)]


def composite(top):
    return [N for N in range(15, top + 1, 2) if factorize(N).s >= 2]


def valid_levels(top):
    """``(N, l, level)`` for every admissible pair with an ``l``-ordering."""
    for N in composite(top):
        for l in ODD_L:
            if (3 * N) % (l * l) == 0 or (l == 3 and N % 3 == 0):
                continue
            level, valid = ordering_for(N, l)
            if valid:
                yield N, l, level


def nonzero(v):
    return {d: x for d, x in v.items() if x}


def test_index_functions_examples():
    f = ExponentTuple((0, 1, 1, 0, 1))
    assert (f.m, f.n, f.n_prime, f.m_prime, f.n_second) == (2, 3, 5, 5, 5)
    g = ExponentTuple((1, 1))
    assert (g.m, g.n, g.n_prime) == (1, 2, 2)
    z = ExponentTuple((0, 0, 0))
    assert z.m is None and not z.in_F


def test_D_examples():
    level = prime_ordering(91, 3)
    assert level.primes == (7, 13)
    assert D_combo(level, (1, 1)) == {91: 1, 7: -level.gamma(2)}
    general = OrderedLevel(9 * 25, None, (3, 5))
    assert D_combo(general, (2, 2)) == {225: 1}


def test_E_examples():
    level = OrderedLevel(105, None, (3, 5, 7))
    # the defining case list uses f^{m+} = (1,0,1)
    assert E_of_f(level, (1, 1, 1)).combo == {(1, 1, 1): 1, (1, 0, 1): -level.gamma(2)}
    level = OrderedLevel(13**2 * 7 * 11, None, (13, 7, 11))
    assert E_of_f(level, (2, 1, 1)).combo == {(2, 1, 1): 1, (2, 0, 1): -level.gamma(2)}
    level = OrderedLevel(9 * 25, None, (3, 5))
    E = E_of_f(level, (2, 2))
    assert E.vector == D_of_f(level, (2, 2)) and E.Gcoef == 1


def test_V_of_D_closed_form():
    for N in composite(500):
        level = prime_ordering(N)
        for f in tuples_in_F(level):
            if f.kind != "general":
                assert nonzero(V_D_closed(level, f)) == nonzero(V_direct(D_of_f(level, f))), (N, f.f)


def test_V_of_E_closed_form():
    for N, l, level in valid_levels(225):
        for f in tuples_in_F(level):
            if f.kind != "general":
                assert nonzero(V_E_from_closed(level, f)) == nonzero(V_direct(E_of_f(level, f).vector)), (N, l, f.f)


def test_printed_V_of_D_differs_from_direct():
    level = OrderedLevel(105, None, (3, 5, 7))
    f = ExponentTuple((1, 0, 1))
    assert nonzero(V_D_closed(level, f, printed=True)) != nonzero(V_direct(D_of_f(level, f)))


def test_product_of_M_over_squarefree_tuples():
    primes = (3, 5, 7, 11, 13)
    for s in range(2, 6):
        ps = primes[:s]
        level = OrderedLevel(prod(ps), None, ps)
        lhs = prod(script_M(f, ps) for f in tuples_in_F(level) if f.kind == "sf")
        assert lhs == prod(p - 1 for p in ps) ** (s - 1)


def test_two_listings_of_M_agree():
    for N in composite(500):
        level = prime_ordering(N)
        for f in tuples_in_F(level):
            assert script_M_agree(level, f), (N, f.f)


def test_orderE_formula_matches_epsilon():
    for N, l, level in valid_levels(225):
        T = torsion_structure(N, l)
        bad = [s.d for s in T.summands if not s.cross_checked]
        assert not bad, (N, l, bad)


def test_order_of_E_matches_formula():
    bad = []
    for N, l, level in valid_levels(225):
        for f in tuples_in_F(level):
            if f.kind == "general":
                continue
            E = E_of_f(level, f)
            if ord_p(E.order, l) != ord_p(order_E_formula(level, f), l):
                bad.append((N, l, level.primes, f.f, E.order, order_E_formula(level, f)))
    assert not bad, f"order of E(f) differs l-adically from the listed formula at {bad}"


def test_selection_entry_examples():
    level = OrderedLevel(1155, None, (3, 5, 7, 11))
    S = selection_entry(level, (1, 1, 0, 0))
    assert S.delta == 7 * 11
    S = selection_entry(level, (0, 1, 1, 0))
    assert S.delta == 5 * 3 * 11
    assert S.index_set[0] == 1 and S.index_set[-1] == 1155


def test_torsion_examples():
    assert str(torsion_structure(481, 3)) == "Z/9"
    assert not torsion_structure(481, 3).ordering_valid
    assert torsion_structure(91, 3).invariants() == (3,)
    assert torsion_structure(343, 5).summands == ()
    with pytest.raises(HypothesisError):
        torsion_structure(45, 3)


def test_E_is_order_reduced():
    level = OrderedLevel(315, 5, (3, 5, 7))
    E = E_of_f(level, (2, 1, 0))
    assert E.Gcoef == 24
    assert E.order == order_of_divisor(E.vector).order


def _selection_failures(values):
    bad = []
    for N, l, level in valid_levels(225):
        for f in tuples_in_F(level):
            if f.kind == "general":
                continue
            V = values(level, f)
            if V is None:
                continue
            S = selection_entry(level, f)
            g = 0
            for x in V.values():
                g = gcd(g, x)
            if g == 0 or (V[S.delta] // g) % l == 0 or any(V.get(d, 0) for d in S.later()):
                bad.append((N, l, level.primes, f.f))
    return bad


def test_selection_pattern_of_E():
    bad = _selection_failures(lambda level, f: V_direct(E_of_f(level, f).vector))
    assert not bad, f"{len(bad)} failures: {bad}"


def test_selection_pattern_of_printed_closed_forms():
    def printed(level, f):
        if f.kind != "sf":
            return None
        V = V_E_from_closed(level, f, printed=True)
        assert all(Fraction(x).denominator == 1 for x in V.values())
        return {d: int(x) for d, x in V.items()}

    assert _selection_failures(printed) == []
