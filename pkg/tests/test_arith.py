from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cuspjac.arith import (
    divisors,
    epsilon_of,
    factorize,
    gamma,
    is_prime,
    k_of_N,
    n_of,
    num,
    ord_p,
    script_G_p,
)
from cuspjac.tuples import ExponentTuple


@given(st.integers(2, 10**6))
def test_factorize_agrees_with_sympy(n):
    assert dict(factorize(n)) == sympy.factorint(n)


@given(st.integers(2, 5000))
def test_divisors_agree_with_sympy(n):
    assert list(divisors(n)) == sympy.divisors(n)


@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_num_is_reduced_numerator(a, b):
    n = num(a, b)
    assert Fraction(a, b) == Fraction(n, b // gcd(a, b))
    assert n == Fraction(a, b).numerator


def test_num_examples():
    assert num(1152, 24) == 48
    assert num(10, 24) == 5
    with pytest.raises(ValueError):
        num(0, 3)


def test_k_of_N():
    assert k_of_N(11) == 120
    assert k_of_N(49) == 7 * 48
    assert k_of_N(15) == 8 * 24


def test_n_of_positive_for_all_small_levels():
    for N in range(3, 501, 2):
        primes = factorize(N).primes
        for d in divisors(N):
            if d > 1:
                assert n_of(N, d, primes) >= 1


def test_local_factor_divides_unramified_factor():
    for p in (q for q in range(3, 51) if is_prime(q)):
        for r in range(2, 9):
            g0 = script_G_p(p, r, 0)
            for f in range(2, r + 1):
                assert g0 % script_G_p(p, r, f) == 0, (p, r, f)


def test_local_factor_rejects_even_prime():
    with pytest.raises(ValueError):
        script_G_p(2, 1, 0)


def test_gamma_and_ord():
    assert gamma(7, 2) == 7 * 48
    assert ord_p(48, 2) == 4
    assert ord_p(7, 3) == 0


def test_epsilon_examples():
    assert epsilon_of(481, 481, (13, 37)) == 18
    with pytest.raises(ValueError):
        epsilon_of(49, 49, (7,))
    with pytest.raises(ValueError):
        epsilon_of(245, 5, (5, 7))


def test_tuple_index_functions():
    f = ExponentTuple((1, 1, 0, 1, 1))
    assert f.kind == "sf"
    assert (f.m, f.n, f.n_prime) == (1, 2, 5)
    assert f.blocks() == 2
    g = ExponentTuple((2, 1, 1))
    assert g.kind == "iota" and g.iota == 1 and g.b == 2
    assert ExponentTuple((2, 2)).kind == "general"
    assert ExponentTuple((0, 1)).kind is None
