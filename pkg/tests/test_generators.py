from math import prod

import pytest

from cuspjac.arith import divisors, ord_p
from cuspjac.cusp_lattice import DivisorVector, degree_check
from cuspjac.etaq import order_of_divisor
from cuspjac.generators import (
    HypothesisError,
    check_hypotheses,
    cuspidal_group_structure,
    is_squarefree_tuple,
    ordering_is_valid,
    prime_ordering,
    vector_A,
    vector_B,
    z_local_factors,
    z_vectors,
)


def test_hypothesis_guards():
    for N, l in ((90, 7), (1, None), (15, 2), (15, 9), (15, 3), (75, 5)):
        with pytest.raises(HypothesisError):
            check_hypotheses(N, l)
    check_hypotheses(45, 5)


def test_prime_ordering():
    assert prime_ordering(35, 3).primes == (5, 7)
    assert prime_ordering(245).primes == (5, 7)
    for N in (105, 195, 1155):
        for l in (5, 7, 11, 13):
            try:
                level = prime_ordering(N, l)
            except HypothesisError:
                continue
            assert ordering_is_valid(level.primes, N, l)


def test_no_valid_ordering_raises():
    with pytest.raises(HypothesisError):
        prime_ordering(481, 3)


def test_local_vectors():
    assert vector_A(7, 2, 1) == (49, 1, 1)
    assert vector_B(7, 2, 1) == (7, -1, -1)
    for p in (3, 5, 7):
        for r in range(1, 6):
            for f in range(2, r + 1):
                assert vector_B(p, r, f) == vector_A(p, r, f)
            for f in range(1, r + 1):
                # every local vector with f >= 1 has degree zero
                assert degree_check(DivisorVector(p**r, vector_B(p, r, f)))


def test_Z_has_degree_zero():
    for N in range(3, 201, 2):
        for z in z_vectors(prime_ordering(N)):
            assert degree_check(z.vector), (N, z.d)


def test_Z_order_equals_n_for_non_squarefree():
    for N in range(3, 201, 2):
        for z in z_vectors(prime_ordering(N)):
            if not is_squarefree_tuple(z.f):
                assert order_of_divisor(z.vector).order == z.n_d, (N, z.d)


def test_Z_entries_are_products_of_local_entries():
    for N in (45, 175, 225, 245, 441, 1575):
        level = prime_ordering(N)
        for z in z_vectors(level):
            local = z_local_factors(level, z.f)
            for dp, a in zip(divisors(N), z.vector.entries):
                direct = prod(v.entries[ord_p(dp, p)] for v, p in zip(local, level.primes))
                assert a == direct


def test_presentation_splits_by_squarefree():
    P = cuspidal_group_structure(prime_ordering(245))
    assert {z.d for z in P.squarefree} == {5, 7, 35}
    assert P.nsf_orders() == {49: 48, 245: 2}
    assert P.structure().invariants == (2, 2, 24, 336)
