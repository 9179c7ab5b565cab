from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspjac.arith import divisors
from cuspjac.cusp_lattice import (
    C_basis,
    C_vector,
    DivisorVector,
    cusp_count,
    cusp_table,
    degree_check,
    tensor,
)


def test_cusp_table_45():
    assert [c.count for c in cusp_table(45)] == [1, 2, 1, 1, 2, 1]
    assert cusp_count(45) == 8


def test_cusp_count_is_sum_of_phi():
    # number of cusps of X_0(N) is sum over d | N of phi(gcd(d, N/d))
    assert cusp_count(11) == 2
    assert cusp_count(49) == 8
    assert cusp_count(225) == 4 * 6


def test_C_basis_degree_zero():
    for N in range(3, 501, 2):
        assert all(degree_check(c) for c in C_basis(N))


def test_C_vector_rejects_one():
    with pytest.raises(ValueError):
        C_vector(15, 1)


levels = st.sampled_from([3, 5, 7, 9, 11, 13, 25, 27, 49])


def _vec(N, draw_ints):
    return DivisorVector(N, tuple(draw_ints[: len(divisors(N))]))


@given(levels, levels, levels, st.lists(st.integers(-5, 5), min_size=9, max_size=9),
       st.lists(st.integers(-5, 5), min_size=9, max_size=9),
       st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_tensor_associative_and_bilinear(N1, N2, N3, a, b, c):
    if gcd(N1, N2) != 1 or gcd(N1 * N2, N3) != 1:
        return
    u, v, w = _vec(N1, a), _vec(N2, b), _vec(N3, c)
    assert tensor(tensor(u, v), w) == tensor(u, tensor(v, w))
    assert tensor(u + u, v) == tensor(u, v) + tensor(u, v)
    assert tensor(u, v.scale(3)) == tensor(u, v).scale(3)


def test_tensor_example_and_guard():
    assert tensor(DivisorVector(5, (1, 0)), DivisorVector(49, (7, -1, -1))).entries == (7, 0, -1, 0, -1, 0)
    with pytest.raises(ValueError):
        tensor(DivisorVector(5, (1, 0)), DivisorVector(15, (0, 0, 0, 0)))


def test_divisor_vector_length_checked():
    with pytest.raises(ValueError):
        DivisorVector(15, (1, 2))
