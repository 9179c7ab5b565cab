import random
from math import gcd

import pytest

from cuspjac.cusp_lattice import C_basis, DivisorVector, tensor
from cuspjac.etaq import (
    EtaExponentVector,
    V_of,
    brute_force_order,
    div_of_eta,
    eta_of_divisor,
    is_modular,
    ligozat_matrix,
    order_of_divisor,
    vanishing_order,
)


def random_degree_zero(rng, N, bound=6):
    out = DivisorVector.zero(N)
    for c in C_basis(N):
        out = out + c.scale(rng.randint(-bound, bound))
    return out


def test_vanishing_order_example():
    assert vanishing_order(45, 3, 5) == 1


def test_ligozat_inverse_exact():
    for N in range(1, 301, 2):
        L = ligozat_matrix(N)
        n = len(L.divisors)
        for i in range(n):
            row = [sum(L.entries[i][k] * L.inverse[k][j] for k in range(n)) for j in range(n)]
            assert row == [int(i == j) for j in range(n)], N


def test_order_of_P1_minus_P11():
    D = DivisorVector(11, (1, -1))
    data = order_of_divisor(D)
    assert data.order == 5
    assert data.h == 2


def test_zero_divisor_has_order_one():
    assert order_of_divisor(DivisorVector.zero(11)).order == 1


def test_order_rejects_nonzero_degree():
    with pytest.raises(ValueError):
        order_of_divisor(DivisorVector(11, (1, 0)))


def test_order_matches_brute_force_on_random_divisors():
    rng = random.Random(2024)
    for N in range(3, 201, 2):
        for _ in range(200):
            D = random_degree_zero(rng, N)
            assert order_of_divisor(D).order == brute_force_order(D), (N, D.entries)


def test_order_is_minimal():
    rng = random.Random(7)
    for N in (15, 35, 45, 63, 105, 121):
        for _ in range(20):
            D = random_degree_zero(rng, N)
            n = order_of_divisor(D).order
            r = eta_of_divisor(D)
            assert is_modular(r.scale(n))
            assert not any(is_modular(r.scale(k)) for k in range(1, n) if n % k == 0)


def test_div_of_eta_inverts_eta_of_divisor():
    rng = random.Random(3)
    for N in range(3, 120, 2):
        for _ in range(5):
            D = random_degree_zero(rng, N)
            assert div_of_eta(eta_of_divisor(D)) == D


def test_delta_quotient_is_modular():
    # eta(z)^24 / eta(11 z)^24 is a function on X_0(11)
    assert is_modular(EtaExponentVector(11, (12, -12)))
    assert not is_modular(EtaExponentVector(11, (1, -1)))


def test_V_and_normalized_V_tensor():
    rng = random.Random(5)
    levels = [3, 5, 7, 9, 11, 25, 27, 49, 15]
    for N1 in levels:
        for N2 in levels:
            if gcd(N1, N2) != 1:
                continue
            D1, D2 = random_degree_zero(rng, N1, 3), random_degree_zero(rng, N2, 3)
            if D1.is_zero() or D2.is_zero():
                continue
            D = tensor(D1, D2)
            assert V_of(D) == tensor(DivisorVector(N1, V_of(D1)), DivisorVector(N2, V_of(D2))).entries
            a, b, c = order_of_divisor(D1), order_of_divisor(D2), order_of_divisor(D)
            assert c.Vnorm == tensor(DivisorVector(N1, a.Vnorm), DivisorVector(N2, b.Vnorm)).entries
