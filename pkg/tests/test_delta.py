import random

from cuspjac.arith import factorize, is_prime
from cuspjac.delta import (
    delta_bar,
    eta_quotient_exact,
    eta_quotient_of_Z,
    omega_class,
    omega_class_exact,
    omega_table,
    upsilon_check,
    upsilon_scalar,
)
from cuspjac.etaq import div_of_eta, is_modular
from cuspjac.generators import prime_ordering, z_vectors


def composite(top):
    return [N for N in range(15, top + 1, 2) if factorize(N).s >= 2]


def _eta_quotient_failures(levels):
    bad = []
    for N in levels:
        level = prime_ordering(N)
        for z in z_vectors(level):
            r = eta_quotient_of_Z(level, z.d)
            if div_of_eta(r) != z.vector.scale(z.n_d) or not is_modular(r):
                bad.append((N, z.d))
    return bad


def test_eta_quotient_example_pq3():
    assert eta_quotient_of_Z(prime_ordering(5 * 7**3), 5).entries == (7, -7, -1, 1, 0, 0, 0, 0)


def test_exact_eta_quotient_divides_to_nZ():
    for N in composite(225):
        level = prime_ordering(N)
        for z in z_vectors(level):
            r = eta_quotient_exact(level, z.d)
            assert div_of_eta(r) == z.vector.scale(z.n_d) and is_modular(r), (N, z.d)


def test_closed_eta_quotient_coprime_to_3():
    assert _eta_quotient_failures([N for N in composite(225) if N % 3]) == []


def test_closed_eta_quotient_all_levels():
    bad = _eta_quotient_failures(composite(225))
    assert not bad, f"{len(bad)} closed-form eta quotients differ from Lambda^-1(n_d Z(d)): {bad}"


def test_upsilon_check_range():
    for p in (q for q in range(3, 32) if is_prime(q)):
        for r in range(1, 7):
            for f in range(r + 1):
                assert upsilon_check(p, r, f), (p, r, f)
                assert upsilon_scalar(p, r, f) is not None


def test_table_class_matches_exact_coprime_to_3():
    for N in range(15, 800, 2):
        if factorize(N).s < 2 or N % 3 == 0:
            continue
        level = prime_ordering(N)
        assert omega_table(level, "table") == omega_table(level, "exact"), N


def test_printed_row_at_even_exponent():
    level = prime_ordering(245)
    assert omega_class(level, 49, 1) == (0, 8)
    assert omega_class_exact(level, 49, 1) == (0, 8)
    assert omega_class(level, 49, 1, printed=True) == (0, 4)
    assert omega_class(level, 49, 7) == (0, 4)


def test_delta_bar_additive():
    rng = random.Random(11)
    for N in (45, 63, 105, 175, 225, 245):
        level = prime_ordering(N)
        ds = [d for d in factorize(N).divisors if d > 1]
        for _ in range(20):
            a = {d: rng.randint(-5, 5) for d in ds}
            b = {d: rng.randint(-5, 5) for d in ds}
            s = {d: a[d] + b[d] for d in ds}
            assert delta_bar(level, s).equals(delta_bar(level, a) + delta_bar(level, b))


def test_delta_bar_of_principal_is_zero():
    # n_d Z(d) is the divisor of h_d, whose leading coefficients are rational
    for N in (35, 45, 175, 245):
        level = prime_ordering(N)
        for z in z_vectors(level):
            assert delta_bar(level, {z.d: z.n_d}, "exact").is_zero()
