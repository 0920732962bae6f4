import itertools

import pytest
from hypothesis import given, settings, strategies as st

from plwe_trace.cyclotomic import (
    PolyOverFq,
    brute_irreducibility_check,
    cyclotomic_poly,
    factor_prime_power_cyclotomic,
)
from plwe_trace.field import FieldContext, FieldError, find_attack_prime, primitive_roots_of_unity


def dense_mul(a, b, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    return out


def divides(g, f, q):
    """Does monic g divide f over F_q (schoolbook long division)?"""
    r = list(f)
    for shift in range(len(f) - len(g), -1, -1):
        c = r[shift + len(g) - 1] % q
        for j, y in enumerate(g):
            r[shift + j] = (r[shift + j] - c * y) % q
    return not any(v % q for v in r)


def has_low_degree_factor(f, q):
    """Exhaustive search over all monic polynomials of degree 1..deg/2."""
    deg = len(f) - 1
    for k in range(1, deg // 2 + 1):
        for tail in itertools.product(range(q), repeat=k):
            if divides(list(tail) + [1], f, q):
                return True
    return False


def test_cyclotomic_examples():
    phi = cyclotomic_poly(2, 10)
    assert phi.degree == 512 and phi.coeffs[0] == 1 and phi.coeffs[512] == 1 and sum(phi.coeffs) == 2
    assert cyclotomic_poly(2, 11).degree == 1024
    assert cyclotomic_poly(3, 1).coeffs == (1, 1, 1)
    assert cyclotomic_poly(3, 2).coeffs == (1, 0, 0, 1, 0, 0, 1)
    assert str(cyclotomic_poly(2, 3)) == "x^4 + 1"


@pytest.mark.parametrize("p,n,q_min,constants", [
    (2, 10, 24000, {11937, 12092}),
    (2, 11, 40000, {27481, 12532}),
    (2, 4, 20, {12, 17}),
])
def test_factorization_matches_tables(p, n, q_min, constants):
    ctx = find_attack_prime(p, n, 2, q_min)
    fact = factor_prime_power_cyclotomic(ctx, n)
    assert fact.factor_degree == p ** (n - 2)
    assert {(-r) % ctx.q for r in fact.roots} == constants


def test_small_product_by_dense_multiplication():
    f1 = [-12, 0, 0, 0, 1]
    f2 = [-17, 0, 0, 0, 1]
    prod_z = dense_mul(f1, f2, 10**9)
    assert prod_z == [204, 0, 0, 0, 10**9 - 29, 0, 0, 0, 1]
    assert [c % 29 for c in dense_mul(f1, f2, 29)] == [1, 0, 0, 0, 0, 0, 0, 0, 1]


def test_factorization_hypothesis_violation():
    ctx = FieldContext(q=29, p=2, A=2, u=7)
    with pytest.raises(FieldError):
        factor_prime_power_cyclotomic(ctx, 2)


def test_irreducibility_examples():
    assert brute_irreducibility_check(PolyOverFq((-12, 0, 0, 0, 1), 29))
    assert not has_low_degree_factor([17, 0, 0, 0, 1], 29)
    assert not brute_irreducibility_check(PolyOverFq((-1, 0, 1), 13))
    assert {x * x % 13 for x in range(13)}.isdisjoint({5})
    assert brute_irreducibility_check(PolyOverFq((-5, 0, 1), 13))


def test_irreducibility_guard():
    with pytest.raises(ValueError):
        brute_irreducibility_check(PolyOverFq((1,) + (0,) * 64 + (1,), 29))


@settings(max_examples=150, deadline=None)
@given(q=st.sampled_from([2, 3, 5, 7]), coeffs=st.lists(st.integers(0, 6), min_size=2, max_size=5))
def test_gcd_criterion_matches_exhaustive_search(q, coeffs):
    f = [c % q for c in coeffs[:-1]] + [1]
    expected = not has_low_degree_factor(f, q)
    assert brute_irreducibility_check(PolyOverFq(tuple(f), q)) == expected


@pytest.mark.parametrize("p,n,q_min", [(2, 4, 20), (2, 5, 100), (2, 6, 500), (3, 3, 50), (3, 4, 200), (5, 3, 100)])
def test_corollary_binomials_are_irreducible(p, n, q_min):
    ctx = find_attack_prime(p, n, 2, q_min)
    q = ctx.q
    fact = factor_prime_power_cyclotomic(ctx, n)
    assert len(fact.roots) * fact.factor_degree == p ** (n - 1) * (p - 1)
    for rho in primitive_roots_of_unity(ctx):
        for k in range(n - 2):
            deg = p ** (n - k - 2)
            for v in (v for v in range(1, p * p) if v % p):
                f = PolyOverFq((-pow(rho, v, q),) + (0,) * (deg - 1) + (1,), q)
                assert brute_irreducibility_check(f)
