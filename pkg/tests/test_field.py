import pytest
from hypothesis import given, settings, strategies as st

from plwe_trace.field import (
    FieldContext,
    FieldError,
    FqElement,
    find_attack_prime,
    fq_arith,
    multiplicative_order,
    primitive_roots_of_unity,
    theorem_hypotheses_violations,
)

from conftest import brute_is_prime


def xgcd(a, b):
    old_r, r, old_s, s = a, b, 1, 0
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
    return old_r, old_s


def brute_order(x, q):
    k, y = 1, x
    while y != 1:
        y = y * x % q
        k += 1
    return k


def test_multiplicative_order_agrees_with_brute_force():
    for x in range(1, 97):
        assert multiplicative_order(x, 97) == brute_order(x, 97)


def test_rho_squares_to_minus_one():
    assert pow(12092, 2, 24029) == 24028
    assert fq_arith("mul", 12092, 12092, 24029) == 24028


def test_inverse_matches_extended_gcd():
    g, s = xgcd(4, 29)
    assert g == 1 and s % 29 == 22
    assert fq_arith("inv", 4, None, 29) == 22


def test_identity_and_canonical_range():
    for x in range(-5, 40):
        assert fq_arith("mul", 1, x, 29) == x % 29
    assert FqElement(-1, 29).value == 28
    assert FqElement(28, 29).centered() == -1


def test_element_operators():
    a, b = FqElement(5, 13), FqElement(8, 13)
    assert a + b == 0
    assert a * b == 1
    assert (a - b).value == 10
    assert a / b == a * a
    assert a ** -1 == b
    assert a**2 == -1


def test_errors():
    with pytest.raises(ZeroDivisionError):
        fq_arith("inv", 0, None, 29)
    with pytest.raises(ZeroDivisionError):
        FqElement(0, 7).inverse()
    with pytest.raises(FieldError):
        FqElement(1, 7) + FqElement(1, 11)
    with pytest.raises(FieldError):
        fq_arith("add", FqElement(1, 7), 1, 11)
    with pytest.raises(ValueError):
        fq_arith("div", 1, 1, 7)


@pytest.mark.parametrize("p,n,A,q_min,q,u", [
    (2, 10, 2, 24000, 24029, 6007),
    (2, 11, 2, 40000, 40013, 10003),
    (2, 4, 2, 20, 29, 7),
])
def test_find_attack_prime(p, n, A, q_min, q, u):
    ctx = find_attack_prime(p, n, A, q_min)
    assert (ctx.q, ctx.u) == (q, u)


def test_find_attack_prime_matches_brute_force_scan():
    for q_min in (2, 20, 100, 1000, 5000):
        expected = next(q for q in range(q_min, 10**6)
                        if brute_is_prime(q) and (q - 1) % 4 == 0 and ((q - 1) // 4) % 2)
        assert find_attack_prime(2, 4, 2, q_min).q == expected


def test_find_attack_prime_errors():
    with pytest.raises(FieldError):
        find_attack_prime(4, 5, 2, 10)
    with pytest.raises(FieldError):
        find_attack_prime(2, 2, 2, 10)
    with pytest.raises(FieldError, match="no attack prime"):
        find_attack_prime(2, 40, 30, 2)


def test_context_rejects_bad_shape():
    with pytest.raises(FieldError):
        FieldContext(q=29, p=2, A=2, u=6)
    with pytest.raises(FieldError):
        FieldContext(q=17, p=2, A=2, u=4)  # u even


@pytest.mark.parametrize("q,expected", [(24029, {12092, 11937}), (29, {12, 17}), (13, {5, 8})])
def test_primitive_fourth_roots(q, expected):
    ctx = FieldContext(q=q, p=2, A=2, u=(q - 1) // 4)
    assert set(primitive_roots_of_unity(ctx)) == expected


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from([2, 3, 5]), A=st.integers(1, 3), q_min=st.integers(2, 3000))
def test_roots_have_exact_order(p, A, q_min):
    ctx = find_attack_prime(p, A + 1, A, q_min)
    assert not theorem_hypotheses_violations(ctx.q, p, A, ctx.u)
    roots = primitive_roots_of_unity(ctx)
    assert len(roots) == p ** (A - 1) * (p - 1)
    for r in roots:
        assert pow(r, p**A, ctx.q) == 1
        assert pow(r, p ** (A - 1), ctx.q) != 1
    if ctx.q < 5000:
        brute = {x for x in range(1, ctx.q) if brute_order(x, ctx.q) == p**A}
        assert brute == set(roots)
