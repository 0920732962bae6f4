import numpy as np
import pytest
from scipy import stats

from plwe_trace.extension import trace_frobenius_oracle
from plwe_trace.field import FieldError
from plwe_trace.ring import (
    AttackParams,
    Sample,
    constraint_matrix,
    gaussian_integers,
    generate_samples,
    membership_R0,
    plwe_oracle,
    r0_dimension,
    rank_mod_q,
    reduce_sample,
    ring_mul,
    sample_gaussian_error,
    sample_uniform_R0,
    sample_uniform_Rq,
    substream,
)


def phi_coeffs(p, n):
    stride = p ** (n - 1)
    c = [0] * ((p - 1) * stride + 1)
    for i in range(p):
        c[i * stride] = 1
    return c


def product_mod_phi(x, y, p, n, q):
    """Full product then long division by the (monic) cyclotomic polynomial."""
    prod = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            prod[i + j] += a * b
    phi = phi_coeffs(p, n)
    N = len(phi) - 1
    for k in range(len(prod) - 1, N - 1, -1):
        c = prod[k]
        if c:
            for j, f in enumerate(phi):
                prod[k - N + j] -= c * f
    return [v % q for v in prod[:N]]


def test_negacyclic_wraparound(small):
    x_top = small.element([0] * 7 + [1])
    x = small.element([0, 1])
    assert ring_mul(x_top, x) == small.element([28])


def test_identity(small):
    y = small.element([3, 1, 4, 1, 5, 9, 2, 6])
    assert ring_mul(small.one(), y) == y


@pytest.mark.parametrize("fixture", ["small", "small_p3"])
def test_ring_mul_matches_long_division(fixture, request):
    P = request.getfixturevalue(fixture)
    rng = np.random.default_rng(0)
    for _ in range(30):
        x = rng.integers(0, P.q, P.N).tolist()
        y = rng.integers(0, P.q, P.N).tolist()
        got = ring_mul(P.element(x), P.element(y)).tolist()
        assert got == product_mod_phi(x, y, P.p, P.n, P.q)


def test_ring_mul_large_modulus_path():
    P = AttackParams.search(2, 4, 2, 2**40, sigma=1.0)
    rng = np.random.default_rng(1)
    x = [int(v) for v in rng.integers(0, P.q, P.N)]
    y = [int(v) for v in rng.integers(0, P.q, P.N)]
    assert ring_mul(P.element(x), P.element(y)).tolist() == product_mod_phi(x, y, 2, 4, P.q)


def test_context_mismatch(small, small_p3):
    with pytest.raises(FieldError):
        small.one() * small_p3.one()


def test_membership_examples(small):
    assert membership_R0(small.element([5, 0, 0, 0, 7]))
    assert not membership_R0(small.element([0, 1]))
    c = (-pow(12, -1, 29)) % 29
    assert membership_R0(small.element([0, 1, 0, 0, 0, c]))


def test_constraint_rank_and_dimension(small, small_p3):
    assert rank_mod_q(constraint_matrix(small), 29) == 3
    assert r0_dimension(small) == 5
    assert r0_dimension(small_p3) == 18 - 3 + 1


def test_uniform_rq_reproducible(small):
    got = sample_uniform_Rq(small, substream(1234, "a", 0)).tolist()
    assert got == [10, 25, 27, 21, 16, 3, 18, 14]
    again = sample_uniform_Rq(small, substream(1234, "a", 0)).tolist()
    assert got == again
    assert sample_uniform_Rq(small, substream(1235, "a", 0)).tolist() != got


def test_uniform_rq_chi_square(small):
    rng = np.random.default_rng(42)
    values = np.concatenate([sample_uniform_Rq(small, rng).coeffs for _ in range(100_000 // small.N)])
    _, pvalue = stats.chisquare(np.bincount(values, minlength=29))
    assert pvalue > 0.01


@pytest.mark.parametrize("fixture", ["small", "small_p3"])
def test_uniform_r0_always_member(fixture, request):
    P = request.getfixturevalue(fixture)
    rng = np.random.default_rng(8)
    for _ in range(200):
        assert membership_R0(sample_uniform_R0(P, rng))


def test_uniform_r0_evaluation_is_uniform(small):
    rng = np.random.default_rng(0)
    values = [int(sample_uniform_R0(small, rng).at_alpha().coeffs[0]) for _ in range(20_000)]
    _, pvalue = stats.chisquare(np.bincount(values, minlength=29))
    assert pvalue > 0.01


def test_r0_closed_under_ring_operations(small, small_p3):
    for P in (small, small_p3):
        rng = np.random.default_rng(21)
        for _ in range(50):
            x, y = sample_uniform_R0(P, rng), sample_uniform_R0(P, rng)
            assert membership_R0(x + y)
            assert membership_R0(ring_mul(x, y))


def test_evaluation_is_constant_coordinate_sum(small):
    rng = np.random.default_rng(6)
    for _ in range(50):
        a = sample_uniform_R0(small, rng)
        c = a.tolist()
        assert int(a.at_alpha().coeffs[0]) == (c[0] + c[4] * 12) % 29


def test_gaussian_degenerate(small):
    assert not sample_gaussian_error(0.0, small, np.random.default_rng(0)).coeffs.any()


def test_gaussian_moments():
    e = gaussian_integers(8.0, 100_000, np.random.default_rng(99))
    assert abs(e.mean()) < 0.1
    assert 7.8 <= e.std() <= 8.2


def test_plwe_oracle_degenerate_cases(small):
    P0 = small.with_sigma(0.0)
    rng = np.random.default_rng(3)
    s = plwe_oracle(P0.zero(), P0, rng, rng)
    assert s.b == P0.zero()
    s = plwe_oracle(P0.one(), P0, rng, rng)
    assert s.b == s.a


def test_plwe_oracle_replay(small):
    secret, samples = generate_samples(small, "plwe", 20, seed=5)
    for s in samples:
        assert s.b - ring_mul(s.a, secret) - s.error == small.zero()
        assert membership_R0(s.a)


def test_generate_samples_deterministic(small):
    s1, a = generate_samples(small, "plwe", 5, seed=9)
    s2, b = generate_samples(small, "plwe", 5, seed=9)
    assert s1 == s2
    assert all(x.a == y.a and x.b == y.b for x, y in zip(a, b))
    _, u = generate_samples(small, "uniform", 5, seed=9)
    assert all(not (x.a == y.a) for x, y in zip(a, u))
    with pytest.raises(ValueError):
        generate_samples(small, "bogus", 1, seed=0)


def test_reduce_sample_indices(small):
    a = small.element(range(1, 9))
    r = reduce_sample(Sample(a, a, "plwe"))
    assert r.a == (1, 5)
    off = small.element([0, 3, 2, 1, 0, 7, 7, 7])
    assert reduce_sample(Sample(off, off, "plwe")).a == (0, 0)


def test_reduced_b_matches_frobenius_trace(small):
    rng = np.random.default_rng(17)
    inv_d = pow(small.d, -1, 29)
    for _ in range(200):
        b = sample_uniform_Rq(small, rng)
        red = reduce_sample(Sample(small.zero(), b, "uniform"))
        _, b_rho = red.eval(small.rho, 29)
        assert b_rho == trace_frobenius_oracle(b.at_alpha()) * inv_d % 29


def test_reduced_a_is_uniform_on_small_quotient(small):
    rng = np.random.default_rng(31)
    pairs = [reduce_sample(Sample(sample_uniform_R0(small, rng), small.zero(), "uniform")).a for _ in range(30_000)]
    arr = np.array(pairs)
    for col in range(2):
        assert stats.chisquare(np.bincount(arr[:, col], minlength=29)).pvalue > 0.01
    joint = arr[:, 0] * 29 + arr[:, 1]
    assert stats.chisquare(np.bincount(joint, minlength=29 * 29)).pvalue > 0.01


def test_params_validation():
    with pytest.raises(FieldError):
        AttackParams.from_q(2, 4, 2, 29, rho=5)
    with pytest.raises(FieldError):
        AttackParams.from_q(2, 2, 2, 29)
    with pytest.raises(ValueError):
        AttackParams.from_q(2, 4, 2, 29, sigma=-1)
    P = AttackParams.from_q(2, 4, 2, 29, sigma=8.0, sigma_mode="variance")
    assert P.error_std == pytest.approx(8.0**0.5)
