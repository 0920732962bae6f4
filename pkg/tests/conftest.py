import pytest

from plwe_trace.ring import AttackParams


@pytest.fixture(scope="session")
def small():
    """p=2, n=4, q=29, rho=12: N=8, d=4."""
    return AttackParams.from_q(2, 4, 2, 29, sigma=1.0, rho=12)


@pytest.fixture(scope="session")
def small_p3():
    """p=3, n=3: N=18, d=3."""
    return AttackParams.search(3, 3, 2, 100, sigma=1.0)


@pytest.fixture(scope="session")
def example1():
    return AttackParams.search(2, 10, 2, 24000, sigma=8.0)


def brute_is_prime(n):
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))
