"""The quotient ring R_q = F_q[x]/(Phi_{p^n}), its subring R_{q,0} and samplers.

R_{q,0} holds the residues whose evaluation at the extension root alpha
(alpha^d = rho, d = p^{n-A}) already lies in F_q.  Writing a coefficient
index as v*d + j, that happens exactly when

    sum_v a_{v d + j} rho^v = 0   for every 0 < j < d.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from math import sqrt

import numpy as np

from .cyclotomic import CyclotomicFactorization, factor_prime_power_cyclotomic
from .extension import ExtContext, ExtElement, eval_at_alpha
from .field import FieldContext, FieldError, find_attack_prime, int_dtype, primitive_roots_of_unity

# Named sub-streams derived from one master seed.
STREAMS = {"secret": 0, "a": 1, "error": 2, "uniform-b": 3, "stats": 4}
ORACLES = {"plwe": 0, "uniform": 1}


def substream(seed: int, name: str, *indices: int) -> np.random.Generator:
    """Independent generator for (seed, name, indices); order-free and replayable."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(STREAMS[name], *indices))
    return np.random.default_rng(ss)


@dataclass(frozen=True)
class AttackParams:
    """One attack instance (p, n, A, q, u, sigma, rho).

    ``sigma_mode`` says how ``sigma`` is read when sampling errors: ``"std"``
    treats it as the standard deviation, ``"variance"`` as sigma^2 = sigma,
    i.e. standard deviation sqrt(sigma).
    """

    p: int
    n: int
    A: int
    q: int
    u: int
    sigma: float
    rho: int
    sigma_mode: str = "std"
    _field: FieldContext = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n <= self.A:
            raise FieldError(f"need n > A, got n={self.n}, A={self.A}")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.sigma_mode not in ("std", "variance"):
            raise ValueError(f"unknown sigma_mode {self.sigma_mode!r}")
        ctx = FieldContext(q=self.q, p=self.p, A=self.A, u=self.u)
        if self.rho % self.q not in primitive_roots_of_unity(ctx):
            raise FieldError(f"rho={self.rho} is not a primitive {self.p}^{self.A}-th root of unity mod {self.q}")
        object.__setattr__(self, "rho", self.rho % self.q)
        object.__setattr__(self, "_field", ctx)

    @classmethod
    def search(cls, p, n, A, q_min, sigma=8.0, rho=None, sigma_mode="std") -> AttackParams:
        ctx = find_attack_prime(p, n, A, q_min)
        if rho is None:
            rho = primitive_roots_of_unity(ctx)[0]
        return cls(p, n, A, ctx.q, ctx.u, sigma, rho, sigma_mode)

    @classmethod
    def from_q(cls, p, n, A, q, sigma=8.0, rho=None, sigma_mode="std") -> AttackParams:
        if (q - 1) % p**A:
            raise FieldError(f"q={q} is not 1 mod {p}^{A}")
        ctx = FieldContext(q=q, p=p, A=A, u=(q - 1) // p**A)
        if rho is None:
            rho = primitive_roots_of_unity(ctx)[0]
        return cls(p, n, A, q, ctx.u, sigma, rho, sigma_mode)

    @property
    def field(self) -> FieldContext:
        return self._field

    @property
    def m(self) -> int:
        return self.p**self.n

    @property
    def N(self) -> int:
        return self.p ** (self.n - 1) * (self.p - 1)

    @property
    def d(self) -> int:
        """Extension degree p^{n-A}; also the stride of the trace-carrying coefficients."""
        return self.p ** (self.n - self.A)

    @property
    def blocks(self) -> int:
        """Number of coefficients per residue class mod d (p(p-1) when A = 2)."""
        return self.N // self.d

    @property
    def error_std(self) -> float:
        return self.sigma if self.sigma_mode == "std" else sqrt(self.sigma)

    @property
    def ext(self) -> ExtContext:
        return ExtContext(q=self.q, d=self.d, rho=self.rho)

    def factorization(self) -> CyclotomicFactorization:
        return factor_prime_power_cyclotomic(self.field, self.n)

    def with_sigma(self, sigma: float) -> AttackParams:
        return AttackParams(self.p, self.n, self.A, self.q, self.u, sigma, self.rho, self.sigma_mode)

    def element(self, coeffs) -> RingElement:
        c = np.zeros(self.N, dtype=int_dtype(self.q))
        values = list(coeffs)
        if len(values) > self.N:
            raise ValueError(f"{len(values)} coefficients for a ring of dimension {self.N}")
        c[: len(values)] = [int(v) % self.q for v in values]
        return RingElement(c, self)

    def zero(self) -> RingElement:
        return self.element([])

    def one(self) -> RingElement:
        return self.element([1])


@dataclass(frozen=True, eq=False)
class RingElement:
    coeffs: np.ndarray
    params: AttackParams

    def _check(self, other: RingElement):
        if other.params != self.params:
            raise FieldError("ring context mismatch")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement((self.coeffs + other.coeffs) % self.params.q, self.params)

    def __sub__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement((self.coeffs - other.coeffs) % self.params.q, self.params)

    def __neg__(self) -> RingElement:
        return RingElement((-self.coeffs) % self.params.q, self.params)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        return RingElement(self.coeffs * (int(other) % self.params.q) % self.params.q, self.params)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.params == other.params and bool(np.array_equal(self.coeffs, other.coeffs))

    def at_alpha(self) -> ExtElement:
        return eval_at_alpha(self.coeffs, self.params.ext)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    """Schoolbook product reduced mod Phi_{p^n}.

    The product is folded mod x^{p^n} - 1 first; the remaining top block
    x^{N + r}, r < p^{n-1}, rewrites as -sum_{i<p-1} x^{r + i p^{n-1}}.
    """
    x._check(y)
    P = x.params
    q, N, m = P.q, P.N, P.m
    stride = P.p ** (P.n - 1)
    dtype = np.int64 if N * (q - 1) ** 2 < (1 << 63) else object
    full = np.convolve(x.coeffs.astype(dtype), y.coeffs.astype(dtype)) % q
    cyc = np.zeros(m, dtype=dtype)
    cyc[: min(len(full), m)] = full[:m]
    tail = full[m:]
    cyc[: len(tail)] += tail
    out = cyc[:N].copy()
    top = cyc[N:]
    for i in range(P.p - 1):
        out[i * stride : i * stride + len(top)] -= top
    return RingElement((out % q).astype(int_dtype(q)), P)


def membership_R0(a: RingElement) -> bool:
    return a.at_alpha().is_base_field()


def constraint_matrix(params: AttackParams) -> np.ndarray:
    """Rows j = 1..d-1: coefficient rho^v at column v d + j."""
    d, B, q = params.d, params.blocks, params.q
    M = np.zeros((d - 1, params.N), dtype=object)
    for j in range(1, d):
        for v in range(B):
            M[j - 1, v * d + j] = pow(params.rho, v, q)
    return M


def rank_mod_q(matrix, q: int) -> int:
    rows = [[int(x) % q for x in row] for row in matrix]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        rows[rank] = [v * inv % q for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def r0_dimension(params: AttackParams) -> int:
    return params.N - rank_mod_q(constraint_matrix(params), params.q)


def sample_uniform_Rq(params: AttackParams, rng: np.random.Generator) -> RingElement:
    c = rng.integers(0, params.q, params.N, dtype=np.int64)
    return RingElement(c.astype(int_dtype(params.q)), params)


def sample_uniform_R0(params: AttackParams, rng: np.random.Generator) -> RingElement:
    """Uniform draw from R_{q,0}.

    Column 0 of the (blocks x d) coefficient grid is free; in every other
    column the last entry is solved from the vanishing constraint.
    """
    q, d, B = params.q, params.d, params.blocks
    grid = rng.integers(0, q, (B, d), dtype=np.int64).astype(int_dtype(q))
    if d > 1:
        partial = np.zeros(d - 1, dtype=grid.dtype)
        for v in range(B - 1):
            partial = (partial + grid[v, 1:] * pow(params.rho, v, q)) % q
        scale = (-pow(params.rho, -(B - 1), q)) % q
        grid[B - 1, 1:] = partial * scale % q
    return RingElement(grid.reshape(-1), params)


def gaussian_integers(std: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """round(N(0, std^2)), no truncation."""
    if std < 0:
        raise ValueError("std must be >= 0")
    return np.rint(rng.normal(0.0, std, size)).astype(np.int64)


def sample_gaussian_error(sigma: float, params: AttackParams, rng: np.random.Generator) -> RingElement:
    """Rounded Gaussian coefficients with standard deviation ``sigma``, mod q."""
    e = gaussian_integers(sigma, params.N, rng) % params.q
    return RingElement(e.astype(int_dtype(params.q)), params)


@dataclass(frozen=True, eq=False)
class Sample:
    a: RingElement
    b: RingElement
    oracle: str
    seed: int | None = None
    index: int | None = None
    error: RingElement | None = dc_field(default=None, repr=False)


@dataclass(frozen=True)
class ReducedSample:
    """Residues (a', b') in F_q[x]/(Phi_{p^2}) taken at stride d."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def eval(self, x: int, q: int) -> tuple[int, int]:
        return _horner(self.a, x, q), _horner(self.b, x, q)


def _horner(coeffs, x, q):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def plwe_oracle(secret: RingElement, params: AttackParams, rng_a, rng_e, *, seed=None, index=None) -> Sample:
    """(a, a*s + e) with a uniform on R_{q,0} and rounded-Gaussian e."""
    a = sample_uniform_R0(params, rng_a)
    e = sample_gaussian_error(params.error_std, params, rng_e)
    return Sample(a, ring_mul(a, secret) + e, "plwe", seed, index, e)


def uniform_oracle(params: AttackParams, rng_a, rng_b, *, seed=None, index=None) -> Sample:
    return Sample(sample_uniform_R0(params, rng_a), sample_uniform_Rq(params, rng_b), "uniform", seed, index)


def reduce_sample(s: Sample) -> ReducedSample:
    d = s.a.params.d
    return ReducedSample(
        tuple(int(c) for c in s.a.coeffs[::d]),
        tuple(int(c) for c in s.b.coeffs[::d]),
    )


def draw_secret(params: AttackParams, seed: int, run: int = 0) -> RingElement:
    return sample_uniform_Rq(params, substream(seed, "secret", run))


def secret_commitment(secret: RingElement | None) -> str | None:
    if secret is None:
        return None
    return hashlib.sha256(",".join(map(str, secret.tolist())).encode()).hexdigest()


def generate_samples(params: AttackParams, oracle: str, M: int, seed: int, run: int = 0, secret=None):
    """M samples from one oracle; every draw has its own named sub-stream.

    Returns (secret, samples); the secret is None for the uniform oracle.
    """
    if oracle not in ORACLES:
        raise ValueError(f"unknown oracle {oracle!r}")
    key = ORACLES[oracle]
    if oracle == "plwe":
        if secret is None:
            secret = draw_secret(params, seed, run)
        samples = [
            plwe_oracle(secret, params, substream(seed, "a", key, run, i), substream(seed, "error", run, i),
                        seed=seed, index=i)
            for i in range(M)
        ]
        return secret, samples
    samples = [
        uniform_oracle(params, substream(seed, "a", key, run, i), substream(seed, "uniform-b", run, i),
                       seed=seed, index=i)
        for i in range(M)
    ]
    return None, samples
