"""The extension F_{q^d} = F_q[x]/(x^d - rho) and its trace map.

Elements are coefficient vectors in the power basis 1, alpha, ..., alpha^{d-1}
with alpha^d = rho.  When x^d - rho is irreducible only the constant
coordinate contributes to the trace, so Tr(theta) = d * theta_0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldError, int_dtype

FROBENIUS_MAX_DEGREE = 16


@dataclass(frozen=True)
class ExtContext:
    q: int
    d: int
    rho: int

    def element(self, coeffs) -> ExtElement:
        c = np.zeros(self.d, dtype=int_dtype(self.q))
        values = np.asarray(coeffs, dtype=object)
        if values.ndim == 0:
            values = values.reshape(1)
        if len(values) > self.d:
            raise ValueError(f"{len(values)} coefficients for degree-{self.d} extension")
        c[: len(values)] = [int(v) % self.q for v in values]
        return ExtElement(c, self)

    def zero(self) -> ExtElement:
        return self.element([0])

    def one(self) -> ExtElement:
        return self.element([1])

    def alpha_power(self, i: int) -> ExtElement:
        """alpha^i = rho^(i // d) * alpha^(i mod d)."""
        k, r = divmod(i, self.d)
        c = [0] * self.d
        c[r] = pow(self.rho, k, self.q)
        return self.element(c)

    def random(self, rng: np.random.Generator) -> ExtElement:
        return ExtElement(rng.integers(0, self.q, self.d).astype(int_dtype(self.q)), self)


@dataclass(frozen=True, eq=False)
class ExtElement:
    coeffs: np.ndarray
    ctx: ExtContext

    def _check(self, other: ExtElement):
        if other.ctx != self.ctx:
            raise FieldError("extension context mismatch")

    def __add__(self, other: ExtElement) -> ExtElement:
        self._check(other)
        return ExtElement((self.coeffs + other.coeffs) % self.ctx.q, self.ctx)

    def __sub__(self, other: ExtElement) -> ExtElement:
        self._check(other)
        return ExtElement((self.coeffs - other.coeffs) % self.ctx.q, self.ctx)

    def __mul__(self, other):
        if isinstance(other, ExtElement):
            return ext_mul(self, other)
        return ExtElement(self.coeffs * (int(other) % self.ctx.q) % self.ctx.q, self.ctx)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ExtElement:
        result, base = self.ctx.one(), self
        while e:
            if e & 1:
                result = ext_mul(result, base)
            base = ext_mul(base, base)
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.ctx == other.ctx and bool(np.array_equal(self.coeffs, other.coeffs))

    def is_base_field(self) -> bool:
        return not np.any(self.coeffs[1:])

    def __repr__(self):
        return f"ExtElement({[int(c) for c in self.coeffs]}, q={self.ctx.q}, rho={self.ctx.rho})"


def ext_mul(x: ExtElement, y: ExtElement) -> ExtElement:
    x._check(y)
    ctx = x.ctx
    q, d = ctx.q, ctx.d
    dtype = np.int64 if d * (q - 1) ** 2 < (1 << 63) else object
    full = np.convolve(x.coeffs.astype(dtype), y.coeffs.astype(dtype)) % q
    out = full[:d].copy()
    high = full[d:]
    out[: len(high)] = (out[: len(high)] + high * ctx.rho) % q
    return ExtElement(out.astype(int_dtype(q)), ctx)


def trace_fast(x: ExtElement) -> int:
    """Tr(theta) = d * theta_0 mod q."""
    return x.ctx.d * int(x.coeffs[0]) % x.ctx.q


def trace_frobenius_oracle(x: ExtElement) -> int:
    """Sum of the Frobenius conjugates theta^{q^i}, i < d."""
    ctx = x.ctx
    if ctx.d > FROBENIUS_MAX_DEGREE:
        raise ValueError(f"degree {ctx.d} exceeds Frobenius guard {FROBENIUS_MAX_DEGREE}")
    total, conj = ctx.zero(), x
    for _ in range(ctx.d):
        total = total + conj
        conj = conj**ctx.q
    if not total.is_base_field():
        raise AssertionError(f"trace left the base field: {total!r}")
    return int(total.coeffs[0])


def eval_at_alpha(coeffs, ctx: ExtContext) -> ExtElement:
    """Evaluate a polynomial of length divisible by d at alpha.

    Coordinate j of the result is sum_v c_{v d + j} rho^v.
    """
    q, d = ctx.q, ctx.d
    c = np.asarray(coeffs)
    if len(c) % d:
        raise ValueError(f"length {len(c)} not a multiple of d={d}")
    blocks = c.reshape(-1, d).astype(int_dtype(q))
    acc = np.zeros(d, dtype=int_dtype(q))
    # Horner over rows from the top block down.
    for row in blocks[::-1]:
        acc = (acc * ctx.rho + row) % q
    return ExtElement(acc, ctx)


def general_trace_pairing(a_coeffs, s: ExtElement) -> int:
    """Tr(a(alpha) * s) via the double sum over index pairs with i + j = v d.

    Only the terms a_i s_j alpha^{i+j} with d | (i + j) carry trace; each
    contributes d * rho^v * a_i * s_j.
    """
    ctx = s.ctx
    q, d = ctx.q, ctx.d
    a = [int(v) % q for v in a_coeffs]
    N = len(a)
    if N % d:
        raise ValueError(f"length {N} not a multiple of d={d}")
    sj = [int(v) for v in s.coeffs]
    total = 0
    for v in range(N // d + 1):
        inner = 0
        for j in range(d):
            i = v * d - j
            if 0 <= i < N:
                inner += sj[j] * a[i]
        total = (total + inner % q * pow(ctx.rho, v, q)) % q
    return d * total % q
