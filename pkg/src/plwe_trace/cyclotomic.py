"""Prime-power cyclotomic polynomials and their closed-form splitting over F_q.

For q = 1 + p^A u with gcd(u, p) = 1 and n > A,

    Phi_{p^n}(x) = prod_{rho in Omega(p^A)} (x^{p^{n-A}} - rho)

with every binomial irreducible.  Factors are kept as their root constant
``rho``; they are only expanded to verify the product.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import FieldContext, FieldError, primitive_roots_of_unity

IRREDUCIBILITY_MAX_DEGREE = 64


@dataclass(frozen=True)
class PolyOverFq:
    """Dense polynomial, ascending coefficients, canonical mod q (q=0: over Z)."""

    coeffs: tuple[int, ...]
    q: int = 0

    def __post_init__(self):
        c = [int(x) % self.q for x in self.coeffs] if self.q else [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def reduce(self, q: int) -> PolyOverFq:
        return PolyOverFq(self.coeffs, q)

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms) or "0"


def cyclotomic_poly(p: int, n: int) -> PolyOverFq:
    """Phi_{p^n}(x) = sum_{i<p} x^{i p^{n-1}} over Z."""
    if n < 1:
        raise ValueError("n must be >= 1")
    stride = p ** (n - 1)
    coeffs = [0] * ((p - 1) * stride + 1)
    for i in range(p):
        coeffs[i * stride] = 1
    return PolyOverFq(tuple(coeffs))


@dataclass(frozen=True)
class CyclotomicFactorization:
    ctx: FieldContext
    n: int
    roots: tuple[int, ...]
    phi: PolyOverFq = dc_field(repr=False)

    @property
    def factor_degree(self) -> int:
        return self.ctx.p ** (self.n - self.ctx.A)

    def factors(self) -> list[PolyOverFq]:
        """Expanded binomials x^D - rho (only use for small D)."""
        d, q = self.factor_degree, self.ctx.q
        return [PolyOverFq((-r,) + (0,) * (d - 1) + (1,), q) for r in self.roots]

    def describe_factors(self) -> str:
        d, q = self.factor_degree, self.ctx.q
        return "".join(f"(x^{d}+{(-r) % q})" for r in self.roots)


def sparse_product(binomials: list[dict[int, int]], q: int) -> dict[int, int]:
    """Multiply sparse polynomials {exponent: coeff} mod q."""
    acc = {0: 1}
    for b in binomials:
        nxt: dict[int, int] = {}
        for e1, c1 in acc.items():
            for e2, c2 in b.items():
                k = e1 + e2
                nxt[k] = (nxt.get(k, 0) + c1 * c2) % q
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def factor_prime_power_cyclotomic(ctx: FieldContext, n: int) -> CyclotomicFactorization:
    """Split Phi_{p^n} over F_q into binomials, verifying the product exactly."""
    if n <= ctx.A:
        raise FieldError(f"need n > A, got n={n}, A={ctx.A}")
    p, q = ctx.p, ctx.q
    roots = tuple(primitive_roots_of_unity(ctx))
    d = p ** (n - ctx.A)
    product = sparse_product([{d: 1, 0: -r % q} for r in roots], q)
    phi = cyclotomic_poly(p, n)
    expected = {i: c % q for i, c in enumerate(phi.coeffs) if c % q}
    if product != expected:
        raise FieldError("binomial product does not reproduce the cyclotomic polynomial")
    return CyclotomicFactorization(ctx=ctx, n=n, roots=roots, phi=phi)


# Dense polynomial helpers over F_q, lists with ascending coefficients.

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _trim(out)


def poly_divmod(a, b, q):
    a = _trim([x % q for x in a])
    b = _trim([x % q for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % q
        quot[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] = (rem[shift + j] - c * y) % q
        _trim(rem)
    return _trim(quot), rem


def poly_gcd(a, b, q):
    a = _trim([x % q for x in a])
    b = _trim([x % q for x in b])
    while b:
        a, b = b, poly_divmod(a, b, q)[1]
    if a:
        inv = pow(a[-1], -1, q)
        a = [x * inv % q for x in a]
    return a


def poly_powmod(base, e, mod, q):
    result = [1]
    base = poly_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, q), mod, q)[1]
        base = poly_divmod(poly_mul(base, base, q), mod, q)[1]
        e >>= 1
    return result


def brute_irreducibility_check(f: PolyOverFq) -> bool:
    """True iff gcd(f, x^{q^i} - x) = 1 for all 1 <= i <= deg(f)/2."""
    q = f.q
    if not q:
        raise ValueError("polynomial must be reduced mod a prime")
    deg = f.degree
    if deg > IRREDUCIBILITY_MAX_DEGREE:
        raise ValueError(f"degree {deg} exceeds guard {IRREDUCIBILITY_MAX_DEGREE}")
    if deg < 1:
        return False
    f_list = list(f.coeffs)
    h = [0, 1]
    for _ in range(deg // 2):
        h = poly_powmod(h, q, f_list, q)
        probe = list(h) + [0] * max(0, 2 - len(h))
        probe[1] = (probe[1] - 1) % q
        if len(poly_gcd(f_list, probe, q)) > 1:
            return False
    return True
