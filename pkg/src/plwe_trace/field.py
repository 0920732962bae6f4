"""Prime field arithmetic, attack-prime search and roots of unity."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import factorint, isprime

# Search ceiling for find_attack_prime, relative to q_min.
PRIME_SEARCH_SPAN = 1 << 24


class FieldError(ValueError):
    pass


def int_dtype(q: int):
    """numpy dtype able to hold products of two residues mod ``q``."""
    return np.int64 if q < (1 << 31) else object


@dataclass(frozen=True)
class FqElement:
    value: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.q != self.q:
                raise FieldError(f"modulus mismatch: {self.q} vs {other.q}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FqElement(self.value + v, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return FqElement(self.value - v, self.q)

    def __rsub__(self, other):
        v = self._coerce(other)
        return FqElement(v - self.value, self.q)

    def __mul__(self, other):
        v = self._coerce(other)
        return FqElement(self.value * v, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(-self.value, self.q)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(pow(self.value, e, self.q), self.q)

    def inverse(self) -> FqElement:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return FqElement(pow(self.value, -1, self.q), self.q)

    def __truediv__(self, other):
        v = self._coerce(other)
        return self * FqElement(v, self.q).inverse()

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.q == other.q and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def __int__(self):
        return self.value

    def centered(self) -> int:
        """Representative in (-q/2, q/2]."""
        return centered(self.value, self.q)


def centered(value: int, q: int) -> int:
    v = value % q
    return v - q if v > q // 2 else v


def fq_arith(op: str, a, b, q: int) -> int:
    """Apply ``op`` (add, sub, mul, inv, pow) to canonical residues mod ``q``.

    For ``inv`` the second operand is ignored.  Operands given as
    :class:`FqElement` must carry modulus ``q``.
    """
    def val(x):
        if isinstance(x, FqElement):
            if x.q != q:
                raise FieldError(f"modulus mismatch: {x.q} vs {q}")
            return x.value
        return int(x)

    x = val(a) % q
    if op == "add":
        return (x + val(b)) % q
    if op == "sub":
        return (x - val(b)) % q
    if op == "mul":
        return (x * val(b)) % q
    if op == "inv":
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{q}")
        return pow(x, -1, q)
    if op == "pow":
        e = int(b)
        if e < 0:
            return pow(fq_arith("inv", x, None, q), -e, q)
        return pow(x, e, q)
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class FieldContext:
    """F_q with q = 1 + p^A u, gcd(u, p) = 1."""

    q: int
    p: int
    A: int
    u: int

    def __post_init__(self):
        problems = theorem_hypotheses_violations(self.q, self.p, self.A, self.u)
        if problems:
            raise FieldError("; ".join(problems))

    @property
    def order(self) -> int:
        """p^A, the order of the roots of unity we care about."""
        return self.p**self.A

    def __call__(self, value: int) -> FqElement:
        return FqElement(value, self.q)

    def add(self, a, b):
        return fq_arith("add", a, b, self.q)

    def sub(self, a, b):
        return fq_arith("sub", a, b, self.q)

    def mul(self, a, b):
        return fq_arith("mul", a, b, self.q)

    def inv(self, a):
        return fq_arith("inv", a, None, self.q)

    def pow(self, a, e):
        return fq_arith("pow", a, e, self.q)


def theorem_hypotheses_violations(q: int, p: int, A: int, u: int) -> list[str]:
    """Reasons why (q, p, A, u) fails the splitting-theorem hypotheses."""
    out = []
    if A < 1:
        out.append(f"A={A} must be >= 1")
    if not isprime(p):
        out.append(f"p={p} is not prime")
    if not isprime(q):
        out.append(f"q={q} is not prime")
    if q != 1 + p**A * u:
        out.append(f"q={q} != 1 + {p}^{A}*{u}")
    if gcd(u, p) != 1:
        out.append(f"gcd(u={u}, p={p}) != 1")
    return out


def find_attack_prime(p: int, n: int, A: int, q_min: int) -> FieldContext:
    """Smallest prime q >= q_min with q = 1 + p^A u and p not dividing u."""
    if not isprime(p):
        raise FieldError(f"p={p} is not prime")
    if not n > A >= 1:
        raise FieldError(f"need n > A >= 1, got n={n}, A={A}")
    if q_min < 2:
        raise FieldError("q_min must be >= 2")
    step = p**A
    u = max(1, -(-(q_min - 1) // step))
    ceiling = q_min + PRIME_SEARCH_SPAN
    while True:
        q = 1 + step * u
        if q > ceiling:
            raise FieldError(f"no attack prime in [{q_min}, {ceiling}]")
        if u % p and isprime(q):
            return FieldContext(q=q, p=p, A=A, u=u)
        u += 1


def generator(q: int) -> int:
    """Smallest generator of F_q^*."""
    factors = list(factorint(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in factors):
            return g
    if q == 2:
        return 1
    raise FieldError(f"no generator found for q={q}")


def primitive_roots_of_unity(ctx: FieldContext) -> list[int]:
    """Omega(p^A): all elements of exact order p^A, sorted by exponent.

    The first entry is g^((q-1)/p^A) for the smallest generator g.
    """
    q, order = ctx.q, ctx.order
    if (q - 1) % order:
        raise FieldError(f"q={q} is not 1 mod {order}")
    zeta = pow(generator(q), (q - 1) // order, q)
    return [pow(zeta, k, q) for k in range(1, order) if k % ctx.p]


def multiplicative_order(x: int, q: int) -> int:
    x %= q
    if x == 0:
        raise FieldError("zero has no multiplicative order")
    order = q - 1
    for r, e in factorint(q - 1).items():
        for _ in range(e):
            if pow(x, order // r, q) == 1:
                order //= r
            else:
                break
    return order
