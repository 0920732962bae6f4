"""Polynomial evaluation over F_q with exact multiplication counts.

``multiplications`` counts products of two quantities that both depend on
the evaluation point (the usual non-scalar measure). Block evaluation also
performs one coefficient-by-power product per non-constant term. Those go in
``scalar_multiplications`` and are never hidden.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import isqrt, sqrt


@dataclass(frozen=True)
class EvalReport:
    strategy: str
    degree: int
    multiplications: int
    scalar_multiplications: int
    wall_time: float


def _degree(coeffs) -> int:
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0:
        d -= 1
    return max(d, 0)


def horner_eval(coeffs, x: int, q: int) -> tuple[int, EvalReport]:
    t0 = time.perf_counter_ns()
    deg = _degree(coeffs)
    acc = int(coeffs[deg]) % q if coeffs else 0
    mults = 0
    for i in range(deg - 1, -1, -1):
        acc = (acc * x + int(coeffs[i])) % q
        mults += 1
    return acc, EvalReport("horner", deg, mults, 0, (time.perf_counter_ns() - t0) / 1e9)


def block_eval(coeffs, x: int, q: int) -> tuple[int, EvalReport]:
    """Baby-step giant-step evaluation with blocks of size ceil(sqrt(deg)).

    Baby steps: x^2 .. x^k (k - 1 products).  Each block is a linear
    combination of those powers; the blocks are then combined by Horner in
    y = x^k (one product per block after the first).
    """
    t0 = time.perf_counter_ns()
    deg = _degree(coeffs)
    if deg == 0:
        value = int(coeffs[0]) % q if coeffs else 0
        return value, EvalReport("block", 0, 0, 0, (time.perf_counter_ns() - t0) / 1e9)
    k = isqrt(deg - 1) + 1  # ceil(sqrt(deg))
    powers = [1, x % q]
    mults = 0
    for _ in range(2, k + 1):
        powers.append(powers[-1] * x % q)
        mults += 1
    y = powers[k]
    nblocks = deg // k + 1
    scalar = 0
    acc = 0
    for b in range(nblocks - 1, -1, -1):
        block = 0
        for i in range(k):
            idx = b * k + i
            if idx > deg:
                break
            c = int(coeffs[idx]) % q
            if i == 0:
                block += c
            else:
                block += c * powers[i]
                scalar += 1
        if b == nblocks - 1:
            acc = block % q
        else:
            acc = (acc * y + block) % q
            mults += 1
    return acc, EvalReport("block", deg, mults, scalar, (time.perf_counter_ns() - t0) / 1e9)


def ers_bound(degree: int, q: int, s: int = 1) -> float:
    """Reference cost 2 s (sqrt(degree (q - 1)) + 1/2) of automorphic evaluation."""
    return 2 * s * (sqrt(degree * (q - 1)) + 0.5)


STRATEGIES = {"horner": horner_eval, "block": block_eval}
