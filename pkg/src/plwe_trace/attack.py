"""Smallness regions and the two decision attacks.

Both attacks sweep every guess g in F_q and keep those for which each
sample's residual lands in the smallness region Sigma:

* ``algorithm1`` works on reduced samples (a', b') in F_q[x]/(Phi_{p^2})
  with residual b'(rho) - a'(rho) g.
* ``algorithm2`` works on full samples in R_{q,0} x R_q with residual
  Tr(b(alpha))/d - a(alpha) g, where a(alpha) is already in F_q.

The two residuals coincide, so the survivor sets agree exactly.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import ceil, floor, sqrt

import numpy as np

from .extension import trace_fast
from .field import int_dtype
from .ring import AttackParams, ReducedSample, Sample

MAX_REGION_MODULUS = 1 << 28


class AttackInapplicable(ValueError):
    """|Sigma| >= q: the region cannot separate the two oracles."""


class VerdictKind(enum.Enum):
    PLWE = "PLWE"
    NOT_PLWE = "NOT PLWE"
    NOT_ENOUGH_SAMPLES = "NOT ENOUGH SAMPLES"


@dataclass(frozen=True, eq=False)
class SmallnessRegion:
    mask: np.ndarray
    cardinality: int
    cutoff: float
    sigma: float
    rho: int
    window: int

    @property
    def q(self) -> int:
        return len(self.mask)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(int(v) for v in np.flatnonzero(self.mask))

    def __contains__(self, value) -> bool:
        return bool(self.mask[int(value) % self.q])

    def __len__(self):
        return self.cardinality


def build_sigma(p: int, sigma: float, cutoff: float, rho: int, q: int, *, strict: bool = True) -> SmallnessRegion:
    """Sigma = { sum_{j<p(p-1)} e_j rho^j : |e_j| <= floor(cutoff * sigma) } mod q.

    Built as an iterated sumset over a boolean table of F_q, so the cost is
    O(q * window * p(p-1)) no matter how many digit tuples collide.
    """
    if q > MAX_REGION_MODULUS:
        raise ValueError(f"q={q} too large for a dense region table")
    w = floor(cutoff * sigma + 1e-9)
    digits = np.arange(-w, w + 1)
    mask = np.zeros(q, dtype=bool)
    mask[0] = True
    for j in range(p * (p - 1)):
        step = pow(rho, j, q)
        nxt = np.zeros_like(mask)
        idx = np.flatnonzero(mask)
        for e in digits:
            nxt[(idx + int(e) * step) % q] = True
        mask = nxt
    card = int(mask.sum())
    region = SmallnessRegion(mask, card, cutoff, sigma, rho % q, w)
    if strict and card >= q:
        raise AttackInapplicable(f"attack inapplicable: |Sigma|={card} >= q={q}")
    return region


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    survivors: frozenset[int]
    mult_count: int

    @classmethod
    def from_survivors(cls, survivors, mult_count: int) -> Verdict:
        survivors = frozenset(int(g) for g in survivors)
        if not survivors:
            kind = VerdictKind.NOT_PLWE
        elif len(survivors) == 1:
            kind = VerdictKind.PLWE
        else:
            kind = VerdictKind.NOT_ENOUGH_SAMPLES
        return cls(kind, survivors, mult_count)

    @property
    def guess(self) -> int | None:
        """The lone survivor when the verdict is PLWE."""
        if self.kind is VerdictKind.PLWE:
            return next(iter(self.survivors))
        return None


def _sweep(residual_base, slopes, region: SmallnessRegion, guesses: np.ndarray):
    """Survivors among ``guesses`` and the number of (g, sample) tests run.

    A guess is tested against samples in order and dropped at its first
    failure, so a guess failing at sample i costs i + 1 multiplications.
    """
    q = region.q
    alive = np.ones(len(guesses), dtype=bool)
    tested = 0
    g = guesses.astype(int_dtype(q))
    for base, slope in zip(residual_base, slopes):
        tested += int(alive.sum())
        vals = (base - slope * g) % q
        alive &= region.mask[vals.astype(np.int64)]
    return guesses[alive], tested


def _run_sweep(residual_base, slopes, region, workers: int):
    q = region.q
    if workers <= 1:
        surv, tested = _sweep(residual_base, slopes, region, np.arange(q, dtype=np.int64))
        return surv.tolist(), tested
    chunks = np.array_split(np.arange(q, dtype=np.int64), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda ch: _sweep(residual_base, slopes, region, ch), chunks))
    survivors = sorted(int(g) for part, _ in parts for g in part)
    return survivors, sum(t for _, t in parts)


def algorithm1(samples: list[ReducedSample], region: SmallnessRegion, rho: int, *, workers: int = 1) -> Verdict:
    """Root attack on reduced samples: keep g with b'(rho) - a'(rho) g in Sigma."""
    if not samples:
        raise ValueError("algorithm1 needs at least one sample")
    q = region.q
    bases, slopes, setup = [], [], 0
    for s in samples:
        a_val, b_val = s.eval(rho, q)
        setup += max(len(s.a) - 1, 0) + max(len(s.b) - 1, 0)
        bases.append(b_val)
        slopes.append(a_val)
    survivors, tested = _run_sweep(bases, slopes, region, workers)
    return Verdict.from_survivors(survivors, setup + tested)


def algorithm2(samples: list[Sample], region: SmallnessRegion, params: AttackParams, *, workers: int = 1) -> Verdict:
    """Trace decision attack on samples from R_{q,0} x R_q.

    Per sample: (1/d) Tr(b(alpha)) and a(alpha) in F_q, computed once.  The
    guess g plays the role of the constant coordinate of s(alpha).
    """
    if not samples:
        raise ValueError("algorithm2 needs at least one sample")
    if params.A != 2:
        raise ValueError("the trace attack is defined for A = 2 only")
    q, d, B = params.q, params.d, params.blocks
    inv_d = pow(d, -1, q)
    bases, slopes = [], []
    # Horner for b'(rho) and a'(rho), then d * b0 and the 1/d rescale.
    setup = 0
    for i, s in enumerate(samples):
        a_alpha = s.a.at_alpha()
        if not a_alpha.is_base_field():
            raise ValueError(f"sample {i}: a is not in R_q0")
        tr_b = trace_fast(s.b.at_alpha())
        bases.append(tr_b * inv_d % q)
        slopes.append(int(a_alpha.coeffs[0]))
        setup += 2 * (B - 1) + 2
    survivors, tested = _run_sweep(bases, slopes, region, workers)
    return Verdict.from_survivors(survivors, setup + tested)


def setup_mults(params: AttackParams, M: int) -> int:
    """Per-run setup multiplications counted by :func:`algorithm2`."""
    return (2 * (params.blocks - 1) + 2) * M


def success_probability(sigma_card: int, q: int, M: int) -> float:
    """1 - (|Sigma|/q)^M."""
    if sigma_card >= q:
        raise AttackInapplicable(f"|Sigma|={sigma_card} >= q={q}")
    return 1.0 - (sigma_card / q) ** M


@dataclass(frozen=True)
class MultBudget:
    automorphic: int  # (2 sqrt(p(p-1)(q-1)) + 2) M q
    direct: int  # (p(p-1) + 1) M q


def mult_budget(p: int, q: int, M: int) -> MultBudget:
    k = p * (p - 1)
    return MultBudget(
        automorphic=ceil((2 * sqrt(k * (q - 1)) + 2) * M * q),
        direct=(k + 1) * M * q,
    )
