"""Trace-based decision attack on PLWE over prime-power cyclotomic rings."""

from .attack import (
    AttackInapplicable,
    MultBudget,
    SmallnessRegion,
    Verdict,
    VerdictKind,
    algorithm1,
    algorithm2,
    build_sigma,
    mult_budget,
    success_probability,
)
from .cyclotomic import (
    CyclotomicFactorization,
    PolyOverFq,
    brute_irreducibility_check,
    cyclotomic_poly,
    factor_prime_power_cyclotomic,
)
from .extension import (
    ExtContext,
    ExtElement,
    eval_at_alpha,
    ext_mul,
    general_trace_pairing,
    trace_fast,
    trace_frobenius_oracle,
)
from .field import (
    FieldContext,
    FieldError,
    FqElement,
    find_attack_prime,
    fq_arith,
    primitive_roots_of_unity,
)
from .polyeval import EvalReport, block_eval, ers_bound, horner_eval
from .ring import (
    AttackParams,
    ReducedSample,
    RingElement,
    Sample,
    generate_samples,
    membership_R0,
    plwe_oracle,
    reduce_sample,
    ring_mul,
    sample_gaussian_error,
    sample_uniform_R0,
    sample_uniform_Rq,
)

__version__ = "0.1.0"
