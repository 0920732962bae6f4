"""The trace map of F_q[x]/(x^d - rho) and the subring R_{q,0}.

Run: python demos/02_trace_and_subring.py
"""
# %%
import numpy as np

from plwe_trace import AttackParams, ExtContext, trace_fast, trace_frobenius_oracle
from plwe_trace.ring import constraint_matrix, membership_R0, rank_mod_q, ring_mul, sample_uniform_R0

rng = np.random.default_rng(0)

# %% Only the constant coordinate carries trace: Tr(theta) = d * theta_0.
F = ExtContext(q=29, d=4, rho=12)
for i in range(6):
    x = F.alpha_power(i)
    print(f"Tr(alpha^{i}) = {trace_frobenius_oracle(x):2d}   (fast: {trace_fast(x)})")

theta = F.random(rng)
print(f"random theta {theta.coeffs.tolist()}: oracle={trace_frobenius_oracle(theta)} fast={trace_fast(theta)}")

# %% R_{q,0}: residues with a(alpha) in F_q.  Its dimension is N - (d - 1).
P = AttackParams.from_q(2, 4, 2, 29, rho=12)
rank = rank_mod_q(constraint_matrix(P), P.q)
print(f"\nN={P.N}, d={P.d}, constraint rank={rank}, dim R_q0={P.N - rank}")

a, b = sample_uniform_R0(P, rng), sample_uniform_R0(P, rng)
print("a       =", a.tolist(), "a(alpha) =", a.at_alpha().coeffs.tolist())
print("a*b in R_q0:", membership_R0(ring_mul(a, b)), " x in R_q0:", membership_R0(P.element([0, 1])))
