"""One decision run against each oracle at the first experiment's parameters.

Run: python demos/03_decision_attack.py
"""
# %%
from plwe_trace import AttackParams, algorithm1, algorithm2, build_sigma, reduce_sample, success_probability
from plwe_trace.ring import generate_samples

P = AttackParams.search(2, 10, 2, 24000, sigma=8.0)
print(f"q={P.q} rho={P.rho} N={P.N} d={P.d}")

# %% The smallness region for a window of 3 sigma per error digit.
region = build_sigma(P.p, P.sigma, 3, P.rho, P.q)
print(f"|Sigma| = {region.cardinality}, analytic success 1-(|Sigma|/q)^10 = {success_probability(region.cardinality, P.q, 10):.3g}")

# %% PLWE samples: the lone survivor is the constant coordinate of s(alpha).
secret, samples = generate_samples(P, "plwe", 10, seed=2024)
v = algorithm2(samples, region, P)
print(f"PLWE oracle    -> {v.kind.value}, survivors={sorted(v.survivors)}, "
      f"s(alpha)_0={int(secret.at_alpha().coeffs[0])}, mults={v.mult_count}")

# %% Uniform samples: no guess survives.
_, samples_u = generate_samples(P, "uniform", 10, seed=2024)
v = algorithm2(samples_u, region, P)
print(f"uniform oracle -> {v.kind.value}, survivors={sorted(v.survivors)}")

# %% The reduced problem over F_q[x]/(x^2+1) gives the same survivors.
red = [reduce_sample(s) for s in samples]
print("reduced attack survivors:", sorted(algorithm1(red, region, P.rho).survivors))
