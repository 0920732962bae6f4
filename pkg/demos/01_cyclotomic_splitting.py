"""Splitting Phi_{2^n} over F_q when q = 1 + 4u with u odd.

Run: python demos/01_cyclotomic_splitting.py
"""
# %%
from plwe_trace import (
    PolyOverFq,
    brute_irreducibility_check,
    factor_prime_power_cyclotomic,
    find_attack_prime,
    primitive_roots_of_unity,
)

# %% The two instances used in the experiments: q just above 24000 and 40000.
for n, q_min in [(10, 24000), (11, 40000)]:
    ctx = find_attack_prime(2, n, 2, q_min)
    fact = factor_prime_power_cyclotomic(ctx, n)
    print(f"n={n}: q={ctx.q} = 1 + 4*{ctx.u}")
    print(f"  Phi = x^{2 ** (n - 1)}+1 = {fact.describe_factors()}")

# %% A toy instance small enough to check irreducibility directly.
ctx = find_attack_prime(2, 4, 2, 20)
fact = factor_prime_power_cyclotomic(ctx, 4)
print(f"\nq={ctx.q}, Omega(4) = {primitive_roots_of_unity(ctx)}")
for f in fact.factors():
    print(f"  {f}  irreducible={brute_irreducibility_check(f)}")

# %% Lower-degree binomials x^{2^{n-k-2}} - rho^v stay irreducible for odd v.
rho = fact.roots[0]
for deg in (4, 2):
    for v in (1, 3):
        f = PolyOverFq((-pow(rho, v, ctx.q), *[0] * (deg - 1), 1), ctx.q)
        print(f"  x^{deg} - {rho}^{v}: irreducible={brute_irreducibility_check(f)}")

# %% p = 3 works the same way: Phi_27 splits into six binomials of degree 3.
ctx = find_attack_prime(3, 3, 2, 50)
fact = factor_prime_power_cyclotomic(ctx, 3)
print(f"\np=3, q={ctx.q}: {fact.describe_factors()}")
