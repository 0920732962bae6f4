"""Repeat the five-run experiment for both parameter sets and several readings of sigma.

With sigma as the standard deviation a window of 2 sigma keeps the true
guess in only about 40% of ten-sample runs; 3 sigma, or reading sigma as a
variance, gives clean runs.

Run: python demos/04_reproduce_experiments.py
"""
# %%
from plwe_trace import AttackParams
from plwe_trace.harness import run_experiment

configs = [
    ("std", 2), ("std", 3), ("variance", 2),
]
for n, q_min in [(10, 24000), (11, 40000)]:
    for mode, cutoff in configs:
        P = AttackParams.search(2, n, 2, q_min, sigma=8.0, sigma_mode=mode)
        rep = run_experiment(P, cutoff=cutoff, M=10, ntests=5, seed=1)
        f = rep.failures
        gen = sum(r.gen_seconds for r in rep.runs)
        atk = sum(r.attack_seconds for r in rep.runs)
        print(f"N={P.N:4d} q={P.q} sigma-as-{mode:8s} c={cutoff}: |Sigma|={rep.sigma_card:5d} "
              f"failures plwe={f['plwe']}/5 uniform={f['uniform']}/5  gen={gen:.2f}s attack={atk:.2f}s")
