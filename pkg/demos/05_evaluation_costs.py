"""Horner vs block evaluation counts, next to the automorphic-evaluation bound.

Run: python demos/05_evaluation_costs.py
"""
# %%
from plwe_trace.harness import bench_rows, rows_to_csv

rows = []
for degree in (2, 16, 64, 256, 512, 1024):
    rows += bench_rows("both", degree, trials=3, q=24029, seed=0)
print(rows_to_csv(rows))
