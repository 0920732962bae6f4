"""Experiment driver: sample-set files, repeated attack runs, statistics, benchmarks."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .attack import (
    VerdictKind,
    algorithm2,
    build_sigma,
    mult_budget,
    setup_mults,
    success_probability,
)
from .polyeval import STRATEGIES, ers_bound
from .ring import (
    AttackParams,
    Sample,
    generate_samples,
    reduce_sample,
    sample_uniform_R0,
    sample_uniform_Rq,
    secret_commitment,
    substream,
)

FORMAT_TAG = "plwe-samples/1"
BENCH_HEADER = ["strategy", "degree", "mults", "ers_bound", "nanos"]


class SampleFileError(OSError):
    pass


# Sample-set files: one JSON header line, then one JSON line per sample.

def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def sample_file_header(params: AttackParams, oracle: str, M: int, seed: int, run: int, secret) -> dict:
    return {
        "format": FORMAT_TAG,
        "p": params.p, "n": params.n, "A": params.A, "q": params.q, "u": params.u,
        "rho": params.rho, "sigma": params.sigma, "sigma_mode": params.sigma_mode,
        "oracle": oracle, "M": M, "seed": seed, "run": run,
        "secret_commitment": secret_commitment(secret),
    }


def render_sample_file(header: dict, samples: list[Sample]) -> str:
    lines = [_dumps(header)]
    for i, s in enumerate(samples):
        lines.append(_dumps({"index": i, "a": s.a.tolist(), "b": s.b.tolist()}))
    return "\n".join(lines) + "\n"


def atomic_write(path, text: str):
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise SampleFileError(f"cannot write {path}: {exc}") from exc


def write_sample_file(path, params, oracle, M, seed, run=0) -> dict:
    secret, samples = generate_samples(params, oracle, M, seed, run)
    header = sample_file_header(params, oracle, M, seed, run, secret)
    atomic_write(path, render_sample_file(header, samples))
    return header


def params_from_header(h: dict) -> AttackParams:
    return AttackParams(h["p"], h["n"], h["A"], h["q"], h["u"], float(h["sigma"]), h["rho"], h.get("sigma_mode", "std"))


def read_sample_file(path) -> tuple[dict, AttackParams, list[Sample]]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise SampleFileError(f"cannot read {path}: {exc}") from exc
    try:
        header = json.loads(lines[0])
        if header.get("format") != FORMAT_TAG:
            raise SampleFileError(f"{path}: not a {FORMAT_TAG} file")
        params = params_from_header(header)
        samples = []
        for line in lines[1:]:
            if not line.strip():
                continue
            rec = json.loads(line)
            a, b = rec["a"], rec["b"]
            if len(a) != params.N or len(b) != params.N:
                raise SampleFileError(f"{path}: sample {rec.get('index')} has wrong length")
            if any(not 0 <= v < params.q for v in a + b):
                raise SampleFileError(f"{path}: sample {rec.get('index')} has out-of-range coefficients")
            samples.append(Sample(params.element(a), params.element(b), header["oracle"], header["seed"], rec["index"]))
    except (IndexError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise SampleFileError(f"{path}: malformed sample file ({exc})") from exc
    if len(samples) != header["M"]:
        raise SampleFileError(f"{path}: header says M={header['M']}, found {len(samples)} samples")
    return header, params, samples


# Commands

def params_summary(params: AttackParams) -> dict:
    fact = params.factorization()
    return {
        "p": params.p, "n": params.n, "A": params.A, "q": params.q, "u": params.u,
        "m": params.m, "N": params.N,
        "phi": f"x^{params.N}+1" if params.p == 2 else str(fact.phi),
        "factors": fact.describe_factors(),
        "factor_constants": sorted((-r) % params.q for r in fact.roots),
        "roots": list(fact.roots),
        "rho": params.rho,
        "rho_centered": params.rho - params.q if params.rho > params.q // 2 else params.rho,
    }


def attack_file(path, cutoff: float) -> dict:
    header, params, samples = read_sample_file(path)
    region = build_sigma(params.p, params.sigma, cutoff, params.rho, params.q)
    t0 = time.perf_counter()
    verdict = algorithm2(samples, region, params)
    elapsed = time.perf_counter() - t0
    M = len(samples)
    return {
        "oracle": header["oracle"], "q": params.q, "M": M, "cutoff": cutoff,
        "sigma_card": region.cardinality,
        "verdict": verdict.kind.value,
        "survivors": sorted(verdict.survivors)[:32],
        "n_survivors": len(verdict.survivors),
        "mult_count": verdict.mult_count,
        "mult_bound": mult_budget(params.p, params.q, M).direct + setup_mults(params, M),
        "attack_seconds": elapsed,
    }


@dataclass
class RunRecord:
    oracle: str
    run: int
    verdict: str
    n_survivors: int
    true_guess_survived: bool | None
    failed: bool
    mult_count: int
    gen_seconds: float
    attack_seconds: float


@dataclass
class ExperimentReport:
    p: int
    n: int
    A: int
    q: int
    rho: int
    sigma: float
    sigma_mode: str
    cutoff: float
    M: int
    ntests: int
    seed: int
    sigma_card: int
    success_probability: float
    mult_budget_automorphic: int
    mult_budget_direct: int
    runs: list[RunRecord] = field(default_factory=list)

    @property
    def failures(self) -> dict[str, int]:
        out = {"plwe": 0, "uniform": 0}
        for r in self.runs:
            out[r.oracle] += r.failed
        return out

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        d["failures"] = self.failures
        if not timings:
            for r in d["runs"]:
                r.pop("gen_seconds")
                r.pop("attack_seconds")
        return d


def run_once(params: AttackParams, region, oracle: str, M: int, seed: int, run: int) -> RunRecord:
    """One oracle draw plus one attack, scored the way the experiment counts failures.

    PLWE runs succeed only on a single survivor; uniform runs only on none.
    """
    t0 = time.perf_counter()
    secret, samples = generate_samples(params, oracle, M, seed, run)
    t1 = time.perf_counter()
    verdict = algorithm2(samples, region, params)
    t2 = time.perf_counter()
    if oracle == "plwe":
        failed = verdict.kind is not VerdictKind.PLWE
        truth = int(secret.at_alpha().coeffs[0])
        survived = truth in verdict.survivors
    else:
        failed = bool(verdict.survivors)
        survived = None
    return RunRecord(oracle, run, verdict.kind.value, len(verdict.survivors), survived, failed,
                     verdict.mult_count, t1 - t0, t2 - t1)


def run_experiment(params: AttackParams, cutoff: float, M: int, ntests: int, seed: int, workers: int = 1) -> ExperimentReport:
    """ntests PLWE-oracle runs, then ntests uniform-oracle runs."""
    region = build_sigma(params.p, params.sigma, cutoff, params.rho, params.q)
    budget = mult_budget(params.p, params.q, M)
    report = ExperimentReport(
        params.p, params.n, params.A, params.q, params.rho, params.sigma, params.sigma_mode,
        cutoff, M, ntests, seed, region.cardinality,
        success_probability(region.cardinality, params.q, M),
        budget.automorphic, budget.direct,
    )
    jobs = [(o, r) for o in ("plwe", "uniform") for r in range(ntests)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            report.runs = list(pool.map(lambda j: run_once(params, region, j[0], M, seed, j[1]), jobs))
    else:
        report.runs = [run_once(params, region, o, M, seed, r) for o, r in jobs]
    return report


def uniform_sum_test(q: int, trials: int, terms: int, seed: int, lambdas=None, alpha: float = 0.01) -> dict:
    """Chi-square test that sum lambda_i X_i is uniform on F_q for uniform X_i."""
    rng = substream(seed, "stats", 0)
    if lambdas is None:
        lambdas = rng.integers(1, q, terms)
    lambdas = np.asarray(lambdas, dtype=np.int64) % q
    if not lambdas.any():
        raise ValueError("coefficients must not all be zero")
    X = rng.integers(0, q, (trials, len(lambdas)))
    values = (X * lambdas).sum(axis=1) % q
    return chi_square_uniform(values, q, alpha) | {"lambdas": lambdas.tolist()}


def chi_square_uniform(values, q: int, alpha: float = 0.01) -> dict:
    counts = np.bincount(np.asarray(values, dtype=np.int64), minlength=q)
    chi2, pvalue = stats.chisquare(counts)
    return {"chi2": float(chi2), "pvalue": float(pvalue), "trials": int(counts.sum()), "passed": bool(pvalue > alpha)}


def r0_evaluation_test(params: AttackParams, trials: int, seed: int, alpha: float = 0.01) -> dict:
    """Chi-square test that a(alpha) is uniform on F_q for a uniform on R_{q,0}."""
    rng = substream(seed, "stats", 1)
    values = [int(sample_uniform_R0(params, rng).at_alpha().coeffs[0]) for _ in range(trials)]
    return chi_square_uniform(values, params.q, alpha)


def survival_rate_test(params: AttackParams, cutoff: float, trials: int, seed: int, guess: int = 0) -> dict:
    """Per-sample survival of a fixed guess on uniform samples vs |Sigma|/q."""
    region = build_sigma(params.p, params.sigma, cutoff, params.rho, params.q)
    rng = substream(seed, "stats", 2)
    hits = 0
    for _ in range(trials):
        a = sample_uniform_R0(params, rng)
        b = sample_uniform_Rq(params, rng)
        red = reduce_sample(Sample(a, b, "uniform"))
        a_val, b_val = red.eval(params.rho, params.q)
        hits += (b_val - a_val * guess) % params.q in region
    rate = hits / trials
    expected = region.cardinality / params.q
    stderr = (expected * (1 - expected) / trials) ** 0.5
    return {
        "sigma_card": region.cardinality, "q": params.q, "trials": trials,
        "rate": rate, "expected": expected, "stderr": stderr,
        "z": (rate - expected) / stderr if stderr else 0.0,
        "passed": abs(rate - expected) <= 3 * stderr,
    }


def bench_rows(strategy: str, degree: int, trials: int, q: int, seed: int) -> list[dict]:
    rng = substream(seed, "stats", 3)
    names = list(STRATEGIES) if strategy == "both" else [strategy]
    coeffs = [int(c) for c in rng.integers(0, q, degree + 1)]
    if degree:
        coeffs[-1] = coeffs[-1] or 1
    x = int(rng.integers(1, q))
    rows, values = [], {}
    for name in names:
        best = None
        for _ in range(max(trials, 1)):
            t0 = time.perf_counter_ns()
            value, rep = STRATEGIES[name](coeffs, x, q)
            elapsed = time.perf_counter_ns() - t0
            best = elapsed if best is None else min(best, elapsed)
        values[name] = value
        rows.append({"strategy": name, "degree": degree, "mults": rep.multiplications,
                     "ers_bound": round(ers_bound(degree, q), 3), "nanos": best})
    if len(set(values.values())) > 1:
        raise AssertionError(f"strategies disagree: {values}")
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
