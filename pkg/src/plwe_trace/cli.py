"""Command-line entry point: ``plwe-trace {params,gen,attack,experiment,stats,bench}``."""

from __future__ import annotations

import argparse
import json
import sys

from .attack import AttackInapplicable
from .field import FieldError
from .harness import (
    SampleFileError,
    atomic_write,
    attack_file,
    bench_rows,
    params_summary,
    rows_to_csv,
    run_experiment,
    survival_rate_test,
    uniform_sum_test,
    r0_evaluation_test,
    write_sample_file,
)
from .ring import AttackParams

EXIT_OK, EXIT_PARAMS, EXIT_INAPPLICABLE, EXIT_IO = 0, 2, 3, 4


def _instance_args(p: argparse.ArgumentParser, sigma=True):
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--A", type=int, default=2)
    p.add_argument("--q-min", type=int, default=24000)
    p.add_argument("--q", type=int, help="use this prime instead of searching from --q-min")
    p.add_argument("--rho", type=int, help="root of unity to attack with (default: g^((q-1)/p^A))")
    if sigma:
        p.add_argument("--sigma", type=float, default=8.0)
        p.add_argument("--sigma-mode", choices=["std", "variance"], default="std")


def _params(args) -> AttackParams:
    sigma = getattr(args, "sigma", 8.0)
    mode = getattr(args, "sigma_mode", "std")
    if args.q is not None:
        return AttackParams.from_q(args.p, args.n, args.A, args.q, sigma, args.rho, mode)
    return AttackParams.search(args.p, args.n, args.A, args.q_min, sigma, args.rho, mode)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plwe-trace", description="Trace-based PLWE decision attack toolkit")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("params", parents=[fmt], help="attack prime, cyclotomic factorization and rho")
    _instance_args(p, sigma=False)

    p = sub.add_parser("gen", parents=[fmt], help="write a sample-set file")
    _instance_args(p)
    p.add_argument("--oracle", choices=["plwe", "uniform"], required=True)
    p.add_argument("--M", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--run", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("attack", parents=[fmt], help="run the trace attack on a sample-set file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--cutoff", type=float, default=2.0)
    p.add_argument("--out")

    p = sub.add_parser("experiment", parents=[fmt], help="repeat PLWE and uniform runs and count failures")
    _instance_args(p)
    p.add_argument("--cutoff", type=float, default=2.0)
    p.add_argument("--M", type=int, default=10)
    p.add_argument("--ntests", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("stats", parents=[fmt], help="statistical self-tests")
    _instance_args(p)
    p.add_argument("test", choices=["uniform-sum", "survival-rate", "r0-eval"])
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--terms", type=int, default=4)
    p.add_argument("--lambdas", type=int, nargs="+")
    p.add_argument("--cutoff", type=float, default=2.0)
    p.add_argument("--guess", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", parents=[fmt], help="compare evaluation strategies")
    p.add_argument("--strategy", choices=["horner", "block", "both"], default="both")
    p.add_argument("--degree", type=int, nargs="+", default=[512])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--q", type=int, default=24029)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, indent=2, sort_keys=True) if args.format == "json" else text
    path = getattr(args, "out", None)
    if path and args.cmd != "gen":
        atomic_write(path, out + "\n")
    print(out)


def _text_kv(d: dict) -> str:
    return "\n".join(f"{k:>18}: {v}" for k, v in d.items())


def _run(args) -> int:
    if args.cmd == "params":
        s = params_summary(_params(args))
        _emit(args, s, _text_kv(s))
    elif args.cmd == "gen":
        header = write_sample_file(args.out, _params(args), args.oracle, args.M, args.seed, args.run)
        _emit(args, header, f"wrote {args.M} {args.oracle} samples (q={header['q']}) to {args.out}")
    elif args.cmd == "attack":
        r = attack_file(args.in_path, args.cutoff)
        _emit(args, r, _text_kv(r))
    elif args.cmd == "experiment":
        rep = run_experiment(_params(args), args.cutoff, args.M, args.ntests, args.seed, args.workers)
        d = rep.to_dict()
        lines = [
            f"q={rep.q} rho={rep.rho} sigma={rep.sigma} ({rep.sigma_mode}) cutoff={rep.cutoff} M={rep.M} ntests={rep.ntests}",
            f"|Sigma|={rep.sigma_card}  1-(|Sigma|/q)^M={rep.success_probability:.6g}",
            f"mult budget: automorphic={rep.mult_budget_automorphic} direct={rep.mult_budget_direct}",
        ]
        for r in rep.runs:
            lines.append(f"  {r.oracle:8s} run {r.run}: {r.verdict:19s} survivors={r.n_survivors:<4d} "
                         f"{'FAIL' if r.failed else 'ok  '} mults={r.mult_count} "
                         f"gen={r.gen_seconds:.3f}s attack={r.attack_seconds:.3f}s")
        f = rep.failures
        lines.append(f"failures: plwe {f['plwe']}/{rep.ntests}, uniform {f['uniform']}/{rep.ntests}")
        _emit(args, d, "\n".join(lines))
    elif args.cmd == "stats":
        if args.test == "uniform-sum":
            q = args.q if args.q is not None else _params(args).q
            r = uniform_sum_test(q, args.trials, args.terms, args.seed, args.lambdas)
        elif args.test == "survival-rate":
            r = survival_rate_test(_params(args), args.cutoff, args.trials, args.seed, args.guess)
        else:
            r = r0_evaluation_test(_params(args), args.trials, args.seed)
        _emit(args, r, _text_kv(r))
    elif args.cmd == "bench":
        rows = [row for deg in args.degree for row in bench_rows(args.strategy, deg, args.trials, args.q, args.seed)]
        if args.format == "json":
            print(json.dumps(rows, indent=2))
        else:
            sys.stdout.write(rows_to_csv(rows))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except AttackInapplicable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except (SampleFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
