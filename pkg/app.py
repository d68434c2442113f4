# app.py
import argparse
import logging
import sys
from typing import List, Optional

from algebra_checks import MAX_CHECK_D, MAX_CHECK_N, run_algebra_checks
from harness import (
    ConfigError,
    ExperimentConfig,
    alphabet_hash,
    cmd_experiment_convergence,
    cmd_experiment_lipschitz,
    cmd_experiment_ode_bounds,
    cmd_experiment_realization,
    cmd_lift,
    cmd_realize,
    cmd_solve,
)
from results_store import get_store, load_json, write_json

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branched-rde",
                                     description="Branched rough path algebra, solvers and stability experiments")
    parser.add_argument("--config", help="JSON file with ExperimentConfig fields")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output directory for reports")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=None)
    mode.add_argument("--float", dest="exact", action="store_false")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check-algebra", help="exhaustive exact Hopf-algebra checks")
    check.add_argument("--N", type=int, default=3)
    check.add_argument("--d", type=int, default=2)

    lift = sub.add_parser("lift", help="branched lift of a piecewise-linear path")
    lift.add_argument("path", help="path JSON {times, values}")
    lift.add_argument("--p", type=float, required=True)
    lift.add_argument("-o", "--output", required=True)

    solve = sub.add_parser("solve", help="solve an RDE driven by a branched rough path")
    solve.add_argument("rough_path")
    solve.add_argument("field")
    solve.add_argument("--xi", type=float, nargs="+", required=True)
    solve.add_argument("--backend", choices=["euler", "geodesic"], default="euler")
    solve.add_argument("-o", "--output", required=True)

    realize = sub.add_parser("realize", help="piecewise-linear path with a given signature")
    realize.add_argument("series", help="word series JSON")
    realize.add_argument("-o", "--output", required=True)

    sub.add_parser("exp-lipschitz", help="Lipschitz sweeps in ξ, f and X")
    sub.add_parser("exp-ode-bounds", help="randomized ODE stability bounds")
    sub.add_parser("exp-convergence", help="defect scaling and backend agreement")
    sub.add_parser("exp-realization", help="realization residuals and pair ratios")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {"seed": args.seed, "out_dir": args.out, "exact": args.exact, "threads": args.threads}
    if args.config:
        return ExperimentConfig.from_json(args.config, **overrides)
    return ExperimentConfig().with_overrides(**overrides)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s - %(levelname)s - %(message)s')
    try:
        config = load_config(args)
    except ConfigError as e:
        logging.error(f"❌ {e}")
        return EXIT_USAGE

    try:
        if args.command == "check-algebra":
            if not (1 <= args.N <= MAX_CHECK_N and 1 <= args.d <= MAX_CHECK_D):
                logging.error(f"❌ check-algebra supports N ≤ {MAX_CHECK_N}, d ≤ {MAX_CHECK_D}")
                return EXIT_USAGE
            report = run_algebra_checks(args.N, args.d, seed=config.seed)
            get_store(config.out_dir).save_report(f"check_algebra_N{args.N}_d{args.d}", report.to_json(),
                                                  {"checks": report.frame()}, config_hash=config.digest(),
                                                  alphabet_hash=alphabet_hash(args.N + 0.5, args.d))
            if not report.passed:
                failure = report.first_failure
                logging.error(f"❌ {failure.name}: counterexample {failure.counterexample}")
            return EXIT_OK if report.passed else EXIT_FAILED
        if args.command == "lift":
            write_json(args.output, cmd_lift(load_json(args.path), args.p, bool(config.exact)))
            logging.info(f"✅ Lift written to {args.output}")
            return EXIT_OK
        if args.command == "solve":
            result = cmd_solve(load_json(args.rough_path), load_json(args.field), args.xi, args.backend,
                               bool(config.exact))
            write_json(args.output, result)
            logging.info(f"✅ Solution written to {args.output}")
            return EXIT_OK
        if args.command == "realize":
            result = cmd_realize(load_json(args.series))
            write_json(args.output, result)
            logging.info(f"✅ Path written to {args.output} (residual {result['residual']:.2e})")
            return EXIT_OK
        experiments = {
            "exp-lipschitz": cmd_experiment_lipschitz,
            "exp-ode-bounds": cmd_experiment_ode_bounds,
            "exp-convergence": cmd_experiment_convergence,
            "exp-realization": cmd_experiment_realization,
        }
        if config.exact:
            logging.error(f"❌ {args.command} runs in float mode; --exact applies to lift and solve")
            return EXIT_USAGE
        passed = experiments[args.command](config)
        logging.info(f"{'✅' if passed else '❌'} {args.command} finished")
        return EXIT_OK if passed else EXIT_FAILED
    except (OSError, ValueError) as e:
        logging.error(f"❌ {args.command} failed: {e}")
        return EXIT_USAGE if isinstance(e, (OSError, ConfigError)) else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
