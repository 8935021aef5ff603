"""Command-line entry point of the excursion toolkit.

Subcommands:
    simulate    config -> grid files in the binary dump format
    measure     grid file + levels -> JSON geometry records
    theory      model + parameters -> JSON prediction with breakdown
    experiment  config -> report CSV + JSON summary
    report      report CSVs -> long-format CSV + acceptance summary

Exit codes: 0 success, 1 other toolkit error or failed acceptance,
2 configuration error, 3 numerical failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import Config
from .core import configure_logging
from .exceptions import ConfigError, ExcursionError, NumericalError
from .excursion import euler_characteristic, lk_estimates, threshold
from .fields import GaussianFieldSpec, dump_grid, load_grid
from .geomcore import Rectangle
from .harness import (
    acceptance_summary,
    convergence_table,
    load_experiment_config,
    long_format,
    read_report_csv,
    render_long_csv,
    run_experiment,
    simulate_replicate,
    write_report,
)
from .sampling import RngStream, SpectralMeasure, measure_moments
from .theory import (
    concatenated_constants,
    concatenated_mean_ec_asymptote,
    gaussian_mean_ec,
    harmonisable_mean_ec_asymptote,
    subgaussian_constants,
    subgaussian_mean_ec_asymptote,
    subgaussian_mean_ec_exact,
)
from .types import GeometryRecord

logger = logging.getLogger(__name__)

EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

MODELS = ["gaussian", "sub_gaussian", "harmonisable", "concatenated"]


def parse_floats(text: str) -> list[float]:
    """'0,1,2.5' -> [0.0, 1.0, 2.5]."""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from e
    if not values:
        raise ConfigError("expected at least one number")
    return values


# ===== Subcommands =====


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config).with_overrides(master_seed=args.seed)
    out_dir = Path(args.out or Config.runtime.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for index in range(args.count):
        grid = simulate_replicate(config, index)
        path = out_dir / f"{config.name}_{index:05d}.bin"
        dump_grid(grid, path)
        print(path)
    return 0


def measure_grid(path: Path, levels: list[float]) -> list[GeometryRecord]:
    grid = load_grid(path)
    records = []
    for u in levels:
        cubical = threshold(grid, u)
        if grid.dimension <= 3:
            geometry = lk_estimates(cubical, grid.rectangle).to_dict()
            records.append(GeometryRecord(**geometry))
        else:
            records.append(
                GeometryRecord(
                    level=u,
                    euler=euler_characteristic(cubical),
                    lk_estimates=[],
                    cell_counts=list(cubical.cell_counts),
                )
            )
    return records


def cmd_measure(args: argparse.Namespace) -> int:
    records = measure_grid(Path(args.input), parse_floats(args.levels))
    lines = "".join(json.dumps(record, sort_keys=True) + "\n" for record in records)
    if args.out:
        Path(args.out).write_text(lines, encoding="utf-8")
    else:
        sys.stdout.write(lines)
    return 0


def theory_prediction(args: argparse.Namespace) -> dict:
    sides = parse_floats(args.T)
    rect = Rectangle(tuple(sides))
    n = rect.dimension
    result: dict = {"model": args.model, "T": sides}
    if args.model in ("gaussian", "sub_gaussian"):
        spec = GaussianFieldSpec.squared_exponential(
            args.sigma**2, args.sigma / args.lambda2**0.5, n
        )
        if args.model == "gaussian":
            if args.u is None:
                raise ConfigError("--u is required for the gaussian model")
            result["u"] = args.u
            result["value"] = gaussian_mean_ec(spec, rect, args.u)
            return result
        constants = subgaussian_constants(args.alpha, args.sigma, n)
        prediction = subgaussian_mean_ec_asymptote(constants, rect, spec.spectral_moments)
        result["constants"] = constants.to_dict()
        result["asymptotic"] = prediction.to_dict()
        if args.u is not None:
            result["u"] = args.u
            result["exact"] = subgaussian_mean_ec_exact(
                spec,
                args.alpha,
                rect,
                args.u,
                base_limit=Config.numerics.quad_limit,
                max_attempts=Config.numerics.quad_attempts,
                fallback_draws=Config.numerics.mc_fallback_draws,
            )
        return result

    mu = SpectralMeasure.uniform_ball(args.radius, n, args.mu0)
    if args.model == "harmonisable":
        prediction = harmonisable_mean_ec_asymptote(measure_moments(mu), args.alpha, rect)
    else:
        constants = concatenated_constants(
            args.alpha, args.n_prime, mu, draws=args.draws, stream=RngStream(args.seed, 0)
        )
        prediction = concatenated_mean_ec_asymptote(constants, rect)
        result["constants"] = constants.to_dict()
    result["asymptotic"] = prediction.to_dict()
    if args.u is not None and args.u > 0:
        result["u"] = args.u
        result["value"] = prediction.at(args.u)
    return result


def cmd_theory(args: argparse.Namespace) -> int:
    if args.model != "gaussian" and args.alpha is None:
        raise ConfigError(f"--alpha is required for the {args.model} model")
    print(json.dumps(theory_prediction(args), indent=2, sort_keys=True))
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config)
    levels = parse_floats(args.levels) if args.levels else None
    config = config.with_overrides(master_seed=args.seed, levels=levels)
    report = run_experiment(config, threads=args.threads)
    csv_path, json_path = write_report(report, Path(args.out or Config.runtime.output_dir))
    table = convergence_table(report)
    if table.available and table.plateau is not None:
        logger.info(f"Plateau over u in [{table.plateau[0]:g}, {table.plateau[1]:g}]")
    for phase, stats in report.wall_clock.items():
        logger.info(f"⏱️  {phase}: {stats['total_s']:.3f}s")
    print(csv_path)
    print(json_path)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    sources = {Path(p).stem: read_report_csv(Path(p)) for p in args.input}
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render_long_csv(long_format(sources)), encoding="utf-8")
    lines, passed = acceptance_summary(sources)
    for line in lines:
        print(line)
    print("ALL PASSED" if passed else "SOME CHECKS FAILED")
    return 0 if passed else EXIT_ERROR


# ===== Parser =====


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excursion-kit",
        description="Excursion-set geometry of Gaussian and stable random fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="Simulate field realizations to grid files")
    simulate.add_argument("--config", type=Path, required=True, help="Experiment TOML file")
    simulate.add_argument("--out", type=Path, help="Output directory")
    simulate.add_argument("--seed", type=int, help="Override master_seed")
    simulate.add_argument("--count", type=int, default=1, help="Number of replicates to write")
    simulate.set_defaults(handler=cmd_simulate)

    measure = sub.add_parser("measure", help="Measure excursion sets of a grid file")
    measure.add_argument("--in", dest="input", type=Path, required=True, help="Grid file")
    measure.add_argument("--levels", required=True, help="Comma-separated levels")
    measure.add_argument("--out", type=Path, help="Output file (JSON lines); stdout if omitted")
    measure.set_defaults(handler=cmd_measure)

    theory = sub.add_parser("theory", help="Evaluate a closed-form prediction")
    theory.add_argument("--model", choices=MODELS, required=True, help="Field class")
    theory.add_argument("--T", required=True, help="Comma-separated side lengths")
    theory.add_argument("--u", type=float, help="Level")
    theory.add_argument("--sigma", type=float, default=1.0, help="Standard deviation of g")
    theory.add_argument("--lambda2", type=float, default=1.0, help="Second spectral moment")
    theory.add_argument("--alpha", type=float, help="Stable index")
    theory.add_argument("--radius", type=float, default=1.0, help="Radius of the uniform-ball μ")
    theory.add_argument("--mu0", type=float, default=1.0, help="Total mass of μ")
    theory.add_argument("--n-prime", type=int, default=1, help="Wave pairs per stable weight")
    theory.add_argument("--draws", type=int, default=100_000, help="Draws for Λ(J)")
    theory.add_argument("--seed", type=int, default=0, help="Seed for Monte Carlo constants")
    theory.set_defaults(handler=cmd_theory)

    experiment = sub.add_parser("experiment", help="Run a replicated experiment")
    experiment.add_argument("--config", type=Path, required=True, help="Experiment TOML file")
    experiment.add_argument("--out", type=Path, help="Output directory")
    experiment.add_argument("--seed", type=int, help="Override master_seed")
    experiment.add_argument(
        "--threads", type=int, help="Replicate workers (default: EXCURSION_THREADS)"
    )
    experiment.add_argument("--levels", help="Comma-separated levels overriding the config")
    experiment.set_defaults(handler=cmd_experiment)

    report = sub.add_parser("report", help="Combine report CSVs and check acceptance")
    report.add_argument("--in", dest="input", nargs="+", required=True, help="Report CSV files")
    report.add_argument("--out", required=True, help="Long-format CSV to write")
    report.set_defaults(handler=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run one subcommand and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    configure_logging(Config.runtime.log_level)
    try:
        return args.handler(args)
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"❌ Numerical failure: {e} {e.diagnostics or ''}")
        return EXIT_NUMERICAL
    except ExcursionError as e:
        logger.error(f"❌ {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
