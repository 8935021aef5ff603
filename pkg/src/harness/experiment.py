"""Theory-versus-simulation experiments.

run_experiment simulates the configured field, measures the excursion sets
at every level and sets the Monte Carlo means beside the exact and
asymptotic predictions for that field class.
"""

import hashlib
import json
from dataclasses import dataclass, field

from ..config import Config, NumericsConfig
from ..core import (
    PerformanceMonitor,
    WallClock,
    bind_context,
    get_logger,
    measure_time,
    unbind_context,
)
from ..exceptions import ExperimentError
from ..sampling import RngStream, measure_moments
from ..theory import (
    AsymptoticPrediction,
    concatenated_constants,
    concatenated_mean_ec_asymptote,
    conditional_mean_ec_predictor,
    gaussian_mean_ec,
    harmonisable_mean_ec_asymptote,
    subgaussian_constants,
    subgaussian_mean_ec_asymptote,
    subgaussian_mean_ec_exact,
)
from .config import SERIES_KINDS, ExperimentConfig
from .runner import ReplicateSummary, metric_names, run_replicates, summarize

log = get_logger(__name__)

SCHEMA_VERSION = 1

# An experiment fails once more than this share of replicates errors
FAILURE_BUDGET = 0.01


@dataclass(frozen=True)
class LevelRow:
    """One line of the report CSV."""

    u: float
    mean_ec: float
    stderr: float
    n: int
    pred_exact: float | None
    pred_asymp: float | None
    ratio: float | None
    ratio_se: float | None

    @classmethod
    def build(
        cls, u: float, mean: float, stderr: float, n: int, exact: float | None, asymp: float | None
    ) -> "LevelRow":
        reference = exact if exact is not None else asymp
        ratio = ratio_se = None
        if reference is not None and reference != 0.0 and n > 0:
            ratio = mean / reference
            ratio_se = stderr / abs(reference)
        return cls(u, mean, stderr, n, exact, asymp, ratio, ratio_se)


@dataclass(frozen=True)
class Predictions:
    """Theory side of an experiment."""

    exact: list[float | None]
    exact_source: str | None = None
    exact_stderr: list[float] | None = None
    asymptotic: AsymptoticPrediction | None = None
    details: dict = field(default_factory=dict)

    def asymptotic_at(self, u: float) -> float | None:
        if self.asymptotic is None or u <= 0.0:
            return None
        return self.asymptotic.at(u)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[LevelRow]
    summary: ReplicateSummary
    predictions: Predictions
    truncation: int | None
    truncation_sensitivity: list[float] | None
    provenance_digest: str
    wall_clock: dict = field(default_factory=dict)

    @property
    def alpha(self) -> float | None:
        return self.config.field.alpha

    @property
    def failed(self) -> int:
        return self.summary.failed


@measure_time
def compute_predictions(
    config: ExperimentConfig, truncation: int | None, numerics: NumericsConfig
) -> Predictions:
    """Exact and asymptotic predictions requested by ``config.compare``."""
    kind = config.field.kind
    rect = config.rectangle()
    levels = config.levels
    want_exact = "exact" in config.compare or "conditional" in config.compare
    want_asymp = "asymptotic" in config.compare
    none: list[float | None] = [None] * len(levels)

    if kind == "gaussian":
        spec = config.gaussian_spec()
        exact = [gaussian_mean_ec(spec, rect, u) for u in levels] if want_exact else none
        return Predictions(exact=exact, exact_source="gaussian" if want_exact else None)

    alpha = config.field.alpha
    if kind == "sub_gaussian":
        spec = config.gaussian_spec()
        exact = none
        if want_exact:
            exact = [
                subgaussian_mean_ec_exact(
                    spec,
                    alpha,
                    rect,
                    u,
                    base_limit=numerics.quad_limit,
                    max_attempts=numerics.quad_attempts,
                    fallback_draws=numerics.mc_fallback_draws,
                    stream=RngStream(config.master_seed, 0).child(index),
                )
                for index, u in enumerate(levels)
            ]
        asymptotic = None
        details: dict = {}
        if want_asymp:
            constants = subgaussian_constants(alpha, spec.sigma, config.dimension)
            asymptotic = subgaussian_mean_ec_asymptote(constants, rect, spec.spectral_moments)
            details["constants"] = constants.to_dict()
        return Predictions(
            exact=exact,
            exact_source="mixture_quadrature" if want_exact else None,
            asymptotic=asymptotic,
            details=details,
        )

    mu = config.measure()
    seed = config.predictions.conditional_seed
    seed = config.master_seed + 1 if seed is None else seed
    exact, exact_se = none, None
    if want_exact:
        curve = conditional_mean_ec_predictor(
            mu,
            alpha,
            truncation,
            rect,
            levels,
            config.predictions.conditional_draws,
            seed,
            n_prime=config.field.n_prime,
        )
        exact = [float(v) for v in curve.mean]
        exact_se = [float(v) for v in curve.stderr]
    asymptotic = None
    details = {}
    if want_asymp:
        if kind == "harmonisable":
            moments = measure_moments(mu)
            asymptotic = harmonisable_mean_ec_asymptote(moments, alpha, rect)
            details["moments"] = moments.to_dict()
        else:
            constants = concatenated_constants(
                alpha,
                config.field.n_prime,
                mu,
                draws=config.predictions.lambda_draws,
                stream=RngStream(seed, 0),
            )
            asymptotic = concatenated_mean_ec_asymptote(constants, rect)
            details["constants"] = constants.to_dict()
    return Predictions(
        exact=exact,
        exact_source="conditional" if want_exact else None,
        exact_stderr=exact_se,
        asymptotic=asymptotic,
        details=details,
    )


def _digest(config: ExperimentConfig, truncation: int | None, outcomes) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(config.model_dump(mode="json"), sort_keys=True).encode())
    h.update(str(truncation).encode())
    for outcome in outcomes:
        if outcome.values is not None:
            h.update(outcome.values.tobytes())
    return h.hexdigest()


def run_experiment(
    config: ExperimentConfig,
    threads: int | None = None,
    numerics: NumericsConfig | None = None,
) -> ExperimentReport:
    """Replicate, measure and compare.

    Raises:
        ExperimentError: if more than 1% of replicates failed
    """
    threads = threads or Config.runtime.threads
    numerics = numerics or Config.numerics
    clock = WallClock()
    kind = config.field.kind
    truncation = config.truncation(numerics.max_truncation) if kind in SERIES_KINDS else None
    metrics = metric_names(config)

    bind_context(experiment=config.name, field_kind=kind, master_seed=config.master_seed)
    try:
        log.info(
            "experiment started",
            replications=config.replications,
            levels=len(config.levels),
            threads=threads,
            truncation=truncation,
        )
        with PerformanceMonitor("replicates", clock=clock):
            outcomes = run_replicates(config, threads, truncation)
        summary = summarize(outcomes, metrics, len(config.levels))
        if summary.failed > FAILURE_BUDGET * config.replications:
            log.error("too many replicate failures", failed=summary.failed)
            raise ExperimentError(summary.failed, config.replications)

        sensitivity = None
        if kind in SERIES_KINDS and config.predictions.truncation_sensitivity:
            with PerformanceMonitor("truncation_check", clock=clock):
                doubled = summarize(
                    run_replicates(config, threads, 2 * truncation), metrics, len(config.levels)
                )
            sensitivity = [float(v) for v in doubled.column("ec")[0] - summary.column("ec")[0]]

        with PerformanceMonitor("predictions", clock=clock):
            predictions = compute_predictions(config, truncation, numerics)

        mean, stderr = summary.column("ec")
        rows = [
            LevelRow.build(
                u,
                float(mean[i]),
                float(stderr[i]),
                summary.n,
                predictions.exact[i],
                predictions.asymptotic_at(u),
            )
            for i, u in enumerate(config.levels)
        ]
        log.info("experiment finished", failed=summary.failed, replicates=summary.n)
        return ExperimentReport(
            config=config,
            rows=rows,
            summary=summary,
            predictions=predictions,
            truncation=truncation,
            truncation_sensitivity=sensitivity,
            provenance_digest=_digest(config, truncation, outcomes),
            wall_clock=clock.summary(),
        )
    finally:
        unbind_context("experiment", "field_kind", "master_seed")

