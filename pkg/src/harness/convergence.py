"""u^α-scaled means against the asymptotic constant."""

import math
from dataclasses import dataclass, field

import numpy as np

# Largest relative spread (max - min)/median of ratios inside a plateau
PLATEAU_SPREAD = 0.10


@dataclass(frozen=True)
class ConvergenceRow:
    u: float
    scaled: float
    scaled_se: float
    constant: float
    ratio: float
    ratio_se: float


@dataclass(frozen=True)
class ConvergenceTable:
    """Per-level ratios u^α·mean / constant.

    When no asymptotic prediction exists ``available`` is False and ``reason``
    says why; the table never reports zeros in place of a missing prediction.
    """

    alpha: float | None
    constant: float | None
    rows: list[ConvergenceRow] = field(default_factory=list)
    plateau: tuple[float, float] | None = None
    monotone_approach: bool | None = None
    available: bool = True
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "available": self.available,
            "reason": self.reason,
            "alpha": self.alpha,
            "constant": self.constant,
            "plateau": None if self.plateau is None else list(self.plateau),
            "monotone_approach": self.monotone_approach,
            "rows": [row.__dict__ for row in self.rows],
        }


def find_plateau(levels: list[float], ratios: list[float]) -> tuple[float, float] | None:
    """Widest contiguous run of at least two levels whose ratios vary by < 10%."""
    best: tuple[int, int] | None = None
    for start in range(len(ratios)):
        for stop in range(start + 1, len(ratios)):
            window = ratios[start : stop + 1]
            median = float(np.median(window))
            if median <= 0.0 or (max(window) - min(window)) / median >= PLATEAU_SPREAD:
                break
            if best is None or stop - start > best[1] - best[0]:
                best = (start, stop)
    if best is None:
        return None
    return levels[best[0]], levels[best[1]]


def approaches_one(ratios: list[float], ratio_se: list[float], slack: float = 2.0) -> bool:
    """|ratio - 1| does not grow with u beyond ``slack`` standard errors."""
    gaps = [abs(r - 1.0) for r in ratios]
    return all(
        later <= earlier + slack * math.hypot(se_a, se_b)
        for earlier, later, se_a, se_b in zip(gaps, gaps[1:], ratio_se, ratio_se[1:])
    )


def convergence_table(report, alpha: float | None = None) -> ConvergenceTable:
    """Scaled means u^α E φ̂ at each positive level, divided by the constant."""
    prediction = report.predictions.asymptotic
    alpha = alpha if alpha is not None else report.alpha
    if prediction is None:
        return ConvergenceTable(
            alpha=alpha, constant=None, available=False, reason="no asymptotic prediction"
        )
    if alpha is None:
        alpha = prediction.alpha
    rows = []
    for row in report.rows:
        if row.u <= 0.0 or row.n == 0:
            continue
        scale = row.u**alpha
        rows.append(
            ConvergenceRow(
                u=row.u,
                scaled=scale * row.mean_ec,
                scaled_se=scale * row.stderr,
                constant=prediction.constant,
                ratio=scale * row.mean_ec / prediction.constant,
                ratio_se=scale * row.stderr / prediction.constant,
            )
        )
    if not rows:
        return ConvergenceTable(
            alpha=alpha,
            constant=prediction.constant,
            available=False,
            reason="no positive levels with replicates",
        )
    levels = [r.u for r in rows]
    ratios = [r.ratio for r in rows]
    return ConvergenceTable(
        alpha=alpha,
        constant=prediction.constant,
        rows=rows,
        plateau=find_plateau(levels, ratios),
        monotone_approach=approaches_one(ratios, [r.ratio_se for r in rows]),
    )
