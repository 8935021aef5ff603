"""CSV and JSON output of experiments.

Everything written here is a pure function of the report: no timestamps,
timings or host details, so identical runs give identical bytes.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path

from ..exceptions import InputError
from ..types import LongRecord, ReportRow
from .convergence import convergence_table
from .experiment import SCHEMA_VERSION, ExperimentReport

logger = logging.getLogger(__name__)

REPORT_HEADER = ["u", "mean_ec", "stderr", "n", "pred_exact", "pred_asymp", "ratio", "ratio_se"]
LONG_HEADER = ["source", "u", "metric", "value"]
LONG_METRICS = ["mean_ec", "stderr", "pred_exact", "pred_asymp", "ratio", "ratio_se"]


def finite_or_none(value: float | None) -> float | None:
    """NaN and infinities are reported as absent."""
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    value = finite_or_none(value)
    return "" if value is None else repr(value)


def report_rows(report: ExperimentReport) -> list[ReportRow]:
    return [
        ReportRow(
            u=row.u,
            mean_ec=row.mean_ec,
            stderr=row.stderr,
            n=row.n,
            pred_exact=row.pred_exact,
            pred_asymp=row.pred_asymp,
            ratio=row.ratio,
            ratio_se=row.ratio_se,
        )
        for row in report.rows
    ]


def render_report_csv(report: ExperimentReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for row in report_rows(report):
        writer.writerow([_cell(row[name]) for name in REPORT_HEADER])
    return buffer.getvalue()


def summary_dict(report: ExperimentReport) -> dict:
    """JSON summary with a versioned schema."""
    predictions = report.predictions
    metrics = {}
    for j, name in enumerate(report.summary.metrics):
        metrics[name] = {
            "mean": [finite_or_none(v) for v in report.summary.mean[:, j]],
            "stderr": [finite_or_none(v) for v in report.summary.stderr[:, j]],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "name": report.config.name,
        "field_kind": report.config.field.kind,
        "master_seed": report.config.master_seed,
        "replications": report.config.replications,
        "replicates_used": report.summary.n,
        "replicates_failed": report.failed,
        "truncation": report.truncation,
        "provenance_digest": report.provenance_digest,
        "config": report.config.model_dump(mode="json"),
        "levels": list(report.config.levels),
        "rows": [{k: _json_value(v) for k, v in row.items()} for row in report_rows(report)],
        "metrics": metrics,
        "predictions": {
            "exact_source": predictions.exact_source,
            "exact": [finite_or_none(v) for v in predictions.exact],
            "exact_stderr": predictions.exact_stderr,
            "asymptotic": None if predictions.asymptotic is None else predictions.asymptotic.to_dict(),
            "details": predictions.details,
        },
        "truncation_sensitivity": report.truncation_sensitivity,
        "convergence": convergence_table(report).to_dict(),
    }


def _json_value(value):
    if isinstance(value, float):
        return finite_or_none(value)
    return value


def render_summary_json(report: ExperimentReport) -> str:
    return json.dumps(summary_dict(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_report(report: ExperimentReport, out_dir: Path) -> tuple[Path, Path]:
    """Write ``<name>.csv`` and ``<name>.json`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{report.config.name}.csv"
    json_path = out_dir / f"{report.config.name}.json"
    csv_path.write_text(render_report_csv(report), encoding="utf-8")
    json_path.write_text(render_summary_json(report), encoding="utf-8")
    logger.info(f"Report written to {csv_path} and {json_path}")
    return csv_path, json_path


# ===== Reading reports back =====


def _parse(value: str) -> float | None:
    return None if value == "" else float(value)


def read_report_csv(path: Path) -> list[ReportRow]:
    """Rows of a report CSV.

    Raises:
        InputError: if the header is not the report header
    """
    with Path(path).open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != REPORT_HEADER:
            raise InputError(f"{path} is not an experiment report (header {reader.fieldnames})")
        rows = []
        for raw in reader:
            rows.append(
                ReportRow(
                    u=float(raw["u"]),
                    mean_ec=float(raw["mean_ec"]),
                    stderr=float(raw["stderr"]),
                    n=int(raw["n"]),
                    pred_exact=_parse(raw["pred_exact"]),
                    pred_asymp=_parse(raw["pred_asymp"]),
                    ratio=_parse(raw["ratio"]),
                    ratio_se=_parse(raw["ratio_se"]),
                )
            )
    return rows


def long_format(sources: dict[str, list[ReportRow]]) -> list[LongRecord]:
    """One record per (source, level, metric) with a value; sources in name order."""
    records = []
    for source in sorted(sources):
        for row in sources[source]:
            for metric in LONG_METRICS:
                value = row[metric]
                if value is not None:
                    records.append(LongRecord(source=source, u=row["u"], metric=metric, value=value))
    return records


def render_long_csv(records: list[LongRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(LONG_HEADER)
    for record in records:
        writer.writerow([record["source"], repr(record["u"]), record["metric"], repr(record["value"])])
    return buffer.getvalue()


def acceptance_summary(sources: dict[str, list[ReportRow]], z: float = 3.0) -> tuple[list[str], bool]:
    """PASS/FAIL per level: |mean - exact prediction| < z · stderr.

    Levels without an exact prediction are listed as SKIP and do not fail.
    """
    lines = []
    passed = True
    for source in sorted(sources):
        for row in sources[source]:
            label = f"{source} u={row['u']:g}"
            exact = row["pred_exact"]
            if exact is None:
                ratio = row["ratio"]
                detail = "no exact prediction" if ratio is None else f"ratio to asymptote {ratio:.4f}"
                lines.append(f"SKIP {label}: {detail}")
                continue
            gap = abs(row["mean_ec"] - exact)
            bound = z * row["stderr"]
            ok = gap < bound or gap == 0.0
            passed &= ok
            verdict = "PASS" if ok else "FAIL"
            lines.append(f"{verdict} {label}: |mean - exact| = {gap:.6g} vs {z:g} se = {bound:.6g}")
    return lines, passed
