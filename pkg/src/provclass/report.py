"""Serialization of ranking tables, accuracy matrices, tables, and the
accuracy-vs-subset-size SVG plot."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .evaluation import AccuracyMatrix
from .ranking import SCORER_NAMES, RankingTable
from .tabular import ColumnKind, DataTable

RANKING_COLUMNS = ("feature", "value_count", *SCORER_NAMES, "consensus_rank")


def _fmt_score(value: float | None) -> str:
    if value is None:
        return "NA"
    if math.isinf(value):
        return "inf"
    return f"{value:.6f}"


def ranking_to_csv(ranking: RankingTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RANKING_COLUMNS)
    for feat in ranking.features:
        row = [feat.name, feat.value_count]
        row += [_fmt_score(feat.scores.get(s)) for s in SCORER_NAMES]
        row.append(ranking.consensus_rank(feat.name))
        writer.writerow(row)
    return buf.getvalue()


def ranking_to_json(ranking: RankingTable) -> str:
    doc = {
        "features": [
            {
                "feature": f.name,
                "value_count": f.value_count,
                "scores": {
                    s: (None if f.scores.get(s) is None else f.scores[s])
                    for s in SCORER_NAMES
                    if s in f.scores
                },
                "consensus_rank": ranking.consensus_rank(f.name),
            }
            for f in ranking.features
        ],
        "consensus_order": list(ranking.consensus_order),
    }
    return json.dumps(doc, indent=2)


def ranking_to_markdown(ranking: RankingTable) -> str:
    lines = ["| " + " | ".join(RANKING_COLUMNS) + " |"]
    lines.append("|" + "---|" * len(RANKING_COLUMNS))
    for f in ranking.features:
        cells = [f.name, str(f.value_count)]
        cells += [_fmt_score(f.scores.get(s)) for s in SCORER_NAMES]
        cells.append(str(ranking.consensus_rank(f.name)))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def rank_label(r: int) -> str:
    if r == 1:
        return "Rank (1)"
    if r == 2:
        return "Rank (1, 2)"
    return f"Rank (1-{r})"


def _fmt_cell(value: float) -> str:
    return "NA" if math.isnan(value) else f"{value:.3f}"


def matrix_to_csv(matrix: AccuracyMatrix, metric: str = "accuracy") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", *matrix.model_names])
    grid = matrix.means[metric]
    for i, r in enumerate(matrix.subset_sizes):
        writer.writerow([rank_label(r)] + [_fmt_cell(v) for v in grid[i]])
    return buf.getvalue()


def matrix_to_json(matrix: AccuracyMatrix) -> str:
    def clean(v: float):
        return None if math.isnan(v) else v

    doc = {
        "subset_sizes": list(matrix.subset_sizes),
        "models": list(matrix.model_names),
        "metrics": list(matrix.metrics),
        "means": {
            m: [[clean(v) for v in row] for row in matrix.means[m]] for m in matrix.metrics
        },
        "per_fold": [
            {
                "subset_size": r,
                "model": name,
                "values": {m: [clean(v) for v in vals] for m, vals in folds.items()},
            }
            for (r, name), folds in sorted(
                matrix.per_fold.items(), key=lambda kv: (kv[0][0], kv[0][1])
            )
        ],
        "diagnostics": list(matrix.diagnostics),
    }
    return json.dumps(doc, indent=2)


def matrix_to_markdown(matrix: AccuracyMatrix, metric: str = "accuracy") -> str:
    header = ["rank", *matrix.model_names]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    grid = matrix.means[metric]
    for i, r in enumerate(matrix.subset_sizes):
        lines.append(
            "| " + " | ".join([rank_label(r)] + [_fmt_cell(v) for v in grid[i]]) + " |"
        )
    return "\n".join(lines) + "\n"


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)


def accuracy_plot_svg(matrix: AccuracyMatrix, metric: str = "accuracy") -> str:
    """Static line plot: x = subset size, y = metric, one polyline per model."""
    width, height = 760, 480
    left, right, top, bottom = 60, 200, 20, 50
    plot_w, plot_h = width - left - right, height - top - bottom

    grid = matrix.means[metric]
    finite = grid[np.isfinite(grid)]
    y_min = math.floor((finite.min() if finite.size else 0.0) * 10) / 10
    y_max = 1.0
    if y_max - y_min < 0.1:
        y_min = max(0.0, y_max - 0.1)
    sizes = matrix.subset_sizes
    x_min, x_max = sizes[0], sizes[-1]

    def sx(r: float) -> float:
        if x_max == x_min:
            return left + plot_w / 2
        return left + (r - x_min) / (x_max - x_min) * plot_w

    def sy(v: float) -> float:
        return top + (y_max - v) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" '
        'stroke="black"/>',
    ]
    n_yticks = 5
    for i in range(n_yticks + 1):
        v = y_min + (y_max - y_min) * i / n_yticks
        y = sy(v)
        parts.append(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>')
        parts.append(
            f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11">{v:.2f}</text>'
        )
    for r in sizes:
        x = sx(r)
        parts.append(
            f'<line x1="{x:.1f}" y1="{top + plot_h}" x2="{x:.1f}" y2="{top + plot_h + 4}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{top + plot_h + 18}" text-anchor="middle" font-size="11">{r}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2}" y="{height - 12}" text-anchor="middle" '
        'font-size="13">features used (top r)</text>'
    )
    parts.append(
        f'<text x="18" y="{top + plot_h / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {top + plot_h / 2})">{metric}</text>'
    )
    for j, name in enumerate(matrix.model_names):
        color = _PALETTE[j % len(_PALETTE)]
        points = [
            f"{sx(r):.1f},{sy(grid[i, j]):.1f}"
            for i, r in enumerate(sizes)
            if math.isfinite(grid[i, j])
        ]
        if points:
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{" ".join(points)}"/>'
            )
        ly = top + 14 + j * 18
        lx = left + plot_w + 16
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12">{_xml_escape(name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _xml_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def table_to_csv(table: DataTable, path: str | Path, missing_token: str = "") -> None:
    """Write a DataTable back out as a headered CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([c.name for c in table.columns])
        for i in range(table.row_count):
            row = []
            for col in table.columns:
                if col.missing[i]:
                    row.append(missing_token)
                elif col.kind is ColumnKind.NUMERIC:
                    row.append(repr(float(col.values[i])))
                else:
                    row.append(col.values[i])
            writer.writerow(row)


def predictions_to_csv(probabilities: np.ndarray, labels: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["positive_probability", "label"])
    for p, lab in zip(probabilities, labels):
        writer.writerow([f"{p:.9f}", lab])
    return buf.getvalue()
