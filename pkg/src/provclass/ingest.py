"""CSV ingestion against a declared schema, plus median/mode imputation.

Imputation is fold-safe by design: an :class:`Imputer` is fitted on training
rows only and then applied to both train and test tables, so test folds never
contribute to the fill statistics.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .errors import FitError, ParseError, SchemaError, ValidationError
from .tabular import (
    Column,
    ColumnKind,
    DataTable,
    Schema,
    categorical_column,
    numeric_column,
)

logger = logging.getLogger(__name__)


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    """Read an RFC-4180-style headered CSV into (header, rows of cells).

    Every row must carry exactly as many fields as the header.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: file is empty, expected a header row") from None
        rows = list(reader)
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise ParseError(
                f"{path}: row {i + 2} has {len(row)} fields, header has {len(header)}"
            )
    return header, rows


def load_table(path: str | Path, schema: Schema, require_target: bool = True) -> DataTable:
    """Parse a headered CSV file into a DataTable.

    Cells equal to a schema missing token are flagged missing. Rows whose
    target cell is missing are dropped (count logged). With
    ``require_target=False`` the target column may be absent from the file,
    in which case a constant placeholder target is attached (used by the
    predict CLI where labels are unknown).
    """
    path = Path(path)
    header, rows = read_csv(path)

    col_pos: dict[str, int] = {}
    for name, _ in schema.column_specs:
        if name == schema.target_name and not require_target:
            continue  # labels unused at predict time even if the file has them
        if name not in header:
            raise SchemaError(f"{path}: header is missing schema column {name!r}")
        col_pos[name] = header.index(name)

    has_target = schema.target_name in col_pos
    keep = []
    if has_target:
        tpos = col_pos[schema.target_name]
        for i, row in enumerate(rows):
            if row[tpos] in schema.missing_tokens:
                continue
            keep.append(i)
        dropped = len(rows) - len(keep)
        if dropped:
            logger.warning("%s: dropped %d rows with missing target", path, dropped)
    else:
        keep = list(range(len(rows)))

    columns = []
    for name, kind in schema.column_specs:
        if name == schema.target_name and not has_target:
            values = [schema.positive_label] * len(keep)
            columns.append(categorical_column(name, values))
            continue
        pos = col_pos[name]
        cells = [rows[i][pos] for i in keep]
        missing = [c in schema.missing_tokens for c in cells]
        if kind is ColumnKind.NUMERIC:
            parsed = []
            for j, (cell, m) in enumerate(zip(cells, missing)):
                if m:
                    parsed.append(0.0)
                    continue
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"{path}: row {keep[j] + 2}, column {name!r}: "
                        f"cannot parse {cell!r} as a number"
                    ) from None
            columns.append(Column(name, kind, np.array(parsed), np.array(missing, dtype=bool)))
        else:
            vals = ["" if m else c for c, m in zip(cells, missing)]
            columns.append(categorical_column(name, vals, missing))

    table = DataTable(tuple(columns), schema.target_name, schema.positive_label)
    if has_target and require_target:
        labels = set(table.target_column.values.tolist())
        if schema.target_labels is not None and not labels <= set(schema.target_labels):
            raise SchemaError(
                f"{path}: target labels {sorted(labels)} not among declared "
                f"{list(schema.target_labels)}"
            )
    return table


def _median(values: np.ndarray) -> float:
    # even count: mean of the two middle values
    return float(np.median(values))


def _mode(values: list[str]) -> str:
    counts: dict[str, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    top = max(counts.values())
    # ties break to the lexicographically smallest category
    return min(v for v, c in counts.items() if c == top)


@dataclass(frozen=True)
class Imputer:
    """Per-column fill values: median for numeric, mode for categorical."""

    fills: tuple[tuple[str, str, object], ...]  # (name, kind value, fill)

    def fill_for(self, name: str) -> tuple[str, object] | None:
        for n, kind, fill in self.fills:
            if n == name:
                return kind, fill
        return None

    def to_dict(self) -> dict:
        return {"fills": [{"name": n, "kind": k, "fill": f} for n, k, f in self.fills]}

    @classmethod
    def from_dict(cls, d: dict) -> "Imputer":
        return cls(tuple((e["name"], e["kind"], e["fill"]) for e in d["fills"]))


def fit_imputer(train: DataTable) -> Imputer:
    """Learn median/mode fills from the non-missing cells of each feature."""
    fills = []
    for col in train.columns:
        if col.name == train.target:
            continue
        present = col.present_values()
        if len(present) == 0:
            raise FitError(f"column {col.name!r} is entirely missing; cannot fit a fill value")
        if col.kind is ColumnKind.NUMERIC:
            fills.append((col.name, col.kind.value, _median(present.astype(float))))
        else:
            fills.append((col.name, col.kind.value, _mode(list(present))))
    return Imputer(tuple(fills))


def apply_imputer(imputer: Imputer, table: DataTable) -> DataTable:
    """Fill every missing feature cell with the imputer's learned value."""
    new_cols: dict[str, Column] = {}
    for col in table.columns:
        if col.name == table.target:
            continue
        entry = imputer.fill_for(col.name)
        if entry is None:
            raise SchemaError(f"imputer has no fill value for column {col.name!r}")
        kind, fill = entry
        if kind != col.kind.value:
            raise SchemaError(
                f"imputer kind mismatch for column {col.name!r}: "
                f"fitted {kind}, table has {col.kind.value}"
            )
        if col.n_missing == 0:
            continue
        values = col.values.copy()
        values[col.missing] = fill
        new_cols[col.name] = Column(col.name, col.kind, values, np.zeros(len(col), dtype=bool))
    return table.replace_columns(new_cols) if new_cols else table


def missing_fraction(table: DataTable) -> float:
    """Fraction of feature cells flagged missing."""
    feats = [c for c in table.columns if c.name != table.target]
    total = sum(len(c) for c in feats)
    if total == 0:
        return 0.0
    return sum(c.n_missing for c in feats) / total


def load_schema(path: str | Path) -> Schema:
    """Read a schema from a YAML (or JSON) mapping file."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"schema file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: schema file must contain a mapping")
    try:
        columns = [(c["name"], ColumnKind(c["kind"])) for c in raw["columns"]]
        schema = Schema(
            column_specs=tuple(columns),
            target_name=raw["target"],
            positive_label=raw["positive_label"],
            missing_tokens=frozenset(raw.get("missing_tokens", ["", "NA"])),
            target_labels=tuple(raw["target_labels"]) if raw.get("target_labels") else None,
        )
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        raise SchemaError(f"{path}: invalid schema: {exc}") from exc
    return schema


def save_schema(schema: Schema, path: str | Path) -> None:
    doc = {
        "target": schema.target_name,
        "positive_label": schema.positive_label,
        "missing_tokens": sorted(schema.missing_tokens),
        "columns": [{"name": n, "kind": k.value} for n, k in schema.column_specs],
    }
    if schema.target_labels:
        doc["target_labels"] = list(schema.target_labels)
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(doc, fh, sort_keys=False)
