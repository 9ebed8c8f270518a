"""Command-line surface: rank, sweep, train, predict, validate-schema.

Exit codes: 0 success, 1 runtime/model failure, 2 configuration or usage
error. All randomness flows from --seed.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import report
from .errors import ConfigError, ProvclassError, SchemaError
from .evaluation import PipelineOptions, sweep as run_sweep
from .ingest import Imputer, apply_imputer, fit_imputer, load_schema, load_table
from .models import (
    DEFAULT_FAMILY_ORDER,
    FAMILIES,
    ClassifierSpec,
    model_from_dict,
    model_to_dict,
    predict_labels,
    predict_proba,
    train as train_model,
)
from .presets import get_preset
from .ranking import SCORER_NAMES, RankingTable, ScorerConfig, build_ranking
from .resampling import smote
from .tabular import Schema

ENVELOPE_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """Resolved paths and formats shared by the reporting commands."""

    input_path: Path
    schema: Schema
    out_dir: Path
    fmt: str

    def __post_init__(self):
        self.out_dir.mkdir(parents=True, exist_ok=True)


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, SchemaError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except ProvclassError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _resolve_schema(schema_path: str | None, preset: str | None) -> Schema:
    if (schema_path is None) == (preset is None):
        raise ConfigError("exactly one of --schema or --preset is required")
    if preset is not None:
        return get_preset(preset)
    return load_schema(schema_path)


def _parse_list(raw: str | None, valid: tuple[str, ...], what: str) -> tuple[str, ...]:
    if raw is None:
        return valid
    items = tuple(s.strip() for s in raw.split(",") if s.strip())
    unknown = [s for s in items if s not in valid]
    if unknown:
        raise ConfigError(f"unknown {what}: {unknown}; valid: {list(valid)}")
    if not items:
        raise ConfigError(f"empty {what} list")
    return items


def _read_order_file(path: str) -> list[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]


def _schema_options(fn):
    fn = click.option("--schema", "schema_path", type=click.Path(), default=None,
                      help="Schema YAML file.")(fn)
    fn = click.option("--preset", default=None, help="Built-in schema preset name.")(fn)
    return fn


@click.group()
def main():
    """Tabular provider-classification toolkit: rank features, sweep models."""


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@_schema_options
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--scorers", default=None, help="Comma list; default: all seven.")
@click.option("--bins", type=int, default=4, show_default=True,
              help="Discretization bins for the entropy-family scorers.")
@click.option("--consensus", default="mean_rank", show_default=True,
              help="'mean_rank' or a single scorer name to order by.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "md"]), default="csv")
@_handle_errors
def rank(input_path, schema_path, preset, out_dir, seed, scorers, bins, consensus, fmt):
    """Score every feature and write the ranking table."""
    schema = _resolve_schema(schema_path, preset)
    cfg = RunConfig(Path(input_path), schema, Path(out_dir), fmt)
    enabled = _parse_list(scorers, SCORER_NAMES, "scorers")
    table = load_table(cfg.input_path, schema)
    table = apply_imputer(fit_imputer(table), table)
    ranking = build_ranking(table, ScorerConfig(bins=bins, seed=seed), enabled)
    if consensus != "mean_rank":
        if consensus not in enabled:
            raise ConfigError(f"--consensus {consensus!r} is not an enabled scorer")
        ranking = RankingTable(ranking.features, tuple(ranking.order_by(consensus)))
    _write(cfg.out_dir / "ranking.csv", report.ranking_to_csv(ranking))
    _write(cfg.out_dir / "ranking.json", report.ranking_to_json(ranking))
    if fmt == "md":
        _write(cfg.out_dir / "ranking.md", report.ranking_to_markdown(ranking))
    click.echo(f"ranked {len(ranking.features)} features -> {cfg.out_dir}/ranking.csv")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@_schema_options
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--folds", type=int, default=10, show_default=True)
@click.option("--models", default=None, help="Comma list of model families.")
@click.option("--scorers", default=None, help="Scorers used to derive the feature order.")
@click.option("--order", "order_path", type=click.Path(exists=True), default=None,
              help="Explicit feature-order file (one name per line).")
@click.option("--consensus", default="mean_rank", show_default=True)
@click.option("--smote/--no-smote", "smote_enabled", default=False, show_default=True)
@click.option("--smote-global", is_flag=True, default=False,
              help="Oversample the whole table before folding (reproduction aid).")
@click.option("--global-impute", is_flag=True, default=False,
              help="Impute once on the whole table instead of per training fold.")
@click.option("--metrics", default="accuracy", show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "md"]), default="csv")
@_handle_errors
def sweep(input_path, schema_path, preset, out_dir, seed, folds, models, scorers,
          order_path, consensus, smote_enabled, smote_global, global_impute,
          metrics, workers, fmt):
    """Cross-validate every model on every top-r feature subset."""
    schema = _resolve_schema(schema_path, preset)
    cfg = RunConfig(Path(input_path), schema, Path(out_dir), fmt)
    families = _parse_list(models, FAMILIES, "models") if models else DEFAULT_FAMILY_ORDER
    metric_list = _parse_list(metrics, ("accuracy", "precision", "recall", "f1", "auc"), "metrics")
    table = load_table(cfg.input_path, schema)

    if order_path is not None:
        order = _read_order_file(order_path)
    else:
        enabled = _parse_list(scorers, SCORER_NAMES, "scorers")
        imputed = apply_imputer(fit_imputer(table), table)
        ranking = build_ranking(imputed, ScorerConfig(seed=seed), enabled)
        order = (
            list(ranking.consensus_order)
            if consensus == "mean_rank"
            else ranking.order_by(consensus)
        )

    opts = PipelineOptions(
        folds=folds,
        seed=seed,
        smote_enabled=smote_enabled or smote_global,
        smote_global=smote_global,
        global_impute=global_impute,
        metrics=metric_list,
        workers=workers,
    )
    specs = [ClassifierSpec(f, {}, seed) for f in families]
    matrix = run_sweep(table, order, specs, opts)
    _write(cfg.out_dir / "matrix.csv", report.matrix_to_csv(matrix))
    _write(cfg.out_dir / "matrix.json", report.matrix_to_json(matrix))
    _write(cfg.out_dir / "accuracy.svg", report.accuracy_plot_svg(matrix))
    if fmt == "md":
        _write(cfg.out_dir / "matrix.md", report.matrix_to_markdown(matrix))
    if matrix.diagnostics:
        _write(cfg.out_dir / "warnings.txt", "\n".join(matrix.diagnostics) + "\n")
    click.echo(
        f"swept {len(matrix.subset_sizes)}x{len(matrix.model_names)} cells -> "
        f"{cfg.out_dir}/matrix.csv"
    )


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@_schema_options
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@click.option("--model", "family", required=True,
              type=click.Choice(list(FAMILIES)), help="Model family to train.")
@click.option("--params", default=None, help="JSON object of hyperparameter overrides.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--smote/--no-smote", "smote_enabled", default=False, show_default=True)
@_handle_errors
def train(input_path, schema_path, preset, out_dir, family, params, seed, smote_enabled):
    """Train one model on the full table and persist it as JSON."""
    schema = _resolve_schema(schema_path, preset)
    cfg = RunConfig(Path(input_path), schema, Path(out_dir), "json")
    try:
        overrides = json.loads(params) if params else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--params is not valid JSON: {exc}") from None
    table = load_table(cfg.input_path, schema)
    imputer = fit_imputer(table)
    table = apply_imputer(imputer, table)
    if smote_enabled:
        table = smote(table, seed=seed)
    model = train_model(ClassifierSpec(family, overrides, seed), table)
    doc = {
        "format_version": ENVELOPE_VERSION,
        "imputer": imputer.to_dict(),
        "model": model_to_dict(model),
    }
    out_path = cfg.out_dir / "model.json"
    _write(out_path, json.dumps(doc))
    click.echo(f"trained {family} on {table.row_count} rows -> {out_path}")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@_schema_options
@click.option("--model", "model_path", type=click.Path(exists=True), required=True,
              help="Model JSON written by `train`.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".")
@_handle_errors
def predict(input_path, schema_path, preset, model_path, out_dir):
    """Score new rows with a persisted model."""
    schema = _resolve_schema(schema_path, preset)
    cfg = RunConfig(Path(input_path), schema, Path(out_dir), "csv")
    with open(model_path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format_version") != ENVELOPE_VERSION:
        raise SchemaError(
            f"model file version {doc.get('format_version')!r} not supported "
            f"(expected {ENVELOPE_VERSION})"
        )
    imputer = Imputer.from_dict(doc["imputer"])
    model = model_from_dict(doc["model"])
    table = load_table(cfg.input_path, schema, require_target=False)
    table = apply_imputer(imputer, table)
    probs = predict_proba(model, table)
    labels = predict_labels(model, table)
    out_path = cfg.out_dir / "predictions.csv"
    _write(out_path, report.predictions_to_csv(probs, labels))
    click.echo(f"predicted {len(labels)} rows -> {out_path}")


@main.command("validate-schema")
@click.option("--schema", "schema_path", type=click.Path(), required=True)
@_handle_errors
def validate_schema(schema_path):
    """Check a schema file and print its summary."""
    schema = load_schema(schema_path)
    n_features = len(schema.feature_specs)
    click.echo(f"schema ok: {n_features} features, target {schema.target_name!r}")
    for name, kind in schema.column_specs:
        marker = " (target)" if name == schema.target_name else ""
        click.echo(f"  {name}: {kind.value}{marker}")


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


if __name__ == "__main__":
    main()
