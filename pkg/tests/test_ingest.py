import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from provclass import (
    ColumnKind,
    FitError,
    ParseError,
    Schema,
    SchemaError,
    apply_imputer,
    fit_imputer,
    load_schema,
    load_table,
)
from provclass.ingest import missing_fraction, save_schema

from .conftest import make_table

SCHEMA = Schema(
    column_specs=(
        ("age", ColumnKind.NUMERIC),
        ("color", ColumnKind.CATEGORICAL),
        ("label", ColumnKind.CATEGORICAL),
    ),
    target_name="label",
    positive_label="yes",
)


def write_csv(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadTable:
    def test_basic_parse(self, tmp_path):
        path = write_csv(tmp_path, "age,color,label\n1,red,yes\n2,blue,no\n3,red,yes\n")
        table = load_table(path, SCHEMA)
        assert table.row_count == 3
        assert list(table.column("age").values) == [1.0, 2.0, 3.0]

    def test_missing_token_in_numeric_column(self, tmp_path):
        path = write_csv(tmp_path, "age,color,label\n,red,yes\n2,blue,no\n")
        table = load_table(path, SCHEMA)
        col = table.column("age")
        assert col.n_missing == 1
        assert bool(col.missing[0])

    def test_wrong_field_count_cites_row(self, tmp_path):
        path = write_csv(tmp_path, "age,color,label\n1,red,yes\n2,no\n")
        with pytest.raises(ParseError, match="row 3"):
            load_table(path, SCHEMA)

    def test_unparseable_numeric_cites_row_and_column(self, tmp_path):
        path = write_csv(tmp_path, "age,color,label\n1,red,yes\nxx,blue,no\n")
        with pytest.raises(ParseError, match="age"):
            load_table(path, SCHEMA)

    def test_missing_header_column_named(self, tmp_path):
        path = write_csv(tmp_path, "age,label\n1,yes\n")
        with pytest.raises(SchemaError, match="color"):
            load_table(path, SCHEMA)

    def test_rows_with_missing_target_dropped_and_reported(self, tmp_path, caplog):
        path = write_csv(tmp_path, "age,color,label\n1,red,yes\n2,blue,\n3,red,no\n")
        with caplog.at_level(logging.WARNING):
            table = load_table(path, SCHEMA)
        assert table.row_count == 2
        assert any("dropped 1" in r.message for r in caplog.records)

    def test_extra_file_columns_ignored(self, tmp_path):
        path = write_csv(tmp_path, "age,junk,color,label\n1,zzz,red,yes\n2,zzz,blue,no\n")
        table = load_table(path, SCHEMA)
        assert table.feature_names == ["age", "color"]

    def test_quoted_fields(self, tmp_path):
        path = write_csv(tmp_path, 'age,color,label\n1,"red, deep",yes\n2,blue,no\n')
        table = load_table(path, SCHEMA)
        assert table.column("color").values[0] == "red, deep"

    def test_missing_fraction_matches_file(self, tmp_path):
        path = write_csv(
            tmp_path, "age,color,label\n,red,yes\n2,,no\n3,blue,yes\n4,red,no\n"
        )
        table = load_table(path, SCHEMA)
        assert missing_fraction(table) == pytest.approx(2 / 8)


class TestImputer:
    def test_median_skips_missing(self):
        t = make_table({"x": [1.0, 2.0, None, 4.0]}, ["yes", "no", "yes", "no"])
        imp = fit_imputer(t)
        assert imp.fill_for("x") == ("numeric", 2.0)

    def test_median_even_count_mean_of_middles(self):
        t = make_table({"x": [1.0, 2.0, 4.0, 10.0]}, ["yes", "no", "yes", "no"])
        assert fit_imputer(t).fill_for("x") == ("numeric", 3.0)

    def test_mode_plurality(self):
        t = make_table({"c": ["a", "a", "b", None]}, ["yes", "no", "yes", "no"])
        assert fit_imputer(t).fill_for("c") == ("categorical", "a")

    def test_mode_tie_breaks_lexicographically(self):
        t = make_table({"c": ["b", "a"]}, ["yes", "no"])
        assert fit_imputer(t).fill_for("c") == ("categorical", "a")

    def test_entirely_missing_column_errors(self):
        t = make_table({"x": [None, None]}, ["yes", "no"])
        with pytest.raises(FitError, match="x"):
            fit_imputer(t)

    def test_apply_identity_when_complete(self):
        t = make_table({"x": [1.0, 2.0]}, ["yes", "no"])
        out = apply_imputer(fit_imputer(t), t)
        assert np.array_equal(out.column("x").values, t.column("x").values)

    def test_apply_substitutes_learned_value(self):
        train = make_table({"x": [1.0, 2.0, 4.0]}, ["yes", "no", "yes"])
        test = make_table({"x": [1.0, None]}, ["yes", "no"])
        out = apply_imputer(fit_imputer(train), test)
        assert list(out.column("x").values) == [1.0, 2.0]
        assert out.column("x").n_missing == 0

    def test_kind_mismatch_is_schema_error(self):
        train = make_table({"x": [1.0, 2.0]}, ["yes", "no"])
        test = make_table({"x": ["a", "b"]}, ["yes", "no"])
        with pytest.raises(SchemaError):
            apply_imputer(fit_imputer(train), test)

    def test_unknown_column_is_schema_error(self):
        train = make_table({"x": [1.0, 2.0]}, ["yes", "no"])
        test = make_table({"z": [1.0, None]}, ["yes", "no"])
        with pytest.raises(SchemaError, match="z"):
            apply_imputer(fit_imputer(train), test)

    def test_idempotent(self):
        t = make_table(
            {"x": [1.0, None, 3.0], "c": ["a", "b", None]}, ["yes", "no", "yes"]
        )
        imp = fit_imputer(t)
        once = apply_imputer(imp, t)
        twice = apply_imputer(imp, once)
        for name in ("x", "c"):
            assert np.array_equal(once.column(name).values, twice.column(name).values)

    @settings(deadline=None, max_examples=25)
    @given(st.permutations(list(range(5))))
    def test_fit_invariant_to_row_order(self, perm):
        t = make_table(
            {"x": [5.0, None, 1.0, 2.0, 2.5], "c": ["a", "b", "b", None, "a"]},
            ["yes", "no", "yes", "no", "yes"],
        )
        assert fit_imputer(t).fills == fit_imputer(t.take(list(perm))).fills


class TestSchemaFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "schema.yaml"
        save_schema(SCHEMA, path)
        loaded = load_schema(path)
        assert loaded == SCHEMA

    def test_missing_file_names_path(self, tmp_path):
        with pytest.raises(SchemaError, match="nope.yaml"):
            load_schema(tmp_path / "nope.yaml")

    def test_invalid_mapping_rejected(self, tmp_path):
        path = tmp_path / "schema.yaml"
        path.write_text("just a string", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_schema(path)

    def test_target_must_be_declared(self, tmp_path):
        path = tmp_path / "schema.yaml"
        path.write_text(
            "target: z\npositive_label: a\ncolumns:\n- {name: x, kind: numeric}\n",
            encoding="utf-8",
        )
        with pytest.raises(SchemaError):
            load_schema(path)
