import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from provclass import (
    ConfigError,
    ContingencyTable,
    DomainError,
    KindMismatchError,
    ScorerConfig,
    anova_f,
    build_ranking,
    chi_square,
    contingency,
    discretize,
    entropy,
    fcbf,
    gain_ratio,
    gini_gain,
    information_gain,
    relieff,
    symmetric_uncertainty,
    value_counts,
)
from provclass.tabular import categorical_column, numeric_column

from . import oracles
from .conftest import make_table, random_mixed_table


def ct(rows) -> ContingencyTable:
    m = np.array(rows, dtype=float)
    return ContingencyTable(m, tuple(range(m.shape[0])), tuple(range(m.shape[1])))


class TestEntropy:
    def test_uniform_binary(self):
        assert entropy([5, 5]) == pytest.approx(1.0)

    def test_pure_class(self):
        assert entropy([10, 0]) == 0.0

    def test_nine_one(self):
        assert entropy([9, 1]) == pytest.approx(0.4690, abs=1e-4)

    def test_all_zero_rejected(self):
        with pytest.raises(DomainError):
            entropy([0, 0])


class TestInformationGain:
    def test_perfect_predictor(self):
        table = ct([[7, 0], [0, 3]])
        assert information_gain(table) == pytest.approx(entropy([7, 3]))

    def test_independent_feature(self):
        assert information_gain(ct([[4, 2], [8, 4]])) == pytest.approx(0.0, abs=1e-12)

    def test_hand_worked(self):
        assert information_gain(ct([[3, 1], [1, 3]])) == pytest.approx(0.1887, abs=1e-4)

    def test_bounded_by_entropies(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            counts = rng.integers(0, 8, size=(3, 2))
            if counts.sum() == 0:
                continue
            table = ct(counts)
            ig = information_gain(table)
            h_class = entropy(counts.sum(axis=0)) if counts.sum(axis=0).sum() else 0
            h_feat = entropy(counts.sum(axis=1))
            assert -1e-12 <= ig <= min(h_class, h_feat) + 1e-12


class TestGainRatio:
    def test_hand_worked(self):
        assert gain_ratio(ct([[3, 1], [1, 3]])) == pytest.approx(0.1887, abs=1e-4)

    def test_independent_feature_zero(self):
        assert gain_ratio(ct([[2, 2], [4, 4]])) == pytest.approx(0.0, abs=1e-12)

    def test_single_valued_feature_zero_by_convention(self):
        assert gain_ratio(ct([[5, 3]])) == 0.0

    def test_in_unit_interval(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            counts = rng.integers(0, 7, size=(3, 2))
            if counts.sum() == 0:
                continue
            assert -1e-12 <= gain_ratio(ct(counts)) <= 1.0 + 1e-12


class TestGiniGain:
    def test_perfect_balanced_predictor(self):
        assert gini_gain(ct([[5, 0], [0, 5]])) == pytest.approx(0.5)

    def test_independent_feature(self):
        assert gini_gain(ct([[3, 3], [2, 2]])) == pytest.approx(0.0, abs=1e-12)

    def test_hand_worked(self):
        assert gini_gain(ct([[3, 1], [1, 3]])) == pytest.approx(0.125)


class TestChiSquare:
    def test_perfect_two_by_two(self):
        assert chi_square(ct([[10, 0], [0, 10]])) == pytest.approx(20.0)

    def test_proportional_is_zero(self):
        assert chi_square(ct([[2, 4], [3, 6]])) == pytest.approx(0.0, abs=1e-12)

    def test_single_row_after_pruning_is_na(self):
        assert chi_square(ct([[5, 3], [0, 0]])) is None

    def test_single_column_after_pruning_is_na(self):
        assert chi_square(ct([[5, 0], [3, 0]])) is None


class TestOracleSpotChecks:
    def test_random_tables_match_oracles(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            counts = rng.integers(0, 7, size=(int(rng.integers(1, 4)), 2))
            if counts.sum() == 0:
                continue
            table = ct(counts)
            matrix = counts.tolist()
            assert information_gain(table) == pytest.approx(
                oracles.info_gain(matrix), abs=1e-12
            )
            assert gain_ratio(table) == pytest.approx(oracles.gain_ratio(matrix), abs=1e-12)
            assert gini_gain(table) == pytest.approx(oracles.gini_gain(matrix), abs=1e-12)
            ours, ref = chi_square(table), oracles.chi_square(matrix)
            if ref is None:
                assert ours is None
            else:
                assert ours == pytest.approx(ref, rel=1e-12, abs=1e-12)


class TestAnova:
    def test_identical_group_means(self):
        col = numeric_column("x", [1.0, 2.0, 3.0, 1.0, 2.0, 3.0])
        labels = ["a", "a", "a", "b", "b", "b"]
        assert anova_f(col, labels) == 0.0

    def test_hand_worked(self):
        col = numeric_column("x", [1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        labels = ["a", "a", "a", "b", "b", "b"]
        assert anova_f(col, labels) == pytest.approx(13.5)

    def test_zero_within_variance_sentinel(self):
        col = numeric_column("x", [0.0, 0.0, 1.0, 1.0])
        assert anova_f(col, ["a", "a", "b", "b"]) == math.inf

    def test_categorical_rejected(self):
        with pytest.raises(KindMismatchError):
            anova_f(categorical_column("c", ["a", "b"]), ["x", "y"])

    def test_empty_group_errors(self):
        col = numeric_column("x", [1.0, None, 2.0])
        with pytest.raises(DomainError):
            anova_f(col, ["a", "b", "a"])  # class b loses its only value


class TestDiscretize:
    def test_equal_frequency_on_one_to_eight(self):
        col = numeric_column("x", [float(i) for i in range(1, 9)])
        out = discretize(col, 4)
        assert sorted(value_counts(out).values()) == [2, 2, 2, 2]

    def test_constant_column_single_bin(self):
        col = numeric_column("x", [3.0] * 5)
        out = discretize(col, 4)
        assert len(value_counts(out)) == 1

    def test_missing_cells_stay_missing(self):
        col = numeric_column("x", [1.0, None, 3.0, 4.0])
        out = discretize(col, 2)
        assert out.n_missing == 1

    def test_populations_within_one_on_distinct_values(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            n = int(rng.integers(2, 60))
            bins = int(rng.choice([2, 3, 4, 5, 8]))
            vals = rng.standard_normal(n)
            if len(np.unique(vals)) < n:
                continue
            counts = list(value_counts(discretize(numeric_column("x", list(vals)), bins)).values())
            assert sum(counts) == n
            if len(counts) > 1:
                assert max(counts) - min(counts) <= 1


class TestReliefF:
    def test_constant_feature_weight_zero(self):
        t = make_table(
            {"const": [2.0] * 8, "x": [0.0, 0.1, 0.2, 0.3, 5.0, 5.1, 5.2, 5.3]},
            ["no", "no", "no", "no", "yes", "yes", "yes", "yes"],
        )
        w = relieff(t, ScorerConfig(relieff_neighbors=1))
        assert w["const"] == 0.0

    def test_class_copy_feature_weight_one(self):
        labels = ["no"] * 5 + ["yes"] * 5
        t = make_table(
            {
                "copy": labels[:],
                "x": [0.0, 0.1, 0.2, 0.3, 0.4, 9.0, 9.1, 9.2, 9.3, 9.4],
            },
            labels,
        )
        w = relieff(t, ScorerConfig(relieff_neighbors=1))
        assert w["copy"] == pytest.approx(1.0, abs=1e-12)

    def test_weights_in_unit_ball(self):
        rng = np.random.default_rng(5)
        for trial in range(10):
            t = random_mixed_table(rng, 30, 3, 2)
            w = relieff(t, ScorerConfig(relieff_neighbors=3))
            assert all(-1.0 - 1e-12 <= v <= 1.0 + 1e-12 for v in w.values())

    def test_matches_bruteforce_oracle(self):
        rng = np.random.default_rng(11)
        for trial in range(10):
            t = random_mixed_table(rng, int(rng.integers(8, 30)), 2, 2)
            k = int(rng.choice([1, 3, 7]))
            ours = relieff(t, ScorerConfig(relieff_neighbors=k))
            ref = oracles.relieff_bruteforce(t, k)
            for name in t.feature_names:
                assert ours[name] == pytest.approx(ref[name], abs=1e-12)

    def test_subsampled_deterministic(self):
        rng = np.random.default_rng(5)
        t = random_mixed_table(rng, 40, 3, 1)
        cfg = ScorerConfig(relieff_neighbors=3, relieff_samples=15, seed=21)
        assert relieff(t, cfg) == relieff(t, cfg)

    def test_single_row_class_rejected(self):
        t = make_table({"x": [1.0, 2.0, 3.0]}, ["yes", "no", "no"])
        with pytest.raises(DomainError):
            relieff(t, ScorerConfig())


class TestFcbf:
    def test_su_self_is_one(self):
        a = categorical_column("a", ["x", "y", "x", "z"])
        assert symmetric_uncertainty(a, a) == pytest.approx(1.0)

    def test_su_independent_is_zero(self):
        a = categorical_column("a", ["x", "x", "y", "y"])
        b = categorical_column("b", ["u", "v", "u", "v"])
        assert symmetric_uncertainty(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_su_symmetric(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a = categorical_column("a", [str(v) for v in rng.integers(0, 3, size=12)])
            b = categorical_column("b", [str(v) for v in rng.integers(0, 2, size=12)])
            assert symmetric_uncertainty(a, b) == pytest.approx(
                symmetric_uncertainty(b, a), abs=1e-12
            )

    def test_duplicate_predictive_feature_one_retained(self):
        labels = ["yes", "no"] * 8
        t = make_table({"f1": labels[:], "f2": labels[:]}, labels)
        scores, selected = fcbf(t, ScorerConfig())
        assert selected == ["f1"]
        assert scores["f1"] == pytest.approx(1.0)
        assert scores["f2"] == 0.0

    def test_scores_in_unit_interval(self):
        rng = np.random.default_rng(7)
        t = random_mixed_table(rng, 40, 3, 3)
        scores, _ = fcbf(t, ScorerConfig())
        assert all(0.0 <= v <= 1.0 for v in scores.values())


class TestBuildRanking:
    def make_signal_table(self, n=48, seed=0):
        rng = np.random.default_rng(seed)
        signal = rng.standard_normal(n)
        labels = np.where(signal > 0, "yes", "no").tolist()
        return make_table(
            {
                "signal": list(signal),
                "noise": list(rng.standard_normal(n)),
                "const": [1.0] * n,
            },
            labels,
        )

    def test_predictive_feature_ranked_first_everywhere(self):
        t = self.make_signal_table()
        ranking = build_ranking(t, ScorerConfig(seed=0))
        assert ranking.consensus_order[0] == "signal"
        for scorer in ("info_gain", "gain_ratio", "gini", "relieff"):
            assert ranking.order_by(scorer)[0] == "signal"

    def test_single_scorer_consensus_is_its_order(self):
        t = self.make_signal_table(seed=3)
        ranking = build_ranking(t, ScorerConfig(), scorers=("info_gain",))
        scores = {f.name: f.scores["info_gain"] for f in ranking.features}
        expected = sorted(scores, key=lambda n: -scores[n])
        assert list(ranking.consensus_order) == expected

    def test_empty_scorer_subset_rejected(self):
        with pytest.raises(ConfigError):
            build_ranking(self.make_signal_table(), ScorerConfig(), scorers=())

    def test_unknown_scorer_rejected(self):
        with pytest.raises(ConfigError):
            build_ranking(self.make_signal_table(), ScorerConfig(), scorers=("entropy3",))

    def test_anova_na_for_categorical(self):
        t = make_table(
            {"c": ["a", "b", "a", "b"], "x": [1.0, 2.0, 3.0, 4.0]},
            ["yes", "no", "yes", "no"],
        )
        ranking = build_ranking(t, ScorerConfig())
        assert ranking.feature("c").scores["anova"] is None
        assert ranking.feature("x").scores["anova"] is not None

    def test_duplicated_feature_scores_identical(self):
        rng = np.random.default_rng(8)
        vals = list(rng.standard_normal(30))
        labels = ["yes" if v > 0 else "no" for v in rng.standard_normal(30)]
        t = make_table({"f": vals, "f_copy": vals[:]}, labels)
        ranking = build_ranking(t, ScorerConfig())
        for scorer in ("info_gain", "gain_ratio", "gini", "chi2", "anova"):
            a = ranking.feature("f").scores[scorer]
            b = ranking.feature("f_copy").scores[scorer]
            if a is None:
                assert b is None
            else:
                assert a == pytest.approx(b, abs=1e-12)

    def test_row_order_invariance_of_entropy_scores(self):
        rng = np.random.default_rng(9)
        t = random_mixed_table(rng, 24, 2, 2)
        perm = rng.permutation(24)
        r1 = build_ranking(t, ScorerConfig(), scorers=("info_gain", "gini", "chi2"))
        r2 = build_ranking(t.take(perm), ScorerConfig(), scorers=("info_gain", "gini", "chi2"))
        for f in t.feature_names:
            for s in ("info_gain", "gini", "chi2"):
                a, b = r1.feature(f).scores[s], r2.feature(f).scores[s]
                if a is None:
                    assert b is None
                else:
                    assert a == pytest.approx(b, abs=1e-12)

    def test_category_renaming_invariance(self):
        labels = ["yes", "no", "yes", "no", "yes", "no"]
        t1 = make_table({"c": ["a", "b", "a", "a", "b", "b"]}, labels)
        t2 = make_table({"c": ["zz", "qq", "zz", "zz", "qq", "qq"]}, labels)
        r1 = build_ranking(t1, ScorerConfig(), scorers=("info_gain", "gain_ratio", "gini"))
        r2 = build_ranking(t2, ScorerConfig(), scorers=("info_gain", "gain_ratio", "gini"))
        for s in ("info_gain", "gain_ratio", "gini"):
            assert r1.feature("c").scores[s] == pytest.approx(
                r2.feature("c").scores[s], abs=1e-12
            )

    def test_deterministic(self):
        rng = np.random.default_rng(10)
        t = random_mixed_table(rng, 40, 3, 2)
        r1 = build_ranking(t, ScorerConfig(seed=5))
        r2 = build_ranking(t, ScorerConfig(seed=5))
        assert r1.consensus_order == r2.consensus_order

    def test_missing_cells_rejected(self):
        t = make_table({"x": [1.0, None, 2.0, 1.5]}, ["yes", "no", "yes", "no"])
        from provclass import MissingValuesError

        with pytest.raises(MissingValuesError):
            build_ranking(t, ScorerConfig())
