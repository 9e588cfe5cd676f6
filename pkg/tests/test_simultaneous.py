import numpy as np
import pytest

from ganova.adjust import adjust_p
from ganova.anova import decompose, k_statistics
from ganova.dataset import GroupedData
from ganova.distributions import DesignDims, f_cdf, gb2_quantile, k_dist_params
from ganova.errors import DomainError
from ganova.simultaneous import (
    P_FLOOR,
    decision_limits,
    k_adjusted,
    raw_p_values,
    run_ganova,
)

from conftest import random_dataset

OAK = DesignDims((29, 28, 25, 26))


class TestRawP:
    def test_zero_k(self):
        data = GroupedData(("A", "B", "C"), ([1.0, 3.0], [0.0, 4.0], [2.0, 2.0]))
        np.testing.assert_array_equal(raw_p_values(k_statistics(decompose(data))), 1.0)

    def test_balanced_matches_f_oracle(self, rng):
        for _ in range(20):
            data = random_dataset(rng, balanced=True)
            ks = k_statistics(decompose(data))
            d = ks.dims
            n = d.group_sizes[0]
            expect = [1 - f_cdf(k * (d.n_groups - 1) * d.n_total / (d.n_total - n), 1, d.df_err) for k in ks.k]
            np.testing.assert_allclose(raw_p_values(ks), expect, atol=1e-10)

    def test_decreasing_in_k(self, table4):
        ks = k_statistics(decompose(table4))
        p = raw_p_values(ks)
        order = np.argsort(ks.k)
        assert np.all(np.diff(p[order]) < 0)


class TestDecisionLimits:
    def test_balanced_single_limit(self):
        dims = DesignDims.balanced(4, 15)
        dl = decision_limits(dims, 0.05)
        from ganova.distributions import Gb2Params

        expect = gb2_quantile(0.95, Gb2Params(1.0, 14.0, 0.5, 4 * 14 / 2))
        np.testing.assert_allclose(dl, expect, rtol=1e-9)

    def test_oak_limits(self):
        dl = decision_limits(OAK, 0.05)
        for g, scale in enumerate((25.36, 25.68, 26.64, 26.32)):
            from ganova.distributions import Gb2Params

            # limits from the rounded published scales agree to the rounding
            assert dl[g] == pytest.approx(gb2_quantile(0.95, Gb2Params(1.0, scale, 0.5, 52.0)), rel=2e-4)
        assert len(set(np.round(dl, 12))) == 4

    def test_monotone_in_alpha(self):
        assert np.all(decision_limits(OAK, 0.01) > decision_limits(OAK, 0.05))

    def test_domain(self):
        with pytest.raises(DomainError):
            decision_limits(OAK, 1.0)


class TestKAdjusted:
    def test_alpha_maps_to_limit(self):
        k_adj, _ = k_adjusted(np.full(4, 0.05), OAK)
        np.testing.assert_array_equal(k_adj, decision_limits(OAK, 0.05))

    def test_one_maps_to_zero(self):
        k_adj, capped = k_adjusted(np.ones(4), OAK)
        np.testing.assert_array_equal(k_adj, 0.0)
        assert not capped.any()

    def test_round_trip_raw(self, table4):
        ks = k_statistics(decompose(table4))
        k_adj, _ = k_adjusted(raw_p_values(ks), ks.dims)
        np.testing.assert_allclose(k_adj, ks.k, rtol=1e-8)

    def test_zero_p_is_capped_above_limit(self):
        k_adj, capped = k_adjusted(np.array([0.0, 1e-300, 0.5, 1.0]), OAK)
        assert capped.tolist() == [True, True, False, False]
        assert np.all(k_adj[:2] > decision_limits(OAK, 0.05)[:2])
        assert np.isfinite(k_adj).all()
        assert k_adj[0] == pytest.approx(gb2_quantile(1 - P_FLOOR, k_dist_params(OAK, 0)), rel=1e-3)

    def test_antitone(self):
        p = np.linspace(0.001, 1, 50)
        ks = [k_adjusted(np.full(4, v), OAK)[0][0] for v in p]
        assert np.all(np.diff(ks) < 0)


class TestRun:
    def test_table4_bh(self, table4):
        res = run_ganova(table4, 0.05, "bh")
        assert res.reject
        assert res.flagged_labels == ["B"]
        assert res.anova.p > 0.05
        assert res.method == "bh"
        assert res.dl_p == pytest.approx(0.95)

    def test_default_method_is_bh(self, table4):
        assert run_ganova(table4).method == "bh"

    def test_equal_means_no_reject(self):
        data = GroupedData(("A", "B", "C"), ([1.0, 3.0], [0.0, 4.0], [2.0, 2.0]))
        res = run_ganova(data)
        assert not res.flags.any()
        assert not res.reject

    def test_p_adj_uses_adjust(self, table4):
        res = run_ganova(table4, 0.05, "hommel")
        np.testing.assert_array_equal(res.p_adj, adjust_p(res.p_raw, "hommel"))

    def test_bad_inputs(self, table4):
        with pytest.raises(DomainError):
            run_ganova(table4, 0.0)
        with pytest.raises(DomainError):
            run_ganova(table4, 0.05, "tukey")

    def test_three_rules_agree(self, rng):
        for _ in range(200):
            res = run_ganova(random_dataset(rng), float(rng.uniform(0.01, 0.2)), "bh")
            np.testing.assert_array_equal(res.flags, res.flags_p_scale)
            np.testing.assert_array_equal(res.flags, res.flags_k_scale)
            assert res.reject == bool(res.flags.any())

    def test_affine_invariance(self, rng):
        for _ in range(30):
            data = random_dataset(rng)
            moved = data.map_values(lambda v: -3.5 * v + 1e3)
            r0, r1 = run_ganova(data), run_ganova(moved)
            np.testing.assert_array_equal(r0.flags, r1.flags)
            np.testing.assert_allclose(r1.p_raw, r0.p_raw, rtol=1e-9, atol=1e-300)
            np.testing.assert_allclose(r1.p_adj, r0.p_adj, rtol=1e-9, atol=1e-300)

    def test_method_flag_nesting(self, rng):
        chain = ("bonferroni", "holm", "hochberg", "hommel")
        for _ in range(100):
            data = random_dataset(rng)
            flags = [run_ganova(data, 0.05, m).flags for m in chain]
            for weaker, stronger in zip(flags, flags[1:]):
                assert np.all(~weaker | stronger)

    def test_as_dict_keys(self, table4):
        d = run_ganova(table4).as_dict()
        for key in ("labels", "k", "p_raw", "p_adj", "k_adj", "dl_k", "alpha", "method", "reject", "anova"):
            assert key in d
        assert set(d["anova"]) == {"df_treat", "df_err", "sstr", "sse", "mstr", "mse", "f", "p"}
