from __future__ import annotations

import csv
import io
import json
import math

import pytest

from streamcolor import (
    GraphSpec,
    experiment_distinguisher,
    experiment_edge_shrinkage,
    experiment_vertex_sampling,
    wilson_interval,
)
from streamcolor.errors import ArgumentError
from streamcolor.seeds import rng_for


class TestGraphSpec:
    def test_parse_and_describe(self):
        spec = GraphSpec.parse("gnm:n=300,m=20000")
        assert (spec.kind, spec.n, spec.m) == ("gnm", 300, 20000)
        assert spec.describe() == "gnm:n=300,m=20000"

    def test_gnm_edge_count(self):
        g = GraphSpec.parse("gnm:n=50,m=400").build(rng_for(0, 0))
        assert g.num_edges == 400

    def test_planted_known_chi(self):
        spec = GraphSpec.parse("planted:n=100,clique=40")
        assert spec.known_chi == 40
        g = spec.build(rng_for(1, 0))
        assert g.num_edges == 40 * 39 // 2

    def test_bipartite_structure(self):
        spec = GraphSpec.parse("bipartite:n=20,m=30")
        g = spec.build(rng_for(2, 0))
        assert g.num_edges == 30
        assert all(u < 10 <= v for u, v in g.edges)
        assert spec.known_chi == 2

    def test_empty(self):
        spec = GraphSpec.parse("empty:n=5")
        assert spec.build(rng_for(0, 0)).num_edges == 0
        assert spec.known_chi == 1

    def test_bad_specs(self):
        for text in ("gnm", "what:n=3", "gnm:n=3,m=99", "bipartite:n=4,m=9",
                     "planted:n=3,clique=7", "gnm:n=3,m=x"):
            with pytest.raises(ArgumentError):
                GraphSpec.parse(text)

    def test_deterministic_builds(self):
        spec = GraphSpec.parse("gnm:n=40,m=100")
        assert spec.build(rng_for(7, 0)) == spec.build(rng_for(7, 0))


class TestWilson:
    def test_no_trials(self):
        assert wilson_interval(0, 0) == (0.0, 1.0)

    def test_half(self):
        lo, hi = wilson_interval(50, 100)
        assert 0.40 < lo < 0.41 and 0.59 < hi < 0.60

    def test_extremes_stay_in_unit_interval(self):
        lo, hi = wilson_interval(0, 20)
        assert lo == 0.0 and hi < 0.2
        lo, hi = wilson_interval(20, 20)
        assert lo > 0.8 and hi == 1.0


class TestEdgeShrinkage:
    def test_empty_graph_all_zero_ratios(self):
        result = experiment_edge_shrinkage(
            GraphSpec.parse("empty:n=50"), 2, trials=3, seed=0
        )
        for rec in result.records:
            assert rec["m_sizes"] == [0, 0, 0]
            assert rec["ratios"] == [0.0, 0.0]
        assert result.summary["violation_fraction"] == 0.0

    def test_budget_covers_everything_single_round(self):
        # |E| <= budget: round one stores all of M_1, so M_2 is empty
        result = experiment_edge_shrinkage(
            GraphSpec.parse("gnm:n=50,m=300"), 2, trials=4, seed=1
        )
        for rec in result.records:
            assert rec["m_sizes"][0] == 300
            assert rec["m_sizes"][1] == 0

    def test_bound_value(self):
        result = experiment_edge_shrinkage(
            GraphSpec.parse("gnm:n=300,m=500"), 2, trials=1, seed=2
        )
        assert abs(result.summary["bound"] - 300**-0.5) < 1e-12

    def test_reproducible(self):
        a = experiment_edge_shrinkage(GraphSpec.parse("gnm:n=60,m=400"), 2, 5, seed=9)
        b = experiment_edge_shrinkage(GraphSpec.parse("gnm:n=60,m=400"), 2, 5, seed=9)
        assert a.to_json() == b.to_json()


class TestVertexSampling:
    def test_threshold_arithmetic(self):
        result = experiment_vertex_sampling(
            GraphSpec.parse("planted:n=100,clique=40"), 0.5, trials=5, seed=0
        )
        expected = (0.5 / (2 * math.log(100))) * 40 - 1
        assert abs(result.summary["threshold"] - expected) < 1e-12
        assert abs(expected - 1.17147) < 1e-4

    def test_low_p_never_below_negative_threshold(self):
        result = experiment_vertex_sampling(
            GraphSpec.parse("planted:n=100,clique=40"), 0.2, trials=20, seed=1
        )
        assert result.summary["threshold"] < 0
        assert result.summary["empirical_probability"] == 0.0

    def test_edgeless_indicator_false(self):
        result = experiment_vertex_sampling(
            GraphSpec.parse("empty:n=30"), 0.5, trials=10, seed=2
        )
        assert result.summary["empirical_probability"] == 0.0

    def test_needs_known_chi(self):
        with pytest.raises(ArgumentError):
            experiment_vertex_sampling(GraphSpec.parse("gnm:n=30,m=50"), 0.5, 3, seed=0)

    def test_p_validated(self):
        with pytest.raises(ArgumentError):
            experiment_vertex_sampling(GraphSpec.parse("empty:n=30"), 1.5, 3, seed=0)


class TestDistinguisher:
    def test_zero_trials_empty(self):
        result = experiment_distinguisher(
            "random-order",
            GraphSpec.parse("bipartite:n=40,m=100"),
            GraphSpec.parse("planted:n=40,clique=10"),
            2, 2, trials=0, seed=0,
        )
        assert result.records == ()
        assert result.summary == {}

    def test_random_order_small_family(self):
        result = experiment_distinguisher(
            "random-order",
            GraphSpec.parse("bipartite:n=60,m=300"),
            GraphSpec.parse("planted:n=60,clique=12"),
            2, 2, trials=10, seed=1,
        )
        assert result.summary["small_success_rate"] == 1.0
        assert result.summary["large_success_rate"] == 1.0

    def test_dynamic_with_churn(self):
        result = experiment_distinguisher(
            "dynamic",
            GraphSpec.parse("bipartite:n=64,m=200"),
            GraphSpec.parse("planted:n=64,clique=24"),
            2, 24, trials=5, seed=2, extra_pairs=50, cycles=1,
        )
        assert result.summary["small_success_rate"] == 1.0
        assert result.summary["large_success_rate"] == 1.0


class TestResultEmission:
    def test_json_csv_field_consistency(self):
        result = experiment_edge_shrinkage(
            GraphSpec.parse("gnm:n=60,m=400"), 2, trials=3, seed=4
        )
        payload = json.loads(result.to_json())
        rows = list(csv.DictReader(io.StringIO(result.to_csv())))
        assert len(rows) == len(payload["records"])
        for rec, row in zip(payload["records"], rows):
            assert set(row) == set(rec)
            for key, value in rec.items():
                if isinstance(value, list):
                    assert row[key] == " ".join(str(v) for v in value)
                else:
                    assert row[key] == str(value)

    def test_records_ordered_by_trial(self):
        result = experiment_vertex_sampling(
            GraphSpec.parse("planted:n=50,clique=10"), 0.4, trials=6, seed=5
        )
        assert [r["trial"] for r in result.records] == list(range(6))
