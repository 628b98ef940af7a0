from __future__ import annotations

import collections

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from streamcolor import (
    DynamicMultigraph,
    Graph,
    Stream,
    StreamEvent,
    StreamSource,
    finalize_multigraph,
    read_stream,
    to_dynamic_stream,
    to_insertion_stream,
    write_stream,
)
from streamcolor.errors import ArgumentError, FormatError, PassLimitError, StreamValidationError


def k3() -> Graph:
    return Graph(3, [(0, 1), (0, 2), (1, 2)])


class TestInsertionStreams:
    def test_empty_graph(self):
        s = to_insertion_stream(Graph(4))
        assert len(s) == 0 and s.model == "ins"

    def test_as_given_order(self):
        s = to_insertion_stream(k3())
        assert [(e.u, e.v, e.delta) for e in s] == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]

    def test_shuffle_same_multiset(self):
        a = to_insertion_stream(k3(), "shuffled", seed=1)
        b = to_insertion_stream(k3(), "shuffled", seed=2)
        assert sorted(e.pair() for e in a) == sorted(e.pair() for e in b)

    def test_shuffle_deterministic_in_seed(self):
        a = to_insertion_stream(k3(), "shuffled", seed=5)
        b = to_insertion_stream(k3(), "shuffled", seed=5)
        assert a == b

    def test_shuffle_uniform_over_orders(self):
        # 6000 draws over the 6 orders of K_3's edges; chi-squared sanity
        counts = collections.Counter()
        for seed in range(6000):
            s = to_insertion_stream(k3(), "shuffled", seed=seed)
            counts[tuple(e.pair() for e in s)] += 1
        assert len(counts) == 6
        _, pvalue = stats.chisquare(list(counts.values()))
        assert pvalue > 1e-4

    def test_rejects_duplicate_insertions(self):
        with pytest.raises(StreamValidationError):
            Stream(3, "ins", [StreamEvent(0, 1, 1), StreamEvent(1, 0, 1)])

    def test_rejects_deletions(self):
        with pytest.raises(StreamValidationError):
            Stream(3, "ins", [StreamEvent(0, 1, -1)])


class TestDynamicStreams:
    def test_no_churn_is_insertion_shaped(self):
        s = to_dynamic_stream(k3(), extra_pairs=0, cycles=1, seed=0)
        assert s.model == "dyn"
        assert len(s) == 3
        assert all(e.delta == 1 for e in s)
        assert s.final_graph() == k3()

    def test_churn_length_and_final_graph(self):
        # needs non-edges: K_3 on n=3 has none, so use K_3 inside n=6
        g = Graph(6, [(0, 1), (0, 2), (1, 2)])
        s = to_dynamic_stream(g, extra_pairs=2, cycles=1, seed=3)
        assert len(s) == 3 + 2 * 2
        assert s.final_graph() == g

    def test_cycles_multiply_events(self):
        g = Graph(6, [(0, 1)])
        s = to_dynamic_stream(g, extra_pairs=3, cycles=2, seed=4)
        assert len(s) == 1 + 3 * 2 * 2
        assert s.final_graph() == g

    def test_replay_never_negative(self):
        g = Graph(10, [(0, 1), (2, 3), (4, 5)])
        s = to_dynamic_stream(g, extra_pairs=10, cycles=3, seed=9)
        m = DynamicMultigraph(10)
        for ev in s:  # DynamicMultigraph.apply raises on any negative prefix
            m.apply(ev.u, ev.v, ev.delta)
        assert finalize_multigraph(m) == g

    def test_too_much_churn_rejected(self):
        with pytest.raises(ArgumentError):
            to_dynamic_stream(k3(), extra_pairs=1, cycles=1, seed=0)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_final_graph_invariant(self, seed):
        g = Graph(8, [(0, 1), (1, 2), (3, 4), (5, 7)])
        s = to_dynamic_stream(g, extra_pairs=5, cycles=2, seed=seed)
        assert s.final_graph() == g


class TestStreamSource:
    def test_pass_limit(self):
        s = to_insertion_stream(k3())
        src = StreamSource(s, max_passes=2)
        list(src.open())
        list(src.open())
        with pytest.raises(PassLimitError):
            src.open()

    def test_unlimited(self):
        src = StreamSource(to_insertion_stream(k3()))
        for _ in range(5):
            assert len(list(src.open())) == 3


class TestSerialization:
    def test_round_trip(self, tmp_path):
        g = Graph(6, [(0, 1), (0, 2), (1, 2)])
        s = to_dynamic_stream(g, extra_pairs=2, cycles=2, seed=7)
        path = tmp_path / "s.stream"
        write_stream(s, str(path))
        again = read_stream(str(path))
        assert again == s
        path2 = tmp_path / "s2.stream"
        write_stream(again, str(path2))
        assert path.read_bytes() == path2.read_bytes()

    def test_accepts_either_endpoint_order(self, tmp_path):
        path = tmp_path / "s.stream"
        path.write_text("#stream v1 n=3 model=ins\n1 0 +1\n")
        s = read_stream(str(path))
        assert s.events[0].pair() == (0, 1)

    def test_self_loop_is_parse_error(self, tmp_path):
        path = tmp_path / "bad.stream"
        path.write_text("#stream v1 n=3 model=ins\n0 0 +1\n")
        with pytest.raises(FormatError) as err:
            read_stream(str(path))
        assert "line 2" in str(err.value)

    def test_deleting_uninserted_is_validation_error(self, tmp_path):
        path = tmp_path / "bad.stream"
        path.write_text("#stream v1 n=3 model=dyn\n0 1 -1\n")
        with pytest.raises(StreamValidationError):
            read_stream(str(path))

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.stream"
        path.write_text("#stream v2 n=3 model=ins\n")
        with pytest.raises(FormatError):
            read_stream(str(path))

    def test_bad_delta(self, tmp_path):
        path = tmp_path / "bad.stream"
        path.write_text("#stream v1 n=3 model=dyn\n0 1 +2\n")
        with pytest.raises(FormatError):
            read_stream(str(path))
