"""Streaming coloring algorithms: iterative sparsification and sampling.

All three runners consume streams through one-way iterators and answer the
q vs large distinguishing problem with a one-sided "large": whenever they say
"large" they hold a stored subgraph of the input whose chromatic number
exceeds q. Per-round chromatic numbers are computed with the exact solver
capped at q, which never changes a verdict but avoids searching above the
cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError
from .exact import color_with_cap, color_exactly, dsatur_coloring
from .graph import Coloring, Graph, monochromatic_edges, product_coloring
from .seeds import rng_for
from .streams import INSERTION, Stream, StreamSource


def default_budget(n: int, t: int, multiplier: float = 1.0) -> int:
    """Per-round edge budget ceil(n^(1+1/t) * ln n) with a tuning multiplier."""
    if n <= 1:
        return 1
    return max(1, math.ceil(n ** (1 + 1 / t) * math.log(n) * multiplier))


def uniform_coloring(n: int) -> Coloring:
    return Coloring.from_array(np.zeros(n, dtype=np.int64))


@dataclass(frozen=True)
class Evidence:
    """What certifies a 'large' verdict: a stored subgraph with chi > q."""

    kind: str  # "round" | "trial" | "final"
    index: int
    subgraph: Graph


@dataclass(frozen=True)
class Verdict:
    label: str  # "small" | "large"
    coloring: Coloring | None = None
    evidence: Evidence | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def is_large(self) -> bool:
        return self.label == "large"


@dataclass(frozen=True)
class OfflineColoringRun:
    """Output of the offline iterative-sparsification coloring.

    ``m_sizes`` holds |M_1| .. |M_{t+1}|: the monochromatic-edge counts
    before each round and after the last. ``coloring`` is None only when a
    chi cap was supplied and some sampled round exceeded it.
    """

    coloring: Coloring | None
    m_sizes: tuple[int, ...]
    round_colors: tuple[int, ...]
    budget: int
    cap_exceeded_round: int | None = None


def offline_iterative_coloring(
    g: Graph,
    t: int,
    budget_fn=None,
    seed: int | None = None,
    colorer: str = "exact",
    chi_cap: int | None = None,
    budget_multiplier: float = 1.0,
) -> OfflineColoringRun:
    """t rounds of: sample a budget of monochromatic edges, color, refine.

    Each round samples without replacement from the currently monochromatic
    edges (all of them when they fit the budget), colors the sample with the
    exact solver (or DSATUR when ``colorer="dsatur"``; any proper coloring
    keeps the shrinkage guarantee), and intersects. Returns the product
    coloring, whose monochromatic edges in `g` are exactly M_{t+1}.
    """
    if t < 2:
        raise ArgumentError("iteration count t must be >= 2")
    if colorer not in ("exact", "dsatur"):
        raise ArgumentError(f"unknown colorer {colorer!r}")
    n = g.n
    budget = budget_fn(n, t) if budget_fn else default_budget(n, t, budget_multiplier)
    rng = rng_for(seed, 41)
    current = g.edge_array()
    m_sizes = [current.shape[0]]
    round_colors: list[int] = []
    coloring = uniform_coloring(n)
    for i in range(1, t + 1):
        if current.shape[0] <= budget:
            sample = current
        else:
            idx = rng.choice(current.shape[0], size=budget, replace=False)
            sample = current[np.sort(idx)]
        h = Graph(n, map(tuple, sample))
        if chi_cap is not None:
            ci = color_with_cap(h, chi_cap)
            if ci is None:
                return OfflineColoringRun(
                    coloring=None,
                    m_sizes=tuple(m_sizes),
                    round_colors=tuple(round_colors),
                    budget=budget,
                    cap_exceeded_round=i,
                )
        elif colorer == "exact":
            ci = color_exactly(h)
        else:
            ci = dsatur_coloring(h)
        round_colors.append(max(ci.num_colors, 1))
        coloring = product_coloring(coloring, ci)
        current = monochromatic_edges(current, ci)
        m_sizes.append(current.shape[0])
    return OfflineColoringRun(
        coloring=coloring,
        m_sizes=tuple(m_sizes),
        round_colors=tuple(round_colors),
        budget=budget,
    )


def run_random_order(
    stream: Stream, q: int, t: int, budget_multiplier: float = 1.0
) -> Verdict:
    """Single pass over an insertion stream with t fill-and-color rounds.

    Round i stores edges monochromatic under the accumulated coloring until
    the budget fills (or the stream ends), then colors them; the verdict is
    "large" the moment a stored round needs more than q colors, with the
    stored subgraph as evidence. Deterministic given the stream.
    """
    if stream.model != INSERTION:
        raise ArgumentError("run_random_order needs an insertion-only stream")
    if q < 2 or t < 2:
        raise ArgumentError("need q >= 2 and t >= 2")
    n = stream.n
    budget = default_budget(n, t, budget_multiplier)
    coloring = uniform_coloring(n)
    events = iter(stream)
    events_read = 0
    peak_edges = 0
    rounds_used = 0
    exhausted = False
    for i in range(1, t + 1):
        stored: list[tuple[int, int]] = []
        while len(stored) < budget:
            ev = next(events, None)
            if ev is None:
                exhausted = True
                break
            events_read += 1
            u, v = ev.pair()
            if coloring.colors[u] == coloring.colors[v]:
                stored.append((u, v))
        rounds_used = i
        peak_edges = max(peak_edges, len(stored))
        h = Graph(n, stored)
        ci = color_with_cap(h, q)
        if ci is None:
            return Verdict(
                label="large",
                evidence=Evidence("round", i, h),
                metadata=_ro_meta(budget, rounds_used, events_read, peak_edges, exhausted),
            )
        coloring = product_coloring(coloring, ci)
        if exhausted:
            break
    return Verdict(
        label="small",
        coloring=coloring,
        metadata=_ro_meta(budget, rounds_used, events_read, peak_edges, exhausted),
    )


def _ro_meta(budget, rounds, events, peak, exhausted) -> dict:
    return {
        "budget": budget,
        "rounds_used": rounds,
        "events_read": events,
        "peak_stored_edges": peak,
        "stream_exhausted": exhausted,
    }


def run_multipass(
    source: Stream | StreamSource,
    q: int,
    t: int,
    seed: int | None = None,
    budget_multiplier: float = 1.0,
) -> Verdict:
    """t passes over an adversarial-order insertion stream.

    Pass i reservoir-samples the budget uniformly from the edges that are
    monochromatic under the accumulated coloring; verdict semantics match
    `run_random_order`. Stops early once a pass sees no more monochromatic
    edges than the budget (the remaining passes could not change anything).
    """
    if isinstance(source, Stream):
        source = StreamSource(source, max_passes=t)
    if source.stream.model != INSERTION:
        raise ArgumentError("run_multipass needs an insertion-only stream")
    if q < 2 or t < 2:
        raise ArgumentError("need q >= 2 and t >= 2")
    n = source.stream.n
    budget = default_budget(n, t, budget_multiplier)
    rng = rng_for(seed, 42)
    coloring = uniform_coloring(n)
    passes_used = 0
    peak_edges = 0
    for i in range(1, t + 1):
        events = source.open()  # PassLimitError propagates to the caller
        passes_used += 1
        reservoir: list[tuple[int, int]] = []
        mono_seen = 0
        for ev in events:
            u, v = ev.pair()
            if coloring.colors[u] != coloring.colors[v]:
                continue
            mono_seen += 1
            if len(reservoir) < budget:
                reservoir.append((u, v))
            else:
                j = int(rng.integers(0, mono_seen))
                if j < budget:
                    reservoir[j] = (u, v)
        peak_edges = max(peak_edges, len(reservoir))
        if mono_seen == 0:
            break
        h = Graph(n, reservoir)
        ci = color_with_cap(h, q)
        if ci is None:
            return Verdict(
                label="large",
                evidence=Evidence("round", i, h),
                metadata=_mp_meta(budget, passes_used, peak_edges),
            )
        coloring = product_coloring(coloring, ci)
        if mono_seen <= budget:
            break  # the pass stored all of M_i, so M_{i+1} is empty
    return Verdict(
        label="small",
        coloring=coloring,
        metadata=_mp_meta(budget, passes_used, peak_edges),
    )


def _mp_meta(budget, passes, peak) -> dict:
    return {"budget": budget, "passes_used": passes, "peak_stored_edges": peak}


def run_dynamic(stream: Stream, q: int, t: int, seed: int | None = None) -> Verdict:
    """Dynamic-stream distinguisher via random vertex-induced subgraphs.

    Samples 2*log2(n) trial vertex sets up front with per-vertex probability
    p = 4 ln(n) / t, maintains one signed counter per sampled pair (plain
    integers; desk-scale multiplicities never approach overflow, so no
    modular trick is needed), and at stream end rebuilds each induced
    subgraph from the positive counters; "large" iff some trial subgraph
    needs more than q colors. Below the t >= 4 log2(n) regime the runner
    stores the whole multigraph instead (flagged in the metadata).
    """
    if q < 2 or t < 1:
        raise ArgumentError("need q >= 2 and t >= 1")
    n = stream.n
    if n <= 1:
        return Verdict(label="small", metadata={"mode": "degenerate"})
    regime_floor = 4 * math.log2(n)
    if t < regime_floor:
        final = stream.final_graph()
        ci = color_with_cap(final, q)
        meta = {
            "mode": "full-graph-fallback",
            "regime_floor": regime_floor,
            "stored_pairs": final.num_edges,
        }
        if ci is None:
            return Verdict(label="large", evidence=Evidence("final", 0, final), metadata=meta)
        return Verdict(label="small", metadata=meta)

    p = 4.0 * math.log(n) / t
    k_trials = math.ceil(2 * math.log2(n))
    rng = rng_for(seed, 43)
    member = rng.random((k_trials, n)) < p
    counters: list[dict[tuple[int, int], int]] = [dict() for _ in range(k_trials)]
    for ev in stream:
        u, v = ev.pair()
        for tr in range(k_trials):
            row = member[tr]
            if row[u] and row[v]:
                d = counters[tr]
                d[(u, v)] = d.get((u, v), 0) + ev.delta
    total_counters = sum(len(d) for d in counters)
    meta = {
        "mode": "sampled",
        "p": p,
        "k_trials": k_trials,
        "sampled_sizes": [int(member[tr].sum()) for tr in range(k_trials)],
        "counters": total_counters,
    }
    for tr in range(k_trials):
        edges = [e for e, c in counters[tr].items() if c > 0]
        h = Graph(n, edges)
        ci = color_with_cap(h, q)
        if ci is None:
            return Verdict(label="large", evidence=Evidence("trial", tr, h), metadata=meta)
    return Verdict(label="small", metadata=meta)
