"""Experiment harness: graph specs, Monte Carlo trials, result emission.

One master seed per invocation; trial i uses the child generator at path
(master, tag, i), so any single trial can be reproduced without replaying
the rest. Results serialize to canonical JSON (sorted keys) and to CSV with
one row per trial; both carry the identical per-trial records.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .algorithms import offline_iterative_coloring, run_dynamic, run_multipass, run_random_order
from .errors import ArgumentError
from .exact import chromatic_number
from .graph import Graph, induced_subgraph
from .seeds import rng_for
from .streams import StreamSource, to_dynamic_stream, to_insertion_stream


# ---------------------------------------------------------------------------
# graph specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphSpec:
    """Seeded family of test graphs, parsed from ``kind:key=val,...``.

    Kinds: ``gnm`` (uniform n-vertex m-edge), ``planted`` (a clique on
    ``clique`` random vertices, everything else isolated, so chi is known
    exactly), ``bipartite`` (m uniform left-right edges), ``empty``.
    """

    kind: str
    n: int
    m: int = 0
    clique: int = 0
    left: int = 0

    @staticmethod
    def parse(text: str) -> "GraphSpec":
        if ":" not in text:
            raise ArgumentError(f"graph spec {text!r} must look like kind:n=...,m=...")
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        fields: dict[str, int] = {}
        for item in rest.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise ArgumentError(f"bad graph-spec field {item!r}")
            key, val = item.split("=", 1)
            try:
                fields[key.strip()] = int(val)
            except ValueError:
                raise ArgumentError(f"graph-spec field {item!r} is not an integer")
        return GraphSpec.make(kind, **fields)

    @staticmethod
    def make(kind: str, **fields: int) -> "GraphSpec":
        n = fields.get("n", 0)
        if n < 0:
            raise ArgumentError("n must be >= 0")
        if kind == "gnm":
            spec = GraphSpec(kind="gnm", n=n, m=fields.get("m", 0))
        elif kind == "planted":
            spec = GraphSpec(kind="planted", n=n, clique=fields.get("clique", 0))
            if spec.clique > n:
                raise ArgumentError("clique size exceeds n")
        elif kind == "bipartite":
            left = fields.get("left", n // 2)
            if not 0 < left < n:
                raise ArgumentError("bipartite spec needs 0 < left < n")
            spec = GraphSpec(kind="bipartite", n=n, m=fields.get("m", 0), left=left)
            if spec.m > left * (n - left):
                raise ArgumentError("m exceeds the bipartite pair count")
        elif kind == "empty":
            spec = GraphSpec(kind="empty", n=n)
        else:
            raise ArgumentError(f"unknown graph-spec kind {kind!r}")
        if spec.kind == "gnm" and spec.m > n * (n - 1) // 2:
            raise ArgumentError("m exceeds the pair count")
        return spec

    def describe(self) -> str:
        if self.kind == "gnm":
            return f"gnm:n={self.n},m={self.m}"
        if self.kind == "planted":
            return f"planted:n={self.n},clique={self.clique}"
        if self.kind == "bipartite":
            return f"bipartite:n={self.n},m={self.m},left={self.left}"
        return f"empty:n={self.n}"

    @property
    def known_chi(self) -> int | None:
        """Exact chromatic number when the family pins it, else None."""
        if self.kind == "empty":
            return 1 if self.n else 0
        if self.kind == "planted":
            return max(1, self.clique)
        if self.kind == "bipartite":
            return 2 if self.m else 1
        return None

    def build(self, rng: np.random.Generator) -> Graph:
        if self.kind == "empty":
            return Graph(self.n)
        if self.kind == "planted":
            verts = rng.choice(self.n, size=self.clique, replace=False)
            vs = sorted(int(v) for v in verts)
            edges = [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]
            return Graph(self.n, edges)
        if self.kind == "bipartite":
            right = self.n - self.left
            picks = rng.choice(self.left * right, size=self.m, replace=False)
            edges = [
                (int(idx) // right, self.left + int(idx) % right) for idx in picks
            ]
            return Graph(self.n, edges)
        # gnm
        iu, iv = np.triu_indices(self.n, k=1)
        picks = rng.choice(len(iu), size=self.m, replace=False)
        edges = [(int(iu[i]), int(iv[i])) for i in picks]
        return Graph(self.n, edges)


def wilson_interval(successes: int, trials: int, z: float = 1.959964) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    params: dict
    seed: int | None
    trials: int
    records: tuple[dict, ...]
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "records": list(self.records),
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        keys = sorted({k for rec in self.records for k in rec})
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(keys)
        for rec in self.records:
            writer.writerow([_csv_cell(rec.get(k)) for k in keys])
        return out.getvalue()


def _csv_cell(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return value


def write_result(result: ExperimentResult, path: str, fmt: str = "json") -> None:
    if fmt not in ("json", "csv"):
        raise ArgumentError(f"unknown format {fmt!r}")
    text = result.to_json() if fmt == "json" else result.to_csv()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def experiment_edge_shrinkage(
    spec: GraphSpec,
    t: int,
    trials: int,
    seed: int | None = None,
    budget_multiplier: float = 1.0,
) -> ExperimentResult:
    """Measure per-round |M_{i+1}|/|M_i| against the n^(-1/t) shrinkage bound.

    Rounds are colored with DSATUR: the shrinkage guarantee quantifies over
    every proper coloring of the sampled subgraph, so any proper choice is a
    valid (indeed adversarial-leaning) probe, and it keeps dense inputs that
    the exact solver could not color tractable.
    """
    bound = spec.n ** (-1.0 / t) if spec.n > 1 else 0.0
    records = []
    violations = 0
    iterations = 0
    max_ratio = 0.0
    for trial in range(trials):
        g = spec.build(rng_for(seed, 100, trial))
        run = offline_iterative_coloring(
            g,
            t,
            seed=_spawn(seed, 101, trial),
            colorer="dsatur",
            budget_multiplier=budget_multiplier,
        )
        ratios = []
        for i in range(t):
            prev, nxt = run.m_sizes[i], run.m_sizes[i + 1]
            ratios.append(nxt / prev if prev else 0.0)
        trial_viol = sum(1 for r in ratios if r > bound)
        violations += trial_viol
        iterations += len(ratios)
        max_ratio = max(max_ratio, max(ratios) if ratios else 0.0)
        records.append(
            {
                "trial": trial,
                "m_sizes": list(run.m_sizes),
                "ratios": [round(r, 6) for r in ratios],
                "max_ratio": round(max(ratios) if ratios else 0.0, 6),
                "violations": trial_viol,
            }
        )
    summary = {
        "bound": bound,
        "iterations": iterations,
        "violation_count": violations,
        "violation_fraction": (violations / iterations) if iterations else 0.0,
        "max_ratio": max_ratio,
    }
    return ExperimentResult(
        name="edge-shrinkage",
        params={"graph": spec.describe(), "t": t, "budget_multiplier": budget_multiplier},
        seed=seed,
        trials=trials,
        records=tuple(records),
        summary=summary if trials else {},
    )


def experiment_vertex_sampling(
    spec: GraphSpec, p: float, trials: int, seed: int | None = None
) -> ExperimentResult:
    """Estimate Pr(chi(H) < (p / 2 ln n) * chi(G) - 1) for vertex-sampled H."""
    if not 0 < p < 1:
        raise ArgumentError("sampling probability p must be in (0, 1)")
    if spec.known_chi is None:
        raise ArgumentError(f"spec {spec.describe()} does not expose a known chi")
    if spec.n < 2:
        raise ArgumentError("need n >= 2")
    chi_g = spec.known_chi
    threshold = (p / (2 * math.log(spec.n))) * chi_g - 1
    records = []
    hits = 0
    for trial in range(trials):
        g = spec.build(rng_for(seed, 200, trial))
        rng = rng_for(seed, 201, trial)
        mask = rng.random(spec.n) < p
        verts = [v for v in range(spec.n) if mask[v]]
        h, _ = induced_subgraph(g, verts)
        chi_h = chromatic_number(h)
        indicator = chi_h < threshold
        hits += int(indicator)
        records.append(
            {
                "trial": trial,
                "sampled_vertices": len(verts),
                "chi_subgraph": chi_h,
                "below_threshold": int(indicator),
            }
        )
    lo, hi = wilson_interval(hits, trials)
    summary = {
        "chi_full": chi_g,
        "threshold": threshold,
        "empirical_probability": hits / trials if trials else 0.0,
        "wilson_low": lo,
        "wilson_high": hi,
    }
    return ExperimentResult(
        name="vertex-sampling",
        params={"graph": spec.describe(), "p": p},
        seed=seed,
        trials=trials,
        records=tuple(records),
        summary=summary if trials else {},
    )


def experiment_distinguisher(
    algorithm: str,
    small_spec: GraphSpec,
    large_spec: GraphSpec,
    q: int,
    t: int,
    trials: int,
    seed: int | None = None,
    extra_pairs: int = 0,
    cycles: int = 1,
) -> ExperimentResult:
    """Success rates of a runner on a (chi <= q, chi large) instance pair."""
    if algorithm not in ("random-order", "multipass", "dynamic"):
        raise ArgumentError(f"unknown algorithm {algorithm!r}")
    records = []
    small_ok = 0
    large_ok = 0
    for trial in range(trials):
        small_g = small_spec.build(rng_for(seed, 300, trial))
        large_g = large_spec.build(rng_for(seed, 301, trial))
        verdicts = {}
        for side, g in (("small", small_g), ("large", large_g)):
            tag = 302 if side == "small" else 303
            if algorithm == "random-order":
                stream = to_insertion_stream(g, "shuffled", seed=_spawn(seed, tag, trial))
                verdict = run_random_order(stream, q, t)
            elif algorithm == "multipass":
                stream = to_insertion_stream(g, "as-given")
                source = StreamSource(stream, max_passes=t)
                verdict = run_multipass(source, q, t, seed=_spawn(seed, tag, trial))
            else:
                stream = to_dynamic_stream(
                    g, extra_pairs=extra_pairs, cycles=cycles, seed=_spawn(seed, tag, trial)
                )
                verdict = run_dynamic(stream, q, t, seed=_spawn(seed, tag + 2, trial))
            verdicts[side] = verdict.label
        small_hit = verdicts["small"] == "small"
        large_hit = verdicts["large"] == "large"
        small_ok += int(small_hit)
        large_ok += int(large_hit)
        records.append(
            {
                "trial": trial,
                "small_verdict": verdicts["small"],
                "large_verdict": verdicts["large"],
                "small_correct": int(small_hit),
                "large_correct": int(large_hit),
            }
        )
    summary = {}
    if trials:
        slo, shi = wilson_interval(small_ok, trials)
        llo, lhi = wilson_interval(large_ok, trials)
        summary = {
            "small_success_rate": small_ok / trials,
            "small_wilson": [slo, shi],
            "large_success_rate": large_ok / trials,
            "large_wilson": [llo, lhi],
        }
    return ExperimentResult(
        name="distinguisher",
        params={
            "algorithm": algorithm,
            "small": small_spec.describe(),
            "large": large_spec.describe(),
            "q": q,
            "t": t,
            "extra_pairs": extra_pairs,
            "cycles": cycles,
        },
        seed=seed,
        trials=trials,
        records=tuple(records),
        summary=summary,
    )


def _spawn(seed: int | None, *path: int) -> int | None:
    """Derive a reproducible child integer seed for nested consumers."""
    if seed is None:
        return None
    ss = np.random.SeedSequence([int(seed)] + [int(p) for p in path])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
