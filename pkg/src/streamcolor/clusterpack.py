"""Cluster packing graphs: constructions, verification, and serialization.

An (r, t, k)-cluster packing graph is a k-colorable graph whose edges
partition into t induced clusters, each a vertex-disjoint union of r
k-cliques. Three constructions are provided:

* geometric lines over layered groups (`construct_lines_basic`, cluster
  size r = k, and `construct_lines_grouped` for free r),
* a dense layered construction driven by a low-intersection set family
  (`construct_dense`), whose clusters have near-maximal size, and
* a product lift (`lift_to_k_colorable`) that restores k-colorability for
  arbitrary inputs at the cost of k times more vertices.

Vertex numbering is frozen as layer-major, then group-major, then position,
so serialized graphs are reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArgumentError,
    FormatError,
    GenerationError,
    ResourceLimitError,
    UnsupportedInputError,
)
from .exact import find_k_coloring
from .graph import Coloring, Graph, is_proper_coloring
from .seeds import rng_for

MAX_VERTICES = 1 << 40
MAX_CLIQUES = 5_000_000


# ---------------------------------------------------------------------------
# set families with bounded pairwise intersection
# ---------------------------------------------------------------------------

# The seven lines of the Fano plane: a deterministic, seed-independent family
# over [7] with w = 3 and every pairwise intersection exactly 1.
FANO_LINES: tuple[tuple[int, ...], ...] = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)


@dataclass(frozen=True)
class SetFamily:
    """Subsets of [d], all of size w, pairwise intersecting in <= theta."""

    d: int
    w: int
    theta: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for s in self.sets:
            if len(set(s)) != self.w:
                raise ArgumentError(f"set {s} does not have size {self.w}")
            if any(e < 0 or e >= self.d for e in s):
                raise ArgumentError(f"set {s} not contained in [0, {self.d})")
        for i in range(len(self.sets)):
            for j in range(i + 1, len(self.sets)):
                inter = set(self.sets[i]) & set(self.sets[j])
                if len(inter) > self.theta:
                    raise ArgumentError(
                        f"sets {i} and {j} intersect in {len(inter)} > {self.theta}"
                    )

    def __len__(self) -> int:
        return len(self.sets)


def fano_family(count: int = 7) -> SetFamily:
    """First `count` Fano-plane lines; deterministic fixture (d=7, w=3, theta=1)."""
    if not 1 <= count <= 7:
        raise ArgumentError("Fano family supports 1..7 sets")
    return SetFamily(d=7, w=3, theta=1, sets=FANO_LINES[:count])


def gen_intersection_family(
    d: int,
    w: int,
    theta: int,
    count: int,
    seed: int | None = None,
    mode: str = "random",
    retry_budget: int | None = None,
) -> SetFamily:
    """Sample `count` w-subsets of [d] with pairwise intersections <= theta.

    Candidates are drawn uniformly among w-subsets and rejected against the
    accepted prefix; generation fails once the retry budget is exhausted.
    `mode="fano"` returns the deterministic Fano fixture instead (requires
    d=7, w=3, theta >= 1, count <= 7).
    """
    if not (1 <= w <= d):
        raise ArgumentError(f"need 1 <= w <= d, got w={w}, d={d}")
    if not (0 <= theta < w):
        raise ArgumentError(f"need 0 <= theta < w, got theta={theta}")
    if count < 1:
        raise ArgumentError("count must be >= 1")
    if mode == "fano":
        if (d, w) != (7, 3) or theta < 1:
            raise ArgumentError("fano mode requires d=7, w=3, theta >= 1")
        return fano_family(count)
    if mode != "random":
        raise ArgumentError(f"unknown mode {mode!r}")
    rng = rng_for(seed, 0)
    budget = retry_budget if retry_budget is not None else max(1000, 200 * count)
    accepted: list[tuple[int, ...]] = []
    accepted_sets: list[set[int]] = []
    last_conflict: tuple[tuple[int, ...], int] | None = None
    attempts = 0
    while len(accepted) < count:
        if attempts >= budget:
            detail = ""
            if last_conflict is not None:
                cand, idx = last_conflict
                detail = f"; last candidate {cand} violated the bound against set {idx}"
            raise GenerationError(
                f"could not extend family beyond {len(accepted)} sets in "
                f"{budget} attempts (d={d}, w={w}, theta={theta}){detail}"
            )
        attempts += 1
        cand = tuple(sorted(int(x) for x in rng.choice(d, size=w, replace=False)))
        cand_set = set(cand)
        ok = True
        for idx, s in enumerate(accepted_sets):
            if len(cand_set & s) > theta:
                last_conflict = (cand, idx)
                ok = False
                break
        if ok:
            accepted.append(cand)
            accepted_sets.append(cand_set)
    return SetFamily(d=d, w=w, theta=theta, sets=tuple(accepted))


# ---------------------------------------------------------------------------
# layouts (lazy cluster accessors shared with the hard-instance generators)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineLayout:
    """Layered geometric-lines layout on n vertices.

    Vertices split into k layers of n/k; each layer into groups of size r.
    Cluster (b, q) consists of the r cliques on lines that start in group b
    of layer 0 and advance q groups per layer; two distinct lines meet in at
    most one vertex, which is what makes every cluster induced.
    """

    n: int
    k: int
    r: int

    @property
    def layer_size(self) -> int:
        return self.n // self.k

    @property
    def groups_per_layer(self) -> int:
        return self.layer_size // self.r

    @property
    def b_range(self) -> int:
        return self.n // (2 * self.k * self.r)

    @property
    def q_range(self) -> int:
        return self.n // (2 * self.k * self.k * self.r)

    @property
    def t_max(self) -> int:
        return self.b_range * self.q_range

    def validate(self) -> None:
        if self.k < 2:
            raise ArgumentError("clique size k must be >= 2")
        if self.r < 1:
            raise ArgumentError("cluster size r must be >= 1")
        if self.n % (self.k * self.r) != 0:
            raise ArgumentError(f"k*r = {self.k * self.r} must divide n = {self.n}")
        if self.b_range < 1 or self.q_range < 1:
            raise ArgumentError(
                f"line ranges empty: floor(n/2kr) = {self.b_range}, "
                f"floor(n/2k^2r) = {self.q_range}"
            )
        # lines must stay inside the group range
        top = (self.b_range - 1) + (self.k - 1) * (self.q_range - 1)
        assert top < self.groups_per_layer

    def clique(self, index: int, s: int) -> tuple[int, ...]:
        """The s-th clique (ordered by layer) of cluster `index`."""
        if not 0 <= index < self.t_max:
            raise ArgumentError(f"cluster index {index} out of range [0, {self.t_max})")
        if not 0 <= s < self.r:
            raise ArgumentError(f"clique index {s} out of range [0, {self.r})")
        b, q = divmod(index, self.q_range)
        ls = self.layer_size
        return tuple(i * ls + (b + i * q) * self.r + s for i in range(self.k))

    def cluster_cliques(self, index: int) -> list[tuple[int, ...]]:
        """The r cliques (ordered k-tuples, one vertex per layer) of a cluster."""
        return [self.clique(index, s) for s in range(self.r)]

    def layer_of(self, v: int) -> int:
        return v // self.layer_size


@dataclass(frozen=True)
class DenseParams:
    """Parameters for the dense layered construction.

    Layers are [p]^d; for a set S the weight w_S(x) = sum of S-coordinates
    splits each layer into groups of width |S|, colored cyclically
    (c_1, white, c_2, white, ..., c_k, white). Inducedness needs the strict
    bound theta < w/2 and lines need p >= 2k + 1.
    """

    k: int
    d: int
    p: int
    family: SetFamily

    def __post_init__(self):
        if self.k < 2:
            raise ArgumentError("clique size k must be >= 2")
        if self.family.d != self.d:
            raise ArgumentError(
                f"family universe {self.family.d} does not match d={self.d}"
            )
        if self.family.w < 1:
            raise ArgumentError("set size w must be >= 1")
        if not self.family.theta * 2 < self.family.w:
            raise ArgumentError(
                f"inducedness requires theta < w/2 strictly "
                f"(theta={self.family.theta}, w={self.family.w})"
            )
        if self.p < 2 * self.k + 1:
            raise ArgumentError(f"need p >= 2k+1 = {2 * self.k + 1}, got p={self.p}")

    @property
    def layer_size(self) -> int:
        return self.p**self.d

    @property
    def n(self) -> int:
        return self.k * self.layer_size


class DenseLayout:
    """Lazy cluster accessor for the dense construction."""

    def __init__(self, params: DenseParams):
        self.params = params
        if params.n > MAX_VERTICES:
            raise ResourceLimitError(f"n = {params.n} exceeds guard {MAX_VERTICES}")
        self._powers = [params.p ** (params.d - 1 - j) for j in range(params.d)]
        self._starts = self._line_start_weights()
        free = params.d - params.family.w
        self.cluster_size = len(self._starts) * params.p**free
        total = self.cluster_size * len(params.family)
        if total > MAX_CLIQUES:
            raise ResourceLimitError(
                f"construction would materialize {total} cliques (guard {MAX_CLIQUES})"
            )

    def _line_start_weights(self) -> list[tuple[int, ...]]:
        """S-coordinate tuples that are colored c_1 and leave room for the line."""
        p, k, w = self.params.p, self.params.k, self.params.family.w
        hi = p - 2 * k  # coordinates of a start must satisfy z_i + 2k <= p
        valid = []
        for z in itertools.product(range(1, hi + 1), repeat=w):
            group = sum(z) // w
            if (group - 1) % (2 * k) == 0:
                valid.append(z)
        return valid

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def t_max(self) -> int:
        return len(self.params.family)

    def layer_of(self, v: int) -> int:
        return v // self.params.layer_size

    def group_of(self, coords: tuple[int, ...], s: tuple[int, ...]) -> int:
        w = self.params.family.w
        return sum(coords[i] for i in s) // w

    def color_of_group(self, group: int) -> str:
        """Cyclic color tuple (c_1, white, c_2, white, ..., c_k, white)."""
        m = (group - 1) % (2 * self.params.k)
        return f"c{m // 2 + 1}" if m % 2 == 0 else "white"

    def vertex_id(self, layer: int, coords: tuple[int, ...]) -> int:
        idx = 0
        for j, x in enumerate(coords):
            idx += (x - 1) * self._powers[j]
        return layer * self.params.layer_size + idx

    def cluster_cliques(self, index: int) -> list[tuple[int, ...]]:
        params = self.params
        s = params.family.sets[index]
        w = params.family.w
        free_positions = [j for j in range(params.d) if j not in s]
        s_positions = list(s)
        cliques = []
        coords = [0] * params.d
        for z in self._starts:
            for pos, val in zip(s_positions, z):
                coords[pos] = val
            for f in itertools.product(range(1, params.p + 1), repeat=len(free_positions)):
                for pos, val in zip(free_positions, f):
                    coords[pos] = val
                clique = []
                for layer in range(params.k):
                    y = list(coords)
                    for pos in s_positions:
                        y[pos] += 2 * layer
                    clique.append(self.vertex_id(layer, tuple(y)))
                cliques.append(tuple(clique))
        return cliques


# ---------------------------------------------------------------------------
# the cluster packing graph type and its constructors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClusterPackingGraph:
    """Graph plus its explicit partition into t induced k-clusters of size r.

    ``clusters[i][j]`` is the ordered vertex tuple of the j-th k-clique of
    cluster i. ``layout`` names the construction ("basic", "grouped",
    "dense", "lifted"); all four place layer/copy a at vertex range
    ``[a*n/k, (a+1)*n/k)``, which is what `canonical_coloring` relies on.
    """

    graph: Graph
    k: int
    r: int
    t: int
    clusters: tuple[tuple[tuple[int, ...], ...], ...]
    layout: str | None = None

    def cluster_vertices(self, i: int) -> set[int]:
        out: set[int] = set()
        for clique in self.clusters[i]:
            out.update(clique)
        return out


def _cliques_to_edges(
    clusters: list[list[tuple[int, ...]]],
) -> tuple[set[tuple[int, int]], dict[tuple[int, int], int]]:
    """All implied edges plus edge -> owning cluster; raises on collision."""
    edges: set[tuple[int, int]] = set()
    owner: dict[tuple[int, int], int] = {}
    for ci, cluster in enumerate(clusters):
        for clique in cluster:
            for a in range(len(clique)):
                for b in range(a + 1, len(clique)):
                    u, v = clique[a], clique[b]
                    e = (u, v) if u < v else (v, u)
                    if e in edges:
                        raise GenerationError(
                            f"edge {e} implied twice (clusters {owner[e]} and {ci})"
                        )
                    edges.add(e)
                    owner[e] = ci
    return edges, owner


def _build_cpg(
    layout_obj, k: int, r: int, cluster_ids: range, layout_name: str
) -> ClusterPackingGraph:
    clusters = [layout_obj.cluster_cliques(i) for i in cluster_ids]
    edges, _ = _cliques_to_edges(clusters)
    graph = Graph(layout_obj.n, edges)
    return ClusterPackingGraph(
        graph=graph,
        k=k,
        r=r,
        t=len(clusters),
        clusters=tuple(tuple(c) for c in clusters),
        layout=layout_name,
    )


def construct_lines_basic(n: int, k: int) -> ClusterPackingGraph:
    """Cluster packing graph with r = k and t = floor(n/2k^2)*floor(n/2k^3)."""
    layout = LineLayout(n=n, k=k, r=k)
    layout.validate()
    return _build_cpg(layout, k, k, range(layout.t_max), "basic")


def construct_lines_grouped(n: int, r: int, k: int) -> ClusterPackingGraph:
    """Cluster packing graph with free r and t = floor(n/2kr)*floor(n/2k^2r)."""
    if r * k * r * k > n:
        raise ArgumentError(f"need r*k <= sqrt(n): r*k = {r * k}, n = {n}")
    layout = LineLayout(n=n, k=k, r=r)
    layout.validate()
    return _build_cpg(layout, k, r, range(layout.t_max), "grouped")


def construct_dense(params: DenseParams) -> ClusterPackingGraph:
    """Dense construction: one cluster per family set, on n = k*p^d vertices."""
    layout = DenseLayout(params)
    return _build_cpg(layout, params.k, layout.cluster_size, range(layout.t_max), "dense")


def lift_to_k_colorable(cpg: ClusterPackingGraph) -> ClusterPackingGraph:
    """k copies of the vertex set, cliques spread over cyclically-permuted copies.

    Output parameters: n' = n*k, r' = r*k, t' = t; the output is k-colorable
    by coloring each copy with one color.
    """
    n, k = cpg.graph.n, cpg.k
    if n * k > MAX_VERTICES:
        raise ResourceLimitError(f"lifted n = {n * k} exceeds guard {MAX_VERTICES}")
    new_clusters: list[list[tuple[int, ...]]] = []
    for cluster in cpg.clusters:
        lifted: list[tuple[int, ...]] = []
        for clique in cluster:
            if len(clique) != k:
                raise ArgumentError("every clique must have exactly k vertices")
            for ell in range(k):
                lifted.append(
                    tuple(a * n + clique[(a + ell) % k] for a in range(k))
                )
        new_clusters.append(lifted)
    edges, _ = _cliques_to_edges(new_clusters)
    graph = Graph(n * k, edges)
    return ClusterPackingGraph(
        graph=graph,
        k=k,
        r=cpg.r * k,
        t=cpg.t,
        clusters=tuple(tuple(c) for c in new_clusters),
        layout="lifted",
    )


def canonical_coloring(cpg: ClusterPackingGraph) -> Coloring:
    """The k-coloring by layer (or by copy, for lifted graphs)."""
    if cpg.layout not in ("basic", "grouped", "dense", "lifted"):
        raise UnsupportedInputError(
            f"layout metadata {cpg.layout!r} does not expose layers"
        )
    n, k = cpg.graph.n, cpg.k
    size = n // k
    return Coloring.from_array(np.arange(n, dtype=np.int64) // size)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            suffix = f" ({c.detail})" if c.detail else ""
            lines.append(f"{c.name}: {status}{suffix}")
        return "\n".join(lines)


EXACT_FALLBACK_LIMIT = 2000


def verify_cluster_packing(cpg: ClusterPackingGraph) -> VerificationReport:
    """Check the five defining properties; failures carry counterexamples.

    Checks: (1) the cliques' edges exactly partition the graph's edges,
    (2) each cluster is r vertex-disjoint k-cliques, (3) every cluster is
    induced, (4) pairwise cluster vertex intersections are <= r, and
    (5) the graph is k-colorable.
    """
    checks: list[CheckResult] = []
    g = cpg.graph

    # per-cluster edge sets (shared by checks 1 and 3)
    cluster_edges: list[set[tuple[int, int]]] = []
    for cluster in cpg.clusters:
        own: set[tuple[int, int]] = set()
        for clique in cluster:
            for a in range(len(clique)):
                for b in range(a + 1, len(clique)):
                    u, v = clique[a], clique[b]
                    own.add((u, v) if u < v else (v, u))
        cluster_edges.append(own)

    # (1) edge partition exactness
    partition_ok = True
    detail = ""
    implied: set[tuple[int, int]] = set()
    owner: dict[tuple[int, int], int] = {}
    for ci, own in enumerate(cluster_edges):
        collision = {e for e in own if e in implied}
        if collision and partition_ok:
            e = min(collision)
            partition_ok = False
            detail = f"edge {e} implied by clusters {owner[e]} and {ci}"
        implied.update(own)
        for e in own:
            owner.setdefault(e, ci)
    if partition_ok and implied != g.edges:
        partition_ok = False
        missing = g.edges - implied
        extra = implied - g.edges
        if missing:
            detail = f"graph edge {min(missing)} not covered by any cluster"
        else:
            detail = f"implied edge {min(extra)} absent from the graph"
    checks.append(CheckResult("edge-partition", partition_ok, detail))

    # (2) cluster structure: r vertex-disjoint k-cliques each
    structure_ok = True
    detail = ""
    if len(cpg.clusters) != cpg.t:
        structure_ok = False
        detail = f"expected t={cpg.t} clusters, found {len(cpg.clusters)}"
    else:
        for ci, cluster in enumerate(cpg.clusters):
            if len(cluster) != cpg.r:
                structure_ok = False
                detail = f"cluster {ci} has {len(cluster)} cliques, expected r={cpg.r}"
                break
            seen: set[int] = set()
            for clique in cluster:
                if len(set(clique)) != cpg.k:
                    structure_ok = False
                    detail = f"cluster {ci} clique {clique} is not {cpg.k} distinct vertices"
                    break
                overlap = seen.intersection(clique)
                if overlap:
                    structure_ok = False
                    detail = f"cluster {ci} reuses vertex {min(overlap)}"
                    break
                seen.update(clique)
            if not structure_ok:
                break
    checks.append(CheckResult("cluster-structure", structure_ok, detail))

    # vertex -> clusters membership (used by checks 3 and 4)
    membership: dict[int, list[int]] = {}
    for ci, cluster in enumerate(cpg.clusters):
        for clique in cluster:
            for v in clique:
                membership.setdefault(v, []).append(ci)

    # (3) inducedness: an edge with both endpoints inside a cluster's vertex
    # set must be one of that cluster's own edges
    induced_ok = True
    detail = ""
    for e in sorted(g.edges):
        mu = membership.get(e[0], ())
        mv = membership.get(e[1], ())
        common = set(mu) & set(mv)
        bad = [ci for ci in common if e not in cluster_edges[ci]]
        if bad:
            ci = min(bad)
            induced_ok = False
            detail = (
                f"edge {e} lies inside cluster {ci}'s vertex set "
                f"but is not one of its edges"
            )
            break
    checks.append(CheckResult("inducedness", induced_ok, detail))

    # (4) pairwise cluster vertex intersections <= r
    overlap_ok = True
    detail = ""
    pair_counts: dict[tuple[int, int], int] = {}
    for v, mem in membership.items():
        mem_sorted = sorted(set(mem))
        for a in range(len(mem_sorted)):
            for b in range(a + 1, len(mem_sorted)):
                key = (mem_sorted[a], mem_sorted[b])
                pair_counts[key] = pair_counts.get(key, 0) + 1
    for key in sorted(pair_counts):
        if pair_counts[key] > cpg.r:
            overlap_ok = False
            detail = (
                f"clusters {key[0]} and {key[1]} share {pair_counts[key]} "
                f"vertices > r = {cpg.r}"
            )
            break
    checks.append(CheckResult("cluster-overlap", overlap_ok, detail))

    # (5) k-colorability
    color_ok = True
    detail = ""
    if cpg.layout in ("basic", "grouped", "dense", "lifted"):
        coloring = canonical_coloring(cpg)
        if coloring.num_colors > cpg.k or not is_proper_coloring(g, coloring):
            color_ok = False
            detail = "canonical layer coloring is not a proper k-coloring"
    elif g.n <= EXACT_FALLBACK_LIMIT:
        if find_k_coloring(g, cpg.k) is None:
            color_ok = False
            detail = f"graph is not {cpg.k}-colorable (exact solver)"
    else:
        color_ok = False
        detail = "no layout metadata and graph too large for the exact fallback"
    checks.append(CheckResult("k-colorable", color_ok, detail))

    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

CPG_HEADER = "#cpg v1"
_LAYOUTS = ("basic", "grouped", "dense", "lifted")


def write_cpg(cpg: ClusterPackingGraph, path: str) -> None:
    """CPG text format: header, then one ``C <cluster> <clique> v...`` per clique."""
    layout = cpg.layout if cpg.layout in _LAYOUTS else "basic"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(
            f"{CPG_HEADER} n={cpg.graph.n} k={cpg.k} r={cpg.r} t={cpg.t} "
            f"layout={layout}\n"
        )
        for ci, cluster in enumerate(cpg.clusters):
            for ji, clique in enumerate(cluster):
                verts = " ".join(str(v) for v in clique)
                f.write(f"C {ci} {ji} {verts}\n")


def read_cpg(path: str) -> ClusterPackingGraph:
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines or not lines[0].startswith(CPG_HEADER):
        raise FormatError(f"missing '{CPG_HEADER}' header", line=1)
    header: dict[str, str] = {}
    for token in lines[0][len(CPG_HEADER) :].split():
        if "=" not in token:
            raise FormatError(f"bad header token {token!r}", line=1)
        key, val = token.split("=", 1)
        header[key] = val
    try:
        n = int(header["n"])
        k = int(header["k"])
        r = int(header["r"])
        t = int(header["t"])
        layout = header["layout"]
    except (KeyError, ValueError):
        raise FormatError("header must carry n=, k=, r=, t=, layout=", line=1)
    if layout not in _LAYOUTS:
        raise FormatError(f"unknown layout {layout!r}", line=1)
    clusters: list[dict[int, tuple[int, ...]]] = [dict() for _ in range(t)]
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] != "C" or len(parts) != 3 + k:
            raise FormatError(f"expected 'C <cluster> <clique> v1..v{k}'", line=lineno)
        try:
            ci, ji = int(parts[1]), int(parts[2])
            verts = tuple(int(x) for x in parts[3:])
        except ValueError:
            raise FormatError("non-integer field", line=lineno)
        if not 0 <= ci < t:
            raise FormatError(f"cluster index {ci} out of range", line=lineno)
        if not 0 <= ji < r:
            raise FormatError(f"clique index {ji} out of range", line=lineno)
        if ji in clusters[ci]:
            raise FormatError(f"duplicate clique ({ci}, {ji})", line=lineno)
        if any(v < 0 or v >= n for v in verts):
            raise FormatError(f"vertex out of range in {verts}", line=lineno)
        clusters[ci][ji] = verts
    materialized: list[list[tuple[int, ...]]] = []
    for ci, cluster in enumerate(clusters):
        if len(cluster) != r:
            raise FormatError(f"cluster {ci} has {len(cluster)} cliques, expected {r}")
        materialized.append([cluster[j] for j in range(r)])
    try:
        edges, _ = _cliques_to_edges(materialized)
    except GenerationError as exc:
        raise FormatError(f"implied edges collide: {exc}")
    return ClusterPackingGraph(
        graph=Graph(n, edges),
        k=k,
        r=r,
        t=t,
        clusters=tuple(tuple(c) for c in materialized),
        layout=layout,
    )
