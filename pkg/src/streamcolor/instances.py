"""Hard-instance generators with hidden answer bits and checkable witnesses.

Three families are provided, each splitting a graph's edges among players
and hiding a bit that decides the chromatic number:

* `gen_two_player`: a cluster index is either "filled" (its cliques appear,
  joining into a k^2-clique with the cross edges) or not (the graph stays
  2k-colorable).
* `gen_recursive`: the p-player recursion; a smaller instance is embedded
  into one cluster of a host packing graph through clique joins, giving a
  k*p vs k^p chromatic gap certified constructively in both directions.
* `gen_simultaneous`: p = C(k,2) players each holding a relabeled random
  bipartite graph whose hidden special pairs either form a k-clique or are
  all absent (3-colorable case).

Every generator is a pure function of (parameters, seed); answer-bit
overrides exist so tests can exercise both branches deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArgumentError, FormatError, ResourceLimitError
from .clusterpack import CheckResult, ClusterPackingGraph, LineLayout, VerificationReport, construct_lines_basic
from .exact import find_k_coloring
from .graph import (
    Coloring,
    DynamicMultigraph,
    Graph,
    finalize_multigraph,
    induced_subgraph,
    is_proper_coloring,
)
from .seeds import rng_for

WITNESS_VERTEX_LIMIT = 50_000_000

Edge = tuple[int, int]


def join_cliques(
    edges_accumulator: list[Edge], clique_a, clique_b
) -> list[Edge]:
    """Append the complete biclique between two disjoint vertex sets."""
    a = set(clique_a)
    b = set(clique_b)
    if a & b:
        raise ArgumentError(f"cliques overlap on vertices {sorted(a & b)}")
    for u in sorted(a):
        for v in sorted(b):
            edges_accumulator.append((u, v) if u < v else (v, u))
    return edges_accumulator


@lru_cache(maxsize=8)
def _cached_basic_cpg(n: int, k: int) -> ClusterPackingGraph:
    return construct_lines_basic(n, k)


# ---------------------------------------------------------------------------
# two-player instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoPlayerInstance:
    n: int
    k: int
    seed: int | None
    ans_override: int | None
    host: ClusterPackingGraph
    i_star: int
    x: np.ndarray  # shape (t,), 0/1
    ans: int
    e1: tuple[Edge, ...]
    e2: tuple[Edge, ...]
    spec: tuple[int, ...]

    @property
    def t(self) -> int:
        return self.host.t

    def edge_parts(self) -> tuple[tuple[Edge, ...], ...]:
        return (self.e1, self.e2)

    def union_graph(self) -> Graph:
        return Graph(self.n, set(self.e1) | set(self.e2))


def gen_two_player(
    n: int, k: int, seed: int | None = None, ans_override: int | None = None
) -> TwoPlayerInstance:
    """Sample a two-player instance over the basic lines construction.

    Player 1 holds the cliques of every cluster whose bit is one; player 2
    holds the cross-clique join inside the hidden cluster. The answer bit is
    that cluster's bit: 1 means the special k^2 vertices form a clique,
    0 means the union graph is 2k-colorable.
    """
    if ans_override not in (None, 0, 1):
        raise ArgumentError("ans_override must be None, 0, or 1")
    host = _cached_basic_cpg(n, k)
    rng = rng_for(seed, 10)
    i_star = int(rng.integers(host.t))
    x = rng.integers(0, 2, size=host.t).astype(np.uint8)
    if ans_override is not None:
        x[i_star] = ans_override
    ans = int(x[i_star])

    e1: list[Edge] = []
    for i in range(host.t):
        if x[i]:
            for clique in host.clusters[i]:
                for a in range(len(clique)):
                    for b in range(a + 1, len(clique)):
                        u, v = clique[a], clique[b]
                        e1.append((u, v) if u < v else (v, u))
    e2: list[Edge] = []
    cliques = host.clusters[i_star]
    for a in range(len(cliques)):
        for b in range(a + 1, len(cliques)):
            join_cliques(e2, cliques[a], cliques[b])
    spec = tuple(sorted(v for clique in cliques for v in clique))
    return TwoPlayerInstance(
        n=n,
        k=k,
        seed=seed,
        ans_override=ans_override,
        host=host,
        i_star=i_star,
        x=x,
        ans=ans,
        e1=tuple(sorted(set(e1))),
        e2=tuple(sorted(set(e2))),
        spec=spec,
    )


def witness_coloring_two_player(inst: TwoPlayerInstance) -> Coloring:
    """Proper <= 2k coloring of the union when ans = 0.

    The hidden cluster's cliques each take one of k colors (handling the
    cross-clique join); everything else is colored by layer on a fresh
    palette of k colors.
    """
    if inst.ans != 0:
        raise ArgumentError("witness coloring requires ans = 0")
    k = inst.k
    layer_size = inst.n // k
    colors = k + (np.arange(inst.n, dtype=np.int64) // layer_size)
    for j, clique in enumerate(inst.host.clusters[inst.i_star]):
        for v in clique:
            colors[v] = j
    return Coloring.from_array(colors)


# ---------------------------------------------------------------------------
# recursive instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelSpec:
    """One recursion level a >= 3: host size n_a and materialized cluster count."""

    n: int
    t: int = 8


@dataclass(frozen=True)
class LevelPlan:
    """Base-case size n_2 plus one LevelSpec per level a = 3..p (in order)."""

    n2: int
    levels: tuple[LevelSpec, ...] = ()


def default_level_plan(p: int, k: int) -> LevelPlan:
    """Smallest convenient plan: grouped hosts at n_a = (k * r_a)^2."""
    if p < 2:
        raise ArgumentError("player count p must be >= 2")
    n2 = max(2 * k**3, 16 * k**2)
    levels = []
    prev_n = n2
    for _ in range(3, p + 1):
        r = 4 * prev_n
        n = (k * r) ** 2
        levels.append(LevelSpec(n=n, t=8))
        prev_n = n
    return LevelPlan(n2=n2, levels=tuple(levels))


def sample_intersecting_sets(
    rng: np.random.Generator, universe: int, size: int, overlap: int
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Sample (T, T intersect S, S): both of `size`, meeting in `overlap`.

    T is uniform; S is uniform conditioned on the intersection size, which
    makes the intersection uniform over all `overlap`-subsets of T.
    """
    if not 0 <= overlap <= size <= universe:
        raise ArgumentError("need 0 <= overlap <= size <= universe")
    if size - overlap > universe - size:
        raise ArgumentError("not enough room outside T for the rest of S")
    big_t = tuple(sorted(int(j) for j in rng.choice(universe, size=size, replace=False)))
    inter = tuple(sorted(int(j) for j in rng.choice(big_t, size=overlap, replace=False)))
    outside = np.array(sorted(set(range(universe)) - set(big_t)), dtype=np.int64)
    rest = rng.choice(outside, size=size - overlap, replace=False)
    s = tuple(sorted(set(inter) | set(int(v) for v in rest)))
    return big_t, inter, s


@dataclass(frozen=True)
class RecursiveLevel:
    """All random choices of one recursion level a >= 3."""

    a: int
    host: LineLayout
    n: int
    r: int
    t: int
    cluster_ids: tuple[int, ...]
    i_star: int  # index into cluster_ids
    sets: tuple[tuple[int, ...], ...]  # S_i per materialized cluster
    big_t: tuple[int, ...]  # the set T of clique indices
    intersection: tuple[int, ...]  # S_{i*} intersect T
    x: np.ndarray  # shape (t, r)
    sigma: tuple[int, ...]  # inner vertex -> clique index in T
    e1: tuple[Edge, ...]
    join_parts: tuple[tuple[Edge, ...], ...]  # players 2..a in outer ids
    spec: tuple[int, ...]

    def istar_cliques(self) -> list[tuple[int, ...]]:
        return self.host.cluster_cliques(self.cluster_ids[self.i_star])


@dataclass(frozen=True)
class RecursiveInstance:
    p: int
    k: int
    seed: int | None
    ans_override: int | None
    plan: LevelPlan
    level: RecursiveLevel
    inner: "RecursiveInstance | TwoPlayerInstance"
    ans: int
    spec: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.level.n

    def edge_parts(self) -> tuple[tuple[Edge, ...], ...]:
        return (self.level.e1,) + self.level.join_parts

    def union_graph(self) -> Graph:
        edges: set[Edge] = set()
        for part in self.edge_parts():
            edges.update(part)
        return Graph(self.n, edges)


def _validate_level(a: int, k: int, n: int, r: int, t_override: int) -> LineLayout:
    if r % 8 != 0:
        raise ArgumentError(f"level {a}: r_a = {r} must be divisible by 8")
    if r // 8 < k ** (a - 1):
        raise ArgumentError(
            f"level {a}: need r_a/8 >= k^(a-1) = {k ** (a - 1)}, got {r // 8}"
        )
    if (k * r) ** 2 > n:
        raise ArgumentError(
            f"level {a}: grouped host needs k*r <= sqrt(n); k*r = {k * r}, n = {n}"
        )
    layout = LineLayout(n=n, k=k, r=r)
    try:
        layout.validate()
    except ArgumentError as exc:
        raise ArgumentError(f"level {a}: {exc}")
    if not 1 <= t_override <= layout.t_max:
        raise ArgumentError(
            f"level {a}: t override {t_override} outside [1, {layout.t_max}]"
        )
    return layout


def gen_recursive(
    p: int,
    k: int,
    plan: LevelPlan | None = None,
    seed: int | None = None,
    ans_override: int | None = None,
) -> "RecursiveInstance | TwoPlayerInstance":
    """Sample the p-player recursive instance; p = 2 is the two-player base."""
    if p < 2:
        raise ArgumentError("player count p must be >= 2")
    if ans_override not in (None, 0, 1):
        raise ArgumentError("ans_override must be None, 0, or 1")
    if plan is None:
        plan = default_level_plan(p, k)
    if len(plan.levels) != max(0, p - 2):
        raise ArgumentError(
            f"plan supplies {len(plan.levels)} levels, expected {max(0, p - 2)}"
        )
    if p == 2:
        return gen_two_player(plan.n2, k, seed=seed, ans_override=ans_override)

    rng = rng_for(seed, 20, p)
    ans = int(rng.integers(2)) if ans_override is None else int(ans_override)

    # chain n_{a-1} = r_a / 4 upward from the base case
    inner_n = plan.n2 if p == 3 else plan.levels[p - 4].n
    spec_level = plan.levels[p - 3]
    r = 4 * inner_n
    layout = _validate_level(p, k, spec_level.n, r, spec_level.t)
    t = spec_level.t
    m = k ** (p - 1)

    cluster_ids = tuple(
        sorted(int(c) for c in rng.choice(layout.t_max, size=t, replace=False))
    )
    i_star = int(rng.integers(t))

    big_t, intersection, s_istar = sample_intersecting_sets(rng, r, r // 4, m)

    sets: list[tuple[int, ...]] = []
    x = np.zeros((t, r), dtype=np.uint8)
    for i in range(t):
        if i == i_star:
            s_i = s_istar
        else:
            s_i = tuple(
                sorted(int(j) for j in rng.choice(r, size=r // 4, replace=False))
            )
        sets.append(s_i)
        # balanced ones inside S_i, uniform bits outside
        if i == i_star:
            forced = list(intersection)
            free = sorted(set(s_i) - set(forced))
            if ans == 1:
                extra = rng.choice(len(free), size=r // 8 - m, replace=False)
                ones = forced + [free[int(idx)] for idx in extra]
            else:
                extra = rng.choice(len(free), size=r // 8, replace=False)
                ones = [free[int(idx)] for idx in extra]
        else:
            pick = rng.choice(len(s_i), size=r // 8, replace=False)
            ones = [s_i[int(idx)] for idx in pick]
        x[i, ones] = 1
        out_cols = sorted(set(range(r)) - set(s_i))
        x[i, out_cols] = rng.integers(0, 2, size=len(out_cols)).astype(np.uint8)

    # player 1's edges: cliques j in S_i with bit one, over materialized clusters
    e1: list[Edge] = []
    for i in range(t):
        for j in sets[i]:
            if x[i, j]:
                clique = layout.clique(cluster_ids[i], j)
                for a_ in range(len(clique)):
                    for b_ in range(a_ + 1, len(clique)):
                        u, v = clique[a_], clique[b_]
                        e1.append((u, v) if u < v else (v, u))

    # the embedded smaller instance, sampled forward with the same answer bit
    inner_plan = LevelPlan(n2=plan.n2, levels=plan.levels[: p - 3])
    inner = gen_recursive(p - 1, k, plan=inner_plan, seed=seed, ans_override=ans)

    # sigma: bijection from inner vertices onto T's cliques, conditioned on
    # mapping the inner special set onto the intersection cliques
    inner_spec = set(inner.spec)
    others = [v for v in range(inner_n) if v not in inner_spec]
    spec_targets = [intersection[int(i)] for i in rng.permutation(m)]
    rest_targets_pool = sorted(set(big_t) - set(intersection))
    rest_targets = [rest_targets_pool[int(i)] for i in rng.permutation(len(rest_targets_pool))]
    sigma_map: dict[int, int] = {}
    for v, j in zip(sorted(inner_spec), spec_targets):
        sigma_map[v] = j
    for v, j in zip(others, rest_targets):
        sigma_map[v] = j
    sigma = tuple(sigma_map[v] for v in range(inner_n))

    # join operations: inner edge (u, v) -> biclique between cliques
    # sigma(u), sigma(v) of the hidden cluster, kept with the inner holder
    istar_cliques = layout.cluster_cliques(cluster_ids[i_star])
    join_parts: list[tuple[Edge, ...]] = []
    for part in inner.edge_parts():
        acc: list[Edge] = []
        for u, v in part:
            join_cliques(acc, istar_cliques[sigma[u]], istar_cliques[sigma[v]])
        join_parts.append(tuple(sorted(set(acc))))

    spec = tuple(sorted(v for j in intersection for v in istar_cliques[j]))
    level = RecursiveLevel(
        a=p,
        host=layout,
        n=spec_level.n,
        r=r,
        t=t,
        cluster_ids=cluster_ids,
        i_star=i_star,
        sets=tuple(sets),
        big_t=big_t,
        intersection=intersection,
        x=x,
        sigma=sigma,
        e1=tuple(sorted(set(e1))),
        join_parts=tuple(join_parts),
        spec=spec,
    )
    return RecursiveInstance(
        p=p,
        k=k,
        seed=seed,
        ans_override=ans_override,
        plan=plan,
        level=level,
        inner=inner,
        ans=ans,
        spec=spec,
    )


def witness_coloring_recursive(
    inst: "RecursiveInstance | TwoPlayerInstance",
) -> Coloring:
    """Proper <= k*p coloring of the union graph when ans = 0.

    Built constructively: color the embedded instance recursively, push its
    colors through sigma onto the T-cliques, and color everything else by
    layer on a fresh palette of k colors.
    """
    if isinstance(inst, TwoPlayerInstance):
        return witness_coloring_two_player(inst)
    if inst.ans != 0:
        raise ArgumentError("witness coloring requires ans = 0")
    if inst.n > WITNESS_VERTEX_LIMIT:
        raise ResourceLimitError(
            f"witness coloring materializes {inst.n} colors (guard {WITNESS_VERTEX_LIMIT})"
        )
    k, p = inst.k, inst.p
    inner_colors = witness_coloring_recursive(inst.inner)
    layer_size = inst.n // k
    colors = k * (p - 1) + (np.arange(inst.n, dtype=np.int64) // layer_size)
    istar_cliques = inst.level.istar_cliques()
    for v in range(len(inst.level.sigma)):
        j = inst.level.sigma[v]
        c = int(inner_colors.colors[v])
        for w in istar_cliques[j]:
            colors[w] = c
    return Coloring.from_array(colors)


# ---------------------------------------------------------------------------
# simultaneous instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimultaneousInstance:
    k: int
    n_base: int
    seed: int | None
    theta_override: int | None
    p: int
    t: int
    n: int
    theta: int
    j_star: int
    x: np.ndarray  # shape (p, t)
    sigma: tuple[int, ...]  # permutation of [n]
    local_edges: tuple[tuple[tuple[int, int], ...], ...]  # per player, in [n_base]^2
    player_edges: tuple[tuple[Edge, ...], ...]  # per player, relabeled to [n]
    v_bipartite: tuple[int, ...]
    v_clique: tuple[int, ...]

    def edge_parts(self) -> tuple[tuple[Edge, ...], ...]:
        return self.player_edges

    def union_multigraph(self) -> DynamicMultigraph:
        m = DynamicMultigraph(self.n)
        for part in self.player_edges:
            for u, v in part:
                m.apply(u, v, 1)
        return m

    def final_graph(self) -> Graph:
        return finalize_multigraph(self.union_multigraph())


def _pair_of(j: int, n_base: int) -> tuple[int, int]:
    """j-th pair of [n_base] x [n_base] in lexicographic order."""
    return j // n_base, j % n_base


def _clique_pairs(k: int) -> list[tuple[int, int]]:
    """Lexicographic pairs of distinct indices in [k]; one per player."""
    return [(a, b) for a in range(k) for b in range(a + 1, k)]


def gen_simultaneous(
    k: int, n_base: int, seed: int | None = None, theta_override: int | None = None
) -> SimultaneousInstance:
    """Sample the simultaneous-model instance for p = C(k,2) players.

    Each player holds a uniform bipartite graph on [n_base] x [n_base] whose
    hidden pair is present iff theta = 1; relabeling overlays the bipartite
    parts and spreads the hidden pairs over a k-vertex set, which therefore
    is a k-clique exactly when theta = 1.
    """
    if theta_override not in (None, 0, 1):
        raise ArgumentError("theta_override must be None, 0, or 1")
    if k < 4:
        raise ArgumentError("need k >= 4")
    n = k + 2 * (n_base - 1)
    if 2 * k > n:
        raise ArgumentError(f"need k <= n/2; k = {k}, n = {n}")
    p = k * (k - 1) // 2
    t = n_base * n_base

    rng = rng_for(seed, 30)
    j_star = int(rng.integers(t))
    theta = int(rng.integers(2)) if theta_override is None else int(theta_override)
    x = rng.integers(0, 2, size=(p, t)).astype(np.uint8)
    x[:, j_star] = theta

    u_star, v_star = _pair_of(j_star, n_base)
    sigma = tuple(int(v) for v in rng.permutation(n))
    left_others = [a for a in range(n_base) if a != u_star]
    right_others = [b for b in range(n_base) if b != v_star]
    left_id = {a: sigma[idx] for idx, a in enumerate(left_others)}
    right_id = {b: sigma[(n_base - 1) + idx] for idx, b in enumerate(right_others)}
    clique_ids = [sigma[2 * (n_base - 1) + i] for i in range(k)]
    pairs = _clique_pairs(k)

    local_edges: list[tuple[tuple[int, int], ...]] = []
    player_edges: list[tuple[Edge, ...]] = []
    for i in range(p):
        special_u = clique_ids[pairs[i][0]]
        special_v = clique_ids[pairs[i][1]]
        local: list[tuple[int, int]] = []
        global_: list[Edge] = []
        for j in range(t):
            if not x[i, j]:
                continue
            a, b = _pair_of(j, n_base)
            local.append((a, b))
            gu = special_u if a == u_star else left_id[a]
            gv = special_v if b == v_star else right_id[b]
            global_.append((gu, gv) if gu < gv else (gv, gu))
        local_edges.append(tuple(local))
        player_edges.append(tuple(global_))

    v_bipartite = tuple(sorted(sigma[: 2 * (n_base - 1)]))
    v_clique = tuple(sorted(clique_ids))
    return SimultaneousInstance(
        k=k,
        n_base=n_base,
        seed=seed,
        theta_override=theta_override,
        p=p,
        t=t,
        n=n,
        theta=theta,
        j_star=j_star,
        x=x,
        sigma=sigma,
        local_edges=tuple(local_edges),
        player_edges=tuple(player_edges),
        v_bipartite=v_bipartite,
        v_clique=v_clique,
    )


def witness_coloring_simultaneous(inst: SimultaneousInstance) -> Coloring:
    """Proper 3-coloring of the finalized union when theta = 0.

    Two colors on the hidden bipartition, one fresh color on the k special
    vertices (which are pairwise non-adjacent in this branch).
    """
    if inst.theta != 0:
        raise ArgumentError("witness coloring requires theta = 0")
    colors = np.zeros(inst.n, dtype=np.int64)
    left = set(inst.sigma[: inst.n_base - 1])
    right = set(inst.sigma[inst.n_base - 1 : 2 * (inst.n_base - 1)])
    for v in range(inst.n):
        if v in left:
            colors[v] = 0
        elif v in right:
            colors[v] = 1
        else:
            colors[v] = 2
    return Coloring.from_array(colors)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, passed, detail if not passed else "")


def _verify_two_player(inst: TwoPlayerInstance) -> list[CheckResult]:
    checks = []
    union = inst.union_graph()
    host = inst.host

    expected_e1: set[Edge] = set()
    for i in range(host.t):
        if inst.x[i]:
            for clique in host.clusters[i]:
                for a in range(len(clique)):
                    for b in range(a + 1, len(clique)):
                        u, v = clique[a], clique[b]
                        expected_e1.add((u, v) if u < v else (v, u))
    checks.append(
        _check(
            "player1-edges",
            set(inst.e1) == expected_e1,
            f"e1 mismatch, e.g. {sorted(set(inst.e1) ^ expected_e1)[:1]}",
        )
    )
    expected_e2: list[Edge] = []
    cliques = host.clusters[inst.i_star]
    for a in range(len(cliques)):
        for b in range(a + 1, len(cliques)):
            join_cliques(expected_e2, cliques[a], cliques[b])
    checks.append(
        _check(
            "player2-edges",
            set(inst.e2) == set(expected_e2),
            f"e2 mismatch, e.g. {sorted(set(inst.e2) ^ set(expected_e2))[:1]}",
        )
    )
    checks.append(
        _check("edge-disjoint", not set(inst.e1) & set(inst.e2),
               f"shared edge {sorted(set(inst.e1) & set(inst.e2))[:1]}")
    )
    checks.append(_check("ans-bit", inst.ans == int(inst.x[inst.i_star])))
    expected_spec = tuple(sorted(v for c in cliques for v in c))
    checks.append(_check("special-set", inst.spec == expected_spec))
    if inst.ans == 1:
        missing = _missing_clique_pair(union, inst.spec)
        checks.append(
            _check(
                "gap-clique",
                missing is None,
                f"special set misses edge {missing}",
            )
        )
    else:
        witness = witness_coloring_two_player(inst)
        ok = witness.num_colors <= 2 * inst.k and is_proper_coloring(union, witness)
        checks.append(
            _check(
                "gap-witness-coloring",
                ok,
                f"witness uses {witness.num_colors} colors or is improper",
            )
        )
    return checks


def _missing_clique_pair(g: Graph, vertices) -> Edge | None:
    vs = sorted(vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if (u, v) not in g.edges:
                return (u, v)
    return None


def _verify_recursive(inst: RecursiveInstance) -> list[CheckResult]:
    checks = []
    lvl = inst.level
    k, p = inst.k, inst.p
    inner_n = lvl.r // 4

    checks.append(
        _check(
            "eq1-chain",
            (inst.inner.n if isinstance(inst.inner, RecursiveInstance) else inst.inner.n)
            == inner_n,
            f"inner instance has n={inst.inner.n}, expected r/4={inner_n}",
        )
    )
    inter = tuple(sorted(set(lvl.sets[lvl.i_star]) & set(lvl.big_t)))
    checks.append(
        _check(
            "intersection-size",
            inter == lvl.intersection and len(inter) == k ** (p - 1),
            f"re-derived intersection {inter} vs stored {lvl.intersection}",
        )
    )
    sizes_ok = all(len(s) == lvl.r // 4 for s in lvl.sets) and len(lvl.big_t) == lvl.r // 4
    checks.append(_check("set-sizes", sizes_ok, "some S_i or T has the wrong size"))
    balance_ok = True
    detail = ""
    for i, s in enumerate(lvl.sets):
        ones = int(sum(int(lvl.x[i, j]) for j in s))
        if ones != lvl.r // 8:
            balance_ok = False
            detail = f"row {i} has {ones} ones inside S_i, expected {lvl.r // 8}"
            break
    checks.append(_check("row-balance", balance_ok, detail))
    anchored = all(int(lvl.x[lvl.i_star, j]) == inst.ans for j in lvl.intersection)
    checks.append(_check("answer-anchoring", anchored, "x[i*, j] != ans on the intersection"))

    istar_cliques = lvl.istar_cliques()
    expected_spec = tuple(sorted(v for j in lvl.intersection for v in istar_cliques[j]))
    checks.append(
        _check(
            "special-set",
            inst.spec == expected_spec and len(inst.spec) == k**p,
            "special set does not match the intersection cliques",
        )
    )
    sigma_vals = set(lvl.sigma)
    sigma_ok = (
        len(lvl.sigma) == inner_n
        and sigma_vals == set(lvl.big_t)
        and {lvl.sigma[v] for v in inst.inner.spec} == set(lvl.intersection)
    )
    checks.append(_check("sigma-bijection", sigma_ok, "sigma is not a valid embedding"))

    union = inst.union_graph()
    if inst.ans == 1:
        missing = _missing_clique_pair(union, inst.spec)
        checks.append(
            _check("gap-clique", missing is None, f"special set misses edge {missing}")
        )
    else:
        witness = witness_coloring_recursive(inst)
        ok = witness.num_colors <= k * p and is_proper_coloring(union, witness)
        checks.append(
            _check(
                "gap-witness-coloring",
                ok,
                f"witness uses {witness.num_colors} colors or is improper",
            )
        )
    inner_checks = (
        _verify_recursive(inst.inner)
        if isinstance(inst.inner, RecursiveInstance)
        else _verify_two_player(inst.inner)
    )
    for c in inner_checks:
        checks.append(CheckResult(f"inner-{c.name}", c.passed, c.detail))
    return checks


def _verify_simultaneous(inst: SimultaneousInstance) -> list[CheckResult]:
    checks = []
    anchored = all(int(inst.x[i, inst.j_star]) == inst.theta for i in range(inst.p))
    checks.append(_check("theta-anchoring", anchored, "some x[i, j*] != theta"))

    # recompute the relabeled edges from (x, sigma, j*)
    regen = gen_relabel_edges(inst)
    relabel_ok = regen == inst.player_edges
    checks.append(_check("relabel-consistency", relabel_ok, "player edges do not match x/sigma"))

    bip_ok = True
    detail = ""
    final = inst.final_graph()
    sub, _ = induced_subgraph(final, inst.v_bipartite)
    if sub.num_edges and find_k_coloring(sub, 2) is None:
        bip_ok = False
        detail = "union restricted to v_bipartite is not bipartite"
    checks.append(_check("bipartite-part", bip_ok, detail))

    if inst.theta == 1:
        missing = _missing_clique_pair(final, inst.v_clique)
        checks.append(
            _check("gap-clique", missing is None, f"v_clique misses edge {missing}")
        )
    else:
        witness = witness_coloring_simultaneous(inst)
        ok = witness.num_colors <= 3 and is_proper_coloring(final, witness)
        checks.append(
            _check(
                "gap-witness-coloring",
                ok,
                f"witness uses {witness.num_colors} colors or is improper",
            )
        )
    return checks


def gen_relabel_edges(inst: SimultaneousInstance) -> tuple[tuple[Edge, ...], ...]:
    """Player edge lists recomputed from the stored matrix and labels."""
    u_star, v_star = _pair_of(inst.j_star, inst.n_base)
    left_others = [a for a in range(inst.n_base) if a != u_star]
    right_others = [b for b in range(inst.n_base) if b != v_star]
    left_id = {a: inst.sigma[idx] for idx, a in enumerate(left_others)}
    right_id = {
        b: inst.sigma[(inst.n_base - 1) + idx] for idx, b in enumerate(right_others)
    }
    clique_ids = [inst.sigma[2 * (inst.n_base - 1) + i] for i in range(inst.k)]
    pairs = _clique_pairs(inst.k)
    out = []
    for i in range(inst.p):
        su = clique_ids[pairs[i][0]]
        sv = clique_ids[pairs[i][1]]
        part: list[Edge] = []
        for j in range(inst.t):
            if not inst.x[i, j]:
                continue
            a, b = _pair_of(j, inst.n_base)
            gu = su if a == u_star else left_id[a]
            gv = sv if b == v_star else right_id[b]
            part.append((gu, gv) if gu < gv else (gv, gu))
        out.append(tuple(part))
    return tuple(out)


def verify_instance(inst) -> VerificationReport:
    """Structural invariants plus the chromatic-gap check for any variant."""
    if isinstance(inst, TwoPlayerInstance):
        checks = _verify_two_player(inst)
    elif isinstance(inst, RecursiveInstance):
        checks = _verify_recursive(inst)
    elif isinstance(inst, SimultaneousInstance):
        checks = _verify_simultaneous(inst)
    else:
        raise ArgumentError(f"not a hard instance: {type(inst).__name__}")
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def instance_to_dict(inst) -> dict:
    if isinstance(inst, TwoPlayerInstance):
        return {
            "variant": "two-player",
            "params": {"n": inst.n, "k": inst.k},
            "seed": inst.seed,
            "ans_override": inst.ans_override,
            "ans": inst.ans,
            "spec": list(inst.spec),
            "players": [[list(e) for e in part] for part in inst.edge_parts()],
        }
    if isinstance(inst, RecursiveInstance):
        return {
            "variant": "recursive",
            "params": {
                "p": inst.p,
                "k": inst.k,
                "n2": inst.plan.n2,
                "levels": [{"n": lv.n, "t": lv.t} for lv in inst.plan.levels],
            },
            "seed": inst.seed,
            "ans_override": inst.ans_override,
            "ans": inst.ans,
            "spec": list(inst.spec),
            "players": [[list(e) for e in part] for part in inst.edge_parts()],
        }
    if isinstance(inst, SimultaneousInstance):
        return {
            "variant": "simultaneous",
            "params": {"k": inst.k, "n_base": inst.n_base},
            "seed": inst.seed,
            "theta_override": inst.theta_override,
            "theta": inst.theta,
            "v_clique": list(inst.v_clique),
            "players": [[list(e) for e in part] for part in inst.edge_parts()],
        }
    raise ArgumentError(f"not a hard instance: {type(inst).__name__}")


def instance_to_json(inst) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":")) + "\n"


def write_instance(inst, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(instance_to_json(inst))


def regenerate_instance(payload: dict):
    """Rebuild the full instance from a serialized (variant, params, seed)."""
    try:
        variant = payload["variant"]
        params = payload["params"]
        seed = payload["seed"]
    except KeyError as exc:
        raise FormatError(f"instance file missing field {exc}")
    if variant == "two-player":
        return gen_two_player(
            params["n"], params["k"], seed=seed, ans_override=payload.get("ans_override")
        )
    if variant == "recursive":
        plan = LevelPlan(
            n2=params["n2"],
            levels=tuple(LevelSpec(n=lv["n"], t=lv["t"]) for lv in params["levels"]),
        )
        return gen_recursive(
            params["p"], params["k"], plan=plan, seed=seed,
            ans_override=payload.get("ans_override"),
        )
    if variant == "simultaneous":
        return gen_simultaneous(
            params["k"], params["n_base"], seed=seed,
            theta_override=payload.get("theta_override"),
        )
    raise FormatError(f"unknown instance variant {variant!r}")


def read_instance(path: str):
    """Load an instance file, regenerate it, and check the stored edges match."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            payload = json.load(f)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}")
    inst = regenerate_instance(payload)
    stored = [
        tuple(tuple(int(x) for x in e) for e in part) for part in payload["players"]
    ]
    if tuple(stored) != inst.edge_parts():
        raise FormatError("stored edge lists do not match the regenerated instance")
    return inst
