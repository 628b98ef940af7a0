from __future__ import annotations

import dataclasses
import itertools

import pytest

from streamcolor import (
    ClusterPackingGraph,
    DenseParams,
    Graph,
    canonical_coloring,
    construct_dense,
    construct_lines_basic,
    construct_lines_grouped,
    fano_family,
    gen_intersection_family,
    is_proper_coloring,
    lift_to_k_colorable,
    read_cpg,
    verify_cluster_packing,
    write_cpg,
)
from streamcolor.clusterpack import DenseLayout, SetFamily
from streamcolor.errors import (
    ArgumentError,
    FormatError,
    GenerationError,
    UnsupportedInputError,
)

from oracles import brute_induced_edges


def check_inducedness_bruteforce(cpg: ClusterPackingGraph) -> None:
    """Independent inducedness oracle: filter the edge list per cluster."""
    for i in range(cpg.t):
        vs = cpg.cluster_vertices(i)
        inside = set(map(tuple, brute_induced_edges(cpg.graph.edges, vs)))
        own = set()
        for clique in cpg.clusters[i]:
            for a in range(len(clique)):
                for b in range(a + 1, len(clique)):
                    u, v = clique[a], clique[b]
                    own.add((u, v) if u < v else (v, u))
        assert inside == own, f"cluster {i} is not induced"


class TestSetFamilies:
    def test_fano_pairwise_intersections_exactly_one(self):
        fam = fano_family(7)
        assert len(fam) == 7
        for i in range(7):
            assert len(set(fam.sets[i])) == 3
            for j in range(i + 1, 7):
                assert len(set(fam.sets[i]) & set(fam.sets[j])) == 1

    def test_fano_mode_through_generator(self):
        fam = gen_intersection_family(7, 3, 1, 7, mode="fano")
        assert fam.sets == fano_family(7).sets

    def test_random_family_verified_exhaustively(self):
        fam = gen_intersection_family(100, 33, 14, 50, seed=1)
        assert len(fam) == 50
        for i in range(50):
            assert len(set(fam.sets[i])) == 33
            for j in range(i + 1, 50):
                assert len(set(fam.sets[i]) & set(fam.sets[j])) <= 14

    def test_same_seed_same_family(self):
        a = gen_intersection_family(40, 10, 4, 12, seed=9)
        b = gen_intersection_family(40, 10, 4, 12, seed=9)
        assert a.sets == b.sets

    def test_infeasible_raises_generation_error(self):
        # two disjoint 3-subsets of [4] cannot exist
        with pytest.raises(GenerationError) as err:
            gen_intersection_family(4, 3, 0, 2, seed=0)
        assert "violated" in str(err.value)

    def test_family_invariants_validated(self):
        with pytest.raises(ArgumentError):
            SetFamily(d=5, w=2, theta=0, sets=((0, 1), (1, 2)))


class TestLinesBasic:
    def test_64_2_counts(self):
        cpg = construct_lines_basic(64, 2)
        assert (cpg.t, cpg.r, cpg.k) == (32, 2, 2)
        assert cpg.graph.num_edges == 64
        for cluster in cpg.clusters:  # each an induced matching of size 2
            assert len(cluster) == 2
            assert all(len(c) == 2 for c in cluster)
        check_inducedness_bruteforce(cpg)
        assert verify_cluster_packing(cpg).ok

    def test_108_3_counts(self):
        cpg = construct_lines_basic(108, 3)
        assert (cpg.t, cpg.r, cpg.k) == (12, 3, 3)
        assert cpg.graph.num_edges == 108  # 12 clusters * 3 triangles * 3 edges
        check_inducedness_bruteforce(cpg)
        assert verify_cluster_packing(cpg).ok

    def test_too_small_rejected(self):
        with pytest.raises(ArgumentError):
            construct_lines_basic(8, 2)

    def test_divisibility_rejected(self):
        with pytest.raises(ArgumentError):
            construct_lines_basic(66, 2)

    def test_lines_pairwise_share_at_most_one_vertex(self):
        cpg = construct_lines_basic(64, 2)
        lines = [c for cluster in cpg.clusters for c in cluster]
        for a, b in itertools.combinations(lines, 2):
            assert len(set(a) & set(b)) <= 1


class TestLinesGrouped:
    def test_1024_4_2_counts(self):
        cpg = construct_lines_grouped(1024, 4, 2)
        assert (cpg.t, cpg.r, cpg.k) == (2048, 4, 2)
        assert verify_cluster_packing(cpg).ok

    def test_64_2_2_counts(self):
        # t = floor(64/2kr) * floor(64/2k^2 r) = 8 * 4
        cpg = construct_lines_grouped(64, 2, 2)
        assert (cpg.t, cpg.r, cpg.k) == (32, 2, 2)
        check_inducedness_bruteforce(cpg)
        assert verify_cluster_packing(cpg).ok

    def test_sqrt_bound_rejected(self):
        with pytest.raises(ArgumentError):
            construct_lines_grouped(64, 8, 2)

    def test_lines_pairwise_share_at_most_one_vertex(self):
        cpg = construct_lines_grouped(64, 2, 2)
        lines = [c for cluster in cpg.clusters for c in cluster]
        for a, b in itertools.combinations(lines, 2):
            assert len(set(a) & set(b)) <= 1


class TestDense:
    def test_fano3_k2_counts(self):
        params = DenseParams(k=2, d=7, p=5, family=fano_family(3))
        cpg = construct_dense(params)
        assert cpg.graph.n == 156_250
        assert (cpg.t, cpg.r) == (3, 625)
        assert cpg.graph.num_edges == 1875
        assert verify_cluster_packing(cpg).ok

    def test_single_set_line_starts_forced(self):
        # with p = 5, k = 2, a start must have x_i + 4 <= 5 on S, so x_i = 1;
        # its layer-1 partner has weight 3w and lands in group 3, color c_2
        params = DenseParams(k=2, d=7, p=5, family=fano_family(1))
        layout = DenseLayout(params)
        assert layout._starts == [(1, 1, 1)]
        assert layout.cluster_size == 5**4
        s = params.family.sets[0]
        cliques = layout.cluster_cliques(0)
        for clique in cliques[:50]:
            start, partner = clique
            assert layout.layer_of(start) == 0
            assert layout.layer_of(partner) == 1
        group = (3 * 3) // 3  # weight of the partner over S is 3 + 2*3 = 9
        assert group == 3
        assert layout.color_of_group(1) == "c1"
        assert layout.color_of_group(3) == "c2"

    def test_p_too_small_rejected(self):
        with pytest.raises(ArgumentError):
            DenseParams(k=2, d=7, p=4, family=fano_family(3))

    def test_theta_bound_strict(self):
        # w = 3 needs theta < 1.5; a family with theta = 2 must be rejected
        fam = SetFamily(d=7, w=3, theta=2, sets=((0, 1, 2), (0, 1, 3)))
        with pytest.raises(ArgumentError):
            DenseParams(k=2, d=7, p=5, family=fam)

    def test_edge_weight_step_property(self):
        # for an edge (u, v) of cluster H_S between layers i < j:
        # w_S(v) - w_S(u) = 2 (j - i) |S|
        params = DenseParams(k=3, d=5, p=7, family=SetFamily(
            d=5, w=3, theta=1, sets=((0, 1, 2), (2, 3, 4))
        ))
        layout = DenseLayout(params)
        cpg = construct_dense(params)
        for ci, s in enumerate(params.family.sets):
            for clique in cpg.clusters[ci][:30]:
                coords = [_decode(layout, v) for v in clique]
                for (li, xi), (lj, xj) in itertools.combinations(coords, 2):
                    wi = sum(xi[c] for c in s)
                    wj = sum(xj[c] for c in s)
                    assert wj - wi == 2 * (lj - li) * len(s)

    def test_cluster_size_matches_bruteforce_enumeration(self):
        # exact count of qualifying starts: x in [p]^d, c_1-colored w.r.t. S,
        # with x_i + 2k <= p on S coordinates
        fam = SetFamily(d=3, w=3, theta=1, sets=((0, 1, 2),))
        params = DenseParams(k=2, d=3, p=9, family=fam)
        layout = DenseLayout(params)
        count = 0
        for x in itertools.product(range(1, 10), repeat=3):
            if any(xi + 4 > 9 for xi in x):
                continue
            group = sum(x) // 3
            if (group - 1) % 4 == 0:
                count += 1
        assert layout.cluster_size == count
        cpg = construct_dense(params)
        assert cpg.r == count
        assert verify_cluster_packing(cpg).ok


def _decode(layout: DenseLayout, v: int) -> tuple[int, tuple[int, ...]]:
    layer, idx = divmod(v, layout.params.layer_size)
    coords = []
    for power in layout._powers:
        q, idx = divmod(idx, power)
        coords.append(q + 1)
    return layer, tuple(coords)


class TestLift:
    def test_shift_permutation_values(self):
        # 1-indexed form: tau_i(x) = ((x + i - 2) mod k) + 1, so tau_2(1) = 2
        # and tau_3(3) = 2
        def tau(i: int, x: int, k: int) -> int:
            return ((x + i - 2) % k) + 1

        assert tau(2, 1, 3) == 2
        assert tau(3, 3, 3) == 2
        # the lift indexes copies/slots 0-based: slot = (a + ell) % k
        for k in range(1, 6):
            for i in range(1, k + 1):
                for x in range(1, k + 1):
                    assert tau(i, x, k) - 1 == ((x - 1) + (i - 1)) % k

    def test_triangle_lift_structure(self):
        base = ClusterPackingGraph(
            graph=Graph(3, [(0, 1), (1, 2), (0, 2)]),
            k=3,
            r=1,
            t=1,
            clusters=(((0, 1, 2),),),
        )
        lifted = lift_to_k_colorable(base)
        assert lifted.graph.n == 9
        assert (lifted.r, lifted.t) == (3, 1)
        assert set(lifted.clusters[0]) == {(0, 4, 8), (1, 5, 6), (2, 3, 7)}
        assert verify_cluster_packing(lifted).ok

    def test_r2_t3_k3_parameters(self):
        base = construct_lines_grouped(36, 2, 3)
        assert (base.r, base.t, base.k) == (2, 3, 3)
        lifted = lift_to_k_colorable(base)
        assert lifted.graph.n == 3 * 36
        assert (lifted.r, lifted.t, lifted.k) == (6, 3, 3)
        assert verify_cluster_packing(lifted).ok

    def test_k1_is_isomorphic_to_input(self):
        base = ClusterPackingGraph(
            graph=Graph(3),
            k=1,
            r=2,
            t=1,
            clusters=(((0,), (1,)),),
        )
        lifted = lift_to_k_colorable(base)
        assert lifted.graph.n == 3
        assert lifted.clusters == base.clusters
        assert lifted.graph.num_edges == 0

    def test_lift_preserves_verification(self):
        for cpg in (construct_lines_basic(64, 2), construct_lines_grouped(64, 2, 2)):
            lifted = lift_to_k_colorable(cpg)
            assert lifted.t == cpg.t
            assert lifted.r == cpg.r * cpg.k
            assert lifted.graph.n == cpg.graph.n * cpg.k
            assert verify_cluster_packing(lifted).ok


class TestCanonicalColoring:
    def test_basic_two_colors_by_layer(self):
        cpg = construct_lines_basic(64, 2)
        col = canonical_coloring(cpg)
        assert col.num_colors == 2
        assert is_proper_coloring(cpg.graph, col)

    def test_dense_by_layer(self):
        cpg = construct_dense(DenseParams(k=2, d=7, p=5, family=fano_family(1)))
        col = canonical_coloring(cpg)
        assert col.num_colors == 2
        assert is_proper_coloring(cpg.graph, col)

    def test_lift_by_copy(self):
        base = construct_lines_grouped(36, 2, 3)
        lifted = lift_to_k_colorable(base)
        col = canonical_coloring(lifted)
        assert col.num_colors == 3
        assert is_proper_coloring(lifted.graph, col)

    def test_missing_metadata_rejected(self):
        cpg = ClusterPackingGraph(
            graph=Graph(2, [(0, 1)]), k=2, r=1, t=1, clusters=(((0, 1),),)
        )
        with pytest.raises(UnsupportedInputError):
            canonical_coloring(cpg)


class TestVerifyClusterPacking:
    def test_accepts_all_constructors(self):
        for cpg in (
            construct_lines_basic(64, 2),
            construct_lines_basic(108, 3),
            construct_lines_grouped(256, 4, 2),
            construct_dense(DenseParams(k=2, d=5, p=5, family=SetFamily(
                d=5, w=3, theta=1, sets=((0, 1, 2), (2, 3, 4))
            ))),
        ):
            report = verify_cluster_packing(cpg)
            assert report.ok, str(report)

    def test_extra_edge_breaks_inducedness(self):
        cpg = construct_lines_basic(64, 2)
        # an extra edge inside cluster 0's vertex span that is not a clique edge
        vs = sorted(cpg.cluster_vertices(0))
        extra = None
        for u, v in itertools.combinations(vs, 2):
            if (u, v) not in cpg.graph.edges:
                extra = (u, v)
                break
        tampered = dataclasses.replace(
            cpg, graph=Graph(64, set(cpg.graph.edges) | {extra})
        )
        report = verify_cluster_packing(tampered)
        assert not report.ok
        induced = [c for c in report.checks if c.name == "inducedness"][0]
        assert not induced.passed
        assert str(extra) in induced.detail or str(extra[0]) in induced.detail

    def test_reassigned_clique_breaks_partition_checks(self):
        cpg = construct_lines_basic(64, 2)
        clusters = [list(c) for c in cpg.clusters]
        moved = clusters[0].pop()
        clusters[1].append(moved)
        tampered = dataclasses.replace(
            cpg, clusters=tuple(tuple(c) for c in clusters)
        )
        report = verify_cluster_packing(tampered)
        assert not report.ok
        structure = [c for c in report.checks if c.name == "cluster-structure"][0]
        assert not structure.passed

    @pytest.mark.parametrize(
        "n,r,k",
        [(64, 2, 2), (128, 2, 2), (256, 2, 4), (144, 3, 2), (400, 4, 2), (324, 3, 3)],
    )
    def test_random_valid_grouped_parameters(self, n, r, k):
        cpg = construct_lines_grouped(n, r, k)
        assert verify_cluster_packing(cpg).ok


class TestCpgSerialization:
    def test_round_trip(self, tmp_path):
        cpg = construct_lines_basic(64, 2)
        path = tmp_path / "a.cpg"
        write_cpg(cpg, str(path))
        again = read_cpg(str(path))
        assert again.graph == cpg.graph
        assert again.clusters == cpg.clusters
        assert (again.k, again.r, again.t, again.layout) == (2, 2, 32, "basic")
        path2 = tmp_path / "b.cpg"
        write_cpg(again, str(path2))
        assert path.read_bytes() == path2.read_bytes()

    def test_reader_rejects_edge_collisions(self, tmp_path):
        path = tmp_path / "bad.cpg"
        path.write_text(
            "#cpg v1 n=4 k=2 r=1 t=2 layout=basic\nC 0 0 0 1\nC 1 0 1 0\n"
        )
        with pytest.raises(FormatError):
            read_cpg(str(path))

    def test_reader_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.cpg"
        path.write_text("#cpg v1 n=4 k=2\nC 0 0 0 1\n")
        with pytest.raises(FormatError):
            read_cpg(str(path))

    def test_layout_survives_round_trip_for_coloring(self, tmp_path):
        lifted = lift_to_k_colorable(construct_lines_grouped(36, 2, 3))
        path = tmp_path / "lift.cpg"
        write_cpg(lifted, str(path))
        again = read_cpg(str(path))
        assert again.layout == "lifted"
        col = canonical_coloring(again)
        assert col.num_colors == 3
        assert is_proper_coloring(again.graph, col)
