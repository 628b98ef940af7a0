"""Tour of the three cluster packing graph constructions.

A cluster packing graph partitions its edges into t induced clusters, each
made of r vertex-disjoint k-cliques, while staying k-colorable overall.
This script builds one instance of each construction, verifies the defining
properties, and shows the k-colorability lift.
"""

from streamcolor import (
    DenseParams,
    canonical_coloring,
    construct_dense,
    construct_lines_basic,
    construct_lines_grouped,
    fano_family,
    is_proper_coloring,
    lift_to_k_colorable,
    verify_cluster_packing,
)


def show(name, cpg):
    report = verify_cluster_packing(cpg)
    print(f"{name}:")
    print(f"  n = {cpg.graph.n}, edges = {cpg.graph.num_edges}")
    print(f"  k = {cpg.k} (clique size), r = {cpg.r} (cluster size), t = {cpg.t} (clusters)")
    print(f"  all checks pass: {report.ok}")
    coloring = canonical_coloring(cpg)
    print(f"  canonical {coloring.num_colors}-coloring proper: "
          f"{is_proper_coloring(cpg.graph, coloring)}")
    print()


# 1. Geometric lines with r = k: vertices live in k layers, split into
# groups; a line starts in group b and advances q groups per layer, and each
# cluster is the set of cliques over all lines with the same (b, q).
show("lines, basic (n=64, k=2)", construct_lines_basic(64, 2))
show("lines, basic (n=108, k=3)", construct_lines_basic(108, 3))

# 2. The same skeleton with groups of size r > k trades cluster count for
# cluster size.
show("lines, grouped (n=1024, r=4, k=2)", construct_lines_grouped(1024, 4, 2))

# 3. The dense construction: layers are [p]^d, and each cluster is driven by
# one set S from a family with small pairwise intersections. The weight
# w_S(x) = sum of S-coordinates splits layers into groups colored cyclically
# (c_1, white, c_2, white, ...); lines step by 2 on the S-coordinates, so
# they visit c_1, ..., c_k. Intersections theta < w/2 force inducedness.
fam = fano_family(3)
print(f"Fano family: {fam.sets} (w={fam.w}, pairwise intersections = 1)")
dense = construct_dense(DenseParams(k=2, d=7, p=5, family=fam))
show("dense (k=2, d=7, p=5, 3 Fano lines)", dense)

# 4. Any cluster packing graph (even a non-k-colorable one) can be lifted to
# a k-colorable one on k copies of the vertices: clique (i, j) spawns k
# cliques that take cyclically shifted slots across the copies.
lifted = lift_to_k_colorable(dense)
show("lifted dense graph (k copies)", lifted)
