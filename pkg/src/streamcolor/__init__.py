"""streamcolor: streaming graph coloring algorithms and hard instances.

The package is organized around six areas:

* `graph` / `exact`: the data model and an exact chromatic-number engine;
* `clusterpack`: (r, t, k)-cluster packing graph constructions and checks;
* `instances`: hard-instance generators with constructive witnesses;
* `streams`: edge-stream model, builders, and serialization;
* `algorithms`: the random-order, multi-pass, and dynamic distinguishers;
* `harness`: Monte Carlo experiments; `cli`: the command-line surface.
"""

from .graph import (
    Coloring,
    DynamicMultigraph,
    Graph,
    finalize_multigraph,
    induced_subgraph,
    is_proper_coloring,
    product_coloring,
    read_coloring,
    read_graph,
    verify_clique,
    write_coloring,
    write_graph,
)
from .exact import chromatic_number, color_exactly, dsatur_coloring, find_k_coloring
from .clusterpack import (
    ClusterPackingGraph,
    DenseParams,
    SetFamily,
    canonical_coloring,
    construct_dense,
    construct_lines_basic,
    construct_lines_grouped,
    fano_family,
    gen_intersection_family,
    lift_to_k_colorable,
    read_cpg,
    verify_cluster_packing,
    write_cpg,
)
from .instances import (
    LevelPlan,
    LevelSpec,
    RecursiveInstance,
    SimultaneousInstance,
    TwoPlayerInstance,
    default_level_plan,
    gen_recursive,
    gen_simultaneous,
    gen_two_player,
    join_cliques,
    read_instance,
    verify_instance,
    witness_coloring_recursive,
    witness_coloring_simultaneous,
    write_instance,
)
from .streams import (
    Stream,
    StreamEvent,
    StreamSource,
    read_stream,
    to_dynamic_stream,
    to_insertion_stream,
    write_stream,
)
from .algorithms import (
    Verdict,
    default_budget,
    offline_iterative_coloring,
    run_dynamic,
    run_multipass,
    run_random_order,
)
from .harness import (
    ExperimentResult,
    GraphSpec,
    experiment_distinguisher,
    experiment_edge_shrinkage,
    experiment_vertex_sampling,
    wilson_interval,
)

__version__ = "0.1.0"
