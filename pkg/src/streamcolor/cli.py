"""Command-line front end.

Subcommands: ``gen``, ``stream``, ``run``, ``verify``, ``experiment``.
Exit codes: 0 success, 1 verification failure, 2 argument error,
3 I/O or parse error. Identical flags and seed always produce byte-identical
output files.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import clusterpack, instances
from .algorithms import Verdict, run_dynamic, run_multipass, run_random_order
from .errors import (
    ArgumentError,
    FormatError,
    GenerationError,
    PassLimitError,
    ResourceLimitError,
    StreamValidationError,
    UnsupportedInputError,
)
from .graph import is_proper_coloring, read_coloring, read_graph, write_graph
from .harness import (
    ExperimentResult,
    GraphSpec,
    experiment_distinguisher,
    experiment_edge_shrinkage,
    experiment_vertex_sampling,
    write_result,
)
from .streams import StreamSource, read_stream, to_dynamic_stream, to_insertion_stream, write_stream

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_ARGUMENT = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamcolor",
        description="Streaming coloring algorithms, cluster packing graphs, "
        "hard instances, and experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate graphs, families, and instances")
    gen_sub = gen.add_subparsers(dest="target", required=True)

    g_basic = gen_sub.add_parser("basic", help="lines construction with r = k")
    g_basic.add_argument("--n", type=int, required=True)
    g_basic.add_argument("--k", type=int, required=True)
    _out(g_basic)

    g_grouped = gen_sub.add_parser("grouped", help="lines construction with free r")
    g_grouped.add_argument("--n", type=int, required=True)
    g_grouped.add_argument("--r", type=int, required=True)
    g_grouped.add_argument("--k", type=int, required=True)
    _out(g_grouped)

    g_dense = gen_sub.add_parser("dense", help="dense construction from a set family")
    g_dense.add_argument("--k", type=int, required=True)
    g_dense.add_argument("--d", type=int, required=True)
    g_dense.add_argument("--p", type=int, required=True)
    g_dense.add_argument("--family", type=str, help="set-family JSON produced by 'gen family'")
    g_dense.add_argument("--fano", type=int, metavar="COUNT", help="use COUNT Fano lines")
    _out(g_dense)

    g_lift = gen_sub.add_parser("lift", help="k-colorability lift of a CPG file")
    g_lift.add_argument("--input", "-i", dest="input", type=str, required=True)
    _out(g_lift)

    g_family = gen_sub.add_parser("family", help="low-intersection set family")
    g_family.add_argument("--d", type=int, required=True)
    g_family.add_argument("--w", type=int, required=True)
    g_family.add_argument("--theta", type=int, required=True)
    g_family.add_argument("--count", type=int, required=True)
    g_family.add_argument("--fano", action="store_true", help="deterministic Fano mode")
    g_family.add_argument("--seed", type=int, default=None)
    _out(g_family)

    g_two = gen_sub.add_parser("two-player", help="two-player hard instance")
    g_two.add_argument("--n", type=int, required=True)
    g_two.add_argument("--k", type=int, required=True)
    g_two.add_argument("--seed", type=int, default=None)
    g_two.add_argument("--ans", type=int, choices=(0, 1), default=None)
    _out(g_two)

    g_rec = gen_sub.add_parser("recursive", help="p-player recursive hard instance")
    g_rec.add_argument("--p", type=int, required=True)
    g_rec.add_argument("--k", type=int, required=True)
    g_rec.add_argument("--seed", type=int, default=None)
    g_rec.add_argument("--ans", type=int, choices=(0, 1), default=None)
    g_rec.add_argument("--n2", type=int, default=None, help="base-case vertex count")
    g_rec.add_argument(
        "--level-n", type=int, nargs="*", default=None,
        help="host vertex counts for levels 3..p",
    )
    g_rec.add_argument(
        "--level-t", type=int, nargs="*", default=None,
        help="materialized cluster counts for levels 3..p",
    )
    _out(g_rec)

    g_sim = gen_sub.add_parser("simultaneous", help="simultaneous-model hard instance")
    g_sim.add_argument("--k", type=int, required=True)
    g_sim.add_argument("--n-base", type=int, required=True)
    g_sim.add_argument("--seed", type=int, default=None)
    g_sim.add_argument("--theta", type=int, choices=(0, 1), default=None)
    _out(g_sim)

    g_graph = gen_sub.add_parser("graph", help="graph from a spec string")
    g_graph.add_argument("--spec", type=str, required=True, help="e.g. gnm:n=300,m=20000")
    g_graph.add_argument("--seed", type=int, default=None)
    _out(g_graph)

    st = sub.add_parser("stream", help="build streams from graph files")
    st_sub = st.add_subparsers(dest="target", required=True)
    s_shuffle = st_sub.add_parser("shuffle", help="seeded random-order insertion stream")
    s_shuffle.add_argument("--graph", type=str, required=True)
    s_shuffle.add_argument("--seed", type=int, default=None)
    _out(s_shuffle)
    s_dyn = st_sub.add_parser("dynamic", help="dynamic stream with churn")
    s_dyn.add_argument("--graph", type=str, required=True)
    s_dyn.add_argument("--extra-pairs", type=int, default=0)
    s_dyn.add_argument("--cycles", type=int, default=1)
    s_dyn.add_argument("--seed", type=int, default=None)
    _out(s_dyn)

    run = sub.add_parser("run", help="run a distinguishing algorithm on a stream file")
    run_sub = run.add_subparsers(dest="target", required=True)
    for name in ("random-order", "multipass", "dynamic"):
        r = run_sub.add_parser(name)
        r.add_argument("--stream", type=str, required=True)
        r.add_argument("--q", type=int, required=True)
        r.add_argument("--t", type=int, required=True)
        if name != "random-order":
            r.add_argument("--seed", type=int, default=None)
        if name != "dynamic":
            r.add_argument("--budget-multiplier", type=float, default=1.0)
        _out(r)

    ver = sub.add_parser("verify", help="verify serialized artifacts")
    ver_sub = ver.add_subparsers(dest="target", required=True)
    v_cpg = ver_sub.add_parser("cpg")
    v_cpg.add_argument("--file", type=str, required=True)
    v_inst = ver_sub.add_parser("instance")
    v_inst.add_argument("--file", type=str, required=True)
    v_col = ver_sub.add_parser("coloring")
    v_col.add_argument("--graph", type=str, required=True)
    v_col.add_argument("--coloring", type=str, required=True)

    exp = sub.add_parser("experiment", help="Monte Carlo experiments")
    exp_sub = exp.add_subparsers(dest="target", required=True)
    e_shr = exp_sub.add_parser("shrinkage")
    e_shr.add_argument("--graph-spec", type=str, required=True)
    e_shr.add_argument("--t", type=int, required=True)
    e_shr.add_argument("--trials", type=int, required=True)
    e_shr.add_argument("--seed", type=int, default=None)
    e_shr.add_argument("--budget-multiplier", type=float, default=1.0)
    _fmt(e_shr)
    e_vs = exp_sub.add_parser("vertex-sampling")
    e_vs.add_argument("--graph-spec", type=str, required=True)
    e_vs.add_argument("--p", type=float, required=True)
    e_vs.add_argument("--trials", type=int, required=True)
    e_vs.add_argument("--seed", type=int, default=None)
    _fmt(e_vs)
    e_dis = exp_sub.add_parser("distinguisher")
    e_dis.add_argument("--algorithm", choices=("random-order", "multipass", "dynamic"), required=True)
    e_dis.add_argument("--small", type=str, required=True, help="graph spec with chi <= q")
    e_dis.add_argument("--large", type=str, required=True, help="graph spec with large chi")
    e_dis.add_argument("--q", type=int, required=True)
    e_dis.add_argument("--t", type=int, required=True)
    e_dis.add_argument("--trials", type=int, required=True)
    e_dis.add_argument("--seed", type=int, default=None)
    e_dis.add_argument("--extra-pairs", type=int, default=0)
    e_dis.add_argument("--cycles", type=int, default=1)
    _fmt(e_dis)

    return parser


def _out(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--out", type=str, default=None, help="output path")


def _fmt(p: argparse.ArgumentParser) -> None:
    _out(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _family_from_args(args) -> clusterpack.SetFamily:
    if args.fano is not None:
        return clusterpack.fano_family(args.fano)
    if not args.family:
        raise ArgumentError("dense construction needs --family FILE or --fano COUNT")
    with open(args.family, "r", encoding="utf-8") as f:
        payload = json.load(f)
    return clusterpack.SetFamily(
        d=payload["d"],
        w=payload["w"],
        theta=payload["theta"],
        sets=tuple(tuple(s) for s in payload["sets"]),
    )


def _save_cpg(cpg, path: str | None) -> None:
    if path is None:
        raise ArgumentError("cluster packing graphs need -o <path>")
    clusterpack.write_cpg(cpg, path)


def _verdict_json(verdict: Verdict) -> str:
    payload: dict = {"label": verdict.label, "metadata": verdict.metadata}
    if verdict.coloring is not None:
        payload["num_colors"] = verdict.coloring.num_colors
        payload["colors"] = verdict.coloring.colors.tolist()
    if verdict.evidence is not None:
        payload["evidence"] = {
            "kind": verdict.evidence.kind,
            "index": verdict.evidence.index,
            "subgraph_edges": sorted(list(e) for e in verdict.evidence.subgraph.edges),
        }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _dispatch(args) -> int:
    if args.command == "gen":
        return _dispatch_gen(args)
    if args.command == "stream":
        g = read_graph(args.graph)
        if args.target == "shuffle":
            stream = to_insertion_stream(g, "shuffled", seed=args.seed)
        else:
            stream = to_dynamic_stream(
                g, extra_pairs=args.extra_pairs, cycles=args.cycles, seed=args.seed
            )
        if args.out is None:
            raise ArgumentError("stream subcommands need -o <path>")
        write_stream(stream, args.out)
        return EXIT_OK
    if args.command == "run":
        stream = read_stream(args.stream)
        if args.target == "random-order":
            verdict = run_random_order(
                stream, args.q, args.t, budget_multiplier=args.budget_multiplier
            )
        elif args.target == "multipass":
            source = StreamSource(stream, max_passes=args.t)
            verdict = run_multipass(
                source, args.q, args.t, seed=args.seed,
                budget_multiplier=args.budget_multiplier,
            )
        else:
            verdict = run_dynamic(stream, args.q, args.t, seed=args.seed)
        _emit(_verdict_json(verdict), args.out)
        return EXIT_OK
    if args.command == "verify":
        return _dispatch_verify(args)
    if args.command == "experiment":
        return _dispatch_experiment(args)
    raise ArgumentError(f"unknown command {args.command!r}")


def _dispatch_gen(args) -> int:
    if args.target == "basic":
        _save_cpg(clusterpack.construct_lines_basic(args.n, args.k), args.out)
    elif args.target == "grouped":
        _save_cpg(clusterpack.construct_lines_grouped(args.n, args.r, args.k), args.out)
    elif args.target == "dense":
        family = _family_from_args(args)
        params = clusterpack.DenseParams(k=args.k, d=args.d, p=args.p, family=family)
        _save_cpg(clusterpack.construct_dense(params), args.out)
    elif args.target == "lift":
        cpg = clusterpack.read_cpg(args.input)
        _save_cpg(clusterpack.lift_to_k_colorable(cpg), args.out)
    elif args.target == "family":
        mode = "fano" if args.fano else "random"
        fam = clusterpack.gen_intersection_family(
            args.d, args.w, args.theta, args.count, seed=args.seed, mode=mode
        )
        payload = {
            "d": fam.d,
            "w": fam.w,
            "theta": fam.theta,
            "sets": [list(s) for s in fam.sets],
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    elif args.target == "two-player":
        inst = instances.gen_two_player(args.n, args.k, seed=args.seed, ans_override=args.ans)
        _emit(instances.instance_to_json(inst), args.out)
    elif args.target == "recursive":
        plan = _plan_from_args(args)
        inst = instances.gen_recursive(
            args.p, args.k, plan=plan, seed=args.seed, ans_override=args.ans
        )
        _emit(instances.instance_to_json(inst), args.out)
    elif args.target == "simultaneous":
        inst = instances.gen_simultaneous(
            args.k, args.n_base, seed=args.seed, theta_override=args.theta
        )
        _emit(instances.instance_to_json(inst), args.out)
    elif args.target == "graph":
        spec = GraphSpec.parse(args.spec)
        from .seeds import rng_for

        g = spec.build(rng_for(args.seed, 0))
        if args.out is None:
            raise ArgumentError("gen graph needs -o <path>")
        write_graph(g, args.out)
    else:
        raise ArgumentError(f"unknown gen target {args.target!r}")
    return EXIT_OK


def _plan_from_args(args) -> instances.LevelPlan | None:
    if args.n2 is None and not args.level_n and not args.level_t:
        return None
    default = instances.default_level_plan(args.p, args.k)
    n2 = args.n2 if args.n2 is not None else default.n2
    # recompute level sizes for the custom base, then apply overrides
    levels = []
    prev_n = n2
    for idx in range(max(0, args.p - 2)):
        r = 4 * prev_n
        n = (args.k * r) ** 2
        if args.level_n and idx < len(args.level_n):
            n = args.level_n[idx]
        t = default.levels[idx].t if idx < len(default.levels) else 8
        if args.level_t and idx < len(args.level_t):
            t = args.level_t[idx]
        levels.append(instances.LevelSpec(n=n, t=t))
        prev_n = n
    return instances.LevelPlan(n2=n2, levels=tuple(levels))


def _dispatch_verify(args) -> int:
    if args.target == "cpg":
        cpg = clusterpack.read_cpg(args.file)
        report = clusterpack.verify_cluster_packing(cpg)
        print(report)
        return EXIT_OK if report.ok else EXIT_VERIFY_FAIL
    if args.target == "instance":
        inst = instances.read_instance(args.file)
        report = instances.verify_instance(inst)
        print(report)
        return EXIT_OK if report.ok else EXIT_VERIFY_FAIL
    if args.target == "coloring":
        g = read_graph(args.graph)
        c = read_coloring(args.coloring)
        if c.n != g.n:
            print(f"coloring has n={c.n}, graph has n={g.n}: FAIL")
            return EXIT_VERIFY_FAIL
        ok = is_proper_coloring(g, c)
        print(f"proper: {'pass' if ok else 'FAIL'} ({c.num_colors} colors)")
        return EXIT_OK if ok else EXIT_VERIFY_FAIL
    raise ArgumentError(f"unknown verify target {args.target!r}")


def _dispatch_experiment(args) -> int:
    if args.target == "shrinkage":
        result = experiment_edge_shrinkage(
            GraphSpec.parse(args.graph_spec),
            args.t,
            args.trials,
            seed=args.seed,
            budget_multiplier=args.budget_multiplier,
        )
    elif args.target == "vertex-sampling":
        result = experiment_vertex_sampling(
            GraphSpec.parse(args.graph_spec), args.p, args.trials, seed=args.seed
        )
    else:
        result = experiment_distinguisher(
            args.algorithm,
            GraphSpec.parse(args.small),
            GraphSpec.parse(args.large),
            args.q,
            args.t,
            args.trials,
            seed=args.seed,
            extra_pairs=args.extra_pairs,
            cycles=args.cycles,
        )
    _emit_result(result, args)
    return EXIT_OK


def _emit_result(result: ExperimentResult, args) -> None:
    if args.out is None:
        text = result.to_json() if args.format == "json" else result.to_csv()
        sys.stdout.write(text)
    else:
        write_result(result, args.out, fmt=args.format)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ArgumentError, GenerationError, ResourceLimitError, UnsupportedInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except (FormatError, StreamValidationError, PassLimitError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
