"""Command-line interface.

Subcommands: generate (synthetic graphs to edge-list files), linegraph
(export line-graph matrices), sample (run one sampler), eval (metrics for one
method on one graph), experiment (full config-driven sweep). Exit codes:
0 success, 1 usage error, 2 data error. Relative output paths resolve under
$EDGESAMPLING_OUTDIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import EdgeSamplingError
from .experiment import (
    ExperimentConfig,
    config_from_mapping,
    csv_text,
    parse_config_file,
    run_experiment,
)
from .generators import FAMILIES, GeneratorSpec, generate
from .graphio import (
    read_edge_list,
    read_matrix_market,
    write_coords,
    write_edge_list,
    write_matrix_market,
)
from .linegraph import edge_laplacian, line_graph
from .samplers import METHODS, SampleResult, SamplerParams, sample


def _outpath(p: str) -> str:
    base = os.environ.get("EDGESAMPLING_OUTDIR")
    if base and not os.path.isabs(p):
        # the redirect dir is tool-managed: create missing parents so a
        # nested --out works the same as it does without the redirect
        p = os.path.join(base, p)
        parent = os.path.dirname(p)
        if parent:
            os.makedirs(parent, exist_ok=True)
    return p


def _read_graph(path: str):
    if path.endswith(".mtx"):
        return read_matrix_market(path)
    return read_edge_list(path)


def _size_token(tok: str):
    return float(tok) if "." in tok else int(tok)


def _sampler_params(args) -> SamplerParams:
    return SamplerParams(
        tau=args.tau,
        cpa_degree=args.cpa_degree,
        epsilon=args.epsilon,
        eta=args.eta,
        operator=args.operator,
        filtering=args.filtering,
    )


def _add_sampler_flags(p: argparse.ArgumentParser):
    p.add_argument("--tau", type=float, default=4.0, help="kernel decay rate")
    p.add_argument("--cpa-degree", type=int, default=6,
                   help="Chebyshev approximation degree")
    p.add_argument("--epsilon", type=float, default=1e-8,
                   help="regularizer of the accelerated kernel")
    p.add_argument("--eta", type=float, default=None,
                   help="greedy threshold (default: max column l1 norm)")
    p.add_argument("--operator", choices=("edge", "line"), default="edge",
                   help="spectral operator for selection")
    p.add_argument("--filtering", choices=("auto", "exact", "cpa"), default="auto")


def sample_result_to_dict(res: SampleResult) -> dict:
    return {
        "method": res.method,
        "requested_size": res.requested_size,
        "seed": res.seed,
        "selected": [int(a) for a in res.selected],
        "per_step_scores": (
            None if res.per_step_scores is None
            else [float(v) for v in res.per_step_scores]
        ),
        "new_weights": (
            None if res.new_weights is None
            else [float(v) for v in res.new_weights]
        ),
    }


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(
        family=args.family,
        n=args.n,
        k=args.k,
        p=args.p,
        num_communities=args.communities,
        num_clusters=args.clusters,
        weighted=args.weighted,
        seed=args.seed,
    )
    g = generate(spec)
    write_edge_list(g, _outpath(args.out))
    if args.coords_out:
        write_coords(g, _outpath(args.coords_out))
    print(f"wrote {g.num_nodes} nodes, {g.num_edges} edges to {args.out}")
    return 0


def _cmd_linegraph(args) -> int:
    g = _read_graph(args.infile)
    if args.what == "edge-laplacian":
        M = edge_laplacian(g).matrix
    else:
        lg = line_graph(g, weighted=not args.unweighted)
        M = lg.adjacency if args.what == "adjacency" else lg.laplacian
    write_matrix_market(M, _outpath(args.out))
    print(f"wrote {args.what} ({M.shape[0]}x{M.shape[1]}) to {args.out}")
    return 0


def _cmd_sample(args) -> int:
    g = _read_graph(args.infile)
    res = sample(g, args.method, args.size, seed=args.seed,
                 params=_sampler_params(args))
    with open(_outpath(args.out), "w", encoding="utf-8") as fh:
        json.dump(sample_result_to_dict(res), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{args.method} selected {res.selected.shape[0]} edges -> {args.out}")
    return 0


def _cmd_eval(args) -> int:
    cfg = ExperimentConfig(
        family=None,
        graph_path=args.infile,
        methods=tuple(args.method) if args.method else METHODS,
        sizes=tuple(_size_token(t) for t in args.size.split(",")),
        trials=args.trials,
        bandwidth=args.bandwidth,
        cluster_k=args.cluster_k,
        diffusion_support=args.diffusion_support,
        master_seed=args.master_seed,
        tau=args.tau,
        cpa_degree=args.cpa_degree,
        epsilon=args.epsilon,
        eta=args.eta,
        operator=args.operator,
        filtering=args.filtering,
        out_json=_outpath(args.out) if args.out else None,
        out_csv=_outpath(args.csv) if args.csv else None,
    )
    record = run_experiment(cfg)
    wrote = [p for p in (args.out, args.csv) if p]
    dest = f" to {', '.join(wrote)}" if wrote else ""
    print(f"ran {len(record.rows)} rows{dest}")
    if not wrote:
        print(csv_text(record), end="")
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig()
    if args.config:
        cfg = config_from_mapping(parse_config_file(args.config), cfg)
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise EdgeSamplingError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()
    if overrides:
        cfg = config_from_mapping(overrides, cfg)
    if args.out_csv:
        cfg = config_from_mapping({"out_csv": _outpath(args.out_csv)}, cfg)
    if args.out_json:
        cfg = config_from_mapping({"out_json": _outpath(args.out_json)}, cfg)
    record = run_experiment(cfg)
    dests = ", ".join(p for p in (cfg.out_csv, cfg.out_json) if p) or "memory"
    print(f"ran {len(record.rows)} rows (config {record.config_hash}) -> {dests}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgesampling",
        description="Edge sampling of graphs via node sampling on line graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic graph to an edge list")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--k", type=int, default=6, help="neighbors for kNN families")
    p.add_argument("--p", type=float, default=0.1, help="edge probability")
    p.add_argument("--communities", type=int, default=5)
    p.add_argument("--clusters", type=int, default=2)
    p.add_argument("--weighted", action="store_true",
                   help="draw U(0.5, 1.5) weights (erdos_renyi only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--coords-out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("linegraph", help="export line-graph matrices")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--what", choices=("adjacency", "laplacian", "edge-laplacian"),
                   default="adjacency")
    p.add_argument("--unweighted", action="store_true",
                   help="ignore source weights (adjacency/laplacian only)")
    p.set_defaults(func=_cmd_linegraph)

    p = sub.add_parser("sample", help="run one sampler on a graph file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--size", type=int, required=True,
                   help="edges to keep (draw count q for gsparse)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    _add_sampler_flags(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("eval", help="metrics for chosen methods on one graph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=METHODS, action="append",
                   help="repeatable; defaults to every method")
    p.add_argument("--size", required=True,
                   help="edge count, fraction with a dot, or comma list")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--bandwidth", type=int, default=None)
    p.add_argument("--cluster-k", type=int, default=None)
    p.add_argument("--diffusion-support", type=int, default=20)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out", default=None, help="JSON report path")
    p.add_argument("--csv", default=None, help="CSV path")
    _add_sampler_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("experiment", help="full config-driven sweep")
    p.add_argument("--config", default=None, help="flat key = value file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a config key (repeatable)")
    p.add_argument("--out-csv", default=None)
    p.add_argument("--out-json", default=None)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 on --help
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except EdgeSamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
