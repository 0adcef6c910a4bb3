"""Experiment orchestration: configuration, seed fan-out, trials, emission.

A run sweeps (method x size x trial) over one graph. Per trial it synthesizes
a bandlimited edge-weight target, a binary diffusion source, and a clustering
seed; per (method, size) it samples an edge subset and scores the sparsified
graph with the enabled metrics. Deterministic samplers are ranked once at
full length and sliced per size (prefix monotonicity), so adding sizes or
trials never changes earlier rows.

Everything is a pure function of the config: trial seeds are derived from the
master seed by hashing, and timing fields are zeroed unless explicitly
enabled, so identical configs produce byte-identical CSV and JSON.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone
from importlib import metadata as _im

import numpy as np

from .errors import EdgeSamplingError, SizeTooLargeError
from .filters import eig_sym, lambda_max_bound
from .generators import FAMILIES, GeneratorSpec, generate
from .graphio import read_edge_list, read_matrix_market
from .graphs import Graph, laplacian, subgraph
from .linegraph import line_graph
from .metrics import (
    DEFAULT_NOISE_STD,
    DEFAULT_SIGNAL_STD,
    SynthesisSpec,
    cluster_inconsistency,
    diffusion_mse,
    heat_diffuse,
    interp_bandlimited,
    isolated_nodes,
    reconstruction_error,
    spectral_cluster,
    synth_edge_weights,
)
from .samplers import (
    DETERMINISTIC_METHODS,
    METHODS,
    SamplerParams,
    gsparse_select,
    sample,
)

CSV_COLUMNS = (
    "method",
    "size",
    "seed",
    "recon_error",
    "recon_error_normalized",
    "mse",
    "mse_db",
    "inconsistency",
    "isolated_nodes",
    "wall_ms",
)

# fields that do not change results and are excluded from the config hash
NON_SEMANTIC_FIELDS = ("out_csv", "out_json", "record_timing")


def tool_version() -> str:
    try:
        return _im.version("edgesampling")
    except _im.PackageNotFoundError:
        return "0.0.0"


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one experiment run.

    Exactly one graph source applies: ``graph_path`` when set, otherwise the
    generator named by ``family``. ``sizes`` entries are absolute edge counts
    when integers and fractions of |E| when floats (rounded, minimum 1).
    ``bandwidth`` None means |E| // 10. ``cluster_k`` None means the family
    default (communities for the community family, blobs for knn, otherwise
    the clustering metric is skipped). ``diffusion_t`` None means
    4 / lambda_max of the base graph Laplacian.
    """

    family: str | None = "community"
    graph_path: str | None = None
    n: int = 100
    gen_k: int = 6
    gen_p: float = 0.1
    num_communities: int = 5
    num_clusters: int = 2
    er_weighted: bool = False
    gen_seed: int = 0
    methods: tuple = METHODS
    sizes: tuple = (0.5,)
    trials: int = 10
    bandwidth: int | None = None
    signal_std: float = DEFAULT_SIGNAL_STD
    noise_std: float = DEFAULT_NOISE_STD
    interp_noise_std: float = 0.0
    ridge: float = 1e-8
    diffusion_t: float | None = None
    diffusion_support: int = 20
    cluster_k: int | None = None
    metric_recon: bool = True
    metric_diffusion: bool = True
    metric_clustering: bool = True
    metric_isolated: bool = True
    tau: float = 4.0
    cpa_degree: int = 6
    epsilon: float = 1e-8
    eta: float | None = None
    operator: str = "edge"
    filtering: str = "auto"
    dense_limit: int = 3000
    gsparse_reweight: bool = True
    master_seed: int = 0
    record_timing: bool = False
    out_csv: str | None = None
    out_json: str | None = None


def fanout_seed(master: int, label) -> int:
    """Stable 64-bit sub-seed derived from the master seed and a label."""
    digest = hashlib.sha256(f"{master}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def config_hash(cfg: ExperimentConfig) -> str:
    """Hash of the semantic fields; output paths and timing do not count."""
    payload = {
        f.name: getattr(cfg, f.name)
        for f in fields(cfg)
        if f.name not in NON_SEMANTIC_FIELDS
    }
    blob = json.dumps(payload, sort_keys=True, default=list)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def resolve_sizes(sizes, num_edges: int) -> list[int]:
    """Concrete edge counts: ints pass through, floats scale |E|."""
    out = []
    for s in sizes:
        if isinstance(s, float):
            k = max(int(round(s * num_edges)), 1)
        else:
            k = int(s)
        if not 1 <= k <= num_edges:
            raise SizeTooLargeError(f"size {s} resolves to {k}, outside [1, {num_edges}]")
        out.append(k)
    return out


def load_graph(cfg: ExperimentConfig) -> Graph:
    if cfg.graph_path is not None:
        if str(cfg.graph_path).endswith(".mtx"):
            return read_matrix_market(cfg.graph_path)
        return read_edge_list(cfg.graph_path)
    if cfg.family not in FAMILIES:
        raise ValueError(f"unknown family {cfg.family!r}; valid: {FAMILIES}")
    spec = GeneratorSpec(
        family=cfg.family,
        n=cfg.n,
        k=cfg.gen_k,
        p=cfg.gen_p,
        num_communities=cfg.num_communities,
        num_clusters=cfg.num_clusters,
        weighted=cfg.er_weighted,
        seed=cfg.gen_seed,
    )
    return generate(spec)


def _resolve_cluster_k(cfg: ExperimentConfig) -> int | None:
    if cfg.cluster_k is not None:
        return cfg.cluster_k
    if cfg.graph_path is None:
        if cfg.family == "community":
            return cfg.num_communities
        if cfg.family == "knn":
            return cfg.num_clusters
    return None


@dataclass(frozen=True)
class RunRecord:
    """One experiment's rows and aggregates, ready for serialization."""

    config_hash: str
    tool_version: str
    created_utc: str
    rows: tuple
    aggregates: tuple
    gsparse_realized: tuple


def _annotate(exc: Exception, method: str, size: int, trial: int) -> Exception:
    note = f"while evaluating method={method} size={size} trial={trial}"
    if hasattr(exc, "add_note"):
        exc.add_note(note)
    return exc


def run_experiment(cfg: ExperimentConfig, graph: Graph | None = None) -> RunRecord:
    """Execute the full sweep and optionally write CSV/JSON outputs."""
    for m in cfg.methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; valid methods: {METHODS}")
    g0 = load_graph(cfg) if graph is None else graph
    E, N = g0.num_edges, g0.num_nodes
    sizes = resolve_sizes(cfg.sizes, E)
    K = cfg.bandwidth if cfg.bandwidth is not None else max(E // 10, 1)
    cluster_k = _resolve_cluster_k(cfg)

    lg_spec = eig_sym(line_graph(g0, weighted=False).laplacian.toarray())
    V_K = lg_spec.eigenvectors[:, :K]
    L0 = laplacian(g0)
    if cfg.diffusion_t is not None:
        t_diff = cfg.diffusion_t
    else:
        if N <= cfg.dense_limit:
            lam_max0 = float(np.linalg.eigvalsh(L0.toarray())[-1])
        else:
            lam_max0 = lambda_max_bound(L0)
        t_diff = 4.0 / max(lam_max0, 1e-12)

    params = SamplerParams(
        tau=cfg.tau,
        cpa_degree=cfg.cpa_degree,
        epsilon=cfg.epsilon,
        eta=cfg.eta,
        operator=cfg.operator,
        filtering=cfg.filtering,
        dense_limit=cfg.dense_limit,
    )

    rankings = {}
    for m in cfg.methods:
        if m in DETERMINISTIC_METHODS:
            rankings[m] = sample(g0, m, E, params=params).selected

    raw_rows = []
    gsparse_realized: dict[int, list[int]] = {}
    for trial in range(cfg.trials):
        seed_t = fanout_seed(cfg.master_seed, trial)
        w = synth_edge_weights(
            lg_spec,
            SynthesisSpec(
                bandwidth=K,
                signal_std=cfg.signal_std,
                noise_std=cfg.noise_std,
                seed=fanout_seed(cfg.master_seed, f"{trial}:synth"),
            ),
        )
        x = np.zeros(N)
        rng_x = np.random.default_rng(fanout_seed(cfg.master_seed, f"{trial}:x"))
        x[rng_x.choice(N, size=min(cfg.diffusion_support, N), replace=False)] = 1.0
        y0 = heat_diffuse(L0, x, t_diff, dense_limit=cfg.dense_limit) \
            if cfg.metric_diffusion else None
        cseed = fanout_seed(cfg.master_seed, f"{trial}:cluster")
        labels0 = (
            spectral_cluster(g0, cluster_k, cseed, dense_limit=cfg.dense_limit)
            if cfg.metric_clustering and cluster_k is not None
            else None
        )
        for m in cfg.methods:
            for size in sizes:
                try:
                    row = _evaluate_row(
                        cfg, g0, m, size, trial, seed_t, rankings, params,
                        w, V_K, x, y0, labels0, cluster_k, t_diff,
                        gsparse_realized,
                    )
                except EdgeSamplingError as exc:
                    raise _annotate(exc, m, size, trial)
                raw_rows.append(row)

    raw_rows.sort(key=lambda r: (r["method"], r["size"], r["_trial"]))
    rows = tuple(
        {k: v for k, v in r.items() if not k.startswith("_")} for r in raw_rows
    )
    aggregates = _aggregate(rows)
    realized = tuple(
        {"size": s, "min_edges": min(v), "max_edges": max(v)}
        for s, v in sorted(gsparse_realized.items())
    )
    record = RunRecord(
        config_hash=config_hash(cfg),
        tool_version=tool_version(),
        created_utc=datetime.now(timezone.utc).isoformat() if cfg.record_timing else "",
        rows=rows,
        aggregates=aggregates,
        gsparse_realized=realized,
    )
    if cfg.out_csv:
        write_csv(record, cfg.out_csv)
    if cfg.out_json:
        write_json(record, cfg.out_json)
    return record


def _evaluate_row(cfg, g0, method, size, trial, seed_t, rankings, params,
                  w, V_K, x, y0, labels0, cluster_k, t_diff, gsparse_realized):
    t0 = time.perf_counter() if cfg.record_timing else 0.0
    if method == "gsparse":
        res = gsparse_select(
            g0, size, fanout_seed(cfg.master_seed, f"gsparse:{size}:{trial}")
        )
        F = res.selected
        new_weights = res.new_weights if cfg.gsparse_reweight else None
        gsparse_realized.setdefault(size, []).append(int(F.shape[0]))
    else:
        F = rankings[method][:size]
        new_weights = None

    row = {
        "method": method,
        "size": int(size),
        "seed": int(seed_t),
        "recon_error": None,
        "recon_error_normalized": None,
        "mse": None,
        "mse_db": None,
        "inconsistency": None,
        "isolated_nodes": None,
        "wall_ms": 0.0,
        "_trial": trial,
    }

    if cfg.metric_recon:
        w_F = w[F]
        if cfg.interp_noise_std > 0:
            rng_n = np.random.default_rng(
                fanout_seed(cfg.master_seed, f"{trial}:interp-noise")
            )
            w_F = w_F + rng_n.normal(0.0, cfg.interp_noise_std, w_F.shape[0])
        w_rec = interp_bandlimited(V_K, F, w_F, cfg.ridge)
        # sampled edges keep their observed weights; the bandlimited model
        # only fills in the removed ones, so F = E reconstructs exactly
        w_rec[np.asarray(F, dtype=np.int64)] = w_F
        rec = reconstruction_error(w, w_rec)
        row["recon_error"] = rec.error
        row["recon_error_normalized"] = rec.normalized
    needs_g1 = cfg.metric_diffusion or (cfg.metric_clustering and labels0 is not None)
    if needs_g1:
        g1 = subgraph(g0, F, new_weights=new_weights)
    if cfg.metric_diffusion:
        y1 = heat_diffuse(laplacian(g1), x, t_diff, dense_limit=cfg.dense_limit)
        dm = diffusion_mse(y0, y1)
        row["mse"] = dm.mse
        row["mse_db"] = dm.db
    if cfg.metric_clustering and labels0 is not None:
        cseed = fanout_seed(cfg.master_seed, f"{trial}:cluster")
        labels1 = spectral_cluster(g1, cluster_k, cseed, dense_limit=cfg.dense_limit)
        row["inconsistency"] = cluster_inconsistency(labels0, labels1)
    if cfg.metric_isolated:
        row["isolated_nodes"] = isolated_nodes(g0, F)
    if cfg.record_timing:
        row["wall_ms"] = (time.perf_counter() - t0) * 1000.0
    return row


_AGG_FIELDS = (
    "recon_error",
    "recon_error_normalized",
    "mse",
    "mse_db",
    "inconsistency",
    "isolated_nodes",
)


def _aggregate(rows) -> tuple:
    groups: dict[tuple, list] = {}
    for r in rows:
        groups.setdefault((r["method"], r["size"]), []).append(r)
    out = []
    for (method, size), rs in sorted(groups.items()):
        agg = {"method": method, "size": size, "trials": len(rs)}
        for f in _AGG_FIELDS:
            vals = [r[f] for r in rs if r[f] is not None]
            if vals:
                agg[f"{f}_mean"] = float(np.mean(vals))
                agg[f"{f}_min"] = float(np.min(vals))
                agg[f"{f}_max"] = float(np.max(vals))
            else:
                agg[f"{f}_mean"] = None
                agg[f"{f}_min"] = None
                agg[f"{f}_max"] = None
        out.append(agg)
    return tuple(out)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def csv_text(record: RunRecord) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in record.rows:
        lines.append(",".join(_csv_cell(r[c]) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def write_csv(record: RunRecord, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(record))


def record_to_dict(record: RunRecord) -> dict:
    return {
        "config_hash": record.config_hash,
        "tool_version": record.tool_version,
        "created_utc": record.created_utc,
        "rows": list(record.rows),
        "aggregates": list(record.aggregates),
        "gsparse_realized": list(record.gsparse_realized),
    }


def json_text(record: RunRecord) -> str:
    return json.dumps(record_to_dict(record), indent=2, sort_keys=True) + "\n"


def write_json(record: RunRecord, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json_text(record))


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(s: str) -> bool:
    low = s.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_optional_int(s: str):
    low = s.strip().lower()
    return None if low in ("", "none", "auto") else int(s)


def _parse_optional_float(s: str):
    low = s.strip().lower()
    return None if low in ("", "none", "auto") else float(s)


def _parse_optional_str(s: str):
    low = s.strip().lower()
    return None if low in ("", "none") else s.strip()


def _parse_sizes(s: str) -> tuple:
    out = []
    for tok in s.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(float(tok) if "." in tok else int(tok))
    return tuple(out)


def _parse_methods(s: str) -> tuple:
    return tuple(tok.strip() for tok in s.split(",") if tok.strip())


_COERCERS = {
    "family": _parse_optional_str,
    "graph_path": _parse_optional_str,
    "n": int,
    "gen_k": int,
    "gen_p": float,
    "num_communities": int,
    "num_clusters": int,
    "er_weighted": _parse_bool,
    "gen_seed": int,
    "methods": _parse_methods,
    "sizes": _parse_sizes,
    "trials": int,
    "bandwidth": _parse_optional_int,
    "signal_std": float,
    "noise_std": float,
    "interp_noise_std": float,
    "ridge": float,
    "diffusion_t": _parse_optional_float,
    "diffusion_support": int,
    "cluster_k": _parse_optional_int,
    "metric_recon": _parse_bool,
    "metric_diffusion": _parse_bool,
    "metric_clustering": _parse_bool,
    "metric_isolated": _parse_bool,
    "tau": float,
    "cpa_degree": int,
    "epsilon": float,
    "eta": _parse_optional_float,
    "operator": str,
    "filtering": str,
    "dense_limit": int,
    "gsparse_reweight": _parse_bool,
    "master_seed": int,
    "record_timing": _parse_bool,
    "out_csv": _parse_optional_str,
    "out_json": _parse_optional_str,
}


def parse_config_file(path) -> dict:
    """Flat key = value file with '#' comments; returns raw string pairs."""
    pairs = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    return pairs


def config_from_mapping(pairs: dict, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Apply string key/value settings on top of a base config."""
    cfg = base if base is not None else ExperimentConfig()
    updates = {}
    for key, value in pairs.items():
        if key not in _COERCERS:
            raise ValueError(f"unknown config key {key!r}")
        if value is None:
            continue
        updates[key] = _COERCERS[key](value) if isinstance(value, str) else value
    return replace(cfg, **updates)
