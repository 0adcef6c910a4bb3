"""Seeded synthetic graph families for the sparsification benchmark.

All families are deterministic functions of their seed. Geometric families
(sensor, community, knn) store node coordinates and weight every edge by
exp(-dist / 0.3); the clustered families also store ground-truth labels.
kNN neighborhoods are symmetrized by union: an edge exists when either
endpoint lists the other among its k nearest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .graphs import Graph, build_graph

WEIGHT_SCALE = 0.3  # length scale of exp(-dist / scale) edge weights

FAMILIES = ("sensor", "erdos_renyi", "community", "knn")


def _geometric_weight(pts: np.ndarray, i, j) -> np.ndarray:
    return np.exp(-np.linalg.norm(pts[i] - pts[j], axis=-1) / WEIGHT_SCALE)


def _knn_union_pairs(pts: np.ndarray, k: int) -> np.ndarray:
    """Unordered node pairs of the union-symmetrized kNN graph."""
    N = pts.shape[0]
    if k >= N:
        raise ValueError(f"k={k} must be below the number of points {N}")
    _, idx = cKDTree(pts).query(pts, k=k + 1)
    idx = np.atleast_2d(idx)[:, 1:]  # drop self
    src = np.repeat(np.arange(N), k)
    dst = idx.reshape(-1)
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    return np.unique(np.column_stack([lo, hi]), axis=0)


def _geometric_graph(pts: np.ndarray, pairs: np.ndarray, labels=None) -> Graph:
    w = _geometric_weight(pts, pairs[:, 0], pairs[:, 1])
    g = build_graph(pts.shape[0],
                    [(int(i), int(j), float(wij)) for (i, j), wij in zip(pairs, w)],
                    coords=pts)
    if labels is None:
        return g
    return Graph(num_nodes=g.num_nodes, edges=g.edges, weights=g.weights,
                 coords=g.coords, labels=np.asarray(labels, dtype=np.int64))


def gen_sensor(N: int, k: int = 6, seed: int = 0) -> Graph:
    """Random sensor network: uniform points in the unit square, kNN edges."""
    rng = np.random.default_rng(seed)
    pts = rng.random((N, 2))
    return _geometric_graph(pts, _knn_union_pairs(pts, k))


def gen_erdos_renyi(N: int, p: float, seed: int = 0, weighted: bool = False) -> Graph:
    """Independent edges with probability p; unit weights unless ``weighted``.

    The weighted variant draws U(0.5, 1.5) per edge.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(N, k=1)
    mask = rng.random(iu[0].shape[0]) < p
    edges = np.column_stack([iu[0][mask], iu[1][mask]]).astype(np.int64)
    if weighted:
        w = rng.uniform(0.5, 1.5, edges.shape[0])
    else:
        w = np.ones(edges.shape[0])
    # triu order is already lexicographic, so this is canonical
    return Graph(num_nodes=N, edges=edges, weights=w)


def gen_community(N: int, c: int, seed: int = 0,
                  p_intra: float = 0.7, p_inter: float = 0.01) -> Graph:
    """c near-equal communities, dense inside and sparse across.

    Nodes get planted coordinates around per-community centers on a circle;
    edge weights are the geometric exp(-dist / 0.3) of those coordinates. A
    deterministic spanning repair joins any leftover components so the result
    is always connected.
    """
    if c > N:
        raise ValueError(f"need at least one node per community: c={c}, N={N}")
    rng = np.random.default_rng(seed)
    labels = np.concatenate(
        [np.full(part.shape[0], ci, dtype=np.int64)
         for ci, part in enumerate(np.array_split(np.arange(N), c))]
    )
    angles = 2.0 * np.pi * np.arange(c) / c
    centers = 1.5 * np.column_stack([np.cos(angles), np.sin(angles)])
    pts = centers[labels] + rng.normal(0.0, 0.15, (N, 2))
    iu = np.triu_indices(N, k=1)
    thresh = np.where(labels[iu[0]] == labels[iu[1]], p_intra, p_inter)
    mask = rng.random(iu[0].shape[0]) < thresh
    pairs = np.column_stack([iu[0][mask], iu[1][mask]])
    pairs = _repair_connectivity(N, pairs)
    return _geometric_graph(pts, pairs, labels=labels)


def _repair_connectivity(N: int, pairs: np.ndarray) -> np.ndarray:
    """Add edges joining each extra component's lowest node to node anchor."""
    if pairs.shape[0]:
        adj = sparse.coo_matrix(
            (np.ones(pairs.shape[0]), (pairs[:, 0], pairs[:, 1])), shape=(N, N)
        )
        adj = adj + adj.T
    else:
        adj = sparse.coo_matrix((N, N))
    n_comp, comp = connected_components(adj.tocsr(), directed=False)
    if n_comp <= 1:
        return pairs
    anchors = np.array(
        [int(np.flatnonzero(comp == ci)[0]) for ci in range(n_comp)]
    )
    extra = np.column_stack(
        [np.minimum(anchors[0], anchors[1:]), np.maximum(anchors[0], anchors[1:])]
    )
    return np.unique(np.vstack([pairs, extra]), axis=0)


def gen_knn_clusters(N: int, k: int = 6, num_clusters: int = 2, seed: int = 0) -> Graph:
    """kNN graph over Gaussian blobs, with blob labels stored."""
    rng = np.random.default_rng(seed)
    labels = np.concatenate(
        [np.full(part.shape[0], ci, dtype=np.int64)
         for ci, part in enumerate(np.array_split(np.arange(N), num_clusters))]
    )
    if num_clusters == 1:
        centers = np.zeros((1, 2))
    else:
        angles = 2.0 * np.pi * np.arange(num_clusters) / num_clusters
        centers = 2.0 * np.column_stack([np.cos(angles), np.sin(angles)])
    pts = centers[labels] + rng.normal(0.0, 0.5, (N, 2))
    return _geometric_graph(pts, _knn_union_pairs(pts, k), labels=labels)


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative description of one synthetic graph instance."""

    family: str
    n: int
    k: int = 6
    p: float = 0.1
    num_communities: int = 5
    num_clusters: int = 2
    weighted: bool = False
    seed: int = 0


def generate(spec: GeneratorSpec) -> Graph:
    """Build the graph a GeneratorSpec describes."""
    if spec.n < 2:
        raise ValueError(f"need n >= 2, got {spec.n}")
    if spec.family == "sensor":
        return gen_sensor(spec.n, spec.k, spec.seed)
    if spec.family == "erdos_renyi":
        return gen_erdos_renyi(spec.n, spec.p, spec.seed, weighted=spec.weighted)
    if spec.family == "community":
        return gen_community(spec.n, spec.num_communities, spec.seed)
    if spec.family == "knn":
        return gen_knn_clusters(spec.n, spec.k, spec.num_clusters, spec.seed)
    raise ValueError(f"unknown family {spec.family!r}; valid: {FAMILIES}")
