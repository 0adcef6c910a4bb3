"""Canonical graph representation, incidence matrices, degrees, and Laplacian.

The edge index used everywhere in this package is the lexicographic order of
the node pairs (i, j) with i < j. That order also fixes the pseudo-orientation
of the oriented incidence matrix: every edge points from its lower-numbered
endpoint to its higher-numbered one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import (
    DimensionMismatchError,
    DuplicateEdgeError,
    InvalidEdgeIdError,
    NodeOutOfRangeError,
    NonPositiveWeightError,
    SelfLoopError,
)

INCIDENCE_KINDS = ("unweighted", "weighted", "oriented")


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected weighted graph without self-loops.

    Attributes
    ----------
    num_nodes : int
        Number of nodes N; node ids are 0..N-1.
    edges : (E, 2) int ndarray
        Node pairs (i, j) with i < j, sorted lexicographically. The row
        position of a pair is its edge index.
    weights : (E,) float ndarray
        Strictly positive edge weights, aligned with ``edges``.
    coords : (N, 2) float ndarray, optional
        Node positions, when the graph came from a geometric construction.
    labels : (N,) int ndarray, optional
        Ground-truth cluster labels, when the graph came from a generator
        with planted structure.
    """

    num_nodes: int
    edges: np.ndarray
    weights: np.ndarray
    coords: np.ndarray | None = None
    labels: np.ndarray | None = None

    def __post_init__(self):
        self.edges.setflags(write=False)
        self.weights.setflags(write=False)
        if self.coords is not None:
            self.coords.setflags(write=False)
        if self.labels is not None:
            self.labels.setflags(write=False)

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Edges as (i, j, w) tuples in canonical order."""
        return [
            (int(i), int(j), float(w))
            for (i, j), w in zip(self.edges, self.weights)
        ]

    def is_unweighted(self) -> bool:
        return bool(np.all(self.weights == 1.0))


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """Node-by-edge incidence matrix in one of three conventions.

    kind "unweighted": both endpoints get 1.
    kind "weighted": both endpoints get sqrt(w).
    kind "oriented": lower endpoint gets +sqrt(w), higher endpoint -sqrt(w).
    """

    kind: str
    matrix: sparse.csc_matrix
    edge_order: np.ndarray  # the Graph's (E, 2) edge array


@dataclass(frozen=True, eq=False)
class DegreeVectors:
    """Per-node degree variants.

    weighted: sum of incident edge weights.
    sqrt_weighted: sum of square roots of incident edge weights.
    unweighted: number of incident edges.
    oriented: signed row sums of the oriented incidence matrix.
    """

    weighted: np.ndarray
    sqrt_weighted: np.ndarray
    unweighted: np.ndarray
    oriented: np.ndarray


def build_graph(num_nodes, edge_list, coords=None) -> Graph:
    """Validate and canonicalize an edge list into a Graph.

    Symmetric duplicates (j, i) are merged into (i, j); exact duplicates with
    equal weights collapse to one edge. Conflicting weights for the same node
    pair are an error.

    Raises
    ------
    SelfLoopError, NodeOutOfRangeError, NonPositiveWeightError,
    DuplicateEdgeError
    """
    num_nodes = int(num_nodes)
    if num_nodes < 0:
        raise NodeOutOfRangeError("num_nodes must be nonnegative")
    canonical: dict[tuple[int, int], float] = {}
    for i, j, w in edge_list:
        i, j, w = int(i), int(j), float(w)
        if i == j:
            raise SelfLoopError(f"self-loop at node {i}")
        if not (0 <= i < num_nodes and 0 <= j < num_nodes):
            raise NodeOutOfRangeError(f"edge ({i}, {j}) outside [0, {num_nodes})")
        if not w > 0:
            raise NonPositiveWeightError(f"edge ({i}, {j}) has weight {w}")
        key = (i, j) if i < j else (j, i)
        if key in canonical and canonical[key] != w:
            raise DuplicateEdgeError(
                f"edge {key} given twice with weights {canonical[key]} and {w}"
            )
        canonical[key] = w
    pairs = sorted(canonical)
    edges = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
    weights = np.array([canonical[p] for p in pairs], dtype=np.float64)
    if coords is not None:
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (num_nodes, 2):
            raise DimensionMismatchError(
                f"coords shape {coords.shape} does not match ({num_nodes}, 2)"
            )
    return Graph(num_nodes=num_nodes, edges=edges, weights=weights, coords=coords)


def subgraph(g: Graph, edge_ids, new_weights=None) -> Graph:
    """Graph on the same node set keeping only the given edges.

    ``new_weights`` (aligned with ``edge_ids``) replaces the kept edges'
    weights; used for samplers that reweight.
    """
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    if edge_ids.size and (edge_ids.min() < 0 or edge_ids.max() >= g.num_edges):
        raise InvalidEdgeIdError("edge id outside [0, num_edges)")
    order = np.argsort(edge_ids, kind="stable")
    edge_ids = edge_ids[order]
    weights = g.weights[edge_ids] if new_weights is None else np.asarray(
        new_weights, dtype=np.float64
    )[order]
    if new_weights is not None and not np.all(weights > 0):
        raise NonPositiveWeightError("replacement weights must be positive")
    return Graph(
        num_nodes=g.num_nodes,
        edges=g.edges[edge_ids].copy(),
        weights=weights.copy(),
        coords=g.coords,
        labels=g.labels,
    )


def unweighted_copy(g: Graph) -> Graph:
    """Same topology with all weights set to 1."""
    return Graph(
        num_nodes=g.num_nodes,
        edges=g.edges.copy(),
        weights=np.ones(g.num_edges),
        coords=g.coords,
        labels=g.labels,
    )


def adjacency(g: Graph) -> sparse.csr_matrix:
    """Symmetric weighted adjacency matrix W."""
    i, j = g.edges[:, 0], g.edges[:, 1]
    rows = np.concatenate([i, j])
    cols = np.concatenate([j, i])
    vals = np.concatenate([g.weights, g.weights])
    return sparse.coo_matrix(
        (vals, (rows, cols)), shape=(g.num_nodes, g.num_nodes)
    ).tocsr()


def incidence(g: Graph, kind: str) -> IncidenceMatrix:
    """Incidence matrix of the requested kind; columns follow the edge index."""
    if kind not in INCIDENCE_KINDS:
        raise ValueError(f"kind must be one of {INCIDENCE_KINDS}, got {kind!r}")
    E = g.num_edges
    rows = g.edges.reshape(-1)  # (i0, j0, i1, j1, ...)
    cols = np.repeat(np.arange(E), 2)
    if kind == "unweighted":
        vals = np.ones(2 * E)
    else:
        sq = np.sqrt(g.weights)
        vals = np.repeat(sq, 2)
        if kind == "oriented":
            vals = vals.copy()
            vals[1::2] *= -1.0  # edge points from the lower node id to the higher
    mat = sparse.coo_matrix(
        (vals, (rows, cols)), shape=(g.num_nodes, E)
    ).tocsc()
    return IncidenceMatrix(kind=kind, matrix=mat, edge_order=g.edges)


def degrees(g: Graph) -> DegreeVectors:
    """All degree variants in one pass over the edge list."""
    N = g.num_nodes
    i, j = g.edges[:, 0], g.edges[:, 1]
    weighted = np.zeros(N)
    np.add.at(weighted, i, g.weights)
    np.add.at(weighted, j, g.weights)
    sq = np.sqrt(g.weights)
    sqrt_weighted = np.zeros(N)
    np.add.at(sqrt_weighted, i, sq)
    np.add.at(sqrt_weighted, j, sq)
    unweighted = np.zeros(N, dtype=np.int64)
    np.add.at(unweighted, i, 1)
    np.add.at(unweighted, j, 1)
    oriented = np.zeros(N)
    np.add.at(oriented, i, sq)
    np.add.at(oriented, j, -sq)
    return DegreeVectors(
        weighted=weighted,
        sqrt_weighted=sqrt_weighted,
        unweighted=unweighted,
        oriented=oriented,
    )


def laplacian(g: Graph) -> sparse.csr_matrix:
    """Combinatorial graph Laplacian L = D - W."""
    W = adjacency(g)
    d = np.asarray(W.sum(axis=1)).ravel()
    return (sparse.diags(d) - W).tocsr()


def incident_edges(g: Graph) -> list[np.ndarray]:
    """For each node, the ids of its incident edges, ascending."""
    out: list[list[int]] = [[] for _ in range(g.num_nodes)]
    for alpha, (i, j) in enumerate(g.edges):
        out[i].append(alpha)
        out[j].append(alpha)
    return [np.array(ids, dtype=np.int64) for ids in out]


def adjacent_weight_diffs(g: Graph) -> np.ndarray:
    """Squared weight differences over all pairs of edges sharing a node.

    One value per node i and unordered pair (j, k) of its neighbors; this is
    the raw material of the edge-smoothness histogram. Unweighted graphs give
    all zeros.
    """
    W = adjacency(g).tolil()
    out: list[np.ndarray] = []
    for i in range(g.num_nodes):
        w_row = np.array(W.data[i])
        if w_row.size < 2:
            continue
        a, b = np.triu_indices(w_row.size, k=1)
        out.append((w_row[a] - w_row[b]) ** 2)
    if not out:
        return np.zeros(0)
    return np.concatenate(out)
