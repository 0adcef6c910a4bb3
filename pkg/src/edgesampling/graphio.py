"""Reading and writing graphs: edge-list TSV, coordinate sidecars, matrix market.

The edge-list format is one edge per line, "i<TAB>j<TAB>w", 0-indexed, with
'#' starting a comment. The writer emits a "# nodes: N" header followed by
edges in canonical order with shortest round-trip float formatting, so
writing a graph that was read from a writer-produced file reproduces the file
byte for byte.
"""

from __future__ import annotations

import io
import os

import numpy as np
from scipy import sparse
from scipy.io import mmread, mmwrite

from .errors import (
    AsymmetricInputError,
    FormatError,
    ParseError,
    SelfLoopError,
)
from .graphs import Graph, build_graph


def read_edge_list(path) -> Graph:
    """Parse an edge-list TSV file into a canonical Graph."""
    edges = []
    num_nodes = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("nodes:"):
                    try:
                        num_nodes = int(body.split(":", 1)[1])
                    except ValueError:
                        raise ParseError("bad node-count header", line=lineno)
                continue
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(
                    f"expected 'i<TAB>j<TAB>w', got {len(parts)} fields", line=lineno
                )
            try:
                i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno)
            edges.append((i, j, w))
    if num_nodes is None:
        num_nodes = 1 + max((max(i, j) for i, j, _ in edges), default=-1)
    return build_graph(num_nodes, edges)


def write_edge_list(g: Graph, path) -> None:
    """Write a Graph in canonical edge-list TSV form."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_edge_list_str(g))


def write_coords(g: Graph, path) -> None:
    """Write the coordinate sidecar, one "i<TAB>x<TAB>y" line per node."""
    if g.coords is None:
        raise ValueError("graph has no coordinates")
    with open(path, "w", encoding="utf-8") as fh:
        for i, (x, y) in enumerate(g.coords):
            fh.write(f"{i}\t{float(x)!r}\t{float(y)!r}\n")


def read_coords(path, num_nodes: int) -> np.ndarray:
    """Read a coordinate sidecar back into an (N, 2) array."""
    coords = np.full((num_nodes, 2), np.nan)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(
                    f"expected 'i<TAB>x<TAB>y', got {len(parts)} fields", line=lineno
                )
            try:
                i, x, y = int(parts[0]), float(parts[1]), float(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno)
            if not 0 <= i < num_nodes:
                raise ParseError(f"node id {i} outside [0, {num_nodes})", line=lineno)
            coords[i] = (x, y)
    return coords


def read_matrix_market(path, drop_self_loops: bool = False) -> Graph:
    """Ingest a symmetric matrix-market coordinate file as a weighted graph.

    The stored matrix must be square and symmetric; its upper triangle
    becomes the canonical edge list with weights preserved. Diagonal entries
    are an error unless ``drop_self_loops``.
    """
    if not os.path.exists(path):
        # the mmread backend reports a missing file as a banner parse
        # failure, which misleads callers
        raise FileNotFoundError(f"no such file: {path}")
    try:
        M = mmread(path)
    except (ValueError, OSError) as exc:
        raise FormatError(f"not a readable matrix-market file: {exc}")
    M = sparse.coo_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise FormatError(f"matrix is {M.shape[0]}x{M.shape[1]}, not square")
    sym_gap = sparse.coo_matrix(abs(M - M.T))
    scale = max(float(np.max(np.abs(M.data))) if M.nnz else 0.0, 1.0)
    if sym_gap.nnz and float(sym_gap.data.max()) > 1e-12 * scale:
        raise AsymmetricInputError("stored matrix is not symmetric")
    M.sum_duplicates()
    diag = M.row == M.col
    if np.any(M.data[diag] != 0) and not drop_self_loops:
        bad = int(M.row[diag][np.flatnonzero(M.data[diag] != 0)[0]])
        raise SelfLoopError(
            f"diagonal entry at node {bad}; pass drop_self_loops to ignore"
        )
    upper = (M.row < M.col) & (M.data != 0)
    edges = [
        (int(i), int(j), float(w))
        for i, j, w in zip(M.row[upper], M.col[upper], M.data[upper])
    ]
    return build_graph(M.shape[0], edges)


def write_matrix_market(matrix, path, comment: str = "") -> None:
    """Dump a symmetric sparse matrix in matrix-market coordinate format."""
    mmwrite(path, sparse.coo_matrix(matrix), comment=comment, symmetry="symmetric")


def graph_to_edge_list_str(g: Graph) -> str:
    """The canonical edge-list text, as written by write_edge_list."""
    buf = io.StringIO()
    buf.write(f"# nodes: {g.num_nodes}\n")
    for (i, j), w in zip(g.edges, g.weights):
        # repr of the builtin float round-trips exactly; numpy scalar repr
        # would stamp the dtype into the file
        buf.write(f"{int(i)}\t{int(j)}\t{float(w)!r}\n")
    return buf.getvalue()
