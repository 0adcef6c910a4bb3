"""Random-instance builders shared across test modules."""

import numpy as np

import edgesampling as es


def rand_graph(rng, n_max=50, weighted=True, connected=False):
    """A random G(n, p) draw with at least one edge.

    ``connected`` retries until a single component comes out, which is quick
    at the densities used here.
    """
    while True:
        n = int(rng.integers(3, n_max + 1))
        p = float(rng.uniform(0.15, 0.6))
        mask = rng.random((n, n)) < p
        iu, ju = np.triu_indices(n, k=1)
        keep = mask[iu, ju]
        pairs = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        if not pairs:
            continue
        if weighted:
            w = rng.uniform(0.2, 3.0, size=len(pairs))
        else:
            w = np.ones(len(pairs))
        g = es.build_graph(n, [(i, j, float(x)) for (i, j), x in zip(pairs, w)])
        if connected and not _is_connected(g):
            continue
        return g


def rand_tree(rng, n, weighted=True):
    """Uniform random recursive tree on n nodes."""
    edges = []
    for i in range(1, n):
        parent = int(rng.integers(0, i))
        w = float(rng.uniform(0.5, 2.0)) if weighted else 1.0
        edges.append((parent, i, w))
    return es.build_graph(n, edges)


def _is_connected(g):
    from scipy.sparse.csgraph import connected_components

    ncomp, _ = connected_components(es.adjacency(g), directed=False)
    return ncomp == 1


def brute_force_rule(A, size, eta):
    """The greedy selection rule evaluated from scratch at every step.

    A is |T| entrywise; ties keep the lowest index because the comparison
    is strict.
    """
    E = A.shape[0]
    selected = []
    for _ in range(size):
        acc = np.zeros(E)
        for b in selected:
            acc = acc + A[:, b]
        resid = np.maximum(eta - acc, 0.0)
        best, best_score = None, -np.inf
        for a in range(E):
            if a in selected:
                continue
            score = float(np.dot(resid, A[:, a]))
            if score > best_score:
                best, best_score = a, score
        selected.append(best)
    return selected
