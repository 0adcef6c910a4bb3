"""Bandlimited weight synthesis, reconstruction, and sparsification metrics.

The synthetic reconstruction target is an edge signal w = V w_hat where V is
the eigenvector basis of the unweighted line graph's Laplacian, w_hat has K
Gaussian low-band coefficients plus full-band Gaussian noise. The three
quality metrics compare the original graph against its sparsified version:
l2 reconstruction error of the removed-edge signal, MSE of a heat-diffused
node signal, and spectral-clustering label inconsistency. A fourth structural
count, isolated nodes, catches samplers that strand vertices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import KMeans

from .errors import (
    BadBandwidthError,
    DegenerateEmbeddingError,
    DimensionMismatchError,
    KMismatchError,
    RankDeficientWarning,
)
from .filters import DENSE_LIMIT_DEFAULT, Spectrum, apply_cpa, cheb_fit, lambda_max_bound
from .graphs import Graph, adjacency

MSE_DB_FLOOR = -120.0
DEFAULT_SIGNAL_STD = math.sqrt(0.2)
DEFAULT_NOISE_STD = 0.1


@dataclass(frozen=True)
class SynthesisSpec:
    """Bandlimited edge-weight synthesis parameters.

    The band holds K i.i.d. N(0, signal_std^2) coefficients; every
    coefficient additionally receives N(0, noise_std^2) noise.
    """

    bandwidth: int
    signal_std: float = DEFAULT_SIGNAL_STD
    noise_std: float = DEFAULT_NOISE_STD
    seed: int = 0

    def __post_init__(self):
        if self.signal_std < 0 or self.noise_std < 0:
            raise ValueError("standard deviations must be nonnegative")


def synth_edge_weights(spectrum: Spectrum, spec: SynthesisSpec) -> np.ndarray:
    """Draw w = V ([w_K, 0] + n) in the given spectral basis."""
    V = spectrum.eigenvectors
    E = V.shape[0]
    if not 0 < spec.bandwidth <= E:
        raise BadBandwidthError(f"bandwidth {spec.bandwidth} outside (0, {E}]")
    rng = np.random.default_rng(spec.seed)
    w_hat = np.zeros(E)
    w_hat[: spec.bandwidth] = rng.normal(0.0, spec.signal_std, spec.bandwidth)
    w_hat = w_hat + rng.normal(0.0, spec.noise_std, E)
    return V @ w_hat


def interp_bandlimited(V_K: np.ndarray, F, w_F: np.ndarray, ridge: float = 1e-8) -> np.ndarray:
    """Least-squares bandlimited reconstruction from samples on F.

    Solves min_c ||V_K[F] c - w_F||^2 + ridge ||c||^2 and returns V_K c.
    Warns when |F| is below the bandwidth (the system is then underdetermined
    and the ridge term picks the minimum-norm fit).
    """
    F = np.asarray(F, dtype=np.int64)
    K = V_K.shape[1]
    if F.shape[0] != w_F.shape[0]:
        raise DimensionMismatchError(
            f"{F.shape[0]} sample positions but {w_F.shape[0]} sample values"
        )
    if F.shape[0] < K:
        warnings.warn(
            f"only {F.shape[0]} samples for bandwidth {K}; reconstruction is "
            "rank deficient",
            RankDeficientWarning,
            stacklevel=2,
        )
    A = V_K[F, :]
    G = A.T @ A + ridge * np.eye(K)
    rhs = A.T @ w_F
    try:
        c = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        c = np.linalg.lstsq(G, rhs, rcond=None)[0]
    return V_K @ c


@dataclass(frozen=True)
class ReconstructionError:
    error: float
    normalized: float


def reconstruction_error(w: np.ndarray, w_rec: np.ndarray) -> ReconstructionError:
    """l2 distance between original and reconstructed edge weights."""
    if w.shape != w_rec.shape:
        raise DimensionMismatchError(f"shapes {w.shape} and {w_rec.shape} differ")
    err = float(np.linalg.norm(w - w_rec))
    nw = float(np.linalg.norm(w))
    if nw > 0:
        normalized = err / nw
    else:
        normalized = 0.0 if err == 0.0 else math.inf
    return ReconstructionError(error=err, normalized=normalized)


def heat_diffuse(L, x: np.ndarray, t: float, dense_limit: int = DENSE_LIMIT_DEFAULT,
                 cpa_degree: int = 30) -> np.ndarray:
    """Diffused signal exp(-t L) x.

    Dense eigendecomposition up to ``dense_limit`` nodes, Chebyshev filtering
    beyond. Total mass sum(x) is conserved for any t.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    N = L.shape[0]
    if N <= dense_limit:
        A = L.toarray() if hasattr(L, "toarray") else np.asarray(L, dtype=np.float64)
        lam, U = np.linalg.eigh(A)
        lam = np.maximum(lam, 0.0)
        return U @ (np.exp(-t * lam) * (U.T @ x))
    ub = lambda_max_bound(L)
    kernel = cheb_fit(lambda lam: np.exp(-t * np.asarray(lam)), ub, cpa_degree)
    return apply_cpa(L, kernel, x)


@dataclass(frozen=True)
class DiffusionMSE:
    mse: float
    db: float


def diffusion_mse(y0: np.ndarray, y1: np.ndarray) -> DiffusionMSE:
    """(1/N) ||y0 - y1||^2, with the dB value floored at -120."""
    if y0.shape != y1.shape:
        raise DimensionMismatchError(f"shapes {y0.shape} and {y1.shape} differ")
    mse = float(np.mean((y0 - y1) ** 2))
    db = MSE_DB_FLOOR if mse <= 0 else max(10.0 * math.log10(mse), MSE_DB_FLOOR)
    return DiffusionMSE(mse=mse, db=db)


def spectral_cluster(g: Graph, k: int, seed: int = 0,
                     dense_limit: int = DENSE_LIMIT_DEFAULT) -> np.ndarray:
    """Normalized-Laplacian spectral clustering into k groups.

    Embeds nodes with the k smallest eigenvectors of the symmetric normalized
    Laplacian, row-normalizes, and runs seeded k-means++ with 20 restarts.
    Isolated nodes embed at the origin.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    N = g.num_nodes
    if N > dense_limit:
        raise DegenerateEmbeddingError(
            f"{N} nodes exceeds the dense embedding limit {dense_limit}"
        )
    W = adjacency(g).toarray()
    d = W.sum(axis=1)
    dinv = np.zeros(N)
    nz = d > 0
    dinv[nz] = 1.0 / np.sqrt(d[nz])
    Lsym = np.eye(N) - (dinv[:, None] * W) * dinv[None, :]
    Lsym = (Lsym + Lsym.T) / 2.0
    _, U = np.linalg.eigh(Lsym)
    emb = U[:, :k]
    norms = np.linalg.norm(emb, axis=1)
    nzr = norms > 0
    emb = emb.copy()
    emb[nzr] /= norms[nzr, None]
    distinct = np.unique(np.round(emb, 10), axis=0).shape[0]
    if distinct < k:
        raise DegenerateEmbeddingError(
            f"embedding has {distinct} distinct rows for k={k}"
        )
    km = KMeans(n_clusters=k, init="k-means++", n_init=20,
                random_state=int(seed) % (2**32))
    return km.fit_predict(emb).astype(np.int64)


def cluster_inconsistency(labels0: np.ndarray, labels1: np.ndarray) -> float:
    """Fraction of nodes whose cluster changes, after optimal label alignment."""
    labels0 = np.asarray(labels0)
    labels1 = np.asarray(labels1)
    if labels0.shape != labels1.shape:
        raise KMismatchError(
            f"label vectors have shapes {labels0.shape} and {labels1.shape}"
        )
    u0, inv0 = np.unique(labels0, return_inverse=True)
    u1, inv1 = np.unique(labels1, return_inverse=True)
    if u0.shape[0] != u1.shape[0]:
        raise KMismatchError(
            f"{u0.shape[0]} clusters vs {u1.shape[0]} clusters"
        )
    k = u0.shape[0]
    contingency = np.zeros((k, k), dtype=np.int64)
    np.add.at(contingency, (inv0, inv1), 1)
    rows, cols = linear_sum_assignment(-contingency)
    agreement = int(contingency[rows, cols].sum())
    return 1.0 - agreement / labels0.shape[0]


def isolated_nodes(g: Graph, F) -> int:
    """Number of nodes with no incident edge in the sampled set F."""
    F = np.asarray(F, dtype=np.int64)
    touched = np.zeros(g.num_nodes, dtype=bool)
    if F.size:
        touched[g.edges[F, 0]] = True
        touched[g.edges[F, 1]] = True
    return int(g.num_nodes - touched.sum())
