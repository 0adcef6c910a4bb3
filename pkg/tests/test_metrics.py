import math

import numpy as np
import pytest

import edgesampling as es
from helpers import rand_graph


@pytest.fixture(scope="module")
def line_spectrum(request):
    g = es.gen_community(40, 2, seed=1)
    lg = es.line_graph(g, weighted=False)
    return g, es.eig_sym(lg.laplacian.toarray())


class TestSynthesis:
    def test_noiseless_is_bandlimited(self, line_spectrum):
        g, spec = line_spectrum
        w = es.synth_edge_weights(
            spec, es.SynthesisSpec(bandwidth=10, noise_std=0.0, seed=3)
        )
        w_hat = es.edge_gft(spec.eigenvectors, w)
        assert es.bandlimit_energy(w_hat, 10) <= 1e-12

    def test_full_band_parseval(self, line_spectrum):
        g, spec = line_spectrum
        E = g.num_edges
        w = es.synth_edge_weights(
            spec, es.SynthesisSpec(bandwidth=E, noise_std=0.0, seed=3)
        )
        w_hat = es.edge_gft(spec.eigenvectors, w)
        assert np.linalg.norm(w_hat) == pytest.approx(np.linalg.norm(w), abs=1e-10)

    def test_fixed_seed_bitwise_identical(self, line_spectrum):
        _, spec = line_spectrum
        s = es.SynthesisSpec(bandwidth=10, seed=9)
        np.testing.assert_array_equal(
            es.synth_edge_weights(spec, s), es.synth_edge_weights(spec, s)
        )

    def test_default_stds(self):
        s = es.SynthesisSpec(bandwidth=5)
        assert s.signal_std == pytest.approx(math.sqrt(0.2))
        assert s.noise_std == pytest.approx(0.1)

    def test_bad_bandwidth(self, line_spectrum):
        _, spec = line_spectrum
        with pytest.raises(es.BadBandwidthError):
            es.synth_edge_weights(spec, es.SynthesisSpec(bandwidth=0))

    def test_negative_std_rejected(self):
        with pytest.raises(ValueError):
            es.SynthesisSpec(bandwidth=3, noise_std=-0.1)


class TestInterpBandlimited:
    def test_full_sampling_noiseless_recovery(self, line_spectrum):
        g, spec = line_spectrum
        E = g.num_edges
        w = es.synth_edge_weights(
            spec, es.SynthesisSpec(bandwidth=12, noise_std=0.0, seed=5)
        )
        V_K = spec.eigenvectors[:, :12]
        rec = es.interp_bandlimited(V_K, np.arange(E), w)
        np.testing.assert_allclose(rec, w, atol=1e-9)

    def test_uniqueness_set_exact_recovery(self, rng, line_spectrum):
        g, spec = line_spectrum
        K = 8
        V_K = spec.eigenvectors[:, :K]
        w = V_K @ rng.standard_normal(K)
        F = rng.choice(g.num_edges, size=3 * K, replace=False)
        rec = es.interp_bandlimited(V_K, F, w[F], ridge=1e-12)
        np.testing.assert_allclose(rec, w, atol=1e-6)

    def test_zero_samples_zero_reconstruction(self, line_spectrum):
        g, spec = line_spectrum
        V_K = spec.eigenvectors[:, :4]
        F = np.arange(8)
        rec = es.interp_bandlimited(V_K, F, np.zeros(8))
        np.testing.assert_allclose(rec, 0.0, atol=1e-12)

    def test_rank_deficient_warns(self, line_spectrum):
        g, spec = line_spectrum
        V_K = spec.eigenvectors[:, :10]
        with pytest.warns(es.RankDeficientWarning):
            es.interp_bandlimited(V_K, np.arange(4), np.ones(4))

    def test_length_mismatch(self, line_spectrum):
        _, spec = line_spectrum
        with pytest.raises(es.DimensionMismatchError):
            es.interp_bandlimited(spec.eigenvectors[:, :3], np.arange(4), np.ones(5))


class TestReconstructionError:
    def test_perfect_reconstruction(self):
        w = np.array([1.0, 2.0])
        r = es.reconstruction_error(w, w)
        assert r.error == 0.0
        assert r.normalized == 0.0

    def test_unit_vector_miss(self):
        r = es.reconstruction_error(np.array([1.0, 0.0]), np.zeros(2))
        assert r.error == pytest.approx(1.0)
        assert r.normalized == pytest.approx(1.0)

    def test_normalized_scale_invariant(self, rng):
        w = rng.standard_normal(6)
        w_rec = rng.standard_normal(6)
        a = es.reconstruction_error(w, w_rec).normalized
        b = es.reconstruction_error(2 * w, 2 * w_rec).normalized
        assert a == pytest.approx(b, rel=1e-12)


class TestHeatDiffuse:
    def test_small_t_is_identity_limit(self, k3):
        L = es.laplacian(k3)
        x = np.array([1.0, 0.0, 0.0])
        y = es.heat_diffuse(L, x, t=1e-9)
        np.testing.assert_allclose(y, x, atol=1e-6)

    def test_large_t_projects_to_mean(self, rng):
        g = rand_graph(rng, n_max=20, connected=True)
        x = rng.standard_normal(g.num_nodes)
        y = es.heat_diffuse(es.laplacian(g), x, t=1e3)
        np.testing.assert_allclose(y, x.mean(), atol=1e-3)

    def test_mass_conserved(self, rng, community100):
        x = (rng.random(100) < 0.2).astype(float)
        y = es.heat_diffuse(es.laplacian(community100), x, t=2.5)
        assert y.sum() == pytest.approx(x.sum(), rel=1e-9)

    def test_t_positive_required(self, k3):
        with pytest.raises(ValueError):
            es.heat_diffuse(es.laplacian(k3), np.zeros(3), t=0.0)

    def test_cpa_path_close_to_dense(self, community100):
        L = es.laplacian(community100)
        x = np.zeros(100)
        x[:5] = 1.0
        dense = es.heat_diffuse(L, x, t=0.5)
        cpa = es.heat_diffuse(L, x, t=0.5, dense_limit=10)
        np.testing.assert_allclose(cpa, dense, atol=1e-6)


class TestDiffusionMse:
    def test_identical_signals_floor(self):
        y = np.ones(4)
        m = es.diffusion_mse(y, y)
        assert m.mse == 0.0
        assert m.db == -120.0

    def test_unit_gap(self):
        m = es.diffusion_mse(np.ones(4), np.zeros(4))
        assert m.mse == pytest.approx(1.0)
        assert m.db == pytest.approx(0.0)

    def test_identity_pipeline_zero(self, community100):
        # diffusing on the same graph twice is the degenerate G1 = G0 case
        x = np.zeros(100)
        x[::5] = 1.0
        y = es.heat_diffuse(es.laplacian(community100), x, t=1.0)
        assert es.diffusion_mse(y, y).mse == 0.0


class TestSpectralCluster:
    def test_two_disconnected_triangles(self):
        edges = [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                 (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)]
        g = es.build_graph(6, edges)
        labels = es.spectral_cluster(g, 2, seed=0)
        assert len(set(labels[:3])) == 1
        assert len(set(labels[3:])) == 1
        assert labels[0] != labels[3]

    def test_community_recovery(self, community100):
        labels = es.spectral_cluster(community100, 5, seed=0)
        c = es.cluster_inconsistency(community100.labels, labels)
        assert c <= 0.05

    def test_fixed_seed_identical(self, community100):
        a = es.spectral_cluster(community100, 5, seed=3)
        b = es.spectral_cluster(community100, 5, seed=3)
        np.testing.assert_array_equal(a, b)


class TestClusterInconsistency:
    def test_identical_labels(self):
        y = np.array([0, 0, 1, 1])
        assert es.cluster_inconsistency(y, y) == 0.0

    def test_permuted_labels_align(self):
        y0 = np.array([0, 0, 1, 1, 2, 2])
        y1 = np.array([2, 2, 0, 0, 1, 1])
        assert es.cluster_inconsistency(y0, y1) == 0.0

    def test_one_node_reassigned(self):
        y0 = np.array([0, 0, 1, 1])
        y1 = np.array([0, 1, 1, 1])
        assert es.cluster_inconsistency(y0, y1) == pytest.approx(0.25)

    def test_shape_mismatch(self):
        with pytest.raises(es.KMismatchError):
            es.cluster_inconsistency(np.zeros(3, dtype=int), np.zeros(4, dtype=int))


class TestIsolatedNodes:
    def test_full_graph_zero(self, k3):
        assert es.isolated_nodes(k3, [0, 1, 2]) == 0

    def test_empty_selection_all(self, k3):
        assert es.isolated_nodes(k3, []) == 3

    def test_star_one_edge_two_isolated(self, star3):
        assert es.isolated_nodes(star3, [0]) == 2
