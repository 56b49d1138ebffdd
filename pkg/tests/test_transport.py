import numpy as np
import pytest
from scipy.linalg import expm as scipy_expm

from ctwalk.analysis import running_time_average
from ctwalk.graphs import from_edge_list, gen_path, gen_star, laplacian
from ctwalk.spectral import eigendecompose
from ctwalk.transport import (
    ProbabilityMatrix,
    TimeGrid,
    TransportSeries,
    alpha_bar_sq,
    approx_alpha_bar_sq,
    avg_return_classical,
    avg_return_quantum,
    chi_bar,
    chi_bar_lb,
    classical_prob,
    expm_oracle,
    lta_matrix,
    lta_pair,
    nearest_class,
    propagator,
    quantum_amplitude,
    quantum_prob,
    series,
    transition_matrix,
)

# Classical propagator entry e^{-L}[0, 4] for the ten-node path, frozen from
# an independent scipy.linalg.expm evaluation.
P10_CLASSICAL_1_5_AT_1 = 0.008195126480625892


class TestTimeGrid:
    def test_point_count_contract(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            start = float(rng.uniform(0, 3))
            stop = start + float(rng.uniform(0.5, 20))
            step = float(rng.uniform(0.01, 0.7))
            ts = TimeGrid(start, stop, step).times()
            assert len(ts) == int(np.floor((stop - start) / step)) + 1
            assert ts[0] == start

    @pytest.mark.parametrize("args", [(-1, 1, 0.1), (0, 0, 0.1), (1, 0.5, 0.1), (0, 1, 0)])
    def test_validation(self, args):
        with pytest.raises(ValueError):
            TimeGrid(*args)


class TestPairwise:
    def test_k2_classical_closed_form(self, k2_spectrum):
        for t in (0.0, 0.3, 1.0, 5.0):
            assert classical_prob(k2_spectrum, 1, 1, t) == pytest.approx(
                0.5 * (1 + np.exp(-2 * t)), abs=1e-12
            )

    def test_k2_classical_equipartition(self, k2_spectrum):
        assert classical_prob(k2_spectrum, 1, 1, 50.0) == pytest.approx(0.5, abs=1e-12)

    def test_classical_rejects_negative_time(self, k2_spectrum):
        with pytest.raises(ValueError, match="t >= 0"):
            classical_prob(k2_spectrum, 1, 1, -0.1)

    def test_classical_matches_series_expansion_oracle(self):
        s = eigendecompose(laplacian(gen_path(10)))
        value = classical_prob(s, 1, 5, 1.0)
        oracle = expm_oracle(laplacian(gen_path(10)), 1.0, "classical")[0, 4]
        assert value == pytest.approx(oracle, abs=1e-10)
        assert value == pytest.approx(P10_CLASSICAL_1_5_AT_1, abs=1e-10)

    def test_k2_quantum_amplitude(self, k2_spectrum):
        for t in (0.0, 0.4, 1.7):
            amp = quantum_amplitude(k2_spectrum, 1, 1, t)
            assert amp == pytest.approx(0.5 * (1 + np.exp(-2j * t)), abs=1e-12)

    def test_amplitude_identity_at_zero(self, family_spectra):
        for s in family_spectra.values():
            assert quantum_amplitude(s, 3, 3, 0.0) == pytest.approx(1 + 0j, abs=1e-12)

    def test_time_reversal_conjugation(self, family_spectra):
        s = family_spectra["b"]
        rng = np.random.default_rng(2)
        for t in rng.uniform(0, 20, size=10):
            assert quantum_amplitude(s, 2, 7, -t) == pytest.approx(
                np.conj(quantum_amplitude(s, 2, 7, t)), abs=1e-12
            )

    def test_k2_quantum_prob_cosine(self, k2_spectrum):
        assert quantum_prob(k2_spectrum, 1, 1, np.pi / 2) == pytest.approx(0.0, abs=1e-12)
        assert quantum_prob(k2_spectrum, 2, 1, np.pi / 2) == pytest.approx(1.0, abs=1e-12)
        ts = np.linspace(0, 3, 7)
        assert np.allclose(quantum_prob(k2_spectrum, 1, 1, ts), np.cos(ts) ** 2, atol=1e-12)

    def test_unitarity_per_start_node(self, family_spectra):
        s = family_spectra["c"]
        for t in (0.1, 1.0, 10.0):
            total = sum(quantum_prob(s, k, 4, t) for k in range(1, s.n + 1))
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_pair_symmetry(self, family_spectra):
        s = family_spectra["d"]
        for k, j in ((1, 2), (3, 9), (5, 10)):
            for t in (0.5, 2.0, 17.3):
                assert abs(quantum_prob(s, k, j, t) - quantum_prob(s, j, k, t)) <= 1e-10

    def test_label_validation(self, k2_spectrum):
        with pytest.raises(ValueError, match="k must be"):
            classical_prob(k2_spectrum, 0, 1, 1.0)
        with pytest.raises(ValueError, match="j must be"):
            quantum_prob(k2_spectrum, 1, 3, 1.0)


class TestTransitionMatrix:
    def test_identity_at_zero(self, family_spectra):
        s = family_spectra["a"]
        for kind in ("classical", "quantum"):
            m = transition_matrix(s, 0.0, kind)
            assert np.max(np.abs(m.entries - np.eye(s.n))) <= 1e-12

    def test_classical_equipartition_long_time(self, family_spectra):
        m = transition_matrix(family_spectra["a"], 1e3, "classical")
        assert np.max(np.abs(m.entries - 0.1)) <= 1e-6

    def test_star_hub_return_dominates(self, family_spectra):
        m = transition_matrix(family_spectra["e"], 5.0, "quantum")
        assert m.entries[0, 0] > 0.5

    def test_column_sums(self, family_spectra):
        for s in family_spectra.values():
            for t in (0.1, 1.0, 10.0, 100.0):
                for kind in ("classical", "quantum"):
                    m = transition_matrix(s, t, kind)
                    assert np.max(np.abs(m.entries.sum(axis=0) - 1.0)) <= 1e-9
                    if kind == "classical":
                        assert np.min(m.entries) >= -1e-12

    def test_bad_kind(self, k2_spectrum):
        with pytest.raises(ValueError, match="kind"):
            transition_matrix(k2_spectrum, 1.0, "semiclassical")


class TestLongTimeAverage:
    def test_k2_pair(self, k2_spectrum):
        assert lta_pair(k2_spectrum, 1, 1) == pytest.approx(0.5, abs=1e-12)

    def test_pair_symmetry(self, family_spectra):
        for s in family_spectra.values():
            for k in range(1, s.n + 1):
                for j in range(k, s.n + 1):
                    assert abs(lta_pair(s, k, j) - lta_pair(s, j, k)) <= 1e-10

    def test_quadrature_oracle(self, k2_spectrum, family_spectra):
        # The defining Cesaro limit, realized numerically, must land on the
        # closed-form class-sum value.
        grid = TimeGrid(0.0, 1e3, 0.01)
        for s, k, j in ((k2_spectrum, 1, 1), (family_spectra["e"], 1, 2)):
            ser = series(s, grid, "quantum_pair", k=k, j=j)
            tail = running_time_average(ser).values[-1]
            assert tail == pytest.approx(lta_pair(s, k, j), abs=5e-3)

    def test_k2_matrix(self, k2_spectrum):
        m = lta_matrix(k2_spectrum)
        assert np.max(np.abs(m.entries - 0.5)) <= 1e-12

    def test_matrix_diagonal_and_mean(self, family_spectra):
        s = family_spectra["e"]
        m = lta_matrix(s).entries
        assert np.array_equal(m, m.T)
        # interference peaks: every diagonal beats its row off-diagonals
        for k in range(s.n):
            off = np.delete(m[k], k)
            assert m[k, k] >= off.max()
        assert m[0, 0] == m.diagonal().max()
        assert np.max(np.abs(m.sum(axis=0) - 1.0)) <= 1e-9
        assert np.max(np.abs(m.sum(axis=1) - 1.0)) <= 1e-9
        assert chi_bar(s) == pytest.approx(float(m.diagonal().mean()), abs=1e-14)


class TestAveragedReturn:
    def test_unit_at_zero(self, family_spectra):
        for s in family_spectra.values():
            assert avg_return_classical(s, 0.0) == pytest.approx(1.0, abs=1e-12)
            assert avg_return_quantum(s, 0.0) == pytest.approx(1.0, abs=1e-12)
            assert alpha_bar_sq(s, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_star_hand_value(self, family_spectra):
        expected = (1 + 8 * np.exp(-1.0) + np.exp(-10.0)) / 10.0
        assert avg_return_classical(family_spectra["e"], 1.0) == pytest.approx(expected, abs=1e-12)

    def test_classical_strictly_decreasing(self, family_spectra):
        # strict while the decay is resolvable in doubles, non-increasing after
        for s in family_spectra.values():
            early = avg_return_classical(s, TimeGrid(0.0, 20.0, 0.1).times())
            assert np.all(np.diff(early) < 0)
            late = avg_return_classical(s, TimeGrid(20.0, 100.0, 0.5).times())
            assert np.all(np.diff(late) <= 1e-15)  # ulp jitter at the 1/N floor

    def test_classical_rejects_negative_time(self, k2_spectrum):
        with pytest.raises(ValueError):
            avg_return_classical(k2_spectrum, -1.0)

    def test_k2_quantum_cosine(self, k2_spectrum):
        ts = np.linspace(0, 5, 11)
        assert np.allclose(avg_return_quantum(k2_spectrum, ts), np.cos(ts) ** 2, atol=1e-12)
        assert np.allclose(alpha_bar_sq(k2_spectrum, ts), np.cos(ts) ** 2, atol=1e-12)

    def test_lower_bound_ordering(self, family_spectra):
        rng = np.random.default_rng(9)
        ts = rng.uniform(0, 100, size=500)
        for s in family_spectra.values():
            gap = avg_return_quantum(s, ts) - alpha_bar_sq(s, ts)
            assert float(gap.min()) >= -1e-10


class TestAsymptotics:
    def test_k2_chi_bar(self, k2_spectrum):
        assert chi_bar(k2_spectrum) == pytest.approx(0.5, abs=1e-12)
        assert chi_bar_lb(k2_spectrum) == pytest.approx(0.5, abs=1e-12)

    def test_star_chi_bar_exact(self, family_spectra):
        # hand value: (1/10)[(1/100 + 81/100) + 9*(1/100 + 1/8100 + 6400/8100)]
        assert chi_bar(family_spectra["e"]) == pytest.approx(32490 / 40500, abs=1e-12)

    def test_bound_ordering(self, family_spectra):
        for s in family_spectra.values():
            assert chi_bar(s) >= chi_bar_lb(s) - 1e-12

    def test_chi_bar_quadrature_oracle(self, family_spectra):
        s = family_spectra["a"]
        ser = series(s, TimeGrid(0.0, 1e3, 0.01), "quantum_avg_return")
        tail = running_time_average(ser).values[-1]
        assert tail == pytest.approx(chi_bar(s), abs=5e-3)

    def test_lb_family_table(self, family_spectra):
        expected = {"a": 0.10, "b": 0.12, "c": 0.22, "d": 0.40, "e": 0.66}
        for label, value in expected.items():
            assert abs(chi_bar_lb(family_spectra[label]) - value) <= 1e-12


class TestApproximation:
    def test_star_at_zero(self, family_spectra):
        s = family_spectra["e"]
        l = nearest_class(s, 1.0)
        assert s.classes[l].multiplicity == 8
        assert approx_alpha_bar_sq(s, l, 0.0) == pytest.approx(0.96, abs=1e-12)

    def test_star_tracks_exact_curve(self, family_spectra):
        s = family_spectra["e"]
        ts = TimeGrid(0.0, 50.0, 0.01).times()
        deviation = np.abs(approx_alpha_bar_sq(s, nearest_class(s), ts) - alpha_bar_sq(s, ts))
        assert float(deviation.max()) <= 0.05

    def test_weakly_symmetric_network_deviates_more(self, family_spectra):
        ts = TimeGrid(0.0, 50.0, 0.01).times()
        devs = {}
        for label in ("b", "e"):
            s = family_spectra[label]
            devs[label] = float(
                np.abs(approx_alpha_bar_sq(s, nearest_class(s), ts) - alpha_bar_sq(s, ts)).max()
            )
        assert devs["b"] > devs["e"]

    def test_invalid_class_index(self, k2_spectrum):
        with pytest.raises(ValueError, match="class_index"):
            approx_alpha_bar_sq(k2_spectrum, 5, 1.0)


class TestSeries:
    def test_k2_quantum_pair_on_half_pi_grid(self, k2_spectrum):
        ser = series(k2_spectrum, TimeGrid(0.0, np.pi, np.pi / 2), "quantum_pair", k=1, j=1)
        assert len(ser.values) == 3
        assert ser.values[0] == pytest.approx(1.0, abs=1e-12)
        assert ser.values[1] == pytest.approx(0.0, abs=1e-12)
        assert ser.values[2] == pytest.approx(1.0, abs=1e-12)

    def test_first_classical_value_is_one(self, family_spectra):
        for s in family_spectra.values():
            ser = series(s, TimeGrid(0.0, 2.0, 0.25), "classical_avg_return")
            assert ser.values[0] == pytest.approx(1.0, abs=1e-12)

    def test_missing_parameters(self, k2_spectrum):
        grid = TimeGrid(0.0, 1.0, 0.5)
        with pytest.raises(ValueError, match="node labels"):
            series(k2_spectrum, grid, "quantum_pair")
        with pytest.raises(ValueError, match="class_index"):
            series(k2_spectrum, grid, "approx_alpha_bar_sq")
        with pytest.raises(ValueError, match="quantity"):
            series(k2_spectrum, grid, "bogus")

    def test_probability_bounds_enforced(self):
        ts = np.array([0.0, 1.0])
        with pytest.raises(ValueError, match="escape"):
            TransportSeries("alpha_bar_sq", ts, np.array([0.5, 1.5]))
        approx = TransportSeries("approx_alpha_bar_sq", ts, np.array([-0.5, 1.5]))
        assert approx.values[0] == -0.5

    def test_matrix_bounds_enforced(self):
        with pytest.raises(ValueError, match="escape"):
            ProbabilityMatrix(2, np.array([[1.5, 0.0], [0.0, 1.0]]), "lta")


class TestExpmOracle:
    def test_identity_at_zero(self):
        m = laplacian(gen_star(4))
        for kind in ("classical", "quantum"):
            assert np.max(np.abs(expm_oracle(m, 0.0, kind) - np.eye(4))) <= 1e-15

    def test_k2_closed_form(self):
        m = laplacian(from_edge_list(2, [(1, 2)]))
        p = expm_oracle(m, 1.0, "classical")
        a, b = 0.5 * (1 + np.exp(-2.0)), 0.5 * (1 - np.exp(-2.0))
        assert np.max(np.abs(p - [[a, b], [b, a]])) <= 1e-12

    def test_quantum_output_unitary(self):
        m = laplacian(gen_path(6))
        u = expm_oracle(m, 3.7, "quantum")
        assert np.max(np.abs(u @ u.conj().T - np.eye(6))) <= 1e-9

    def test_against_scipy_on_laplacians(self):
        rng = np.random.default_rng(13)
        for n in (3, 5, 8):
            g = gen_path(n)
            extra = [(int(u) + 1, int(v) + 1) for u, v in rng.integers(0, n, size=(n, 2)) if u != v]
            m = laplacian(from_edge_list(n, list(g.edges) + extra)).entries.astype(float)
            for t in (0.3, 1.7, 4.0):
                assert np.max(np.abs(expm_oracle(m, t, "classical") - scipy_expm(-t * m))) <= 1e-10
                assert np.max(np.abs(expm_oracle(m, t, "quantum") - scipy_expm(-1j * t * m))) <= 1e-10

    def test_against_scipy_on_generic_symmetric(self):
        # indefinite input makes e^{-tA} grow, so compare relative to its scale
        rng = np.random.default_rng(17)
        a = rng.normal(size=(5, 5))
        a = a + a.T
        for t in (0.3, 1.7, 4.0):
            ref = scipy_expm(-t * a)
            gap = np.max(np.abs(expm_oracle(a, t, "classical") - ref))
            assert gap <= 1e-12 * np.max(np.abs(ref))

    def test_bad_kind(self):
        with pytest.raises(ValueError, match="kind"):
            expm_oracle(np.eye(2), 1.0, "fast")

    def test_propagator_matches_oracle(self, family_spectra, family_graphs):
        s = family_spectra["c"]
        m = laplacian(family_graphs["c"])
        for kind in ("classical", "quantum"):
            assert np.max(np.abs(propagator(s, 1.7, kind) - expm_oracle(m, 1.7, kind))) <= 1e-10
