import numpy as np
import pytest

from vdge.errors import DimensionMismatch, InvalidQubitCount, OutOfRange, TooLarge
from vdge.models import ProductParams, PureState
from vdge.services import DenseStates, ProductAnsatz

ALL_ZERO = [(1, 0)] * 3


class TestConstructors:
    """GHZ, W and GW states"""

    @pytest.mark.parametrize('n, last', [(2, 3), (3, 7)])
    def test_ghz_support(self, n, last):
        amplitudes = DenseStates.make_ghz(n).amplitudes
        assert amplitudes[0] == pytest.approx(1 / np.sqrt(2))
        assert amplitudes[last] == pytest.approx(1 / np.sqrt(2))
        assert np.count_nonzero(amplitudes) == 2

    def test_ghz_norm(self):
        assert DenseStates.make_ghz(5).norm() == pytest.approx(1.0, abs=1e-12)

    def test_w3_support(self, w3):
        assert np.flatnonzero(w3.amplitudes).tolist() == [1, 2, 4]
        assert np.allclose(w3.amplitudes[[1, 2, 4]], 1 / np.sqrt(3))

    def test_w2_support(self):
        amplitudes = DenseStates.make_w(2).amplitudes
        assert np.flatnonzero(amplitudes).tolist() == [1, 2]
        assert np.allclose(amplitudes[[1, 2]], 1 / np.sqrt(2))

    @pytest.mark.parametrize('n', [2, 4, 7])
    def test_w_has_n_nonzero_amplitudes(self, n):
        assert np.count_nonzero(DenseStates.make_w(n).amplitudes) == n

    def test_single_qubit_families_rejected(self):
        with pytest.raises(InvalidQubitCount):
            DenseStates.make_ghz(1)
        with pytest.raises(InvalidQubitCount):
            DenseStates.make_w(1)

    @pytest.mark.parametrize('phi', [0.0, 1.3, np.pi])
    def test_gw_limit_s1_is_ghz(self, phi, ghz3):
        assert np.allclose(DenseStates.make_gw(1.0, phi).amplitudes, ghz3.amplitudes)

    def test_gw_limit_s0_is_w(self, w3):
        assert np.allclose(DenseStates.make_gw(0.0, 0.0).amplitudes, w3.amplitudes)

    def test_gw_arithmetic(self):
        amplitudes = DenseStates.make_gw(0.5, np.pi).amplitudes
        assert amplitudes[0].real == pytest.approx(0.5)
        assert amplitudes[1].real == pytest.approx(-0.40824829)

    def test_gw_rejects_s_outside_unit_interval(self):
        with pytest.raises(OutOfRange):
            DenseStates.make_gw(1.2, 0.0)

    def test_gw_norm_over_random_parameters(self, rng):
        for s, phi in zip(rng.uniform(0, 1, 100), rng.uniform(0, 2 * np.pi, 100)):
            assert DenseStates.make_gw(s, phi).norm() == pytest.approx(1.0, abs=1e-12)

    def test_refuses_oversized_before_allocating(self, rng):
        """n = 40 would need 16 TiB; the size check comes first"""
        with pytest.raises(TooLarge):
            DenseStates.make_ghz(40)
        with pytest.raises(TooLarge):
            DenseStates.make_w(40)
        with pytest.raises(TooLarge):
            DenseStates.haar_random_state(40, rng)
        with pytest.raises(TooLarge):
            ProductAnsatz.params_to_dense_product(ProductAnsatz.haar_random_params(40, rng))


class TestHaarState:
    """Haar-random dense states"""

    def test_norm(self, rng):
        assert DenseStates.haar_random_state(4, rng).norm() == pytest.approx(1.0, abs=1e-12)

    def test_same_seed_same_state(self):
        first = DenseStates.haar_random_state(3, np.random.default_rng(11))
        second = DenseStates.haar_random_state(3, np.random.default_rng(11))
        assert np.array_equal(first.amplitudes, second.amplitudes)

    def test_single_qubit_marginal(self, rng):
        weights = [abs(DenseStates.haar_random_state(1, rng).amplitudes[0]) ** 2 for _ in range(20000)]
        assert abs(np.mean(weights) - 0.5) < 0.01


class TestPureState:
    """Validation of the dense container"""

    def test_rejects_wrong_length(self):
        with pytest.raises(DimensionMismatch):
            PureState(2, np.ones(3) / np.sqrt(3))

    def test_rejects_unnormalized(self):
        with pytest.raises(OutOfRange):
            PureState(1, np.array([1.0, 1.0]))

    def test_refuses_too_many_qubits(self):
        with pytest.raises(TooLarge):
            PureState(27, np.zeros(1))

    def test_from_unnormalized(self):
        state = PureState.from_unnormalized(np.array([3.0, 0, 0, 4.0]))
        assert state.n == 2
        assert state.amplitudes[3] == pytest.approx(0.8)


class TestExactFidelity:
    """Product-state overlaps on the dense backend"""

    def test_ghz_vs_all_zero(self, ghz3):
        assert DenseStates.exact_fidelity(ghz3, ProductParams.from_pairs(ALL_ZERO)) == pytest.approx(0.5)

    def test_w_vs_001(self, w3):
        params = ProductParams.from_pairs([(1, 0), (1, 0), (0, 1)])
        assert DenseStates.exact_fidelity(w3, params) == pytest.approx(1 / 3)

    def test_separable_self_fidelity(self, rng):
        params = ProductAnsatz.haar_random_params(5, rng)
        state = ProductAnsatz.params_to_dense_product(params)
        assert DenseStates.exact_fidelity(state, params) == pytest.approx(1.0, abs=1e-10)

    def test_global_phase_invariance(self, rng):
        state = DenseStates.haar_random_state(5, rng)
        params = ProductAnsatz.haar_random_params(5, rng)
        for gamma in rng.uniform(0, 2 * np.pi, 10):
            rotated = PureState(5, np.exp(1j * gamma) * state.amplitudes)
            assert DenseStates.exact_fidelity(rotated, params) == pytest.approx(
                DenseStates.exact_fidelity(state, params), abs=1e-12)

    def test_dimension_mismatch(self, ghz3):
        with pytest.raises(DimensionMismatch):
            DenseStates.exact_fidelity(ghz3, ProductParams.from_pairs([(1, 0)] * 2))

    @pytest.mark.parametrize('n', [1, 2, 5, 8, 10])
    def test_matches_naive_inner_product(self, n, rng):
        for _ in range(5):
            state = DenseStates.haar_random_state(n, rng)
            params = ProductAnsatz.haar_random_params(n, rng)
            product = ProductAnsatz.params_to_dense_product(params)
            naive = abs(np.vdot(product.amplitudes, state.amplitudes)) ** 2
            assert DenseStates.exact_fidelity(state, params) == pytest.approx(naive, abs=1e-12)


def test_environment_norm_is_best_single_qubit_fidelity(rng):
    """|env_i|^2 bounds the fidelity over qubit i's pair and is reached by env_i itself"""
    state = DenseStates.haar_random_state(4, rng)
    params = ProductAnsatz.haar_random_params(4, rng)
    pairs = params.normalized().copy()
    env = DenseStates.environment(state.as_tensor(), pairs, 2)
    pairs[2] = env / np.linalg.norm(env)
    best = DenseStates.exact_fidelity(state, ProductParams(pairs))
    assert best == pytest.approx(np.linalg.norm(env) ** 2, abs=1e-12)
    assert best >= DenseStates.exact_fidelity(state, params) - 1e-12
