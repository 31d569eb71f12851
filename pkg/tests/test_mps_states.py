import numpy as np
import pytest

from vdge.errors import DimensionMismatch, TooLarge, ZeroNorm
from vdge.models import MpsState, ProductParams
from vdge.services import DenseStates, MpsStates, ProductAnsatz


def random_mps(n, chi, rng):
    """Normalized random chain with bond dimension chi"""
    dims = [1] + [chi] * (n - 1) + [1]
    tensors = tuple(rng.standard_normal((dims[j], 2, dims[j + 1]))
                    + 1j * rng.standard_normal((dims[j], 2, dims[j + 1])) for j in range(n))
    return MpsStates.normalize_mps(MpsState(tensors))


class TestFamilies:
    """Bond-dimension-2 GHZ and W chains"""

    def test_ghz_matches_dense(self):
        dense = MpsStates.mps_to_dense(MpsStates.mps_ghz(4))
        assert np.allclose(dense.amplitudes, DenseStates.make_ghz(4).amplitudes, atol=1e-12)

    def test_w_matches_dense(self):
        for n in (3, 5):
            dense = MpsStates.mps_to_dense(MpsStates.mps_w(n))
            assert np.allclose(dense.amplitudes, DenseStates.make_w(n).amplitudes, atol=1e-12)

    def test_long_chains_keep_bond_two(self):
        assert MpsStates.mps_ghz(25).max_bond <= 2
        assert MpsStates.mps_w(25).max_bond <= 2

    def test_w_norm(self):
        assert MpsStates.norm_sq(MpsStates.mps_w(6)) == pytest.approx(1.0, abs=1e-10)

    def test_ghz_overlap_with_all_zero(self):
        params = ProductParams.from_pairs([(1, 0)] * 3)
        assert MpsStates.exact_fidelity(MpsStates.mps_ghz(3), params) == pytest.approx(0.5)

    def test_ghz5_overlap(self):
        params = ProductParams.from_pairs([(1, 0)] * 5)
        assert MpsStates.exact_fidelity(MpsStates.mps_ghz(5), params) == pytest.approx(0.5)

    def test_w4_overlap_with_1000(self):
        params = ProductParams.from_pairs([(0, 1), (1, 0), (1, 0), (1, 0)])
        assert MpsStates.exact_fidelity(MpsStates.mps_w(4), params) == pytest.approx(0.25)


class TestMpsState:
    """Structural validation"""

    def test_rejects_open_boundary_bond(self):
        with pytest.raises(DimensionMismatch):
            MpsState((np.ones((2, 2, 1)),))

    def test_rejects_mismatched_bonds(self):
        with pytest.raises(DimensionMismatch):
            MpsState((np.ones((1, 2, 2)), np.ones((3, 2, 1))))

    def test_bond_dims(self):
        assert MpsStates.mps_ghz(5).bond_dims == [2, 2, 2, 2]


class TestNormalizeAndPerturb:
    """Normalization and Gaussian perturbation"""

    def test_normalized_input_unchanged(self):
        ghz = MpsStates.mps_ghz(4)
        out = MpsStates.normalize_mps(ghz)
        for a, b in zip(ghz.tensors, out.tensors):
            assert np.allclose(a, b, atol=1e-12)

    def test_doubled_first_tensor(self):
        ghz = MpsStates.mps_ghz(4)
        doubled = MpsState((2 * ghz.tensors[0],) + ghz.tensors[1:])
        assert MpsStates.norm_sq(MpsStates.normalize_mps(doubled)) == pytest.approx(1.0, abs=1e-12)

    def test_random_chain_dense_norm(self, rng):
        mps = random_mps(10, 2, rng)
        assert MpsStates.mps_to_dense(mps).norm() == pytest.approx(1.0, abs=1e-10)

    def test_zero_chain_raises(self):
        zero = MpsState((np.zeros((1, 2, 1)), np.zeros((1, 2, 1))))
        with pytest.raises(ZeroNorm):
            MpsStates.normalize_mps(zero)

    def test_lambda_zero_is_identity(self, rng):
        w = MpsStates.mps_w(5)
        out = MpsStates.perturb_mps(w, 0.0, rng)
        for a, b in zip(w.tensors, out.tensors):
            assert np.allclose(a, b, atol=1e-12)

    @pytest.mark.parametrize('family', [MpsStates.mps_ghz, MpsStates.mps_w])
    @pytest.mark.parametrize('lam', [1e-6, 1e-8, 1e-10])
    def test_small_lambda_stays_close(self, family, lam, rng):
        """sup-norm distance per tensor at most 10 sqrt(lam) max|entry|"""
        chain = family(5)
        out = MpsStates.perturb_mps(chain, lam, rng)
        for a, b in zip(chain.tensors, out.tensors):
            assert np.max(np.abs(a - b)) <= 10 * np.sqrt(lam) * np.max(np.abs(a))

    def test_perturbed_norm_and_distance(self, rng):
        ghz = MpsStates.mps_ghz(8)
        perturbed = MpsStates.perturb_mps(ghz, 0.1, rng)
        assert MpsStates.norm_sq(perturbed) == pytest.approx(1.0, abs=1e-10)
        overlap = np.vdot(MpsStates.mps_to_dense(ghz).amplitudes, MpsStates.mps_to_dense(perturbed).amplitudes)
        assert abs(overlap) ** 2 < 1.0 - 1e-9


class TestDenseConversion:
    """mps_to_dense bridge"""

    def test_ceiling(self):
        with pytest.raises(TooLarge):
            MpsStates.mps_to_dense(MpsStates.mps_ghz(21))

    def test_round_trip_norm(self, rng):
        assert MpsStates.mps_to_dense(random_mps(12, 2, rng)).norm() == pytest.approx(1.0, abs=1e-10)


def test_backend_agreement(rng):
    """MPS and dense fidelities agree on perturbed chains up to 12 sites"""
    for trial in range(100):
        n = 2 + trial % 11
        base = MpsStates.mps_w(n) if trial % 2 else MpsStates.mps_ghz(n)
        mps = MpsStates.perturb_mps(base, 0.1, rng)
        dense = MpsStates.mps_to_dense(mps)
        params = ProductAnsatz.haar_random_params(n, rng)
        assert MpsStates.exact_fidelity(mps, params) == pytest.approx(dense.exact_fidelity(params), abs=1e-10)


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        MpsStates.exact_fidelity(MpsStates.mps_ghz(3), ProductParams.from_pairs([(1, 0)] * 4))
