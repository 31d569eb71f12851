import numpy as np
import pytest

from vdge.errors import OutOfRange
from vdge.models import ShotConfig
from vdge.services import ShotSampler


def test_certain_outcomes(rng):
    """f = 1 and f = 0 are deterministic for any ensemble size"""
    for shots in (1, 17, 8192):
        cfg = ShotConfig(shots=shots)
        assert ShotSampler.sample_fidelity(1.0, cfg, 3, rng) == 1.0
        assert ShotSampler.sample_fidelity(0.0, cfg, 3, rng) == 0.0


def test_average_of_draws(rng):
    """Averaging 10^4 draws at f = 0.5, N = 8192 recovers 0.5"""
    cfg = ShotConfig(shots=8192)
    draws = [ShotSampler.sample_fidelity(0.5, cfg, 3, rng) for _ in range(10000)]
    assert abs(np.mean(draws) - 0.5) < 0.001


@pytest.mark.parametrize('f', [0.1, 0.5, 0.9])
def test_unbiased_with_binomial_variance(f, rng):
    """Mean within 4 sigma of f and variance within 20% of f(1-f)/N"""
    cfg = ShotConfig(shots=1024)
    draws = np.array([ShotSampler.sample_fidelity(f, cfg, 2, rng) for _ in range(100000)])
    expected_var = f * (1 - f) / cfg.shots
    assert abs(draws.mean() - f) < 4 * np.sqrt(expected_var / draws.size)
    assert abs(draws.var() / expected_var - 1.0) < 0.2


def test_rejects_fidelity_outside_unit_interval(rng):
    with pytest.raises(OutOfRange):
        ShotSampler.sample_fidelity(1.2, ShotConfig(), 2, rng)
    with pytest.raises(OutOfRange):
        ShotSampler.sample_fidelity(-0.1, ShotConfig(), 2, rng)


class TestReadoutFlips:
    """Readout bit-flip model"""

    def test_no_flip_is_identity(self):
        assert ShotSampler.effective_fidelity(0.37, 0.0, 5) == 0.37

    def test_formula(self):
        f, p, n = 0.5, 0.01, 3
        expected = f * (1 - p) ** n + (1 - f) * p
        assert ShotSampler.effective_fidelity(f, p, n) == pytest.approx(expected)

    def test_flips_lower_the_perfect_outcome(self, rng):
        cfg = ShotConfig(shots=8192, readout_flip=0.05)
        draws = [ShotSampler.sample_fidelity(1.0, cfg, 4, rng) for _ in range(200)]
        assert np.mean(draws) == pytest.approx(0.95 ** 4, abs=0.005)


class TestShotConfig:
    """Validation of the sampling settings"""

    def test_defaults(self):
        cfg = ShotConfig()
        assert cfg.shots == 8192
        assert cfg.readout_flip == 0.0

    def test_rejects_zero_shots(self):
        with pytest.raises(OutOfRange):
            ShotConfig(shots=0)

    def test_rejects_flip_above_half(self):
        with pytest.raises(OutOfRange):
            ShotConfig(readout_flip=0.6)

    def test_from_dict_ignores_unknown_keys(self):
        cfg = ShotConfig.from_dict({'shots': 100, 'iterations': 5})
        assert cfg == ShotConfig(shots=100)


def test_same_seed_same_draws():
    cfg = ShotConfig(shots=2048, readout_flip=0.02)
    first = np.random.default_rng(99)
    second = np.random.default_rng(99)
    for f in np.linspace(0.0, 1.0, 11):
        assert ShotSampler.sample_fidelity(f, cfg, 4, first) == ShotSampler.sample_fidelity(f, cfg, 4, second)
