import numpy as np
import pytest

from vdge.errors import EmptyInput, OutOfRange
from vdge.services import StatsService


class TestSummarize:
    """Median and quartiles"""

    def test_four_values(self):
        stats = StatsService.summarize([1, 2, 3, 4])
        assert stats.median == pytest.approx(2.5)
        assert stats.q1 == pytest.approx(1.75)
        assert stats.q3 == pytest.approx(3.25)
        assert stats.iqr == pytest.approx(1.5)

    def test_single_value(self):
        stats = StatsService.summarize([5])
        assert stats.median == 5
        assert stats.iqr == 0

    def test_order_independent(self, rng):
        values = rng.uniform(size=31)
        assert StatsService.summarize(values) == StatsService.summarize(rng.permutation(values))
        assert StatsService.summarize([3, 1, 2]).median == 2

    def test_empty(self):
        with pytest.raises(EmptyInput):
            StatsService.summarize([])

    def test_document_names_quartile_method(self):
        document = StatsService.summarize([1, 2, 3]).to_dict()
        assert document['quartile_method'] == 'linear'
        assert 'bootstrap_ci' not in document


class TestBootstrap:
    """Percentile bootstrap intervals"""

    def test_constant_sample(self, rng):
        assert StatsService.bootstrap([0.5] * 100, np.median, rng=rng) == (0.5, 0.5)

    def test_same_seed_same_interval(self, rng):
        values = rng.uniform(size=50)
        first = StatsService.bootstrap(values, rng=np.random.default_rng(1))
        second = StatsService.bootstrap(values, rng=np.random.default_rng(1))
        assert first == second

    def test_coverage_of_the_mean(self, rng):
        covered = 0
        for _ in range(100):
            sample = rng.uniform(size=10000)
            lo, hi = StatsService.bootstrap(sample, np.mean, resamples=200, rng=rng)
            covered += lo <= 0.5 <= hi
        assert covered >= 90

    def test_interval_shrinks_with_sample_size(self, rng):
        small = StatsService.bootstrap(rng.uniform(size=100), np.mean, rng=rng)
        large = StatsService.bootstrap(rng.uniform(size=10000), np.mean, rng=rng)
        assert large[1] - large[0] < small[1] - small[0]

    def test_empty(self, rng):
        with pytest.raises(EmptyInput):
            StatsService.bootstrap([], rng=rng)

    def test_rejects_bad_settings(self, rng):
        with pytest.raises(OutOfRange):
            StatsService.bootstrap([1.0], resamples=0, rng=rng)
        with pytest.raises(OutOfRange):
            StatsService.bootstrap([1.0], confidence=1.0, rng=rng)


def test_summary_with_interval(rng):
    values = rng.normal(0.3, 0.01, size=40)
    stats = StatsService.summarize_with_ci(values, resamples=500, rng=rng)
    lo, hi = stats.bootstrap_ci
    assert stats.q1 <= stats.median <= stats.q3
    assert lo <= stats.median <= hi
    assert stats.to_dict()['bootstrap_ci'] == [lo, hi]
