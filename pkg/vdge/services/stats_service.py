"""
Median / interquartile summaries and percentile bootstrap intervals
"""

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from vdge.errors import EmptyInput, OutOfRange
from vdge.models import SummaryStats

logger = logging.getLogger(__name__)

Statistic = Callable[[np.ndarray], float]


class StatsService:
    """Summary statistics for campaign outputs"""

    # Percentile positions p * (m - 1) with linear interpolation
    QUARTILE_METHOD = 'linear'

    @staticmethod
    def summarize(values: Sequence[float], ci: Optional[Tuple[float, float]] = None) -> SummaryStats:
        """
        Median and quartiles of a non-empty sample

        Raises:
            EmptyInput: no values
        """
        data = np.asarray(values, dtype=float).reshape(-1)
        if data.size == 0:
            raise EmptyInput("cannot summarize an empty sample")
        q1, median, q3 = np.percentile(data, [25, 50, 75], method=StatsService.QUARTILE_METHOD)
        return SummaryStats(float(median), float(q1), float(q3), ci)

    @staticmethod
    def bootstrap(values: Sequence[float], statistic: Statistic = np.median, resamples: int = 1000,
                  confidence: float = 0.95,
                  rng: Optional[np.random.Generator] = None) -> Tuple[float, float]:
        """
        Percentile bootstrap interval of `statistic`

        Each resample draws len(values) points with replacement.
        """
        data = np.asarray(values, dtype=float).reshape(-1)
        if data.size == 0:
            raise EmptyInput("cannot bootstrap an empty sample")
        if resamples < 1:
            raise OutOfRange(f"resamples must be >= 1, got {resamples}")
        if not 0.0 < confidence < 1.0:
            raise OutOfRange(f"confidence must lie in (0, 1), got {confidence}")
        rng = rng if rng is not None else np.random.default_rng()

        indices = rng.integers(0, data.size, size=(resamples, data.size))
        replicates = np.array([statistic(data[row]) for row in indices], dtype=float)
        alpha = 1.0 - confidence
        lo, hi = np.percentile(replicates, [100 * alpha / 2, 100 * (1 - alpha / 2)])
        return float(lo), float(hi)

    @staticmethod
    def summarize_with_ci(values: Sequence[float], resamples: int = 1000, confidence: float = 0.95,
                          rng: Optional[np.random.Generator] = None) -> SummaryStats:
        """summarize() plus a bootstrap interval for the median"""
        ci = StatsService.bootstrap(values, np.median, resamples, confidence, rng)
        return StatsService.summarize(values, ci)
