from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class SummaryStats:
    """Median and quartiles (linear interpolation), optional bootstrap interval"""

    median: float
    q1: float
    q3: float
    bootstrap_ci: Optional[Tuple[float, float]] = None

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1

    def to_dict(self) -> dict:
        data = {
            'median': self.median,
            'q1': self.q1,
            'q3': self.q3,
            'iqr': self.iqr,
            'quartile_method': 'linear',
        }
        if self.bootstrap_ci is not None:
            data['bootstrap_ci'] = list(self.bootstrap_ci)
        return data
