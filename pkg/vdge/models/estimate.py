"""
Optimizer traces and multi-start GME estimates
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from vdge.models.product_params import ProductParams


@dataclass(frozen=True)
class TraceRecord:
    """One CSPSA iteration: sampled fidelities at theta_{k,+} and theta_{k,-}"""

    k: int
    f_plus: float
    f_minus: float
    # exact fidelity at theta_{k+1}, only filled in diagnostics mode
    exact: Optional[float] = None

    @property
    def estimate_plus(self) -> float:
        return 1.0 - self.f_plus

    @property
    def estimate_minus(self) -> float:
        return 1.0 - self.f_minus

    def to_dict(self) -> dict:
        data = {'k': self.k, 'f_plus': self.f_plus, 'f_minus': self.f_minus}
        if self.exact is not None:
            data['exact'] = self.exact
        return data


@dataclass(frozen=True)
class RunTrace:
    """Full record of one CSPSA repetition"""

    records: Tuple[TraceRecord, ...]
    params: ProductParams
    final_fidelity: float
    initial_exact: Optional[float] = None

    @property
    def estimate(self) -> float:
        """E_j = 1 - F(theta_K), with F sampled at the final point"""
        return 1.0 - self.final_fidelity

    @property
    def iterations(self) -> int:
        return len(self.records)

    def exact_curve(self) -> Optional[np.ndarray]:
        """Exact fidelities at theta_0 .. theta_K, or None outside diagnostics mode"""
        if self.initial_exact is None or any(r.exact is None for r in self.records):
            return None
        return np.array([self.initial_exact] + [r.exact for r in self.records])

    def to_dict(self, include_records: bool = True) -> dict:
        data = {
            'estimate': self.estimate,
            'final_fidelity': self.final_fidelity,
            'iterations': self.iterations,
            'params': self.params.to_dict(),
        }
        if self.initial_exact is not None:
            data['initial_exact'] = self.initial_exact
        if include_records:
            data['records'] = [r.to_dict() for r in self.records]
        return data


@dataclass(frozen=True)
class GmeEstimate:
    """
    Multi-start result. The selected repetition is the one with the largest
    final sampled fidelity, i.e. the smallest E_j.
    """

    runs: Tuple[RunTrace, ...] = field(default_factory=tuple)
    selected: int = 0

    @classmethod
    def from_runs(cls, runs: List[RunTrace]) -> 'GmeEstimate':
        # strict comparison keeps the lowest index on ties
        best = 0
        for j, run in enumerate(runs):
            if run.final_fidelity > runs[best].final_fidelity:
                best = j
        return cls(tuple(runs), best)

    @property
    def repetitions(self) -> int:
        return len(self.runs)

    @property
    def estimates(self) -> List[float]:
        return [run.estimate for run in self.runs]

    @property
    def best_run(self) -> RunTrace:
        return self.runs[self.selected]

    @property
    def gme(self) -> float:
        return self.best_run.estimate

    @property
    def eigenvalue(self) -> float:
        """Entanglement eigenvalue estimate, 1 - E_*"""
        return 1.0 - self.gme

    def to_dict(self, include_records: bool = True) -> dict:
        return {
            'gme': self.gme,
            'eigenvalue': self.eigenvalue,
            'repetitions': self.repetitions,
            'selected': self.selected,
            'estimates': self.estimates,
            'runs': [run.to_dict(include_records) for run in self.runs],
        }
