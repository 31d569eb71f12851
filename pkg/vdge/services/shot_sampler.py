"""
Finite-ensemble fidelity estimates n0/N

Only the all-zeros count enters the estimate, so the 2^n-outcome multinomial
of the projective measurement collapses to Binomial(N, F).

Readout noise (qualitative only): with per-qubit flip probability p the
success probability becomes

    f_eff = f * (1 - p)^n + (1 - f) * p

i.e. the all-zeros outcome survives with probability (1 - p)^n and any other
outcome is misassigned to all-zeros with probability p (one dominant flip,
the worst case of the per-outcome leak p^h).
"""

import logging

import numpy as np

from vdge.errors import OutOfRange
from vdge.models import ShotConfig

logger = logging.getLogger(__name__)


class ShotSampler:
    """Binomial shot-noise model of the fidelity measurement"""

    @staticmethod
    def effective_fidelity(f_exact: float, readout_flip: float, n_qubits: int) -> float:
        """Probability of reading all zeros under independent readout flips"""
        if readout_flip == 0.0:
            return f_exact
        survive = (1.0 - readout_flip) ** n_qubits
        return f_exact * survive + (1.0 - f_exact) * readout_flip

    @staticmethod
    def sample_fidelity(f_exact: float, cfg: ShotConfig, n_qubits: int,
                        rng: np.random.Generator) -> float:
        """
        Draw n0 ~ Binomial(N, f_eff) and return n0 / N

        Args:
            f_exact: exact fidelity in [0, 1]
            cfg: shot count and readout flip probability
            n_qubits: number of measured qubits
            rng: caller-owned generator

        Raises:
            OutOfRange: f_exact outside [0, 1]
        """
        if not 0.0 <= f_exact <= 1.0:
            raise OutOfRange(f"fidelity must lie in [0, 1], got {f_exact}")
        f_eff = ShotSampler.effective_fidelity(f_exact, cfg.readout_flip, n_qubits)
        counts = rng.binomial(cfg.shots, f_eff)
        return counts / cfg.shots
