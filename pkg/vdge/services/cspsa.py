"""
Complex Simultaneous Perturbation Stochastic Approximation (CSPSA) and the
multi-start VDGE driver

Each CSPSA step perturbs all 2n complex parameters at once along a random
direction Delta with entries in {+1, -1, +i, -i}, evaluates the sampled
fidelity at theta +/- c_k Delta and ascends along

    g_i = (F_+ - F_-) / (2 c_k conj(Delta_i))

whose expectation is the Wirtinger derivative dF/d(conj theta_i).
"""

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from vdge.errors import DegenerateRun, DimensionMismatch, OutOfRange
from vdge.models import (EPSILON_NORM, CspsaConfig, GmeEstimate, ProductParams,
                         RunTrace, ShotConfig, TraceRecord)
from vdge.services.parallel import SeedLike, run_tasks, spawn_seeds
from vdge.services.product_ansatz import FidelityBackend, ProductAnsatz
from vdge.services.shot_sampler import ShotSampler

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]

_PERTURBATION_SYMBOLS = np.array([1, -1, 1j, -1j], dtype=complex)


def _pairs_valid(theta: np.ndarray) -> bool:
    norms = np.abs(theta[0::2]) ** 2 + np.abs(theta[1::2]) ** 2
    return bool(np.all(norms > EPSILON_NORM))


class CspsaOptimizer:
    """Gain schedule, perturbation draws and the single CSPSA step"""

    @staticmethod
    def gains(k: int, cfg: CspsaConfig) -> Tuple[float, float]:
        """a_k = a / (k + 1 + A)^s, c_k = b / (k + 1)^t"""
        a_k = cfg.a / (k + 1 + cfg.A) ** cfg.s
        c_k = cfg.b / (k + 1) ** cfg.t
        return a_k, c_k

    @staticmethod
    def perturbation(dim: int, rng: np.random.Generator) -> np.ndarray:
        """dim components drawn uniformly from {+1, -1, +i, -i}"""
        return _PERTURBATION_SYMBOLS[rng.integers(0, 4, size=dim)]

    @staticmethod
    def cspsa_step(theta: np.ndarray, k: int, cfg: CspsaConfig, objective: Objective,
                   rng: np.random.Generator) -> Tuple[np.ndarray, TraceRecord]:
        """
        One ascent step on the flattened parameters

        Exactly two objective evaluations are made unless the updated point
        has a degenerate pair, in which case Delta is redrawn and the step
        retried (at most cfg.max_retries times).

        Raises:
            DegenerateRun: every retry produced a degenerate pair
        """
        a_k, c_k = CspsaOptimizer.gains(k, cfg)
        for attempt in range(cfg.max_retries + 1):
            delta = CspsaOptimizer.perturbation(theta.size, rng)
            theta_plus = theta + c_k * delta
            theta_minus = theta - c_k * delta
            if not (_pairs_valid(theta_plus) and _pairs_valid(theta_minus)):
                logger.warning(f"CSPSA k={k}: degenerate perturbed point, redrawing (attempt {attempt + 1})")
                continue

            f_plus = objective(theta_plus)
            f_minus = objective(theta_minus)
            gradient = (f_plus - f_minus) / (2 * c_k * np.conj(delta))
            theta_next = theta + a_k * gradient
            if _pairs_valid(theta_next):
                return theta_next, TraceRecord(k, float(f_plus), float(f_minus))
            logger.warning(f"CSPSA k={k}: degenerate update, redrawing (attempt {attempt + 1})")

        raise DegenerateRun(f"CSPSA step {k} stayed degenerate after {cfg.max_retries} retries")


class VdgeService:
    """Multi-start variational determination of the geometric entanglement"""

    @staticmethod
    def sampled_objective(backend: FidelityBackend, shot_cfg: ShotConfig,
                          rng: np.random.Generator) -> Objective:
        """theta -> n0/N at the product state encoded by theta"""
        def objective(theta: np.ndarray) -> float:
            f_exact = backend.exact_fidelity(ProductParams.from_flat(theta))
            return ShotSampler.sample_fidelity(f_exact, shot_cfg, backend.n, rng)
        return objective

    @staticmethod
    def run_repetition(backend: FidelityBackend, shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig,
                       init: Optional[ProductParams], seed: np.random.SeedSequence,
                       diagnostics: bool = False) -> RunTrace:
        """One CSPSA run of cspsa_cfg.iterations steps followed by a final measurement"""
        rng = np.random.default_rng(seed)
        params = init if init is not None else ProductAnsatz.haar_random_params(backend.n, rng)
        objective = VdgeService.sampled_objective(backend, shot_cfg, rng)

        theta = params.flatten()
        initial_exact = backend.exact_fidelity(params) if diagnostics else None
        records: List[TraceRecord] = []
        for k in range(cspsa_cfg.iterations):
            theta, record = CspsaOptimizer.cspsa_step(theta, k, cspsa_cfg, objective, rng)
            if diagnostics:
                exact = backend.exact_fidelity(ProductParams.from_flat(theta))
                record = TraceRecord(record.k, record.f_plus, record.f_minus, exact)
            records.append(record)

        final_fidelity = objective(theta)
        return RunTrace(tuple(records), ProductParams.from_flat(theta), float(final_fidelity), initial_exact)

    @staticmethod
    def run_vdge(backend: FidelityBackend, shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig,
                 repetitions: int, init: Optional[ProductParams] = None, seed: SeedLike = None,
                 workers: Optional[int] = 1, diagnostics: bool = False) -> GmeEstimate:
        """
        Run `repetitions` independent CSPSA optimizations and keep the best

        Args:
            backend: dense or MPS state exposing exact_fidelity
            shot_cfg: ensemble size and readout noise
            cspsa_cfg: gains and iteration budget
            repetitions: multi-start count R
            init: explicit starting point for every repetition (Haar-random if None)
            seed: master seed; repetition j uses child j (cspsa_cfg.seed if None)
            workers: thread count for the repetitions
            diagnostics: record exact fidelities along each trajectory

        Returns:
            GmeEstimate selecting the repetition with the largest final
            sampled fidelity
        """
        if repetitions < 1:
            raise OutOfRange(f"repetitions must be >= 1, got {repetitions}")
        if init is not None and init.n != backend.n:
            raise DimensionMismatch(f"initial params for {init.n} qubits, backend has {backend.n}")
        if init is not None:
            init.check()

        seeds = spawn_seeds(cspsa_cfg.seed if seed is None else seed, repetitions)

        def repetition(j: int) -> RunTrace:
            run = VdgeService.run_repetition(backend, shot_cfg, cspsa_cfg, init, seeds[j], diagnostics)
            logger.debug(f"VDGE repetition {j}: E_j={run.estimate:.5f}")
            return run

        runs = run_tasks(repetition, list(range(repetitions)), workers)
        estimate = GmeEstimate.from_runs(runs)
        logger.debug(f"VDGE selected repetition {estimate.selected} of {repetitions}: E*={estimate.gme:.5f}")
        return estimate
