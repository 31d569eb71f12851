"""
Classical reference solver for the entanglement eigenvalue

Multi-start alternating rank-1 approximation: each sweep replaces the pair of
qubit i (i = 1..n in order) by the normalized partial contraction of psi with
every other qubit's current pair, which is the exact maximizer of the
fidelity in that qubit alone. Fidelity therefore never decreases across a
sweep. Works on dense and MPS states; a closed-form Schmidt solution covers
two qubits independently.
"""

import logging
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from vdge.errors import DimensionMismatch
from vdge.models import MpsState, OracleConfig, ProductParams, PureState
from vdge.services.dense_states import DenseStates
from vdge.services.mps_states import MpsStates
from vdge.services.parallel import SeedLike, run_tasks, spawn_seeds
from vdge.services.product_ansatz import ProductAnsatz

logger = logging.getLogger(__name__)

ZERO_ENVIRONMENT = 1e-300

State = Union[PureState, MpsState]


class OracleResult(NamedTuple):
    gme: float
    eigenvalue: float
    params: ProductParams


class ReferenceSolver:
    """Alternating-sweep solver for max |<phi|psi>|^2 over product states"""

    @staticmethod
    def _dense_sweep(state: PureState, pairs: np.ndarray, rng: np.random.Generator) -> float:
        tensor = state.as_tensor()
        env = None
        for i in range(state.n):
            env = DenseStates.environment(tensor, pairs, i)
            pairs[i] = ReferenceSolver._update_pair(env, i, rng)
        return float(np.linalg.norm(env) ** 2)

    @staticmethod
    def _mps_sweep(mps: MpsState, pairs: np.ndarray, rng: np.random.Generator) -> float:
        matrices = MpsStates.site_vectors(mps, pairs)
        # right[i] holds the contraction of sites i+1..n-1
        right = [np.ones(1, dtype=complex)] * mps.n
        acc = np.ones(1, dtype=complex)
        for i in range(mps.n - 1, 0, -1):
            acc = matrices[i] @ acc
            right[i - 1] = acc
        left = np.ones(1, dtype=complex)
        env = None
        for i, tensor in enumerate(mps.tensors):
            env = np.einsum('a,apb,b->p', left, tensor, right[i])
            pairs[i] = ReferenceSolver._update_pair(env, i, rng)
            left = left @ np.einsum('p,apb->ab', pairs[i].conj(), tensor)
        return float(np.linalg.norm(env) ** 2)

    @staticmethod
    def _update_pair(env: np.ndarray, qubit: int, rng: np.random.Generator) -> np.ndarray:
        norm = np.linalg.norm(env)
        if norm ** 2 <= ZERO_ENVIRONMENT:
            logger.warning(f"Zero environment at qubit {qubit}, re-randomizing its pair")
            pair = ProductAnsatz.haar_random_params(1, rng).pairs[0]
            return pair / np.linalg.norm(pair)
        return env / norm

    @staticmethod
    def alternating_sweep(state: State, params: ProductParams,
                          rng: Optional[np.random.Generator] = None) -> Tuple[ProductParams, float]:
        """
        One qubit-1-to-n sweep of conditional updates

        Returns:
            (updated params with normalized pairs, fidelity after the sweep)
        """
        if params.n != state.n:
            raise DimensionMismatch(f"params for {params.n} qubits, state has {state.n}")
        rng = rng if rng is not None else np.random.default_rng()
        pairs = params.normalized().copy()
        if isinstance(state, MpsState):
            fidelity = ReferenceSolver._mps_sweep(state, pairs, rng)
        else:
            fidelity = ReferenceSolver._dense_sweep(state, pairs, rng)
        return ProductParams(pairs), ProductAnsatz.clamp_fidelity(fidelity)

    @staticmethod
    def ascend(state: State, params: ProductParams, cfg: OracleConfig,
               rng: np.random.Generator) -> Tuple[ProductParams, float]:
        """Sweep until the fidelity changes by less than cfg.tol or max_sweeps is hit"""
        previous = state.exact_fidelity(params)
        for _ in range(cfg.max_sweeps):
            params, fidelity = ReferenceSolver.alternating_sweep(state, params, rng)
            if abs(fidelity - previous) < cfg.tol:
                break
            previous = fidelity
        return params, fidelity

    @staticmethod
    def reference_gme(state: State, cfg: OracleConfig,
                      warm_starts: Iterable[ProductParams] = (),
                      workers: Optional[int] = 1, seed: SeedLike = None) -> OracleResult:
        """
        Best of `cfg.starts` Haar-initialized ascents (after any warm starts)

        Ties between equally good starts go to the lowest start index, warm
        starts first. `seed` overrides cfg.seed.
        """
        warm = list(warm_starts)
        for params in warm:
            if params.n != state.n:
                raise DimensionMismatch(f"warm start for {params.n} qubits, state has {state.n}")
        seeds = spawn_seeds(cfg.seed if seed is None else seed, len(warm) + cfg.starts)

        def start(index: int) -> Tuple[ProductParams, float]:
            rng = np.random.default_rng(seeds[index])
            if index < len(warm):
                init = warm[index]
            else:
                init = ProductAnsatz.haar_random_params(state.n, rng)
            return ReferenceSolver.ascend(state, init, cfg, rng)

        results: List[Tuple[ProductParams, float]] = run_tasks(start, list(range(len(seeds))), workers)
        best_params, best_fidelity = results[0]
        for params, fidelity in results[1:]:
            if fidelity > best_fidelity:
                best_params, best_fidelity = params, fidelity

        logger.debug(f"reference_gme: n={state.n}, starts={len(results)}, eigenvalue={best_fidelity:.12f}")
        return OracleResult(1.0 - best_fidelity, best_fidelity, best_params)

    @staticmethod
    def schmidt_gme_2q(state: PureState) -> float:
        """
        1 - sigma_max^2 from the closed-form eigenvalues of the 2x2 Gram matrix
        of the coefficient matrix
        """
        if state.n != 2:
            raise DimensionMismatch(f"Schmidt cross-check needs 2 qubits, got {state.n}")
        m = state.amplitudes.reshape(2, 2)
        gram = m @ m.conj().T
        trace = float(gram[0, 0].real + gram[1, 1].real)
        det = float((gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]).real)
        disc = max(trace ** 2 - 4.0 * det, 0.0)
        largest = 0.5 * (trace + np.sqrt(disc))
        return 1.0 - min(largest, 1.0)
