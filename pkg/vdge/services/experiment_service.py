"""
Experiment Service
Campaign runners behind the CLI: single-state estimates, the GHZ-W sweep,
random-state convergence, perturbed-MPS convergence and the GHZ readout-noise
traces. Every runner is deterministic in its master seed whatever the worker
count; results are reduced in task-index order.
"""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from vdge.errors import OutOfRange
from vdge.models import CspsaConfig, GmeEstimate, MpsState, OracleConfig, ProductParams, ShotConfig
from vdge.services.cspsa import VdgeService
from vdge.services.dense_states import DenseStates
from vdge.services.mps_states import MpsStates
from vdge.services.oracle import ReferenceSolver
from vdge.services.parallel import SeedLike, run_tasks, spawn_seeds
from vdge.services.stats_service import StatsService

logger = logging.getLogger(__name__)

CSV_SCHEMA_VERSION = 1

GHZ_GME = 0.5


class ExperimentService:
    """Runners for the benchmark campaigns"""

    @staticmethod
    def family_optimum(family: str, n: int) -> ProductParams:
        """
        A maximizing product state of the unperturbed family

        GHZ: |0...0>. W: every qubit in sqrt((n-1)/n)|0> + sqrt(1/n)|1>.
        """
        if family == 'ghz':
            return ProductParams(np.tile([1.0, 0.0], (n, 1)))
        if family == 'w':
            return ProductParams(np.tile([np.sqrt((n - 1) / n), np.sqrt(1 / n)], (n, 1)))
        raise OutOfRange(f"unknown family '{family}' (expected ghz or w)")

    @staticmethod
    def error_curve(estimate: GmeEstimate, reference_gme: float) -> np.ndarray:
        """|E_k - E| along the selected repetition, k = 0 (initial point) .. K"""
        curve = estimate.best_run.exact_curve()
        if curve is None:
            raise ValueError("error curves need a run_vdge result produced with diagnostics=True")
        return np.abs((1.0 - curve) - reference_gme)

    @staticmethod
    def estimate(state, shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig, oracle_cfg: OracleConfig,
                 repetitions: int, seed: SeedLike, workers: Optional[int] = 1) -> Dict[str, Any]:
        """VDGE estimate of one state together with the reference value"""
        vdge_seed, oracle_seed = spawn_seeds(seed, 2)
        logger.info(f"Estimating GME of {state!r}: R={repetitions}, K={cspsa_cfg.iterations}, N={shot_cfg.shots}")

        estimate = VdgeService.run_vdge(state, shot_cfg, cspsa_cfg, repetitions, seed=vdge_seed, workers=workers)
        oracle = ReferenceSolver.reference_gme(state, oracle_cfg, workers=workers, seed=oracle_seed)

        abs_error = abs(estimate.gme - oracle.gme)
        document = estimate.to_dict()
        document.update({
            'n': state.n,
            'backend': 'mps' if isinstance(state, MpsState) else 'dense',
            'oracle': {
                'gme': oracle.gme,
                'eigenvalue': oracle.eigenvalue,
                'params': oracle.params.to_dict(),
            },
            'abs_error': abs_error,
            'relative_error': abs_error / oracle.gme if oracle.gme > 0 else None,
        })
        logger.info(f"E* = {estimate.gme:.5f}, reference E = {oracle.gme:.5f}, |error| = {abs_error:.5f}")
        return document

    @staticmethod
    def gw_sweep(phis: Sequence[float], s_count: int, shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig,
                 oracle_cfg: OracleConfig, repetitions: int, trials: int, seed: int,
                 workers: Optional[int] = 1, resamples: int = 1000,
                 confidence: float = 0.95) -> pd.DataFrame:
        """
        GHZ-W superpositions on an equally spaced s grid for every phi

        Each point is estimated by `trials` independent best-of-R runs; the
        rows carry the first trial's E_*, the median/IQR over trials and a
        bootstrap interval for the median.
        """
        if s_count < 2:
            raise OutOfRange(f"s grid needs at least 2 points, got {s_count}")
        if trials < 1:
            raise OutOfRange(f"trials must be >= 1, got {trials}")
        grid = [(phi, float(s)) for phi in phis for s in np.linspace(0.0, 1.0, s_count)]
        seeds = spawn_seeds(seed, len(grid))

        def point(index: int) -> Dict[str, Any]:
            phi, s = grid[index]
            state = DenseStates.make_gw(s, phi)
            oracle_seed, bootstrap_seed, *trial_seeds = spawn_seeds(seeds[index], trials + 2)
            oracle = ReferenceSolver.reference_gme(state, oracle_cfg, seed=oracle_seed)
            estimates = [
                VdgeService.run_vdge(state, shot_cfg, cspsa_cfg, repetitions, seed=trial_seed).gme
                for trial_seed in trial_seeds
            ]
            summary = StatsService.summarize_with_ci(estimates, resamples, confidence,
                                                     np.random.default_rng(bootstrap_seed))
            logger.info(f"GW phi={phi:.4f} s={s:.4f}: E={oracle.gme:.5f}, median E*={summary.median:.5f}")
            return {
                'phi': phi,
                's': s,
                'E_oracle': oracle.gme,
                'E_vdge': estimates[0],
                'E_vdge_median': summary.median,
                'E_vdge_q1': summary.q1,
                'E_vdge_q3': summary.q3,
                'E_vdge_ci_lo': summary.bootstrap_ci[0],
                'E_vdge_ci_hi': summary.bootstrap_ci[1],
                'trials': trials,
                'reps': repetitions,
                'iters': cspsa_cfg.iterations,
                'shots': shot_cfg.shots,
                'seed': seed,
            }

        return pd.DataFrame(run_tasks(point, list(range(len(grid))), workers))

    @staticmethod
    def _curves_frame(curves: Dict[Any, List[np.ndarray]], key_columns: Tuple[str, ...],
                      extra: Dict[str, Any]) -> pd.DataFrame:
        rows = []
        for key, per_state in curves.items():
            errors = np.vstack(per_state)
            q1, median, q3 = np.percentile(errors, [25, 50, 75], axis=0, method=StatsService.QUARTILE_METHOD)
            key = key if isinstance(key, tuple) else (key,)
            for k in range(errors.shape[1]):
                row = dict(zip(key_columns, key))
                row.update({'k': k, 'err_median': median[k], 'err_q1': q1[k], 'err_q3': q3[k]})
                row.update(extra)
                rows.append(row)
        return pd.DataFrame(rows)

    @staticmethod
    def random_bench(ns: Sequence[int], states: int, shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig,
                     oracle_cfg: OracleConfig, repetitions: int, seed: int,
                     workers: Optional[int] = 1) -> pd.DataFrame:
        """
        Haar-random states: median/IQR of |E_k - E| versus iteration k per n

        Row k = 0 is the initialization of the finally selected repetition,
        row k its exact error after k CSPSA updates.
        """
        tasks = [(n, i) for n in ns for i in range(states)]
        seeds = spawn_seeds(seed, len(tasks))

        def one_state(index: int) -> np.ndarray:
            n, i = tasks[index]
            state_seed, oracle_seed, vdge_seed = spawn_seeds(seeds[index], 3)
            state = DenseStates.haar_random_state(n, np.random.default_rng(state_seed))
            oracle = ReferenceSolver.reference_gme(state, oracle_cfg, seed=oracle_seed)
            estimate = VdgeService.run_vdge(state, shot_cfg, cspsa_cfg, repetitions, seed=vdge_seed,
                                            diagnostics=True)
            curve = ExperimentService.error_curve(estimate, oracle.gme)
            logger.info(f"Random state n={n} #{i}: E={oracle.gme:.5f}, final |error|={curve[-1]:.5f}")
            return curve

        results = run_tasks(one_state, list(range(len(tasks))), workers)
        curves: Dict[int, List[np.ndarray]] = {n: [] for n in ns}
        for (n, _), curve in zip(tasks, results):
            curves[n].append(curve)
        return ExperimentService._curves_frame(curves, ('n',), {
            'states': states,
            'reps': repetitions,
            'iters': cspsa_cfg.iterations,
            'shots': shot_cfg.shots,
            'seed': seed,
        })

    @staticmethod
    def mps_bench(n: int, lam: float, family: str, states: int, shot_cfg: ShotConfig,
                  cspsa_cfg: CspsaConfig, oracle_cfg: OracleConfig, repetitions: int, seed: int,
                  workers: Optional[int] = 1) -> pd.DataFrame:
        """
        Perturbed GHZ/W chains started from the unperturbed optimum

        The reference solver gets the same optimum as a warm start.
        """
        init = ExperimentService.family_optimum(family, n)
        base = MpsStates.mps_ghz(n) if family == 'ghz' else MpsStates.mps_w(n)
        seeds = spawn_seeds(seed, states)

        def one_state(index: int) -> np.ndarray:
            state_seed, oracle_seed, vdge_seed = spawn_seeds(seeds[index], 3)
            state = MpsStates.perturb_mps(base, lam, np.random.default_rng(state_seed))
            oracle = ReferenceSolver.reference_gme(state, oracle_cfg, warm_starts=[init], seed=oracle_seed)
            estimate = VdgeService.run_vdge(state, shot_cfg, cspsa_cfg, repetitions, init=init,
                                            seed=vdge_seed, diagnostics=True)
            curve = ExperimentService.error_curve(estimate, oracle.gme)
            logger.info(f"Perturbed {family.upper()} n={n} #{index}: initial |error|={curve[0]:.5f}, "
                        f"final |error|={curve[-1]:.5f}")
            return curve

        results = run_tasks(one_state, list(range(states)), workers)
        return ExperimentService._curves_frame({(family, n, lam): results}, ('family', 'n', 'lambda'), {
            'states': states,
            'reps': repetitions,
            'iters': cspsa_cfg.iterations,
            'shots': shot_cfg.shots,
            'seed': seed,
        })

    @staticmethod
    def ghz_readout(ns: Sequence[int], shot_cfg: ShotConfig, cspsa_cfg: CspsaConfig, repetitions: int,
                    seed: int, workers: Optional[int] = 1) -> pd.DataFrame:
        """
        GHZ runs with readout flips: per-iteration E(theta_{k,+/-}) of the
        selected repetition, the final E_* and its relative error to 0.5
        """
        seeds = spawn_seeds(seed, len(ns))

        def one_size(index: int) -> List[Dict[str, Any]]:
            n = ns[index]
            state = DenseStates.make_ghz(n)
            estimate = VdgeService.run_vdge(state, shot_cfg, cspsa_cfg, repetitions, seed=seeds[index])
            relative = abs(estimate.gme - GHZ_GME) / GHZ_GME
            logger.info(f"GHZ n={n}, readout flip {shot_cfg.readout_flip}: E*={estimate.gme:.4f} "
                        f"(relative error {relative:.4f})")
            return [{
                'n': n,
                'k': record.k,
                'E_plus': record.estimate_plus,
                'E_minus': record.estimate_minus,
                'E_star': estimate.gme,
                'rel_error': relative,
                'readout_flip': shot_cfg.readout_flip,
                'reps': repetitions,
                'iters': cspsa_cfg.iterations,
                'shots': shot_cfg.shots,
                'seed': seed,
            } for record in estimate.best_run.records]

        rows = [row for block in run_tasks(one_size, list(range(len(ns))), workers) for row in block]
        return pd.DataFrame(rows)

    @staticmethod
    def write_csv(frame: pd.DataFrame, path: str, schema: str, config: Dict[str, Any]) -> None:
        """CSV preceded by a versioned schema line and the resolved config"""
        with open(path, 'w', newline='') as f:
            f.write(f"# schema: vdge/{schema} v{CSV_SCHEMA_VERSION}\n")
            f.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
            frame.to_csv(f, index=False)
        logger.info(f"Wrote {len(frame)} rows to {path}")
