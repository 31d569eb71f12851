"""
Matrix Product State Service
Bond-dimension-2 GHZ and W chains, Gaussian perturbation, normalization,
O(n chi^2) product-state overlaps and dense conversion for cross-checks
"""

import logging
from typing import List

import numpy as np

from vdge.errors import DimensionMismatch, InvalidQubitCount, OutOfRange, TooLarge, ZeroNorm
from vdge.models import MpsState, ProductParams, PureState
from vdge.services.product_ansatz import ProductAnsatz

logger = logging.getLogger(__name__)

MPS_DENSE_MAX_QUBITS = 20
ZERO_NORM_SQ = 1e-300


class MpsStates:
    """Constructors, contractions and perturbations for the MPS backend"""

    @staticmethod
    def mps_ghz(n: int) -> MpsState:
        """GHZ chain: the bond index copies the physical value along the chain"""
        if n < 2:
            raise InvalidQubitCount(f"GHZ needs n >= 2, got {n}")
        first = np.zeros((1, 2, 2), dtype=complex)
        first[0, 0, 0] = first[0, 1, 1] = 1 / np.sqrt(2)
        middle = np.zeros((2, 2, 2), dtype=complex)
        middle[0, 0, 0] = middle[1, 1, 1] = 1.0
        last = np.zeros((2, 2, 1), dtype=complex)
        last[0, 0, 0] = last[1, 1, 0] = 1.0
        return MpsState(tuple([first] + [middle] * (n - 2) + [last]))

    @staticmethod
    def mps_w(n: int) -> MpsState:
        """W chain: bond 0 = no excitation yet, bond 1 = excitation already placed"""
        if n < 2:
            raise InvalidQubitCount(f"W needs n >= 2, got {n}")
        first = np.zeros((1, 2, 2), dtype=complex)
        first[0, 0, 0] = first[0, 1, 1] = 1 / np.sqrt(n)
        middle = np.zeros((2, 2, 2), dtype=complex)
        middle[0, 0, 0] = middle[0, 1, 1] = middle[1, 0, 1] = 1.0
        last = np.zeros((2, 2, 1), dtype=complex)
        last[0, 1, 0] = last[1, 0, 0] = 1.0
        return MpsState(tuple([first] + [middle] * (n - 2) + [last]))

    @staticmethod
    def norm_sq(mps: MpsState) -> float:
        """<psi|psi> via left-to-right transfer matrices"""
        env = np.ones((1, 1), dtype=complex)
        for tensor in mps.tensors:
            env = np.einsum('ab,apc,bpd->cd', env, tensor, tensor.conj(), optimize=True)
        return float(env[0, 0].real)

    @staticmethod
    def normalize_mps(mps: MpsState) -> MpsState:
        """Divide every tensor by norm^(1/n) so that <psi|psi> = 1"""
        norm_sq = MpsStates.norm_sq(mps)
        if not norm_sq > ZERO_NORM_SQ:
            raise ZeroNorm(f"MPS norm^2 = {norm_sq:.3e} cannot be normalized")
        factor = norm_sq ** (-0.5 / mps.n)
        return MpsState(tuple(tensor * factor for tensor in mps.tensors))

    @staticmethod
    def perturb_mps(mps: MpsState, lam: float, rng: np.random.Generator) -> MpsState:
        """
        Add complex Gaussian noise to every tensor entry and renormalize

        Real and imaginary parts are independent with mean 0 and variance lam
        each.
        """
        if lam < 0:
            raise OutOfRange(f"perturbation variance must be >= 0, got {lam}")
        sigma = np.sqrt(lam)
        tensors = []
        for tensor in mps.tensors:
            noise = rng.standard_normal(tensor.shape) + 1j * rng.standard_normal(tensor.shape)
            tensors.append(tensor + sigma * noise)
        return MpsStates.normalize_mps(MpsState(tuple(tensors)))

    @staticmethod
    def site_vectors(mps: MpsState, pairs: np.ndarray) -> List[np.ndarray]:
        """Per-site matrices sum_p conj(phi_j[p]) A_j[:, p, :]"""
        return [np.einsum('p,apb->ab', pair.conj(), tensor) for pair, tensor in zip(pairs, mps.tensors)]

    @staticmethod
    def exact_fidelity(mps: MpsState, params: ProductParams) -> float:
        """|<phi(theta)|psi>|^2 by a left-to-right transfer contraction"""
        if params.n != mps.n:
            raise DimensionMismatch(f"params for {params.n} qubits, MPS has {mps.n}")
        env = np.ones((1, 1), dtype=complex)
        for matrix in MpsStates.site_vectors(mps, params.normalized()):
            env = env @ matrix
        return ProductAnsatz.clamp_fidelity(abs(complex(env[0, 0])) ** 2)

    @staticmethod
    def mps_to_dense(mps: MpsState) -> PureState:
        """Full contraction to 2^n amplitudes; refuses n > 20"""
        if mps.n > MPS_DENSE_MAX_QUBITS:
            raise TooLarge(f"dense conversion refuses n={mps.n} > {MPS_DENSE_MAX_QUBITS}")
        vector = np.ones((1, 1), dtype=complex)
        for tensor in mps.tensors:
            vector = np.einsum('xa,apb->xpb', vector, tensor).reshape(-1, tensor.shape[2])
        amplitudes = vector[:, 0]
        norm = np.linalg.norm(amplitudes)
        if abs(norm ** 2 - 1.0) > 1e-10:
            logger.warning(f"mps_to_dense: input norm^2 {norm ** 2:.12f}, renormalizing")
            amplitudes = amplitudes / norm
        return PureState(mps.n, amplitudes)
