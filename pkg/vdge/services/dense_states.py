"""
Dense Statevector Service
Named state families (GHZ, W, GHZ-W superpositions), Haar-random states and
exact product-state fidelity on the full amplitude vector
"""

import logging

import numpy as np

from vdge.errors import DimensionMismatch, InvalidQubitCount, OutOfRange
from vdge.models import ProductParams, PureState
from vdge.services.product_ansatz import ProductAnsatz

logger = logging.getLogger(__name__)


class DenseStates:
    """Constructors and fidelity for the dense backend"""

    @staticmethod
    def make_ghz(n: int) -> PureState:
        """(|0...0> + |1...1>) / sqrt(2)"""
        if n < 2:
            raise InvalidQubitCount(f"GHZ needs n >= 2, got {n}")
        PureState.check_size(n)
        amplitudes = np.zeros(2 ** n, dtype=complex)
        amplitudes[0] = amplitudes[-1] = 1 / np.sqrt(2)
        return PureState(n, amplitudes)

    @staticmethod
    def make_w(n: int) -> PureState:
        """Uniform superposition of the n single-excitation basis states"""
        if n < 2:
            raise InvalidQubitCount(f"W needs n >= 2, got {n}")
        PureState.check_size(n)
        amplitudes = np.zeros(2 ** n, dtype=complex)
        amplitudes[[2 ** k for k in range(n)]] = 1 / np.sqrt(n)
        return PureState(n, amplitudes)

    @staticmethod
    def make_gw(s: float, phi: float) -> PureState:
        """
        sqrt(s) |GHZ_3> + e^{i phi} sqrt(1 - s) |W_3>

        GHZ_3 and W_3 have disjoint support, so the sum is already normalized.
        """
        if not 0.0 <= s <= 1.0:
            raise OutOfRange(f"s must lie in [0, 1], got {s}")
        ghz = DenseStates.make_ghz(3).amplitudes
        w = DenseStates.make_w(3).amplitudes
        amplitudes = np.sqrt(s) * ghz + np.exp(1j * phi) * np.sqrt(1.0 - s) * w
        return PureState(3, amplitudes)

    @staticmethod
    def haar_random_state(n: int, rng: np.random.Generator) -> PureState:
        """Normalized vector of 2^n independent standard complex Gaussians"""
        PureState.check_size(n)
        dim = 2 ** n
        amplitudes = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return PureState(n, amplitudes / np.linalg.norm(amplitudes))

    @staticmethod
    def exact_fidelity(state: PureState, params: ProductParams) -> float:
        """
        |<phi(theta)|psi>|^2 by contracting the conjugated normalized pairs
        into the amplitude vector, qubit 1 first. Total cost O(2^n).
        """
        if params.n != state.n:
            raise DimensionMismatch(f"params for {params.n} qubits, state has {state.n}")
        vector = state.amplitudes
        for pair in params.normalized():
            vector = pair.conj() @ vector.reshape(2, -1)
        return ProductAnsatz.clamp_fidelity(abs(complex(vector[0])) ** 2)

    @staticmethod
    def environment(tensor: np.ndarray, pairs: np.ndarray, qubit: int) -> np.ndarray:
        """
        Contract the state tensor with every conjugated pair except `qubit`

        Returns the length-2 vector whose norm squared is the best fidelity
        reachable by changing only that qubit's pair.
        """
        n = tensor.ndim
        operands = [tensor, list(range(n))]
        for j in range(n):
            if j != qubit:
                operands += [pairs[j].conj(), [j]]
        return np.einsum(*operands, [qubit], optimize=True)
