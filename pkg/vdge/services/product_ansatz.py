"""
Separable-state ansatz: pair normalization, Haar initialization and the
dense expansion of a product state
"""

import logging
from typing import Optional, Protocol, Tuple, runtime_checkable

import numpy as np

from vdge.errors import DegeneratePair, InvalidQubitCount
from vdge.models import EPSILON_NORM, ProductParams, PureState

logger = logging.getLogger(__name__)


@runtime_checkable
class FidelityBackend(Protocol):
    """Any state representation that can compute |<phi(theta)|psi>|^2 exactly"""

    @property
    def n(self) -> int: ...

    def exact_fidelity(self, params: ProductParams) -> float: ...


class ProductAnsatz:
    """Operations on the 2n complex parameters of the product ansatz"""

    @staticmethod
    def normalize_pair(pair: Tuple[complex, complex], qubit: Optional[int] = None) -> Tuple[complex, complex]:
        """
        Rescale (alpha, beta) by a positive real so that |alpha|^2 + |beta|^2 = 1

        Raises:
            DegeneratePair: norm at or below EPSILON_NORM, tagged with `qubit`
                when the caller knows it
        """
        alpha, beta = complex(pair[0]), complex(pair[1])
        norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
        if norm_sq <= EPSILON_NORM:
            raise DegeneratePair(qubit, norm_sq)
        norm = np.sqrt(norm_sq)
        return alpha / norm, beta / norm

    @staticmethod
    def haar_random_params(n: int, rng: np.random.Generator) -> ProductParams:
        """
        Two independent standard complex Gaussians per qubit

        After normalization each pair is Haar-uniform on the single-qubit
        state space.
        """
        if n < 1:
            raise InvalidQubitCount(f"n must be >= 1, got {n}")
        pairs = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
        return ProductParams(pairs)

    @staticmethod
    def params_to_dense_product(params: ProductParams) -> PureState:
        """Tensor product of the normalized pairs, qubit 1 most significant"""
        PureState.check_size(params.n)
        vector = np.ones(1, dtype=complex)
        for pair in params.normalized():
            vector = np.kron(vector, pair)
        return PureState(params.n, vector)

    @staticmethod
    def clamp_fidelity(value: float) -> float:
        return float(min(max(value, 0.0), 1.0))
