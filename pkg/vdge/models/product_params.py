"""
Product-state ansatz parameters

Each qubit i carries an unnormalized pair (alpha_i, beta_i) standing for
alpha_i|0> + beta_i|1>. Only these first columns of the local unitaries ever
enter an overlap, so nothing else is stored.
"""

from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from vdge.errors import DegeneratePair, DimensionMismatch

# Pairs at or below this squared norm are invalid optimizer states
EPSILON_NORM = 1e-12


@dataclass(frozen=True)
class ProductParams:
    """Immutable (n, 2) complex array of per-qubit pairs"""

    pairs: np.ndarray

    def __post_init__(self):
        pairs = np.array(self.pairs, dtype=complex)
        if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 1:
            raise DimensionMismatch(f"expected shape (n, 2), got {pairs.shape}")
        pairs.setflags(write=False)
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[complex, complex]]) -> 'ProductParams':
        return cls(np.array([list(p) for p in pairs], dtype=complex))

    @classmethod
    def from_flat(cls, theta: np.ndarray) -> 'ProductParams':
        """Inverse of flatten(): [alpha_1, beta_1, alpha_2, beta_2, ...]"""
        theta = np.asarray(theta, dtype=complex)
        if theta.ndim != 1 or theta.size % 2:
            raise DimensionMismatch(f"flat parameter vector needs even length, got {theta.size}")
        return cls(theta.reshape(-1, 2))

    @property
    def n(self) -> int:
        return self.pairs.shape[0]

    def flatten(self) -> np.ndarray:
        return self.pairs.reshape(-1).copy()

    def norms_sq(self) -> np.ndarray:
        return np.sum(np.abs(self.pairs) ** 2, axis=1)

    def check(self, epsilon: float = EPSILON_NORM) -> None:
        """Raise DegeneratePair for the first pair at or below epsilon"""
        norms = self.norms_sq()
        bad = np.flatnonzero(norms <= epsilon)
        if bad.size:
            raise DegeneratePair(int(bad[0]), float(norms[bad[0]]))

    def is_valid(self, epsilon: float = EPSILON_NORM) -> bool:
        return bool(np.all(self.norms_sq() > epsilon))

    def normalized(self) -> np.ndarray:
        """Pairs rescaled to unit norm, shape (n, 2)"""
        self.check()
        return self.pairs / np.sqrt(self.norms_sq())[:, None]

    def scaled(self, qubit: int, factor: complex) -> 'ProductParams':
        pairs = self.pairs.copy()
        pairs[qubit] *= factor
        return ProductParams(pairs)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization"""
        return {
            'n': self.n,
            'pairs': [[[z.real, z.imag] for z in pair] for pair in self.pairs.tolist()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'ProductParams':
        pairs: List[List[complex]] = [
            [complex(re, im) for re, im in pair] for pair in data['pairs']
        ]
        return cls(np.array(pairs, dtype=complex))

    def __repr__(self):
        return f'<ProductParams n={self.n}>'
