"""
Dense statevector model

Basis index of |a_1 ... a_n> is sum_i a_i 2^(n-i): qubit 1 is the most
significant bit, so reshaping the amplitudes to (2,)*n puts qubit 1 on axis 0.
"""

from dataclasses import dataclass

import numpy as np

from vdge.errors import DimensionMismatch, InvalidQubitCount, OutOfRange, TooLarge

# Larger states must use the MPS backend
DENSE_MAX_QUBITS = 26
NORM_TOLERANCE = 1e-10


@dataclass(frozen=True)
class PureState:
    """Normalized n-qubit pure state stored as 2^n complex amplitudes"""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        PureState.check_size(self.n)
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != 2 ** self.n:
            raise DimensionMismatch(f"expected {2 ** self.n} amplitudes for n={self.n}, got {amplitudes.size}")
        norm_sq = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm_sq - 1.0) > NORM_TOLERANCE:
            raise OutOfRange(f"state is not normalized (norm^2 = {norm_sq:.12f})")
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @staticmethod
    def check_size(n: int) -> None:
        """Qubit-count check, run before any 2^n buffer is allocated"""
        if n < 1:
            raise InvalidQubitCount(f"qubit count must be >= 1, got {n}")
        if n > DENSE_MAX_QUBITS:
            raise TooLarge(f"dense backend refuses n={n} > {DENSE_MAX_QUBITS}; use the MPS backend")

    @classmethod
    def from_unnormalized(cls, amplitudes: np.ndarray) -> 'PureState':
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amplitudes.size))) if amplitudes.size else 0
        if amplitudes.size != 2 ** n:
            raise DimensionMismatch(f"amplitude count {amplitudes.size} is not a power of two")
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise OutOfRange("cannot normalize the zero vector")
        return cls(n, amplitudes / norm)

    def as_tensor(self) -> np.ndarray:
        """Amplitudes viewed as an n-axis tensor, axis i = qubit i+1"""
        return self.amplitudes.reshape((2,) * self.n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def exact_fidelity(self, params) -> float:
        from vdge.services.dense_states import DenseStates
        return DenseStates.exact_fidelity(self, params)

    def to_dict(self) -> dict:
        """Convert to the state file document"""
        return {
            'n': self.n,
            'amplitudes': [[z.real, z.imag] for z in self.amplitudes.tolist()],
        }

    def __repr__(self):
        return f'<PureState n={self.n}>'
