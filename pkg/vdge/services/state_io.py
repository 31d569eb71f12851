"""
State file documents (JSON)

Dense: {"n": int, "amplitudes": [[re, im], ...]} in basis-index order
(qubit 1 most significant).
MPS:   {"n": int, "bond_dims": [...], "tensors": [...]} with every tensor a
nested list indexed (left, physical, right) whose leaves are [re, im].
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

import numpy as np

from vdge.errors import StateFileError
from vdge.models import MpsState, PureState
from vdge.models.pure_state import DENSE_MAX_QUBITS
from vdge.services.mps_states import MpsStates

logger = logging.getLogger(__name__)

# Files whose norm is off by less than this are renormalized, larger errors rejected
FILE_NORM_TOLERANCE = 1e-6

State = Union[PureState, MpsState]


class StateIO:
    """Parse and write state documents"""

    @staticmethod
    def load(path: Union[str, Path]) -> State:
        path = Path(path)
        try:
            with open(path) as f:
                data = json.load(f)
        except FileNotFoundError:
            raise StateFileError('path', f"{path} does not exist")
        except json.JSONDecodeError as e:
            raise StateFileError('document', f"not valid JSON ({e.msg} at line {e.lineno})")
        return StateIO.from_dict(data)

    @staticmethod
    def save(state: State, path: Union[str, Path]) -> None:
        with open(path, 'w') as f:
            json.dump(state.to_dict(), f)
        logger.info(f"Wrote {type(state).__name__} n={state.n} to {path}")

    @staticmethod
    def from_dict(data: Any) -> State:
        if not isinstance(data, dict):
            raise StateFileError('document', "top level must be an object")
        if 'tensors' in data:
            return StateIO._parse_mps(data)
        if 'amplitudes' in data:
            return StateIO._parse_dense(data)
        raise StateFileError('amplitudes', "missing (no 'amplitudes' or 'tensors' field)")

    @staticmethod
    def _qubit_count(data: dict) -> int:
        n = data.get('n')
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise StateFileError('n', f"must be a positive integer, got {n!r}")
        return n

    @staticmethod
    def _complex_array(raw: Any, field: str) -> np.ndarray:
        try:
            array = np.asarray(raw, dtype=float)
        except (TypeError, ValueError):
            raise StateFileError(field, "entries must be [re, im] number pairs")
        if array.ndim < 1 or array.shape[-1] != 2:
            raise StateFileError(field, "entries must be [re, im] number pairs")
        if not np.all(np.isfinite(array)):
            raise StateFileError(field, "entries must be finite")
        return array[..., 0] + 1j * array[..., 1]

    @staticmethod
    def _checked_norm(norm_sq: float, field: str) -> float:
        """Tolerance applies to the norm itself, not its square"""
        norm = float(np.sqrt(norm_sq))
        if abs(norm - 1.0) > FILE_NORM_TOLERANCE:
            raise StateFileError(field, f"norm = {norm:.9f} is off by more than {FILE_NORM_TOLERANCE}")
        if abs(norm - 1.0) > 1e-12:
            logger.warning(f"State file norm^2 = {norm_sq:.12f}, renormalizing")
        return norm_sq

    @staticmethod
    def _parse_dense(data: dict) -> PureState:
        n = StateIO._qubit_count(data)
        if n > DENSE_MAX_QUBITS:
            raise StateFileError('n', f"dense files are limited to {DENSE_MAX_QUBITS} qubits")
        raw = data['amplitudes']
        if not isinstance(raw, list) or len(raw) != 2 ** n:
            length = len(raw) if isinstance(raw, list) else type(raw).__name__
            raise StateFileError('amplitudes', f"expected {2 ** n} entries for n={n}, got {length}")
        amplitudes = StateIO._complex_array(raw, 'amplitudes')
        if amplitudes.shape != (2 ** n,):
            raise StateFileError('amplitudes', "entries must be [re, im] number pairs")
        norm_sq = StateIO._checked_norm(float(np.vdot(amplitudes, amplitudes).real), 'amplitudes')
        return PureState(n, amplitudes / np.sqrt(norm_sq))

    @staticmethod
    def _parse_mps(data: dict) -> MpsState:
        n = StateIO._qubit_count(data)
        raw = data['tensors']
        if not isinstance(raw, list) or len(raw) != n:
            length = len(raw) if isinstance(raw, list) else type(raw).__name__
            raise StateFileError('tensors', f"expected {n} tensors, got {length}")
        tensors = []
        for j, entry in enumerate(raw):
            tensor = StateIO._complex_array(entry, f'tensors[{j}]')
            if tensor.ndim != 3 or tensor.shape[1] != 2:
                raise StateFileError(f'tensors[{j}]', f"must be indexed (left, 2, right), got shape {tensor.shape}")
            tensors.append(tensor)
        bond_dims = data.get('bond_dims')
        if bond_dims is not None and not isinstance(bond_dims, list):
            raise StateFileError('bond_dims', f"must be a list of integers, got {type(bond_dims).__name__}")
        if bond_dims is not None and bond_dims != [t.shape[2] for t in tensors[:-1]]:
            raise StateFileError('bond_dims', "does not match the tensor shapes")
        try:
            mps = MpsState(tuple(tensors))
        except ValueError as e:
            raise StateFileError('tensors', str(e))
        StateIO._checked_norm(MpsStates.norm_sq(mps), 'tensors')
        return MpsStates.normalize_mps(mps)
