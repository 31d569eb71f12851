"""
Matrix product state model

Tensor j has index order (left bond, physical, right bond); the outer bonds
have size 1.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from vdge.errors import DimensionMismatch, InvalidQubitCount


@dataclass(frozen=True)
class MpsState:
    """Chain of n rank-3 complex tensors"""

    tensors: Tuple[np.ndarray, ...]

    def __post_init__(self):
        tensors = []
        for j, tensor in enumerate(self.tensors):
            tensor = np.array(tensor, dtype=complex)
            if tensor.ndim != 3 or tensor.shape[1] != 2:
                raise DimensionMismatch(f"tensor {j} must have shape (left, 2, right), got {tensor.shape}")
            tensor.setflags(write=False)
            tensors.append(tensor)
        if not tensors:
            raise InvalidQubitCount("an MPS needs at least one tensor")
        if tensors[0].shape[0] != 1 or tensors[-1].shape[2] != 1:
            raise DimensionMismatch("boundary bonds must have size 1")
        for j in range(len(tensors) - 1):
            if tensors[j].shape[2] != tensors[j + 1].shape[0]:
                raise DimensionMismatch(
                    f"bond between sites {j} and {j + 1} mismatched: "
                    f"{tensors[j].shape[2]} != {tensors[j + 1].shape[0]}"
                )
        object.__setattr__(self, 'tensors', tuple(tensors))

    @property
    def n(self) -> int:
        return len(self.tensors)

    @property
    def bond_dims(self) -> List[int]:
        """Internal bond dimensions, length n - 1"""
        return [t.shape[2] for t in self.tensors[:-1]]

    @property
    def max_bond(self) -> int:
        return max(self.bond_dims, default=1)

    def norm_sq(self) -> float:
        from vdge.services.mps_states import MpsStates
        return MpsStates.norm_sq(self)

    def exact_fidelity(self, params) -> float:
        from vdge.services.mps_states import MpsStates
        return MpsStates.exact_fidelity(self, params)

    def to_dict(self) -> dict:
        """Convert to the MPS file document"""
        return {
            'n': self.n,
            'bond_dims': self.bond_dims,
            'index_order': ['left', 'physical', 'right'],
            'tensors': [
                [[[[z.real, z.imag] for z in right] for right in phys] for phys in tensor.tolist()]
                for tensor in self.tensors
            ],
        }

    def __repr__(self):
        return f'<MpsState n={self.n} chi={self.max_bond}>'
