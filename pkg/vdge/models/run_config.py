"""
Run-time settings for sampling, optimization and the reference solver
"""

from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping, Optional

from vdge.errors import OutOfRange


def _pick(cls, data: Mapping[str, Any]) -> dict:
    names = {f.name for f in fields(cls)}
    return {k: v for k, v in data.items() if k in names}


@dataclass(frozen=True)
class ShotConfig:
    """Ensemble size N and readout bit-flip probability"""

    shots: int = 8192
    readout_flip: float = 0.0

    def __post_init__(self):
        if int(self.shots) < 1:
            raise OutOfRange(f"shots must be >= 1, got {self.shots}")
        if not 0.0 <= self.readout_flip <= 0.5:
            raise OutOfRange(f"readout_flip must lie in [0, 0.5], got {self.readout_flip}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ShotConfig':
        return cls(**_pick(cls, data))


@dataclass(frozen=True)
class CspsaConfig:
    """
    CSPSA gains a_k = a / (k + 1 + A)^s and c_k = b / (k + 1)^t

    Defaults are the standard CSPSA choices; 0 < t < s <= 1 is recommended
    but not enforced.
    """

    a: float = 3.0
    b: float = 0.1
    A: float = 0.0
    s: float = 1.0
    t: float = 1.0 / 6.0
    iterations: int = 150
    seed: Optional[int] = None
    max_retries: int = 10

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise OutOfRange(f"gain numerators must be positive (a={self.a}, b={self.b})")
        if self.A < 0:
            raise OutOfRange(f"stability offset A must be >= 0, got {self.A}")
        if int(self.iterations) < 1:
            raise OutOfRange(f"iterations must be >= 1, got {self.iterations}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'CspsaConfig':
        return cls(**_pick(cls, data))


@dataclass(frozen=True)
class OracleConfig:
    """Multi-start alternating rank-1 solver settings"""

    starts: int = 50
    max_sweeps: int = 500
    tol: float = 1e-12
    seed: Optional[int] = None

    def __post_init__(self):
        if int(self.starts) < 1:
            raise OutOfRange(f"starts must be >= 1, got {self.starts}")
        if self.tol <= 0:
            raise OutOfRange(f"tol must be positive, got {self.tol}")
        if int(self.max_sweeps) < 1:
            raise OutOfRange(f"max_sweeps must be >= 1, got {self.max_sweeps}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'OracleConfig':
        return cls(**_pick(cls, data))
