"""
Exception hierarchy for the VDGE toolkit.

InputError subclasses describe caller mistakes (bad files, wrong sizes,
out-of-range options); the CLI turns them into exit code 2. Everything else
deriving from VdgeError is a runtime failure (exit code 1).
"""

from typing import Optional


class VdgeError(Exception):
    """Base class for all toolkit errors"""


class InputError(VdgeError, ValueError):
    """Invalid input supplied by the caller"""


class DimensionMismatch(InputError):
    """Qubit counts or array sizes disagree"""


class InvalidQubitCount(InputError):
    """Qubit count outside the range a constructor accepts"""


class OutOfRange(InputError):
    """Numeric argument outside its documented range"""


class TooLarge(InputError):
    """Requested representation exceeds the memory ceiling"""


class EmptyInput(InputError):
    """A statistic was requested over an empty sample"""


class StateFileError(InputError):
    """Malformed state or MPS document"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DegeneratePair(VdgeError):
    """A single-qubit pair has (numerically) zero norm"""

    def __init__(self, qubit: Optional[int], norm_sq: float):
        self.qubit = qubit
        self.norm_sq = norm_sq
        where = "pair" if qubit is None else f"pair {qubit}"
        super().__init__(f"{where} is degenerate (|alpha|^2+|beta|^2 = {norm_sq:.3e})")


class DegenerateRun(VdgeError):
    """CSPSA could not leave a degenerate region after the allowed retries"""


class ZeroNorm(VdgeError):
    """MPS with vanishing global norm"""
