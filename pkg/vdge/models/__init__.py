from .product_params import ProductParams, EPSILON_NORM
from .pure_state import PureState, DENSE_MAX_QUBITS
from .mps_state import MpsState
from .run_config import ShotConfig, CspsaConfig, OracleConfig
from .estimate import TraceRecord, RunTrace, GmeEstimate
from .summary import SummaryStats

__all__ = ['ProductParams', 'EPSILON_NORM', 'PureState', 'DENSE_MAX_QUBITS',
           'MpsState', 'ShotConfig', 'CspsaConfig', 'OracleConfig',
           'TraceRecord', 'RunTrace', 'GmeEstimate', 'SummaryStats']
