from .product_ansatz import ProductAnsatz, FidelityBackend
from .dense_states import DenseStates
from .mps_states import MpsStates
from .shot_sampler import ShotSampler
from .cspsa import CspsaOptimizer, VdgeService
from .oracle import ReferenceSolver, OracleResult
from .stats_service import StatsService
from .state_io import StateIO
from .experiment_service import ExperimentService

__all__ = [
    'ProductAnsatz',
    'FidelityBackend',
    'DenseStates',
    'MpsStates',
    'ShotSampler',
    'CspsaOptimizer',
    'VdgeService',
    'ReferenceSolver',
    'OracleResult',
    'StatsService',
    'StateIO',
    'ExperimentService'
]
