import os
from dotenv import load_dotenv

load_dotenv()


def _workers():
    value = os.environ.get('VDGE_WORKERS')
    return int(value) if value else (os.cpu_count() or 1)


def _seed():
    value = os.environ.get('VDGE_SEED')
    return int(value) if value else None


class Config:
    # Logging
    LOG_DIR = os.environ.get('VDGE_LOG_DIR', 'logs')
    LOG_LEVEL = os.environ.get('VDGE_LOG_LEVEL', 'INFO')

    # Measurement
    VDGE_SHOTS = int(os.environ.get('VDGE_SHOTS', 8192))
    VDGE_READOUT_FLIP = float(os.environ.get('VDGE_READOUT_FLIP', 0.0))

    # CSPSA gains: a_k = a / (k + 1 + A)^s, c_k = b / (k + 1)^t
    VDGE_GAIN_A = float(os.environ.get('VDGE_GAIN_A', 3.0))
    VDGE_GAIN_B = float(os.environ.get('VDGE_GAIN_B', 0.1))
    VDGE_STABILITY = float(os.environ.get('VDGE_STABILITY', 0.0))
    VDGE_GAIN_S = float(os.environ.get('VDGE_GAIN_S', 1.0))
    VDGE_GAIN_T = float(os.environ.get('VDGE_GAIN_T', 1.0 / 6.0))

    # Budgets
    VDGE_ITERATIONS = int(os.environ.get('VDGE_ITERATIONS', 150))
    VDGE_REPETITIONS = int(os.environ.get('VDGE_REPETITIONS', 5))
    VDGE_SEED = _seed()
    VDGE_WORKERS = _workers()

    # Reference solver
    ORACLE_STARTS = int(os.environ.get('ORACLE_STARTS', 50))
    ORACLE_MAX_SWEEPS = int(os.environ.get('ORACLE_MAX_SWEEPS', 500))
    ORACLE_TOL = float(os.environ.get('ORACLE_TOL', 1e-12))

    # Statistics
    BOOTSTRAP_RESAMPLES = int(os.environ.get('BOOTSTRAP_RESAMPLES', 1000))
    BOOTSTRAP_CONFIDENCE = float(os.environ.get('BOOTSTRAP_CONFIDENCE', 0.95))

    # Campaigns (desk scale)
    GW_PHIS = [0.0, 0.7853981633974483, 1.5707963267948966, 3.141592653589793]
    GW_S_COUNT = 31
    GW_TRIALS = 5
    RANDOM_QUBITS = [3, 4, 5, 6]
    RANDOM_STATES = 20
    RANDOM_REPETITIONS = 20
    MPS_QUBITS = 12
    MPS_LAMBDA = 0.1
    MPS_STATES = 20
    MPS_ITERATIONS = 2000
    MPS_REPETITIONS = 1
    READOUT_QUBITS = [3, 4, 5]
    READOUT_REPETITIONS = 10
    READOUT_FLIP = 0.01


class DevelopmentConfig(Config):
    DEBUG = True
    TESTING = False


class PaperConfig(Config):
    """Budgets of the original study; runs take hours"""
    DEBUG = False
    TESTING = False
    GW_TRIALS = 100
    RANDOM_STATES = 100
    MPS_QUBITS = 25
    MPS_STATES = 1000
    MPS_ITERATIONS = 10000


class TestingConfig(Config):
    DEBUG = False
    TESTING = True
    VDGE_WORKERS = 1
    VDGE_SEED = 1234
    ORACLE_STARTS = 10
    BOOTSTRAP_RESAMPLES = 200
    GW_S_COUNT = 3
    GW_TRIALS = 2
    RANDOM_QUBITS = [3]
    RANDOM_STATES = 2
    RANDOM_REPETITIONS = 2
    MPS_QUBITS = 6
    MPS_STATES = 2
    MPS_ITERATIONS = 20
    READOUT_QUBITS = [3]
    READOUT_REPETITIONS = 2


config = {
    'development': DevelopmentConfig,
    'paper': PaperConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
