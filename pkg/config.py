import os

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = os.path.abspath(os.path.dirname(__file__))


def _env_float_list(name, default):
    raw = os.environ.get(name)
    if not raw:
        return default
    return tuple(float(x) for x in raw.split(','))


class Config:
    """Base configuration class"""

    # Artifact locations
    TABLES_DIR = os.environ.get('ROMTRANS_TABLES_DIR') or os.path.join(BASE_DIR, 'tables')
    MODELS_DIR = os.environ.get('ROMTRANS_MODELS_DIR') or os.path.join(BASE_DIR, 'models')

    # Romanization
    DEFAULT_MODE = os.environ.get('ROMTRANS_DEFAULT_MODE') or 'preserving'

    # Character encoding for learned deromanization (U+2300)
    SPACE_SENTINEL = os.environ.get('ROMTRANS_SPACE_SENTINEL') or '⌀'

    # Deromanizer hyperparameters
    DEROM_LM_ORDER = int(os.environ.get('ROMTRANS_DEROM_LM_ORDER') or 5)
    DEROM_ALPHA = float(os.environ.get('ROMTRANS_DEROM_ALPHA') or 0.1)
    DEROM_LM_WEIGHT = float(os.environ.get('ROMTRANS_DEROM_LM_WEIGHT') or 1.0)
    DEROM_BEAM = int(os.environ.get('ROMTRANS_DEROM_BEAM') or 8)
    DEROM_MAX_LENGTH = int(os.environ.get('ROMTRANS_DEROM_MAX_LENGTH') or 1200)

    # Subword vocabularies
    BPE_COVERAGE = float(os.environ.get('ROMTRANS_BPE_COVERAGE') or 0.9995)
    BPE_MIN_FREQUENCY = int(os.environ.get('ROMTRANS_BPE_MIN_FREQUENCY') or 2)
    PARENT_VOCAB_SIZE = int(os.environ.get('ROMTRANS_PARENT_VOCAB_SIZE') or 32000)
    CHILD_VOCAB_SIZE = int(os.environ.get('ROMTRANS_CHILD_VOCAB_SIZE') or 2000)

    # Metrics
    CHRF_ORDER = int(os.environ.get('ROMTRANS_CHRF_ORDER') or 6)
    CHRF_BETA = float(os.environ.get('ROMTRANS_CHRF_BETA') or 2)
    BLEU_ORDER = int(os.environ.get('ROMTRANS_BLEU_ORDER') or 4)
    BOOTSTRAP_SAMPLES = int(os.environ.get('ROMTRANS_BOOTSTRAP_SAMPLES') or 1000)
    BOOTSTRAP_ALPHA = float(os.environ.get('ROMTRANS_BOOTSTRAP_ALPHA') or 0.05)
    BOOTSTRAP_SEED = int(os.environ.get('ROMTRANS_BOOTSTRAP_SEED') or 12345)

    # Finetuning mixture
    MIX_PARENT_TAKE = int(os.environ.get('ROMTRANS_MIX_PARENT_TAKE') or 250000)
    MIX_TOTAL_TARGET = int(os.environ.get('ROMTRANS_MIX_TOTAL_TARGET') or 650000)

    # Data-size ablation
    ABLATION_FRACTIONS = _env_float_list('ROMTRANS_ABLATION_FRACTIONS', (0.01, 0.1, 1.0))
    ABLATION_HELDOUT = float(os.environ.get('ROMTRANS_ABLATION_HELDOUT') or 0.1)

    # Reports
    REPORT_SCHEMA_VERSION = 1
    JSON_SORT_KEYS = True

    # Application settings
    LOG_LEVEL = os.environ.get('ROMTRANS_LOG_LEVEL') or 'INFO'
    APP_NAME = 'Romanization Transfer Toolkit'
    APP_VERSION = '1.0.0'


class DevelopmentConfig(Config):
    """Development environment configuration"""
    DEBUG = True
    LOG_LEVEL = os.environ.get('ROMTRANS_LOG_LEVEL') or 'DEBUG'


class ProductionConfig(Config):
    """Production environment configuration"""
    DEBUG = False
    LOG_LEVEL = os.environ.get('ROMTRANS_LOG_LEVEL') or 'WARNING'


class TestingConfig(Config):
    """Testing environment configuration"""
    TESTING = True
    LOG_LEVEL = 'WARNING'
    BOOTSTRAP_SAMPLES = 200


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(name=None):
    """Return the configuration class for `name` (or ROMTRANS_ENV)."""
    name = name or os.environ.get('ROMTRANS_ENV', 'default')
    return config.get(name, config['default'])
