import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file, if it exists.
load_dotenv()

BUNDLED_DATA_DIR = Path(__file__).resolve().parent / "data"


def _optional_float(value):
    return float(value) if value else None


class Config:
    """Base configuration."""
    DATA_DIR = os.environ.get('THETA_ENVELOPE_DATA') or str(BUNDLED_DATA_DIR)
    HEIGHT_BOUND = int(os.environ.get('THETA_ENVELOPE_HEIGHT') or 40)
    SLOPE_BOUND = int(os.environ.get('THETA_ENVELOPE_SLOPES') or 12)
    TIME_LIMIT = _optional_float(os.environ.get('THETA_ENVELOPE_TIME'))
    WORKERS = int(os.environ.get('THETA_ENVELOPE_WORKERS') or 1)
    LOG_LEVEL = os.environ.get('THETA_ENVELOPE_LOG_LEVEL') or 'WARNING'
    # Mazur: a rational torsion point has order at most 12.
    ORDER_SCAN_LIMIT = 12


class DevelopmentConfig(Config):
    """Development configuration."""
    LOG_LEVEL = os.environ.get('THETA_ENVELOPE_LOG_LEVEL') or 'DEBUG'


class TestingConfig(Config):
    """Testing configuration."""
    DATA_DIR = str(BUNDLED_DATA_DIR)
    HEIGHT_BOUND = 30
    SLOPE_BOUND = 8
    TIME_LIMIT = None
    WORKERS = 1
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production configuration."""
    LOG_LEVEL = os.environ.get('THETA_ENVELOPE_LOG_LEVEL') or 'WARNING'


config_by_name = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}


def get_config(name: str | None = None):
    """
    Returns the configuration class for a name, falling back to THETA_ENVELOPE_ENV.

    Args:
        name: One of the keys of config_by_name, or None.

    Returns:
        A Config subclass.
    """
    name = name or os.environ.get('THETA_ENVELOPE_ENV') or 'default'
    if name not in config_by_name:
        raise KeyError(f"Unknown configuration '{name}'. Expected one of {sorted(config_by_name)}")
    return config_by_name[name]


def resolve_data_dir(override: str | None = None) -> Path:
    """
    Directory holding the table files. An explicit override wins, then the
    THETA_ENVELOPE_DATA environment variable as it is right now, then the bundled tables.
    """
    return Path(override or os.environ.get('THETA_ENVELOPE_DATA') or BUNDLED_DATA_DIR)
