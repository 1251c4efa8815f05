import os

from utils.errors import ConfigurationError


class Settings:
    """Environment-driven defaults for lattice runs"""

    def __init__(self):
        self.cap_dim = self._positive_int('FDQ_CAP_DIM', 20000)
        self.max_dyson_order = self._positive_int('FDQ_MAX_DYSON_ORDER', 4)
        self.log_dir = os.getenv('FDQ_LOG_DIR', 'logs')
        self.log_level = os.getenv('LOG_LEVEL', 'INFO')

    @staticmethod
    def _positive_int(name, default):
        raw = os.getenv(name)
        if raw is None or raw == '':
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(f"Environment variable {name} must be an integer, got {raw!r}")
        if value <= 0:
            raise ConfigurationError(f"Environment variable {name} must be positive, got {value}")
        return value


def load_settings():
    """Read settings from the current environment"""
    return Settings()
