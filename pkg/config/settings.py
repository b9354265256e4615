import os
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Base configuration class"""

    DEBUG = os.getenv('FLASK_DEBUG', 'False').lower() == 'true'

    # Reproducibility
    DEFAULT_SEED = int(os.getenv('STREMBED_SEED', '0'))

    # Logging
    LOG_LEVEL = os.getenv('STREMBED_LOG_LEVEL', 'WARNING').upper()
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    # LCS kernel selection
    LCS_DP_MAX_CELLS = int(os.getenv('STREMBED_LCS_DP_MAX_CELLS', '1024'))
    LCS_KERNEL_COSTS = {
        'bitparallel_step': 1.0,
        'bitparallel_word': 0.05,
        'rle_pair': 12.0,
        'rle_cell': 0.002
    }

    # Traceback switches to divide and conquer above this many DP cells
    TRACEBACK_FULL_TABLE_MAX_CELLS = int(os.getenv('STREMBED_TRACEBACK_MAX_CELLS', '1000000'))

    # Brute-force oracle bounds
    ORACLE_MAX_TOTAL_LENGTH = int(os.getenv('STREMBED_ORACLE_MAX_TOTAL', '22'))
    ORACLE_MAX_SUBSEQUENCE_LENGTH = int(os.getenv('STREMBED_ORACLE_MAX_SUBSEQUENCE', '20'))

    # Indel code search
    CODE_ATTEMPTS_PER_WORD = int(os.getenv('STREMBED_CODE_ATTEMPTS_PER_WORD', '64'))

    # Formula gadget guards
    GADGET_MAX_DEPTH = int(os.getenv('STREMBED_GADGET_MAX_DEPTH', '4'))
    RECOVERY_MAX_DEPTH = int(os.getenv('STREMBED_RECOVERY_MAX_DEPTH', '5'))
    FORMULA_MAX_SYMBOLS = 3
    RECOVERY_MAX_SYMBOLS = 2
    RECOVERY_MAX_BITS = 2

    # HTTP API
    API_MAX_INPUT_LENGTH = int(os.getenv('STREMBED_API_MAX_INPUT_LENGTH', '2000'))

    # Verification suites
    VERIFY_SETTINGS = {
        'metrics': {'cases': 500, 'max_length': 12, 'exhaustive_length': 4,
                    'fast_path_length': 300, 'fast_path_cases': 3},
        'code': {'cases': 5, 'gamma': 32, 'epsilon': '1/4'},
        'alpha': {'cases': 50, 'gamma': 16, 'epsilon': '1/4', 'max_length': 12, 'alignments': 100},
        'gadgets': {'cases': 20, 'depth': 3, 'variables': 3, 'samples': 1000,
                    'spot_depth': 4, 'spot_cases': 1, 'spot_samples': 4, 'recovery_n': 1},
        'i2e': {'cases': 200, 'max_length': 8, 'exhaustive_n': 4}
    }

    @classmethod
    def get_verify_settings(cls, suite: str) -> Dict[str, Any]:
        """Get default parameters of one verification suite"""
        settings = cls.VERIFY_SETTINGS.get(suite)
        if settings is None:
            return None
        return dict(settings)

    @classmethod
    def get_default_seed(cls) -> int:
        """Get the seed, honouring STREMBED_SEED set after import"""
        return int(os.getenv('STREMBED_SEED', str(cls.DEFAULT_SEED)))

    @classmethod
    def get_kernel_costs(cls) -> Dict[str, float]:
        """Get the LCS kernel cost model"""
        return dict(cls.LCS_KERNEL_COSTS)


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = os.getenv('STREMBED_LOG_LEVEL', 'INFO').upper()


class TestingConfig(Config):
    """Testing configuration"""

    VERIFY_SETTINGS = {
        'metrics': {'cases': 60, 'max_length': 8, 'exhaustive_length': 2,
                    'fast_path_length': 200, 'fast_path_cases': 2},
        'code': {'cases': 2, 'gamma': 8, 'epsilon': '1/4'},
        'alpha': {'cases': 10, 'gamma': 8, 'epsilon': '1/4', 'max_length': 8, 'alignments': 20},
        'gadgets': {'cases': 4, 'depth': 2, 'variables': 2, 'samples': 8,
                    'spot_depth': 4, 'spot_cases': 0, 'spot_samples': 2, 'recovery_n': 1},
        'i2e': {'cases': 40, 'max_length': 6, 'exhaustive_n': 3}
    }


class BenchmarkConfig(Config):
    """Acceptance-scale verification"""

    VERIFY_SETTINGS = {
        'metrics': {'cases': 10000, 'max_length': 20, 'exhaustive_length': 5,
                    'fast_path_length': 2000, 'fast_path_cases': 20},
        'code': {'cases': 100, 'gamma': 256, 'epsilon': '1/4'},
        'alpha': {'cases': 200, 'gamma': 64, 'epsilon': '1/4', 'max_length': 50, 'alignments': 1000},
        'gadgets': {'cases': 200, 'depth': 3, 'variables': 4, 'samples': 1000,
                    'spot_depth': 4, 'spot_cases': 2, 'spot_samples': 50, 'recovery_n': 2},
        'i2e': {'cases': 500, 'max_length': 12, 'exhaustive_n': 6}
    }


# Configuration mapping
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'benchmark': BenchmarkConfig,
    'default': Config
}


def get_config(config_name: str = None) -> Config:
    """Get configuration class by name"""
    if config_name is None:
        config_name = os.getenv('STREMBED_ENV', 'default')

    return config.get(config_name, config['default'])


def validate_config() -> Dict[str, Any]:
    """Validate configuration and return any issues"""
    issues = []
    warnings = []

    current_config = get_config()

    if current_config.DEFAULT_SEED < 0:
        issues.append("STREMBED_SEED must be non-negative")

    if current_config.ORACLE_MAX_TOTAL_LENGTH > 26:
        warnings.append("an ORACLE_MAX_TOTAL_LENGTH above 26 makes the edit oracle very slow")

    if current_config.ORACLE_MAX_SUBSEQUENCE_LENGTH > 24:
        warnings.append("ORACLE_MAX_SUBSEQUENCE_LENGTH above 24 makes the LCS oracle very slow")

    if current_config.GADGET_MAX_DEPTH > current_config.RECOVERY_MAX_DEPTH:
        warnings.append("GADGET_MAX_DEPTH exceeds RECOVERY_MAX_DEPTH")

    if current_config.CODE_ATTEMPTS_PER_WORD < 1:
        issues.append("CODE_ATTEMPTS_PER_WORD must be at least 1")

    if current_config.LCS_DP_MAX_CELLS < 0:
        issues.append("STREMBED_LCS_DP_MAX_CELLS must be non-negative")

    if current_config.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        warnings.append(f"Unknown log level {current_config.LOG_LEVEL}, logging falls back to WARNING")

    return {
        'issues': issues,
        'warnings': warnings,
        'config_valid': len(issues) == 0
    }
