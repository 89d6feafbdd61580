"""
Configuration & environment variables
"""
import os
from dotenv import load_dotenv

# Loads a local .env if present
load_dotenv()


def get_config_value(key, default=None, cast=str):
    """
    Reads a setting from the environment (after .env loading), falling back to default.
    """
    val = os.getenv(key)
    if val is None or val == "":
        return default
    try:
        return cast(val)
    except ValueError:
        raise ValueError(f"invalid value for {key}: {val!r}")


# Logging
LOG_LEVEL = get_config_value("PMRP_LOG_LEVEL", "WARNING").upper()

# Fuzz campaign defaults
RESULTS_DIR = get_config_value("PMRP_RESULTS_DIR", "fuzz_results")
FUZZ_M_MAX = get_config_value("PMRP_FUZZ_M_MAX", 5, int)
FUZZ_N_MAX = get_config_value("PMRP_FUZZ_N_MAX", 5, int)
FUZZ_COUNT = get_config_value("PMRP_FUZZ_COUNT", 500, int)
FUZZ_SEED = get_config_value("PMRP_FUZZ_SEED", 0, int)
FUZZ_RANGE = get_config_value("PMRP_FUZZ_RANGE", 5, int)
FUZZ_WORKERS = get_config_value("PMRP_FUZZ_WORKERS", 1, int)

# Solver instrumentation
CELL_READ_FACTOR = get_config_value("PMRP_CELL_READ_FACTOR", 10, int)
DEFAULT_H = get_config_value("PMRP_DEFAULT_H", "1")
