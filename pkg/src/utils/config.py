"""Configuration settings for the EL abduction toolkit."""

import os
import logging
from dotenv import load_dotenv

load_dotenv()

# Saturation limits (seconds)
SOFT_TIMEOUT = float(os.getenv("ABDUCE_SOFT_TIMEOUT", "30"))
HARD_TIMEOUT = float(os.getenv("ABDUCE_HARD_TIMEOUT", "90"))

# Reserved names
FRESH_PREFIX = os.getenv("ABDUCE_FRESH_PREFIX", "__fresh_")
TOP_NAME = os.getenv("ABDUCE_TOP_NAME", "__top")

# Benchmark runner
BENCH_WORKERS = int(os.getenv("ABDUCE_BENCH_WORKERS", "4"))

# Oracle bounds
ORACLE_MAX_TREE_DEPTH = int(os.getenv("ABDUCE_ORACLE_MAX_TREE_DEPTH", "3"))
ORACLE_MAX_NODES = int(os.getenv("ABDUCE_ORACLE_MAX_NODES", "8"))
ORACLE_MAX_TERM_DEPTH = int(os.getenv("ABDUCE_ORACLE_MAX_TERM_DEPTH", "3"))

# Logging Configuration
LOG_LEVEL = os.getenv("ABDUCE_LOG_LEVEL", "INFO").upper()

LOGGING_CONFIG = {
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'level': getattr(logging, LOG_LEVEL, logging.INFO),
    'handlers': [
        logging.StreamHandler()
    ]
}

# Configure logging
logging.basicConfig(**LOGGING_CONFIG)

# psutil logs process lookups at DEBUG
logging.getLogger('psutil').setLevel(logging.WARNING)

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ENTAILED = 2
EXIT_NO_HYPOTHESES = 3
