"""
Runtime settings for the word-graph toolkit.

Values come from the environment (a local .env file is honoured) so caps and
sweep parallelism can be tuned without touching code.
"""

import os

from dotenv import load_dotenv

load_dotenv()

# ----------------------------------------------------------------------
# Group construction
# ----------------------------------------------------------------------
GROUP_ORDER_CAP = int(os.getenv("GROUP_ORDER_CAP", "20000"))
ASSOCIATIVITY_EXHAUSTIVE_MAX = int(os.getenv("ASSOCIATIVITY_EXHAUSTIVE_MAX", "256"))
ASSOCIATIVITY_SAMPLES = int(os.getenv("ASSOCIATIVITY_SAMPLES", "100000"))
ASSOCIATIVITY_SEED = int(os.getenv("ASSOCIATIVITY_SEED", "0"))

# ----------------------------------------------------------------------
# Word evaluation / graph builds
# ----------------------------------------------------------------------
EVALUATION_CHUNK_ROWS = int(os.getenv("EVALUATION_CHUNK_ROWS", "256"))
WORD_MAX_LENGTH = int(os.getenv("WORD_MAX_LENGTH", "100000"))

# ----------------------------------------------------------------------
# Property search
# ----------------------------------------------------------------------
SEARCH_MAX_M = int(os.getenv("SEARCH_MAX_M", "4"))
SEARCH_MAX_ORDER = int(os.getenv("SEARCH_MAX_ORDER", "512"))
ORACLE_MAX_ORDER = int(os.getenv("ORACLE_MAX_ORDER", "24"))
ORACLE_MAX_SET = int(os.getenv("ORACLE_MAX_SET", "3"))

# ----------------------------------------------------------------------
# Sweeps, logging, service
# ----------------------------------------------------------------------
SWEEP_WORKERS = int(os.getenv("SWEEP_WORKERS", "1"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
API_HOST = os.getenv("API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("API_PORT", "8000"))
