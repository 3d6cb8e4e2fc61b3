"""
SKEWAID - Configuration
Loads settings from .env file
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# ===========================================
# Paths
# ===========================================
BASE_DIR = Path(__file__).parent
FIXTURES_DIR = Path(os.getenv("SKEWAID_FIXTURES_DIR", str(BASE_DIR / "fixtures")))
OUTPUT_DIR = Path(os.getenv("SKEWAID_OUTPUT_DIR", "./output"))
LOG_FILE = os.getenv("SKEWAID_LOG_FILE", "")

# ===========================================
# Diagnostics
# ===========================================
VERBOSE = os.getenv("SKEWAID_VERBOSE", "0") == "1"

# ===========================================
# Randomized checks (all reproducible from the seed)
# ===========================================
DEFAULT_SEED = int(os.getenv("SKEWAID_DEFAULT_SEED", "1"))
CORPUS_SEEDS = int(os.getenv("SKEWAID_CORPUS_SEEDS", "10"))
CORPUS_MIXES = int(os.getenv("SKEWAID_CORPUS_MIXES", "5"))
WITNESS_SAMPLES = int(os.getenv("SKEWAID_WITNESS_SAMPLES", "25"))
CORPUS_WORKERS = int(os.getenv("SKEWAID_CORPUS_WORKERS", "1"))

# Entries of random congruence matrices S are drawn from [-SCRAMBLE_BOUND, SCRAMBLE_BOUND]
SCRAMBLE_BOUND = 2

# Random projections that expose the finite eigenvalues of singular pencils
PROJECTION_SEED = 0
PROJECTION_TRIES = 20

# ===========================================
# Server Settings
# ===========================================
HOST = os.getenv("HOST", "0.0.0.0")
PORT = int(os.getenv("PORT", "8000"))

# ===========================================
# Field modes
# ===========================================
FIELD_MODES = {
    "real": {
        "name": "Real numbers",
        "description": "Constraints at real points only (rational and real-quadratic eigenvalues)",
    },
    "closed": {
        "name": "Algebraically closed",
        "description": "Constraints at every eigenvalue, including complex-conjugate pairs",
    },
}

# Exit codes shared by the CLI
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DISAGREEMENT = 2
EXIT_USAGE = 3
