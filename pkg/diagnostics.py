"""
SKEWAID - Diagnostics
Timestamped, tagged log lines on stderr (stdout carries results only).
"""

import sys
from datetime import datetime

from config import LOG_FILE, VERBOSE


def log(message: str, tag: str = "SKEWAID"):
    """Log a message to stderr and, when configured, to the log file."""
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    line = f"[{timestamp}] [{tag}] {message}"
    print(line, file=sys.stderr)
    if LOG_FILE:
        try:
            with open(LOG_FILE, "a", encoding="utf-8") as f:
                f.write(line + "\n")
        except OSError:
            pass


def debug(message: str, tag: str = "SKEWAID"):
    """Progress output, only when SKEWAID_VERBOSE=1."""
    if VERBOSE:
        log(message, tag)
