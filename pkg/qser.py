#!/usr/bin/env python3
"""
Command-line entry point for the overpartition congruence harness.

Usage:
    python qser.py verify elthm
    python qser.py identities --trunc 400
    python qser.py oracle-compare --ell 3 --n-enum 25 --n-dp 500
    python qser.py dump "f2*f3/f1^2" --trunc 4

Run `python qser.py <command> --help` for the flags of each command.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
