"""
Configuration constants for the q-series engine and the verification harness.

Everything tunable lives here so that the oracles, the theorem suite and the
command line agree on the same bounds.
"""

import os
from pathlib import Path

# Oracle bounds
ENUMERATION_BOUND = 30
DP_BOUND = 5000

# Largest truncation any single series may be built to without --allow-large
TRUNC_CEILING = 8_000_000

# Identity catalog truncations
MIN_IDENTITY_TRUNC = 16
DEFAULT_EXACT_TRUNC = 2000
DEFAULT_CONGRUENT_TRUNC = 4000

# Moduli up to this bound are stored as int64 residues. A dense convolution
# adds at most TRUNC_CEILING products, each below WORD_MODULUS_LIMIT**2,
# which stays below 2**63.
WORD_MODULUS_LIMIT = 2 ** 20

# n_max tiers for progression checks, keyed by the largest A in the tier
NMAX_TIERS = (
    (200, 1000),
    (10_000, 100),
)
NMAX_FALLBACK = 3

CACHE_ENV_VAR = "QSER_CACHE_DIR"
DEFAULT_CACHE_DIR = Path.home() / ".cache" / "qser"


class ResourceRefusal(RuntimeError):
    """Raised when a request would exceed a configured size bound."""
    pass


def default_nmax(A: int) -> int:
    """
    Pick the default number of progression terms to check for step A.

    Args:
        A: Step of the arithmetic progression An+B

    Returns:
        n_max from the tier table

    Example:
        >>> default_nmax(9)
        1000
        >>> default_nmax(368082)
        3
    """
    for limit, n_max in NMAX_TIERS:
        if A <= limit:
            return n_max
    return NMAX_FALLBACK


def default_cache_dir() -> Path:
    """Cache directory from QSER_CACHE_DIR, falling back to ~/.cache/qser."""
    override = os.environ.get(CACHE_ENV_VAR)
    if override:
        return Path(override)
    return DEFAULT_CACHE_DIR


def check_trunc(trunc: int, ceiling: int = TRUNC_CEILING) -> None:
    """
    Refuse truncations above the ceiling.

    Raises:
        ResourceRefusal: If trunc exceeds ceiling
    """
    if trunc > ceiling:
        raise ResourceRefusal(
            f"truncation {trunc} exceeds the ceiling of {ceiling} coefficients "
            f"(raise it with --allow-large)"
        )
