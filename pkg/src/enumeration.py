"""
Combinatorial oracles for overpartitions with ell-regular non-overlined parts.

Nothing here touches the series engine: the counts come from generating the
overpartitions themselves or from a part-by-part knapsack table, so they can
be used to check the q-series side independently.

Convention: a non-overlined part is allowed only if ell does not divide it.
For ell = 1 no non-overlined part survives, so R*_1(n) counts partitions of
n into distinct (overlined) parts.
"""

import logging
from math import isqrt
from typing import Iterator, List, Tuple

from .config import DP_BOUND, ENUMERATION_BOUND, ResourceRefusal
from .models import OverpartitionSpec

logger = logging.getLogger(__name__)

# (size, overlined) pairs in non-increasing order of size, overlined first
Overpartition = Tuple[Tuple[int, bool], ...]


def _generate(remaining: int, largest: int, ell: int) -> Iterator[Overpartition]:
    if remaining == 0:
        yield ()
        return
    for size in range(min(remaining, largest), 0, -1):
        max_plain = remaining // size if size % ell else 0
        for overlined in (1, 0):
            for plain in range(max_plain + 1):
                used = size * (overlined + plain)
                if used == 0 or used > remaining:
                    continue
                head = ((size, True),) * overlined + ((size, False),) * plain
                for tail in _generate(remaining - used, size - 1, ell):
                    yield head + tail


def iter_overpartitions(ell: int, n: int) -> Iterator[Overpartition]:
    """
    Generate every overpartition of n whose non-overlined parts are ell-regular.

    Raises:
        ResourceRefusal: If n exceeds the enumeration bound

    Example:
        >>> sorted(iter_overpartitions(3, 2))
        [((1, False), (1, False)), ((1, True), (1, False)), ((2, False),), ((2, True),)]
    """
    spec = OverpartitionSpec(ell, n)
    if spec.n > ENUMERATION_BOUND:
        raise ResourceRefusal(
            f"enumeration is limited to n <= {ENUMERATION_BOUND}, got {spec.n}"
        )
    return _generate(spec.n, spec.n, spec.ell)


def count_rbar_enum(ell: int, n: int) -> int:
    """
    R*_ell(n) by generating the overpartitions one by one.

    Raises:
        ResourceRefusal: If n exceeds the enumeration bound

    Example:
        >>> count_rbar_enum(3, 3)
        7
    """
    return sum(1 for _ in iter_overpartitions(ell, n))


def count_rbar_dp(ell: int, n_max: int) -> List[int]:
    """
    R*_ell(0..n_max) by dynamic programming over part sizes.

    Each size s contributes an optional overlined copy (0/1 knapsack) and,
    when ell does not divide s, any number of plain copies (unbounded knapsack).

    Raises:
        ResourceRefusal: If n_max exceeds the DP bound

    Example:
        >>> count_rbar_dp(3, 4)
        [1, 2, 4, 7, 12]
    """
    spec = OverpartitionSpec(ell, n_max)
    if spec.n > DP_BOUND:
        raise ResourceRefusal(f"the DP oracle is limited to n <= {DP_BOUND}, got {spec.n}")
    table = [1] + [0] * n_max
    for size in range(1, n_max + 1):
        for total in range(n_max, size - 1, -1):
            table[total] += table[total - size]
        if size % ell:
            for total in range(size, n_max + 1):
                table[total] += table[total - size]
    return table


def overpartition_table(n_max: int) -> List[int]:
    """Number of overpartitions of 0 .. n_max."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    table = [1] + [0] * n_max
    for size in range(1, n_max + 1):
        for total in range(n_max, size - 1, -1):
            table[total] += table[total - size]
        for total in range(size, n_max + 1):
            table[total] += table[total - size]
    return table


def count_overpartitions(n: int) -> int:
    """
    Number of overpartitions of n.

    Example:
        >>> count_overpartitions(3)
        8
    """
    return overpartition_table(n)[n]


def partition_table(n_max: int) -> List[int]:
    """Number of partitions of 0 .. n_max."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    table = [1] + [0] * n_max
    for size in range(1, n_max + 1):
        for total in range(size, n_max + 1):
            table[total] += table[total - size]
    return table


def count_partitions(n: int) -> int:
    """
    Number of partitions of n.

    Example:
        >>> count_partitions(3)
        3
    """
    return partition_table(n)[n]


def is_generalized_pentagonal(m: int) -> bool:
    """True iff m = k(3k-1)/2 for some integer k, i.e. 24m + 1 is a square."""
    if m < 0:
        return False
    root = isqrt(24 * m + 1)
    return root * root == 24 * m + 1


def parity_predicate(ell: int, n: int) -> bool:
    """
    True iff n = ell * k(3k-1)/2 for some integer k, which is exactly when
    R*_ell(n) is odd.

    The criterion "24n/ell + 1 is a square" agrees with this when ell divides n;
    when it does not, n is not of the form and the count is even.

    Raises:
        ValueError: If ell < 2

    Example:
        >>> parity_predicate(2, 2), parity_predicate(3, 4)
        (True, False)
    """
    if ell < 2:
        raise ValueError(f"the parity criterion needs ell >= 2, got {ell}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n % ell:
        return False
    return is_generalized_pentagonal(n // ell)
