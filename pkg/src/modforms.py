"""
Eta quotients, quadratic characters and Hecke operators on q-expansions.

Only computable consequences of modularity are handled here: expansions,
the coefficient formula for T_p, eigenvalue relations and support patterns.
Membership of a form in a given space is taken as an assumption.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np
from sympy import isprime, jacobi_symbol

from . import series as S
from .models import CheckReport
from .qexpr import eta_quotient
from .series import Series

logger = logging.getLogger(__name__)


class EtaOffsetError(ValueError):
    """Raised when an eta quotient has a fractional or negative q-offset."""
    pass


def legendre(s: int, p: int) -> int:
    """
    Legendre symbol (s/p) by Euler's criterion.

    Args:
        s: Any integer
        p: Odd prime

    Returns:
        1 for a nonzero square mod p, -1 for a nonsquare, 0 if p divides s

    Raises:
        ValueError: If p is not an odd prime

    Example:
        >>> legendre(17, 3)
        -1
    """
    if p == 2 or not isprime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    value = pow(s % p, (p - 1) // 2, p)
    return -1 if value == p - 1 else value


def kronecker(s: int, d: int) -> int:
    """
    Kronecker symbol (s/d): the Jacobi symbol on the odd part of d, extended
    by (s/2) = 0, 1, -1 for s even, s = +-1 mod 8, s = +-3 mod 8, and by
    (s/-1) = sign of s.
    """
    if d == 0:
        return 1 if s in (1, -1) else 0
    result = 1
    if d < 0:
        d = -d
        if s < 0:
            result = -result
    twos = (d & -d).bit_length() - 1
    if twos:
        if s % 2 == 0:
            return 0
        if twos % 2 and s % 8 in (3, 5):
            result = -result
        d >>= twos
    if d == 1:
        return result
    return result * int(jacobi_symbol(s % d, d))


@dataclass(frozen=True)
class EtaQuotientSpec:
    """
    prod_{delta | N} eta(delta z)^{r_delta}.

    Attributes:
        level: N
        exponents: (delta, r_delta) pairs; every delta divides N
    """
    level: int
    exponents: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        for delta, _ in self.exponents:
            if delta < 1 or self.level % delta:
                raise ValueError(f"{delta} does not divide the level {self.level}")

    @classmethod
    def of(cls, level: int, exponents: Mapping[int, int]) -> "EtaQuotientSpec":
        return cls(level, tuple(sorted((d, r) for d, r in exponents.items() if r)))

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exponents), 2)

    @property
    def offset_numerator(self) -> int:
        """sum delta * r_delta; the q-offset is this over 24."""
        return sum(d * r for d, r in self.exponents)

    @property
    def offset(self) -> int:
        """
        Integral q-offset.

        Raises:
            EtaOffsetError: Naming sum delta*r_delta mod 24 when it is fractional
        """
        total = self.offset_numerator
        if total % 24:
            raise EtaOffsetError(
                f"q-offset {total}/24 is not integral (sum delta*r_delta = {total % 24} mod 24)"
            )
        if total < 0:
            raise EtaOffsetError(f"q-offset {total // 24} is negative")
        return total // 24

    def character(self) -> "CharacterSpec":
        return CharacterSpec.from_eta(self)


@dataclass(frozen=True)
class CharacterSpec:
    """
    The quadratic character d -> (s/d) with s = (-1)^k prod delta^{r_delta}.

    Negative exponents contribute like positive ones, since a unit and its
    inverse have the same quadratic symbol.
    """
    discriminant: int

    @classmethod
    def from_eta(cls, spec: EtaQuotientSpec) -> "CharacterSpec":
        weight = spec.weight
        if weight.denominator != 1:
            raise ValueError(f"half-integral weight {weight} has no quadratic character here")
        s = (-1) ** int(weight)
        for delta, r in spec.exponents:
            s *= delta ** abs(r)
        return cls(s)

    @classmethod
    def trivial(cls) -> "CharacterSpec":
        return cls(1)

    def __call__(self, d: int) -> int:
        return kronecker(self.discriminant, d)


DELTA = EtaQuotientSpec.of(1, {1: 24})
ETA4_6 = EtaQuotientSpec.of(16, {4: 6})


def eta_expand(spec: EtaQuotientSpec, trunc: int, modulus: Optional[int] = None) -> Series:
    """
    q^offset * prod f_delta^{r_delta} truncated at trunc.

    Raises:
        EtaOffsetError: If the offset is fractional or negative

    Example:
        >>> eta_expand(ETA4_6, 9).to_list()
        [0, 1, 0, 0, 0, -6, 0, 0, 0, 9]
    """
    offset = spec.offset
    exponents: Dict[int, int] = {}
    for delta, r in spec.exponents:
        exponents[delta] = exponents.get(delta, 0) + r
    body = eta_quotient(exponents, max(trunc - offset, 0), modulus)
    shifted = S.shift(body, offset)
    return shifted.truncate(trunc) if shifted.trunc > trunc else shifted


def tau(n_max: int) -> List[int]:
    """
    Ramanujan's tau(1), ..., tau(n_max) from q f_1^24.

    Example:
        >>> tau(3)
        [1, -24, 252]
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    return eta_expand(DELTA, n_max).to_list()[1:]


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"Hecke operators T_p need a prime p, got {p}")


def hecke_tp(f: Series, p: int, weight: int, chi: Optional[CharacterSpec] = None) -> Series:
    """
    Apply T_p: b(n) = a(pn) + chi(p) p^{k-1} a(n/p), with a(n/p) = 0 when p does
    not divide n.

    Args:
        f: Expansion sum a(n) q^n
        p: Prime
        weight: k
        chi: Nebentypus character, trivial if omitted

    Returns:
        Series truncated at floor(f.trunc / p)

    Raises:
        ValueError: If p is not prime or f is too short
    """
    _require_prime(p)
    if f.trunc < p:
        raise ValueError(f"need coefficients up to q^{p}, series stops at q^{f.trunc}")
    chi = chi or CharacterSpec.trivial()
    factor = chi(p) * p ** (weight - 1)
    trunc = f.trunc // p
    values = f.coeffs[::p][:trunc + 1].astype(object)
    values[::p] = values[::p] + factor * f.coeffs[:trunc // p + 1].astype(object)
    return Series.from_coefficients(values.tolist(), f.modulus, trunc)


@dataclass(frozen=True)
class HeckeResult:
    """
    Outcome of an eigenform test.

    Attributes:
        transformed: f | T_p
        eigen_ok: Whether f | T_p equals eigenvalue * f up to the shared truncation
        eigenvalue: a(p)
        first_violation: First exponent where the relation fails
    """
    transformed: Series
    eigen_ok: bool
    eigenvalue: int
    first_violation: Optional[int] = None


def eigenform_check(f: Series, p: int, weight: int,
                    chi: Optional[CharacterSpec] = None) -> HeckeResult:
    """
    Test f | T_p = a(p) f for a normalised cusp expansion.

    Raises:
        ValueError: If a(0) != 0 or a(1) != 1

    Example:
        >>> eigenform_check(eta_expand(DELTA, 60), 3, 12).eigenvalue
        252
    """
    if f[0] != 0 or f[1] != 1:
        raise ValueError(f"expected a(0) = 0 and a(1) = 1, got a(0) = {f[0]}, a(1) = {f[1]}")
    transformed = hecke_tp(f, p, weight, chi)
    eigenvalue = f[p]
    expected = S.scale(f.truncate(transformed.trunc), eigenvalue)
    mismatch = np.flatnonzero(transformed.coeffs != expected.coeffs)
    first = int(mismatch[0]) if len(mismatch) else None
    logger.debug("T_%d eigen check: lambda=%d first_violation=%s", p, eigenvalue, first)
    return HeckeResult(transformed, first is None, eigenvalue, first)


def support_check_mod(f: Series, r: int, m: int, M: int = 1, label: str = "f") -> CheckReport:
    """
    Check that a(n) = 0 (mod M) for every n not congruent to r mod m.

    M = 1 means an exact zero test.

    Example:
        >>> support_check_mod(eta_expand(ETA4_6, 100), 1, 8, 1).counterexample
        (5, -6)
    """
    if m < 1 or not 0 <= r < m:
        raise ValueError(f"bad residue class {r} mod {m}")
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    start = time.perf_counter()
    exponents = np.arange(f.trunc + 1)
    outside = exponents % m != r
    values = f.coeffs[outside]
    bad = values != 0 if M == 1 else (values % M) != 0
    hits = np.flatnonzero(bad)
    counterexample = None
    if len(hits):
        n = int(exponents[outside][hits[0]])
        value = f[n] if M == 1 else f[n] % M
        counterexample = (n, value)
    ring = "exactly" if M == 1 else f"mod {M}"
    return CheckReport(
        id=f"support {label}: a(n) = 0 {ring} unless n = {r} mod {m}",
        status="pass" if counterexample is None else "fail",
        checked=f.trunc,
        counterexample=counterexample,
        seconds=time.perf_counter() - start,
    )
