"""
Congruence claims R*_ell(An+B) = 0 (mod M) and their numerical verification.

Each theorem of the family is a generator: it takes the theorem's parameters,
checks the side conditions (primality, residue classes, quadratic
characters) and returns normalized ProgressionClaims. A claim is checked by
expanding the counting series once mod M and reading off every coefficient
on the progression.

Design decisions:
- Claims sharing (ell, M) are checked against one series built to the
  largest truncation any of them needs
- A passing report is numerical evidence up to n_max, never a proof; the
  note says which
- Side-condition violations raise ClaimParameterError naming the condition
"""

import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from sympy import isprime, mod_inverse

from . import series as S
from .config import DP_BOUND, TRUNC_CEILING, check_trunc, default_nmax
from .enumeration import count_rbar_dp
from .models import CheckReport, ProgressionClaim
from .modforms import legendre, tau
from .series import Series

logger = logging.getLogger(__name__)

SeriesProvider = Callable[[int, int, Optional[int]], Series]

EPISTEMIC_NOTES = {
    "theorem": "consistent with proved theorem",
    "cited": "cited result",
    "conjecture": "numerical evidence to n_max",
    "empirical": "numerical evidence to n_max",
}

FINDING_NOTE = "finding: cited statement disagrees with counts"


class ClaimParameterError(ValueError):
    """Raised when theorem parameters violate a side condition."""
    pass


def _default_provider(ell: int, trunc: int, modulus: Optional[int]) -> Series:
    return S.rast_series(ell, trunc, modulus)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def _scan_claim(claim: ProgressionClaim, n_max: int, values: Series,
                started: float) -> CheckReport:
    first = claim.position(0)
    coeffs = values.coeffs[first:claim.position(n_max) + 1:claim.A]
    hits = (coeffs % claim.M).nonzero()[0]
    counterexample = None
    if len(hits):
        n = int(hits[0])
        counterexample = (n, int(coeffs[n]) % claim.M)
    note = EPISTEMIC_NOTES[claim.kind]
    if claim.source_note:
        note = f"{claim.source_note}; {note}"
    if counterexample is not None and claim.finding:
        note = f"{note}; {FINDING_NOTE}"
    return CheckReport(
        id=claim.id,
        status="pass" if counterexample is None else "fail",
        checked=n_max,
        counterexample=counterexample,
        seconds=time.perf_counter() - started,
        claim=claim,
        note=note,
        finding=claim.finding,
    )


def check_progression(claim: ProgressionClaim, n_max: Optional[int] = None,
                      ceiling: int = TRUNC_CEILING,
                      provider: SeriesProvider = _default_provider) -> CheckReport:
    """
    Check R*_ell(A(n + start) + B) = 0 (mod M) for n = 0 .. n_max.

    Args:
        claim: The progression claim
        n_max: Last n to test; tiered by A when omitted
        ceiling: Largest truncation allowed
        provider: Builds the counting series (ell, trunc, modulus)

    Returns:
        A report; its counterexample is (n, coefficient mod M)

    Raises:
        ResourceRefusal: If A n_max + B exceeds the ceiling

    Example:
        >>> check_progression(ProgressionClaim(3, 9, 4, 24), 1).counterexample
        (0, 12)
    """
    n_max = default_nmax(claim.A) if n_max is None else n_max
    trunc = claim.required_trunc(n_max)
    check_trunc(trunc, ceiling)
    started = time.perf_counter()
    values = provider(claim.ell, trunc, claim.M)
    return _scan_claim(claim, n_max, values, started)


def check_many(claims: Iterable[ProgressionClaim], n_max: Optional[int] = None,
               ceiling: int = TRUNC_CEILING,
               provider: SeriesProvider = _default_provider) -> Iterator[CheckReport]:
    """
    Check claims group by group, one series per (ell, M).

    Reports are yielded as each claim is decided.

    Raises:
        ResourceRefusal: Before building a group whose series is too long
    """
    groups: Dict[Tuple[int, int], List[ProgressionClaim]] = defaultdict(list)
    for claim in claims:
        groups[(claim.ell, claim.M)].append(claim)

    for (ell, M), members in groups.items():
        bounds = [default_nmax(c.A) if n_max is None else n_max for c in members]
        trunc = max(c.required_trunc(b) for c, b in zip(members, bounds))
        check_trunc(trunc, ceiling)
        started = time.perf_counter()
        values = provider(ell, trunc, M)
        logger.info("built R*_%d mod %d to q^%d in %.2fs", ell, M, trunc,
                    time.perf_counter() - started)
        for claim, bound in zip(members, bounds):
            yield _scan_claim(claim, bound, values, time.perf_counter())


def confirm_counterexample(report: CheckReport) -> Optional[bool]:
    """
    Recompute a failing claim's coefficient with the DP oracle.

    Returns:
        True if the oracle gives the same nonzero residue, False if it
        disagrees, None if the report passed or the exponent is beyond the
        DP bound
    """
    if report.passed or report.claim is None:
        return None
    n, value = report.counterexample
    exponent = report.claim.position(n)
    if exponent > DP_BOUND:
        return None
    oracle = count_rbar_dp(report.claim.ell, exponent)[exponent] % report.claim.M
    return oracle == value and oracle != 0


# ---------------------------------------------------------------------------
# Number-theoretic helpers
# ---------------------------------------------------------------------------

def inv_mod(a: int, p: int) -> int:
    """
    Inverse of a modulo p, in 1 .. p - 1.

    Raises:
        ClaimParameterError: If a is not invertible mod p

    Example:
        >>> inv_mod(3, 7)
        5
    """
    try:
        return int(mod_inverse(a, p))
    except ValueError:
        raise ClaimParameterError(f"{a} is not invertible modulo {p}") from None


def _require_odd_prime(p: int, name: str = "p") -> None:
    if p < 3 or not isprime(p):
        raise ClaimParameterError(f"{name} must be an odd prime, got {p}")


def james3_residues(p: int) -> List[int]:
    """
    Residues r in 1 .. p - 1 with (inv(3, p) 4r + 1 / p) = -1.

    Raises:
        ClaimParameterError: If p is not a prime >= 5

    Example:
        >>> james3_residues(5)
        [2, 4]
    """
    if p < 5 or not isprime(p):
        raise ClaimParameterError(f"p must be a prime >= 5, got {p}")
    inverse = inv_mod(3, p)
    return [r for r in range(1, p) if legendre((inverse * 4 * r + 1) % p, p) == -1]


# ---------------------------------------------------------------------------
# Theorem generators
# ---------------------------------------------------------------------------

def _claim(ell: int, A: int, B: int, M: int, note: str, kind: str = "theorem",
           finding: bool = False) -> ProgressionClaim:
    return ProgressionClaim.normalized(ell, A, B, M, note, kind, finding)


def _elthm() -> List[ProgressionClaim]:
    rows = ((3, 4, 12), (3, 7, 48), (6, 5, 24), (6, 8, 96))
    return [_claim(ell, 9, B, M, "elthm") for ell, B, M in rows]


def _thm3n(k: int = 1) -> List[ProgressionClaim]:
    if k < 1:
        raise ClaimParameterError(f"k must be at least 1, got {k}")
    note = f"thm3n k={k}"
    return [_claim(3 * k, 3, 1, 2, note), _claim(3 * k, 3, 2, 4, note)]


def _thm_2ell(ell: int = 3) -> List[ProgressionClaim]:
    if ell < 1:
        raise ClaimParameterError(f"ell must be at least 1, got {ell}")
    return [_claim(2 * ell, 2, 1, 2, f"thm-2ell ell={ell}")]


def _thm_ellr(ell: int = 3) -> List[ProgressionClaim]:
    if ell < 2:
        raise ClaimParameterError(f"ell must be at least 2, got {ell}")
    return [_claim(ell, ell, r, 2, f"thm-ellr ell={ell} r={r}") for r in range(1, ell)]


def _nathsel() -> List[ProgressionClaim]:
    rows = (
        (16, 9, 8), (16, 11, 16), (32, 25, 16), (64, 37, 32),
        (16, 13, 64), (32, 21, 64), (16, 15, 128), (32, 29, 256),
        (128, 85, 512), (64, 53, 1024), (128, 117, 4096),
    )
    return [_claim(8, A, B, M, "nathsel") for A, B, M in rows]


def _saik(k: int = 3) -> List[ProgressionClaim]:
    if k < 3:
        raise ClaimParameterError(f"k must be at least 3, got {k}")
    moduli = (2, 2, 4, 2, 8, 4, 16)
    return [_claim(2 ** k, 8, i, M, f"saik k={k}") for i, M in enumerate(moduli, start=1)]


def _james1() -> List[ProgressionClaim]:
    return [_claim(6, 6, 5, 8, "james1")]


def _james2() -> List[ProgressionClaim]:
    return [_claim(6, 9, 5, 8, "james2"), _claim(6, 9, 8, 8, "james2")]


def _james3(p: int = 5) -> List[ProgressionClaim]:
    return [_claim(6, 3 * p, 3 * r + 2, 8, f"james3 p={p} r={r}") for r in james3_residues(p)]


def family_offsets(primes: Sequence[int], j: int) -> Tuple[int, int]:
    """
    (A, B) of R*_6(A n + B) = 0 (mod 8) for primes p_1 .. p_{k+1} and j.

    A = 18 prod p_i^2, B = (9 p_1^2 ... p_k^2 p_{k+1} (4j + p_{k+1}) - 1) / 4.

    Raises:
        ClaimParameterError: If a prime is 1 mod 8 or p_{k+1} divides j

    Example:
        >>> family_offsets([11, 13], 2)
        (368082, 74324)
    """
    if not primes:
        raise ClaimParameterError("need at least one prime")
    for p in primes:
        _require_odd_prime(p)
        if p % 8 == 1:
            raise ClaimParameterError(f"primes must not be 1 mod 8, got {p}")
    last = primes[-1]
    if j % last == 0:
        raise ClaimParameterError(f"j must not be divisible by {last}, got {j}")
    if j < 0:
        raise ClaimParameterError(f"j must be non-negative, got {j}")
    square_product = 1
    for p in primes[:-1]:
        square_product *= p * p
    A = 18 * square_product * last * last
    numerator = 9 * square_product * last * (4 * j + last) - 1
    if numerator % 4:
        raise ClaimParameterError(f"offset numerator {numerator} is not divisible by 4")
    return A, numerator // 4


def _family_mf(p: Sequence[int] = (3,), j: int = 1) -> List[ProgressionClaim]:
    primes = list(p)
    A, B = family_offsets(primes, j)
    if len(set(primes)) == 1:
        prime, k = primes[0], len(primes) - 1
        special_A = 18 * prime ** (2 * (k + 1))
        special_B = 9 * prime ** (2 * k + 1) * j + (9 * prime ** (2 * (k + 1)) - 1) // 4
        if (special_A, special_B) != (A, B):
            raise ClaimParameterError(
                f"general form gives ({A}, {B}), equal-prime form gives ({special_A}, {special_B})"
            )
    return [_claim(6, A, B, 8, f"family-mf p={primes} j={j}")]


def _t4(p: int = 3, s: int = 17, k: int = 0, k_max: Optional[int] = None) -> List[ProgressionClaim]:
    _require_odd_prime(p)
    if s % 8 != 1:
        raise ClaimParameterError(f"s must be 1 mod 8, got {s}")
    if not 1 <= s <= 8 * p:
        raise ClaimParameterError(f"s must lie in 1 .. {8 * p}, got {s}")
    if legendre(s, p) != -1:
        raise ClaimParameterError(f"s = {s} must be a quadratic nonresidue mod {p}")
    depths = range(k, k + 1) if k_max is None else range(0, k_max + 1)
    if max(depths) > 0 and tau(p)[-1] % 2:
        raise ClaimParameterError(f"deeper claims need tau({p}) even")
    claims = []
    for depth in depths:
        A = 18 * p ** (2 * depth + 1)
        B = (9 * s * p ** (2 * depth) - 1) // 4
        claims.append(_claim(6, A, B, 8, f"t4 p={p} s={s} k={depth}"))
    return claims


def _conj_128(k: int = 1) -> List[ProgressionClaim]:
    if k < 1:
        raise ClaimParameterError(f"k must be at least 1, got {k}")
    A = 18 * 3 ** (2 * k + 1)
    B = (153 * 3 ** (2 * k) - 1) // 4
    return [
        _claim(6, 54, 38, 128, "conj-128", kind="conjecture"),
        _claim(6, A, B, 128, f"conj-128 k={k}", kind="conjecture"),
    ]


def _cited(j: int = 3) -> List[ProgressionClaim]:
    if j < 3:
        raise ClaimParameterError(f"j must be at least 3, got {j}")
    claims = [_claim(3, 9, B, M, "cited", kind="cited") for M in (3, 4) for B in (4, 7)]
    claims += [
        # fails from n = 1 on for every j checked
        _claim(3 ** j, 27, 19, 3, f"cited j={j}", kind="cited", finding=True),
        _claim(6, 27, 11, 64, "cited", kind="cited"),
        _claim(6, 81, 47, 24, "cited", kind="cited"),
    ]
    return claims


def _nine_power(k: int = 1) -> List[ProgressionClaim]:
    if k < 1:
        raise ClaimParameterError(f"k must be at least 1, got {k}")
    A = 9 ** k
    note = f"nine-power k={k}"
    return [
        _claim(3, A, (33 * 9 ** (k - 1) - 1) // 8, 3, note, kind="cited"),
        _claim(3, A, (57 * 9 ** (k - 1) - 1) // 8, 3, note, kind="cited"),
    ]


@dataclass(frozen=True)
class _Generator:
    build: Callable[..., List[ProgressionClaim]]
    kind: str


_GENERATORS: Dict[str, _Generator] = {
    "elthm": _Generator(_elthm, "theorem"),
    "thm3n": _Generator(_thm3n, "theorem"),
    "thm-2ell": _Generator(_thm_2ell, "theorem"),
    "thm-ellr": _Generator(_thm_ellr, "theorem"),
    "nathsel": _Generator(_nathsel, "theorem"),
    "saik": _Generator(_saik, "theorem"),
    "james1": _Generator(_james1, "theorem"),
    "james2": _Generator(_james2, "theorem"),
    "james3": _Generator(_james3, "theorem"),
    "family-mf": _Generator(_family_mf, "theorem"),
    "t4": _Generator(_t4, "theorem"),
    "conj-128": _Generator(_conj_128, "conjecture"),
    "cited": _Generator(_cited, "cited"),
    "nine-power": _Generator(_nine_power, "cited"),
}


def theorem_ids() -> Dict[str, str]:
    """Generator ids mapped to their kind."""
    return {name: gen.kind for name, gen in _GENERATORS.items()}


def theorem_claims(theorem_id: str, **params) -> List[ProgressionClaim]:
    """
    Claims produced by one theorem generator.

    Args:
        theorem_id: One of theorem_ids()
        **params: Theorem parameters, e.g. p=[11, 13], j=2 for family-mf

    Raises:
        KeyError: For an unknown id
        ClaimParameterError: If a side condition fails

    Example:
        >>> theorem_claims("t4", p=3, s=17)[0].id
        'R6(54n+38)~0 mod 8'
    """
    if theorem_id not in _GENERATORS:
        raise KeyError(theorem_id)
    try:
        return _GENERATORS[theorem_id].build(**params)
    except TypeError as exc:
        raise ClaimParameterError(f"{theorem_id}: {exc}") from exc


def default_suite() -> List[ProgressionClaim]:
    """The claims `verify all` runs: every generator at its documented instances."""
    claims = _elthm() + _nathsel() + _james1() + _james2()
    for k in (1, 2):
        claims += _thm3n(k)
    for ell in (2, 3, 4, 5):
        claims += _thm_2ell(ell) + _thm_ellr(ell)
    for k in (3, 4, 5):
        claims += _saik(k)
    for p in (5, 7, 11, 13):
        claims += _james3(p)
    claims += _family_mf([3], 1) + _family_mf([3], 2) + _family_mf([11, 13], 2)
    claims += _t4(3, 17, k_max=1)
    claims += _conj_128(1) + _cited(3) + _nine_power(1) + _nine_power(2)
    return claims


# ---------------------------------------------------------------------------
# Equivalences and discovery
# ---------------------------------------------------------------------------

def check_equivalence(p: int, n_max: Optional[int] = None,
                      ceiling: int = TRUNC_CEILING,
                      provider: SeriesProvider = _default_provider) -> CheckReport:
    """
    Check R*_6(18p^2 n + (9p^2 - 1)/4) = R*_6(18n + 2) (mod 8) for n <= n_max.

    Raises:
        ClaimParameterError: If p is not an odd prime or p = 1 mod 8
        ResourceRefusal: If the series would exceed the ceiling
    """
    _require_odd_prime(p)
    if p % 8 == 1:
        raise ClaimParameterError(f"p must not be 1 mod 8, got {p}")
    A = 18 * p * p
    B = (9 * p * p - 1) // 4
    n_max = default_nmax(A) if n_max is None else n_max
    trunc = A * n_max + B
    check_trunc(trunc, ceiling)
    started = time.perf_counter()
    values = provider(6, trunc, 8)
    far = values.coeffs[B:trunc + 1:A]
    near = values.coeffs[2:18 * n_max + 3:18]
    diff = (far - near) % 8
    hits = diff.nonzero()[0]
    counterexample = (int(hits[0]), int(diff[hits[0]])) if len(hits) else None
    return CheckReport(
        id=f"R6({A}n+{B}) = R6(18n+2) mod 8",
        status="pass" if counterexample is None else "fail",
        checked=n_max,
        counterexample=counterexample,
        seconds=time.perf_counter() - started,
        note=f"p={p}",
    )


def scan(ell: int, A_max: int, moduli: Set[int], n_max: int,
         ceiling: int = TRUNC_CEILING,
         provider: SeriesProvider = _default_provider) -> List[ProgressionClaim]:
    """
    Every (A <= A_max, B < A, M in moduli) whose first n_max + 1 coefficients
    vanish mod M, as empirical claims.

    Example:
        >>> scan(3, 1, {2}, 10)
        []
    """
    if A_max < 1:
        raise ValueError(f"A_max must be positive, got {A_max}")
    trunc = A_max * (n_max + 1) - 1
    check_trunc(trunc, ceiling)
    found = []
    for M in sorted(moduli):
        values = provider(ell, trunc, M)
        for A in range(1, A_max + 1):
            for B in range(A):
                coeffs = values.coeffs[B:A * n_max + B + 1:A]
                if not (coeffs % M).any():
                    found.append(ProgressionClaim(ell, A, B, M, f"scan n_max={n_max}", "empirical"))
    logger.info("scan of R*_%d found %d candidates", ell, len(found))
    return found
