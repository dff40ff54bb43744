"""
Catalog of q-series identities behind the overpartition congruences.

Each entry pairs a left side (usually a dissection of the counting series)
with a right side (an eta-quotient display) and says whether the two agree
exactly or modulo some M. Verifying an entry expands both sides to a common
truncation and reports the first exponent where they differ.

Chained entries also record their parent display and the dissection that
leads from it, so a derivation can be replayed on the displays alone.

Design decisions:
- Entries are plain data; nothing is evaluated until a check asks for it
- A mismatch is a report, not an exception; only evaluation errors raise
- Entries flagged as findings are expected to be looked at by a human when
  they fail, and carry that remark in the report
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from . import series as S
from .config import DEFAULT_CONGRUENT_TRUNC, DEFAULT_EXACT_TRUNC, MIN_IDENTITY_TRUNC
from .enumeration import count_rbar_dp, overpartition_table, partition_table
from .models import CheckReport
from .qexpr import (
    Alternate,
    Dissect,
    DissectExpr,
    EvaluationError,
    Magnify,
    QExpr,
    Shift,
    Source,
    Step,
    apply_steps,
    base_trunc,
    evaluate,
    evaluate_any,
    extract,
    f,
    phi,
    psi,
    q,
    rast,
)
from .series import Series

logger = logging.getLogger(__name__)

Side = Union[QExpr, DissectExpr]


class UnknownEntryError(KeyError):
    """Raised when an identity id is not in the catalog."""
    pass


@dataclass(frozen=True)
class IdentityEntry:
    """
    One catalog identity lhs = rhs, exactly or mod `modulus`.

    Attributes:
        id: Stable identifier
        lhs: Left side, typically a dissection of the counting series
        rhs: Right side
        modulus: None for an exact identity, else M for a congruence
        provenance: Where the display comes from
        parent: Id of the display this one is derived from
        chain: Steps taking the parent's right side to this right side
        scalar: Integer the left side is claimed to be divisible by
        finding: Whether a failure should be reported as a finding
    """
    id: str
    lhs: Side
    rhs: Side
    modulus: Optional[int] = None
    provenance: str = ""
    parent: Optional[str] = None
    chain: Tuple[Step, ...] = ()
    scalar: Optional[int] = None
    finding: bool = False

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"{self.id}: modulus must be at least 2, got {self.modulus}")
        if self.scalar is not None and self.scalar < 2:
            raise ValueError(f"{self.id}: scalar witness must be at least 2")
        if self.chain and self.parent is None:
            raise ValueError(f"{self.id}: chain steps need a parent")

    @property
    def mode(self) -> str:
        return "exact" if self.modulus is None else f"mod {self.modulus}"

    @property
    def default_trunc(self) -> int:
        return DEFAULT_EXACT_TRUNC if self.modulus is None else DEFAULT_CONGRUENT_TRUNC


# ---------------------------------------------------------------------------
# Independent sides
# ---------------------------------------------------------------------------

def _table_source(label: str, table) -> Source:
    def build(trunc: int, modulus: Optional[int]) -> Series:
        return Series.from_coefficients(table(trunc), modulus, trunc)
    return Source(label, build)


def _rast_oracle(ell: int) -> Source:
    return _table_source(f"DP[R{ell}]", lambda trunc: count_rbar_dp(ell, trunc))


def _series_source(label: str, builder) -> Source:
    return Source(label, builder)


def _phi_tower_times(k: int) -> Source:
    def build(trunc: int, modulus: Optional[int]) -> Series:
        return S.mul(S.series_f(k, trunc, modulus), S.phi_tower(trunc, modulus))
    return Source(f"f{k}*prod phi(q^2^i)^2^i", build)


def _mun6n_from_mun3n1(trunc: int, modulus: Optional[int]) -> Series:
    factor = evaluate(2 * f(6) ** 3 / f(3) ** 3, trunc, modulus)
    return S.mul(factor, evaluate_any(extract(rast(3), 3, 1), trunc, modulus))


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

def _overpartition_3_dissection() -> QExpr:
    """3-dissection of f_2 / f_1^2."""
    return (f(6) ** 4 * f(9) ** 6 / (f(3) ** 8 * f(18) ** 3)
            + 2 * q() * f(6) ** 3 * f(9) ** 3 / f(3) ** 7
            + 4 * q(2) * f(6) ** 2 * f(18) ** 3 / f(3) ** 6)


def _generating_functions() -> List[IdentityEntry]:
    entries = []
    for ell, name in ((3, "gf-rast"), (6, "gf-rast-l6"), (8, "gf-rast-l8")):
        entries.append(IdentityEntry(
            name, f(2) * f(ell) / f(1) ** 2, _rast_oracle(ell),
            provenance=f"generating function against the DP count, ell = {ell}",
        ))
    entries += [
        IdentityEntry("gf-rast-theta", rast(8), f(2) * f(8) / f(1) ** 2, modulus=4096,
                      provenance="theta-product construction mod 2^12 against the eta quotient"),
        IdentityEntry("gf-partitions", 1 / f(1), _table_source("p(n)", partition_table),
                      provenance="Euler"),
        IdentityEntry("gf-overpartitions", f(2) / f(1) ** 2,
                      _table_source("pbar(n)", overpartition_table),
                      provenance="Corteel-Lovejoy"),
        IdentityEntry("pentagonal", f(1),
                      _series_source("prod (1 - q^i)", lambda t, m: S.naive_eta_product(1, t, m)),
                      provenance="Euler's pentagonal number theorem"),
        IdentityEntry("jacobi-cube", f(1) ** 3,
                      _series_source("sum (-1)^n (2n+1) q^T_n", S.jacobi_cube_sum),
                      provenance="Jacobi"),
    ]
    return entries


def _dissections() -> List[IdentityEntry]:
    return [
        IdentityEntry(
            "diss-1f1^2", 1 / f(1) ** 2,
            f(8) ** 5 / (f(2) ** 5 * f(16) ** 2) + 2 * q() * f(4) ** 2 * f(16) ** 2 / (f(2) ** 5 * f(8)),
            provenance="2-dissection of 1/f_1^2",
        ),
        IdentityEntry(
            "diss-1f1^4", 1 / f(1) ** 4,
            f(4) ** 14 / (f(2) ** 14 * f(8) ** 4) + 4 * q() * f(4) ** 2 * f(8) ** 4 / f(2) ** 10,
            provenance="2-dissection of 1/f_1^4",
        ),
        IdentityEntry("HirSel3diss", f(2) / f(1) ** 2, _overpartition_3_dissection(),
                      provenance="3-dissection of f_2/f_1^2"),
        IdentityEntry("theta-split", phi(), phi(4) + 2 * q() * psi(8),
                      provenance="phi(q) = phi(q^4) + 2q psi(q^8)"),
        IdentityEntry("phi-neg", DissectExpr(phi(), (Alternate(),)), f(1) ** 2 / f(2),
                      provenance="phi(-q) = f_1^2 / f_2"),
        IdentityEntry("phi-neg-inverse", f(2) / f(1) ** 2,
                      _series_source("prod phi(q^2^i)^2^i", lambda t, m: S.phi_tower(t, m)),
                      provenance="iterating phi(q) phi(-q) = phi(-q^2)^2"),
        IdentityEntry("rast-2k-theta", rast(16), _phi_tower_times(16),
                      provenance="f_2 f_ell / f_1^2 as f_ell times the phi tower"),
    ]


def _ell_three_and_six() -> List[IdentityEntry]:
    H = _overpartition_3_dissection()
    r3, r6 = rast(3), rast(6)
    return [
        IdentityEntry("mun3n1", extract(r3, 3, 1), 2 * f(2) ** 3 * f(3) ** 3 / f(1) ** 6,
                      provenance="R3(3n+1) generating function", scalar=2),
        IdentityEntry("nn1", extract(r3, 3, 1), 2 * f(3) ** 3 * H ** 3,
                      provenance="R3(3n+1) before collecting the 3-dissection", scalar=2),
        IdentityEntry(
            "r3-9n4", extract(r3, 9, 4),
            12 * (f(2) ** 11 * f(3) ** 15 / (f(1) ** 20 * f(6) ** 6)
                  + 16 * q() * f(2) ** 8 * f(3) ** 6 * f(6) ** 3 / f(1) ** 17),
            provenance="R3(9n+4)", parent="nn1", chain=(Dissect(3, 1),), scalar=12,
        ),
        IdentityEntry(
            "r3-9n7-pre", extract(r3, 9, 7),
            2 * f(1) ** 3 * (24 * f(2) ** 10 * f(3) ** 12 / (f(1) ** 22 * f(6) ** 3)
                             + 96 * q() * f(2) ** 7 * f(3) ** 3 * f(6) ** 6 / f(1) ** 19),
            provenance="R3(9n+7) before simplification", parent="nn1", chain=(Dissect(3, 2),),
        ),
        IdentityEntry(
            "r3-9n7", extract(r3, 9, 7),
            48 * (f(2) ** 10 * f(3) ** 12 / (f(6) ** 3 * f(1) ** 19)
                  + 4 * q() * f(2) ** 7 * f(3) ** 3 * f(6) ** 6 / f(1) ** 16),
            provenance="R3(9n+7)", parent="nn1", chain=(Dissect(3, 2),), scalar=48,
        ),
        IdentityEntry("mun6n", extract(r6, 3, 2), 4 * f(2) ** 3 * f(6) ** 3 / f(1) ** 6,
                      provenance="R6(3n+2) generating function", scalar=4),
        IdentityEntry("mun6n-vs-mun3n1", extract(r6, 3, 2),
                      Source("2 f6^3/f3^3 * R3(3n+1)", _mun6n_from_mun3n1),
                      provenance="R6(3n+2) against R3(3n+1)"),
        IdentityEntry("mun6n-mod8", extract(r6, 3, 2), 4 * f(6) ** 3, modulus=8,
                      provenance="R6(3n+2) mod 8"),
        IdentityEntry("nn2", extract(r6, 3, 2), 4 * f(6) ** 3 * H ** 3,
                      provenance="R6(3n+2) before collecting the 3-dissection", scalar=4),
        IdentityEntry(
            "r6-9n5-pre", extract(r6, 9, 5),
            4 * f(2) ** 3 * (6 * f(2) ** 11 * f(3) ** 15 / (f(1) ** 23 * f(6) ** 6)
                             + 96 * q() * f(2) ** 8 * f(3) ** 6 * f(6) ** 3 / f(1) ** 20),
            provenance="R6(9n+5) before simplification", parent="nn2", chain=(Dissect(3, 1),),
        ),
        IdentityEntry(
            "r6-9n5", extract(r6, 9, 5),
            24 * (f(2) ** 14 * f(3) ** 15 / (f(1) ** 23 * f(6) ** 6)
                  + 16 * q() * f(2) ** 11 * f(3) ** 6 * f(6) ** 3 / f(1) ** 20),
            provenance="R6(9n+5)", parent="nn2", chain=(Dissect(3, 1),), scalar=24,
        ),
        IdentityEntry(
            "r6-9n8", extract(r6, 9, 8),
            96 * (f(2) ** 13 * f(3) ** 12 / (f(1) ** 22 * f(6) ** 3)
                  + 4 * q() * f(2) ** 10 * f(3) ** 3 * f(6) ** 6 / f(1) ** 19),
            provenance="R6(9n+8)", parent="nn2", chain=(Dissect(3, 2),), scalar=96,
        ),
        IdentityEntry("lemma-18n2", extract(r6, 18, 2), 4 * f(1) ** 3, modulus=8,
                      provenance="R6(18n+2) mod 8", parent="mun6n-mod8", chain=(Dissect(6, 0),)),
    ]


def _ell_eight() -> List[IdentityEntry]:
    r8 = rast(8)

    def tail(m: int, r: int) -> DissectExpr:
        return extract(r8, m, r)

    e16n11 = 16 * (
        8 * f(2) ** 8 * f(4) ** 45 / (f(1) ** 35 * f(8) ** 18)
        + 13 * f(4) ** 59 / (f(1) ** 31 * f(2) ** 6 * f(8) ** 22)
        + 1144 * q() * f(4) ** 47 / (f(1) ** 31 * f(2) ** 2 * f(8) ** 14)
        + 1152 * q() * f(2) ** 12 * f(4) ** 33 / (f(1) ** 35 * f(8) ** 10)
        + 16128 * q(2) * f(2) ** 16 * f(4) ** 21 / (f(1) ** 35 * f(8) ** 2)
        + 20592 * q(2) * f(2) ** 2 * f(4) ** 35 / (f(1) ** 31 * f(8) ** 6)
        + 43008 * q(3) * f(2) ** 20 * f(8) ** 6 * f(4) ** 9 / f(1) ** 35
        + 109824 * q(3) * f(2) ** 6 * f(8) ** 2 * f(4) ** 23 / f(1) ** 31
        + 18432 * q(4) * f(2) ** 24 * f(8) ** 14 / (f(1) ** 35 * f(4) ** 3)
        + 183040 * q(4) * f(2) ** 10 * f(8) ** 10 * f(4) ** 11 / f(1) ** 31
        + 79872 * q(5) * f(2) ** 14 * f(8) ** 18 / (f(1) ** 31 * f(4))
        + 4096 * q(6) * f(2) ** 18 * f(8) ** 26 / (f(1) ** 31 * f(4) ** 13)
    )
    e16n15 = 128 * (
        11 * f(2) ** 2 * f(4) ** 49 / (f(1) ** 33 * f(8) ** 18)
        + 660 * q() * f(2) ** 6 * f(4) ** 37 / (f(1) ** 33 * f(8) ** 10)
        + 7392 * q(2) * f(2) ** 10 * f(4) ** 25 / (f(1) ** 33 * f(8) ** 2)
        + 21120 * q(3) * f(2) ** 14 * f(8) ** 6 * f(4) ** 13 / f(1) ** 33
        + 14080 * q(4) * f(2) ** 18 * f(8) ** 14 * f(4) / f(1) ** 33
        + 1024 * q(5) * f(2) ** 22 * f(8) ** 22 / (f(1) ** 33 * f(4) ** 11)
    )
    e32n21 = 64 * (
        143 * f(2) ** 160 / (f(1) ** 112 * f(4) ** 48)
        + 217184 * q() * f(2) ** 136 / (f(1) ** 104 * f(4) ** 32)
        + 31908096 * q(2) * f(2) ** 112 / (f(1) ** 96 * f(4) ** 16)
        + 1014054912 * q(3) * f(2) ** 88 / f(1) ** 88
        + 8168472576 * q(4) * f(4) ** 16 * f(2) ** 64 / f(1) ** 80
        + 14233370624 * q(5) * f(4) ** 32 * f(2) ** 40 / f(1) ** 72
        + 2399141888 * q(6) * f(4) ** 48 * f(2) ** 16 / f(1) ** 64
    )
    e32n29 = 256 * (
        311 * f(2) ** 154 / (f(1) ** 110 * f(4) ** 44)
        + 223520 * q() * f(2) ** 130 / (f(1) ** 102 * f(4) ** 28)
        + 21601536 * q(2) * f(2) ** 106 / (f(1) ** 94 * f(4) ** 12)
        + 486064128 * q(3) * f(4) ** 4 * f(2) ** 82 / f(1) ** 86
        + 2747334656 * q(4) * f(4) ** 20 * f(2) ** 58 / f(1) ** 78
        + 3021996032 * q(5) * f(4) ** 36 * f(2) ** 34 / f(1) ** 70
        + 184549376 * q(6) * f(4) ** 52 * f(2) ** 10 / f(1) ** 62
    )
    even, odd = (Dissect(2, 0),), (Dissect(2, 1),)
    return [
        IdentityEntry("e-2n", tail(2, 0), f(4) ** 6 / (f(1) ** 4 * f(8) ** 2),
                      provenance="R8(2n)"),
        IdentityEntry("e-2n1", tail(2, 1), 2 * f(2) ** 2 * f(8) ** 2 / f(1) ** 4,
                      provenance="R8(2n+1)", scalar=2),
        IdentityEntry("e-4n1", tail(4, 1), 2 * f(2) ** 14 / (f(1) ** 12 * f(4) ** 2),
                      provenance="R8(4n+1)", parent="e-2n1", chain=even, scalar=2),
        IdentityEntry("e-4n3", tail(4, 3), 8 * f(2) ** 2 * f(4) ** 6 / f(1) ** 8,
                      provenance="R8(4n+3)", parent="e-2n1", chain=odd, scalar=8),
        IdentityEntry(
            "e-8n1", tail(8, 1),
            2 * (f(2) ** 40 / (f(1) ** 28 * f(4) ** 12) + 48 * q() * f(4) ** 4 * f(2) ** 16 / f(1) ** 20),
            provenance="R8(8n+1)", parent="e-4n1", chain=even, scalar=2,
        ),
        IdentityEntry(
            "e-8n3", tail(8, 3),
            8 * (f(2) ** 34 / (f(1) ** 26 * f(4) ** 8) + 16 * q() * f(4) ** 8 * f(2) ** 10 / f(1) ** 18),
            provenance="R8(8n+3)", parent="e-4n3", chain=even, scalar=8,
        ),
        IdentityEntry(
            "e-8n5", tail(8, 5),
            8 * (3 * f(2) ** 28 / (f(1) ** 24 * f(4) ** 4) + 16 * q() * f(4) ** 12 * f(2) ** 4 / f(1) ** 16),
            provenance="R8(8n+5)", parent="e-4n1", chain=odd, scalar=8,
        ),
        IdentityEntry("e-8n7", tail(8, 7), 64 * f(2) ** 22 / f(1) ** 22,
                      provenance="R8(8n+7)", parent="e-4n3", chain=odd, scalar=64),
        IdentityEntry(
            "e-16n5", tail(16, 5),
            8 * (3 * f(2) ** 80 / (f(1) ** 56 * f(4) ** 24)
                 + 976 * q() * f(2) ** 56 / (f(1) ** 48 * f(4) ** 8)
                 + 15616 * q(2) * f(4) ** 8 * f(2) ** 32 / f(1) ** 40
                 + 12288 * q(3) * f(4) ** 24 * f(2) ** 8 / f(1) ** 32),
            provenance="R8(16n+5)", parent="e-8n5", chain=even, scalar=8,
        ),
        IdentityEntry(
            "e-16n9", tail(16, 9),
            8 * (19 * f(2) ** 74 / (f(1) ** 54 * f(4) ** 20)
                 + 2480 * q() * f(2) ** 50 / (f(1) ** 46 * f(4) ** 4)
                 + 20736 * q(2) * f(4) ** 12 * f(2) ** 26 / f(1) ** 38
                 + 4096 * q(3) * f(4) ** 28 * f(2) ** 2 / f(1) ** 30),
            provenance="R8(16n+9)", parent="e-8n1", chain=odd, scalar=8,
        ),
        IdentityEntry("e-16n11", tail(16, 11), e16n11, provenance="R8(16n+11)",
                      parent="e-8n3", chain=odd, scalar=16),
        IdentityEntry(
            "e-16n13", tail(16, 13),
            64 * (11 * f(2) ** 68 / (f(1) ** 52 * f(4) ** 16)
                  + 672 * q() * f(2) ** 44 / f(1) ** 44
                  + 2816 * q(2) * f(4) ** 16 * f(2) ** 20 / f(1) ** 36),
            provenance="R8(16n+13)", parent="e-8n5", chain=odd, scalar=64,
        ),
        IdentityEntry("e-16n15", tail(16, 15), e16n15, provenance="R8(16n+15)",
                      parent="e-8n7", chain=odd, scalar=128),
        IdentityEntry("e-32n21", tail(32, 21), e32n21, provenance="R8(32n+21)",
                      parent="e-16n5", chain=odd, scalar=64),
        IdentityEntry("e-32n29", tail(32, 29), e32n29, provenance="R8(32n+29)",
                      parent="e-16n13", chain=odd, scalar=256),
    ]


def _mod_eight_forms() -> List[IdentityEntry]:
    magnified = DissectExpr(rast(6), (Dissect(18, 2), Magnify(8), Shift(1)))
    return [
        IdentityEntry("e4-18n2-magnified", magnified, 4 * q() * f(8) ** 3, modulus=8,
                      provenance="q^8 substitution of R6(18n+2) mod 8, times q"),
        IdentityEntry("delta-mod8", 4 * q() * f(8) ** 3, 4 * q() * f(1) ** 24, modulus=8,
                      provenance="f_1^8 = f_8 mod 2"),
        IdentityEntry("delta-odd-squares-mod2", q() * f(1) ** 24,
                      _series_source("sum q^(2n+1)^2", S.odd_square_sum), modulus=2,
                      provenance="Jacobi cube identity mod 2"),
        IdentityEntry("eta4-6-mod8", 4 * q() * f(4) ** 6, 4 * q() * f(8) ** 3, modulus=8,
                      provenance="f_4^2 = f_8 mod 2"),
    ]


@lru_cache(maxsize=1)
def catalog() -> Tuple[IdentityEntry, ...]:
    """Every catalog entry, in a stable order."""
    entries = (_generating_functions() + _dissections() + _ell_three_and_six()
               + _ell_eight() + _mod_eight_forms())
    seen = set()
    for entry in entries:
        if entry.id in seen:
            raise ValueError(f"duplicate catalog id {entry.id}")
        seen.add(entry.id)
    for entry in entries:
        if entry.parent is not None and entry.parent not in seen:
            raise ValueError(f"{entry.id}: unknown parent {entry.parent}")
    return tuple(entries)


def catalog_index() -> Dict[str, IdentityEntry]:
    return {entry.id: entry for entry in catalog()}


def lookup(entry_id: str) -> IdentityEntry:
    """
    Find an entry by id.

    Raises:
        UnknownEntryError: If the id is not in the catalog
    """
    try:
        return catalog_index()[entry_id]
    except KeyError:
        raise UnknownEntryError(entry_id) from None


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def _first_difference(a: Series, b: Series) -> Optional[Tuple[int, int]]:
    diff = S.sub(a, b)
    hits = np.flatnonzero(diff.coeffs != 0)
    if not len(hits):
        return None
    n = int(hits[0])
    return n, diff[n]


def _evaluate_side(entry: IdentityEntry, side: Side, trunc: int,
                   modulus: Optional[int]) -> Series:
    try:
        return evaluate_any(side, trunc, modulus)
    except EvaluationError as exc:
        raise EvaluationError(f"{entry.id}: {exc}") from exc


def _check_trunc(trunc: int) -> None:
    if trunc < MIN_IDENTITY_TRUNC:
        raise ValueError(f"identity checks need trunc >= {MIN_IDENTITY_TRUNC}, got {trunc}")


def _report(entry_id: str, trunc: int, diff: Optional[Tuple[int, int]], start: float,
            note: str, finding: bool = False) -> CheckReport:
    return CheckReport(
        id=entry_id,
        status="pass" if diff is None else "fail",
        checked=trunc,
        counterexample=diff,
        seconds=time.perf_counter() - start,
        note=note,
        finding=finding,
    )


def verify_identity(entry: IdentityEntry, trunc: Optional[int] = None) -> CheckReport:
    """
    Expand both sides to `trunc` and compare them.

    Args:
        entry: Catalog entry
        trunc: Truncation; the entry's default when omitted

    Returns:
        A report whose counterexample is (exponent, lhs - rhs) at the first
        mismatch, the difference reduced mod M for congruences

    Raises:
        ValueError: If trunc is below the minimum
        EvaluationError: If a side cannot be evaluated, prefixed with the entry id
    """
    trunc = entry.default_trunc if trunc is None else trunc
    _check_trunc(trunc)
    start = time.perf_counter()
    lhs = _evaluate_side(entry, entry.lhs, trunc, entry.modulus)
    rhs = _evaluate_side(entry, entry.rhs, trunc, entry.modulus)
    diff = _first_difference(lhs, rhs)
    note = entry.mode
    if diff is not None:
        logger.warning("%s differs at q^%d (lhs - rhs = %d)", entry.id, diff[0], diff[1])
        if entry.finding:
            note += "; finding: printed display disagrees with the counting series"
    else:
        logger.info("%s holds to q^%d (%s)", entry.id, trunc, entry.mode)
    return _report(entry.id, trunc, diff, start, note, entry.finding)


def verify_all(trunc: Optional[int] = None,
               entries: Optional[Iterable[IdentityEntry]] = None) -> List[CheckReport]:
    """Verify entries one after the other; all catalog entries by default."""
    return [verify_identity(entry, trunc) for entry in (entries or catalog())]


def check_chain(entry: IdentityEntry, trunc: Optional[int] = None) -> CheckReport:
    """
    Replay the derivation step: apply the chain steps to the parent's right
    side and compare with this entry's right side.

    Raises:
        ValueError: If the entry has no parent
    """
    if entry.parent is None:
        raise ValueError(f"{entry.id} has no parent display")
    trunc = entry.default_trunc if trunc is None else trunc
    _check_trunc(trunc)
    parent = lookup(entry.parent)
    modulus = entry.modulus
    start = time.perf_counter()
    try:
        base = evaluate_any(parent.rhs, base_trunc(entry.chain, trunc), modulus)
    except EvaluationError as exc:
        raise EvaluationError(f"{entry.id}: {exc}") from exc
    derived = apply_steps(base, entry.chain)
    derived = derived.truncate(trunc) if derived.trunc > trunc else derived
    rhs = _evaluate_side(entry, entry.rhs, trunc, modulus)
    diff = _first_difference(derived, rhs)
    return _report(f"chain {entry.parent} -> {entry.id}", trunc, diff, start, entry.mode)


def check_scalar(entry: IdentityEntry, trunc: Optional[int] = None) -> CheckReport:
    """
    Check that every coefficient of the left side is divisible by the
    entry's scalar witness.

    Raises:
        ValueError: If the entry has no scalar witness
    """
    if entry.scalar is None:
        raise ValueError(f"{entry.id} has no scalar witness")
    trunc = entry.default_trunc if trunc is None else trunc
    _check_trunc(trunc)
    start = time.perf_counter()
    lhs = _evaluate_side(entry, entry.lhs, trunc, entry.scalar)
    diff = _first_difference(lhs, S.zero(trunc, entry.scalar))
    return _report(f"{entry.id} divisible by {entry.scalar}", trunc, diff, start,
                   f"mod {entry.scalar}")
