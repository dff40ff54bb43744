"""
Data models shared by the congruence suite, the identity catalog and the CLI.

This module defines the records that flow between the engine and its front end:
- Overpartition counting requests
- Progression claims ("coefficient at An+B vanishes mod M")
- Check reports (the unit of output)
- Run configuration assembled from command-line flags

Records are frozen dataclasses and validate themselves in __post_init__.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Tuple

from .config import TRUNC_CEILING

CLAIM_KINDS = ("theorem", "conjecture", "cited", "empirical")
OUTPUT_FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class OverpartitionSpec:
    """
    An overpartition count request.

    Attributes:
        ell: Regularity parameter; non-overlined parts must not be divisible by ell
        n: Weight being partitioned
    """
    ell: int
    n: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")


@dataclass(frozen=True)
class ProgressionClaim:
    """
    The assertion R*_ell(A n + B) = 0 (mod M) for all n >= 0.

    B is stored reduced modulo A; the quotient folded out of a raw offset is
    kept in `start`, so the claim covers A (n + start) + B for n >= 0.

    Attributes:
        ell: Regularity parameter
        A: Step of the progression
        B: Offset, 0 <= B < A
        M: Modulus
        source_note: Theorem id and the parameter binding that produced the claim
        kind: theorem, conjecture, cited or empirical
        start: Number of leading terms skipped after normalising B
        finding: The statement is known to disagree with the counts; a
            failure is reported as a finding, not a failed check
    """
    ell: int
    A: int
    B: int
    M: int
    source_note: str = ""
    kind: str = "theorem"
    start: int = 0
    finding: bool = False

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")
        if self.A < 1:
            raise ValueError(f"A must be positive, got {self.A}")
        if not 0 <= self.B < self.A:
            raise ValueError(f"B must satisfy 0 <= B < A, got B={self.B}, A={self.A}")
        if self.M < 2:
            raise ValueError(f"M must be at least 2, got {self.M}")
        if self.kind not in CLAIM_KINDS:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        if self.start < 0:
            raise ValueError(f"start must be non-negative, got {self.start}")

    @classmethod
    def normalized(cls, ell: int, A: int, B: int, M: int, source_note: str = "",
                   kind: str = "theorem", finding: bool = False) -> "ProgressionClaim":
        """
        Build a claim from a raw offset B that may exceed A.

        Example:
            >>> ProgressionClaim.normalized(6, 54, 92, 8).B
            38
        """
        if B < 0:
            raise ValueError(f"B must be non-negative, got {B}")
        start, B = divmod(B, A)
        return cls(ell, A, B, M, source_note, kind, start, finding)

    @property
    def id(self) -> str:
        return f"R{self.ell}({self.A}n+{self.B})~0 mod {self.M}"

    def position(self, n: int) -> int:
        """Exponent of the n-th coefficient covered by the claim."""
        return self.A * (n + self.start) + self.B

    def positions(self, n_max: int) -> Iterator[Tuple[int, int]]:
        """(n, exponent) pairs for n = 0 .. n_max."""
        for n in range(n_max + 1):
            yield n, self.position(n)

    def required_trunc(self, n_max: int) -> int:
        return self.position(n_max)


@dataclass(frozen=True)
class CheckReport:
    """
    Verdict for one claim or one catalog identity.

    Attributes:
        id: Claim or identity id
        status: "pass" or "fail"
        checked: n_max for claims, truncation for identities
        counterexample: (n, value) of the first failure, value reduced mod M
            for claims; (exponent, lhs - rhs) for identities
        seconds: Wall time spent on the check
        claim: The claim checked, if any
        note: Free-form remark (findings, epistemic status)
        finding: A failure documents a known disagreement and does not
            count as a failed check
    """
    id: str
    status: str
    checked: int
    counterexample: Optional[Tuple[int, int]] = None
    seconds: float = 0.0
    claim: Optional[ProgressionClaim] = None
    note: str = ""
    finding: bool = False

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"status must be 'pass' or 'fail', got {self.status!r}")
        if self.status == "fail" and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")
        if self.status == "pass" and self.counterexample is not None:
            raise ValueError("a passing report cannot carry a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        """A failure that is not a documented finding."""
        return not self.passed and not self.finding

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready view of the report.

        Claim reports carry {id, ell, A, B, M, n_max, status, counterexample?,
        seconds}; identity reports carry trunc in place of the progression.
        """
        out: Dict[str, Any] = {"id": self.id}
        if self.claim is not None:
            out.update({
                "ell": self.claim.ell,
                "A": self.claim.A,
                "B": self.claim.B,
                "M": self.claim.M,
                "n_max": self.checked,
                "kind": self.claim.kind,
            })
        else:
            out["trunc"] = self.checked
        out["status"] = self.status
        if self.counterexample is not None:
            out["counterexample"] = {"n": self.counterexample[0], "value": self.counterexample[1]}
        out["seconds"] = round(self.seconds, 4)
        if self.note:
            out["note"] = self.note
        if self.finding:
            out["finding"] = True
        return out


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one CLI invocation.

    Attributes:
        command: Subcommand name
        trunc_ceiling: Largest truncation a single series may use
        n_max: Override for the tiered n_max defaults
        trunc: Truncation for identities and dumps
        modulus: Coefficient modulus for dumps
        output_format: json, csv or text
        cache_dir: Coefficient cache directory, None disables caching
        jobs: Worker processes
        allow_large: Acknowledges a ceiling above the default
    """
    command: str
    trunc_ceiling: int = TRUNC_CEILING
    n_max: Optional[int] = None
    trunc: Optional[int] = None
    modulus: Optional[int] = None
    output_format: str = "text"
    cache_dir: Optional[Path] = None
    jobs: int = 1
    allow_large: bool = False
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive, got {self.jobs}")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {self.n_max}")
        if self.trunc_ceiling > TRUNC_CEILING and not self.allow_large:
            raise ValueError(
                f"ceiling {self.trunc_ceiling} exceeds {TRUNC_CEILING}; pass --allow-large"
            )
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {self.modulus}")
