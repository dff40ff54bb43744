"""
Symbolic q-series expressions and their evaluation to truncated Series.

Expressions are small immutable trees over the generators f_k, phi(q^k),
psi(q^k), powers of q and integer scalars. Python operators build trees, so
an eta quotient reads the way it is written by hand:

    >>> f(8) ** 5 / (f(2) ** 5 * f(16) ** 2)

A DissectExpr applies extraction, magnification, shifts, scalings and the
substitution q -> -q to an expression; it is how "the terms of the form
q^{mn+r}" are written down.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from . import series as S
from .series import NonUnitError, Series

logger = logging.getLogger(__name__)


class EvaluationError(ValueError):
    """Raised when an expression cannot be evaluated; names the sub-expression."""
    pass


class QExpr:
    """Base class of expression nodes."""

    def __add__(self, other):
        return Sum((self, lift(other)))

    def __radd__(self, other):
        return Sum((lift(other), self))

    def __sub__(self, other):
        return Sum((self, Product((IntScalar(-1), lift(other)))))

    def __rsub__(self, other):
        return Sum((lift(other), Product((IntScalar(-1), self))))

    def __neg__(self):
        return Product((IntScalar(-1), self))

    def __mul__(self, other):
        return Product((self, lift(other)))

    def __rmul__(self, other):
        return Product((lift(other), self))

    def __truediv__(self, other):
        return Product((self, IntPower(lift(other), -1)))

    def __rtruediv__(self, other):
        return Product((lift(other), IntPower(self, -1)))

    def __pow__(self, e: int):
        return IntPower(self, e)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True, repr=True)
class Generator(QExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"generator index must be positive, got {self.k}")


@dataclass(frozen=True, eq=True, repr=True)
class Phi(QExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"theta index must be positive, got {self.k}")


@dataclass(frozen=True, eq=True, repr=True)
class Psi(QExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"theta index must be positive, got {self.k}")


@dataclass(frozen=True, eq=True, repr=True)
class QPower(QExpr):
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError(f"q-power exponent must be non-negative, got {self.e}")


@dataclass(frozen=True, eq=True, repr=True)
class IntScalar(QExpr):
    c: int


@dataclass(frozen=True, eq=True, repr=True)
class Sum(QExpr):
    terms: Tuple[QExpr, ...]


@dataclass(frozen=True, eq=True, repr=True)
class Product(QExpr):
    factors: Tuple[QExpr, ...]


@dataclass(frozen=True, eq=True, repr=True)
class IntPower(QExpr):
    base: QExpr
    e: int


@dataclass(frozen=True, eq=True, repr=True)
class Source(QExpr):
    """
    A leaf backed by a series builder, e.g. the counting generating function.

    Attributes:
        label: Name used when rendering
        build: Callable (trunc, modulus) -> Series
    """
    label: str
    build: Callable[[int, Optional[int]], Series]


def lift(value: Union[QExpr, int]) -> QExpr:
    if isinstance(value, QExpr):
        return value
    if isinstance(value, int):
        return IntScalar(value)
    raise TypeError(f"cannot use {type(value).__name__} in a q-expression")


def f(k: int) -> Generator:
    return Generator(k)


def phi(k: int = 1) -> Phi:
    return Phi(k)


def psi(k: int = 1) -> Psi:
    return Psi(k)


def q(e: int = 1) -> QPower:
    return QPower(e)


def rast(ell: int) -> Source:
    """Leaf for sum R*_ell(n) q^n built by the series engine."""
    return Source(f"R{ell}", lambda trunc, modulus: S.rast_series(ell, trunc, modulus))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render(expr: QExpr) -> str:
    """
    Text form in the dump grammar; parsing it back gives an equal tree up to
    how products and sums are grouped.

    Example:
        >>> render(f(2) * f(3) / f(1) ** 2)
        'f2*f3*(f1^2)^-1'
    """
    if isinstance(expr, Generator):
        return f"f{expr.k}"
    if isinstance(expr, Phi):
        return f"phi{expr.k}"
    if isinstance(expr, Psi):
        return f"psi{expr.k}"
    if isinstance(expr, QPower):
        return f"q^{expr.e}"
    if isinstance(expr, IntScalar):
        return str(expr.c) if expr.c >= 0 else f"({expr.c})"
    if isinstance(expr, Source):
        return expr.label
    if isinstance(expr, Sum):
        return "(" + "+".join(render(t) for t in expr.terms) + ")"
    if isinstance(expr, Product):
        return "*".join(render(x) for x in expr.factors)
    if isinstance(expr, IntPower):
        return f"{_render_factor(expr.base)}^{expr.e}"
    raise TypeError(f"unknown expression node {type(expr).__name__}")


def _render_factor(expr: QExpr) -> str:
    text = render(expr)
    if isinstance(expr, (Product, IntPower)):
        return f"({text})"
    return text


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _collect(expr: QExpr, e: int, gens: Dict[int, int], others: List[Tuple[QExpr, int]]) -> None:
    """Flatten nested products and powers into generator exponents plus other factors."""
    if isinstance(expr, Product):
        for factor in expr.factors:
            _collect(factor, e, gens, others)
    elif isinstance(expr, IntPower):
        _collect(expr.base, e * expr.e, gens, others)
    elif isinstance(expr, Generator):
        gens[expr.k] = gens.get(expr.k, 0) + e
    else:
        others.append((expr, e))


def eta_quotient(exponents: Dict[int, int], trunc: int, modulus: Optional[int] = None) -> Series:
    """prod_k f_k^{e_k}, each factor from the pentagonal recurrence."""
    result = S.one(trunc, modulus)
    for k in sorted(exponents):
        if exponents[k]:
            result = S.mul(result, S.eta_power(k, exponents[k], trunc, modulus))
    return result


def _leaf(expr: QExpr, trunc: int, modulus: Optional[int]) -> Series:
    if isinstance(expr, Phi):
        return S.theta_phi(expr.k, trunc, modulus)
    if isinstance(expr, Psi):
        return S.theta_psi(expr.k, trunc, modulus)
    if isinstance(expr, QPower):
        return S.monomial(expr.e, 1, trunc, modulus)
    if isinstance(expr, IntScalar):
        return S.constant(expr.c, trunc, modulus)
    if isinstance(expr, Source):
        built = expr.build(trunc, modulus)
        return built.truncate(trunc) if built.trunc > trunc else built
    if isinstance(expr, Sum):
        total = S.zero(trunc, modulus)
        for term in expr.terms:
            total = S.add(total, evaluate(term, trunc, modulus))
        return total
    return evaluate(expr, trunc, modulus)


def evaluate(expr: QExpr, trunc: int, modulus: Optional[int] = None) -> Series:
    """
    Evaluate an expression to a Series truncated at `trunc`.

    Generator powers inside a product are merged into one eta quotient before
    anything is expanded.

    Raises:
        EvaluationError: If a negative power is applied to a sub-expression
            whose constant term is not a unit
    """
    if isinstance(expr, Generator):
        return S.series_f(expr.k, trunc, modulus)
    if not isinstance(expr, (Product, IntPower)):
        return _leaf(expr, trunc, modulus)

    gens: Dict[int, int] = {}
    others: List[Tuple[QExpr, int]] = []
    _collect(expr, 1, gens, others)

    if len(gens) == 1 and not others:
        ((k, e),) = gens.items()
        return S.eta_power(k, e, trunc, modulus)
    if any(e < 0 for e in gens.values()) or len(gens) > 1:
        result = eta_quotient(gens, trunc, modulus)
    else:
        result = S.one(trunc, modulus)
        for k, e in gens.items():
            for _ in range(e):
                result = S.mul(result, S.series_f(k, trunc, modulus))

    for node, e in others:
        value = _leaf(node, trunc, modulus)
        try:
            if e < 0:
                value = S.power(S.inverse(value), -e) if e != -1 else S.inverse(value)
            elif e != 1:
                value = S.power(value, e)
        except NonUnitError as exc:
            raise EvaluationError(f"cannot invert {render(node)}: {exc}") from exc
        result = S.mul(result, value)
    return result


# ---------------------------------------------------------------------------
# Dissection pipelines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dissect:
    m: int
    r: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.r < self.m:
            raise ValueError(f"bad dissection ({self.m}, {self.r})")


@dataclass(frozen=True)
class Magnify:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"magnification must be positive, got {self.m}")


@dataclass(frozen=True)
class Shift:
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError(f"shift must be non-negative, got {self.e}")


@dataclass(frozen=True)
class Scale:
    c: int


@dataclass(frozen=True)
class Alternate:
    pass


Step = Union[Dissect, Magnify, Shift, Scale, Alternate]


def base_trunc(steps: Tuple[Step, ...], trunc: int) -> int:
    """Truncation the base must be evaluated at so the steps yield `trunc`."""
    need = trunc
    for step in reversed(steps):
        if isinstance(step, Dissect):
            need = step.m * need + step.r
        elif isinstance(step, Magnify):
            need = -(-need // step.m)
        elif isinstance(step, Shift):
            need = max(need - step.e, 0)
    return need


def apply_steps(value: Series, steps: Tuple[Step, ...]) -> Series:
    """Apply the steps left to right."""
    for step in steps:
        if isinstance(step, Dissect):
            value = S.dissect(value, step.m, step.r)
        elif isinstance(step, Magnify):
            value = S.magnify(value, step.m)
        elif isinstance(step, Shift):
            value = S.shift(value, step.e)
        elif isinstance(step, Scale):
            value = S.scale(value, step.c)
        elif isinstance(step, Alternate):
            value = S.alternate(value)
        else:
            raise TypeError(f"unknown step {step!r}")
    return value


@dataclass(frozen=True)
class DissectExpr:
    """
    An expression followed by a pipeline of series steps.

    Attributes:
        base: Expression evaluated first
        steps: Steps applied left to right
    """
    base: QExpr
    steps: Tuple[Step, ...] = ()

    def then(self, *steps: Step) -> "DissectExpr":
        return DissectExpr(self.base, self.steps + tuple(steps))

    def __str__(self) -> str:
        parts = [render(self.base)]
        for step in self.steps:
            parts.append(repr(step))
        return " | ".join(parts)


def extract(expr: Union[QExpr, DissectExpr], m: int, r: int) -> DissectExpr:
    """The terms of the form q^{mn+r}, re-indexed by n."""
    if isinstance(expr, DissectExpr):
        return expr.then(Dissect(m, r))
    return DissectExpr(expr, (Dissect(m, r),))


def evaluate_any(expr: Union[QExpr, DissectExpr], trunc: int,
                 modulus: Optional[int] = None) -> Series:
    """Evaluate either an expression or a dissection pipeline to exactly `trunc`."""
    if isinstance(expr, DissectExpr):
        raw = evaluate(expr.base, base_trunc(expr.steps, trunc), modulus)
        value = apply_steps(raw, expr.steps)
    else:
        value = evaluate(expr, trunc, modulus)
    if value.trunc < trunc:
        raise EvaluationError(f"{expr} only reaches q^{value.trunc}, wanted q^{trunc}")
    return value.truncate(trunc) if value.trunc > trunc else value
