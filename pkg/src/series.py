"""
Exact truncated power series in q.

A Series holds the coefficients of q^0 .. q^trunc either as exact integers
(modulus None) or as residues modulo an integer m >= 2. Small moduli are kept
in int64 numpy arrays; exact coefficients and large moduli use numpy object
arrays of Python ints.

Design decisions:
- Series values are immutable (frozen dataclass, read-only coefficient array)
- Products with a sparse operand (pentagonal and theta series) are computed
  as a sum of shifted copies of the dense operand, so every product with a
  classical series costs O(nnz * trunc) vectorised work
- Division by a series with unit constant term uses a divide-and-conquer
  triangular solve, which keeps division by f_1 at O(sqrt(N) * N log N)
- trunc is inclusive and binary operations take the minimum truncation
- rast_series keeps the longest table per (ell, modulus) and cuts shorter
  requests from it
"""

import logging
import math
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import WORD_MODULUS_LIMIT

logger = logging.getLogger(__name__)

Term = Tuple[int, int]

# Below this many exponents the triangular solve runs as a plain loop
_LEAF_SIZE = 48
# A block update switches to np.convolve once the divisor fills a quarter of the window
_DENSE_BLOCK_RATIO = 4


class ModulusMismatchError(ValueError):
    """Raised when two Series with different coefficient rings are combined."""
    pass


class NonUnitError(ValueError):
    """Raised when a series whose constant term is not a unit is inverted."""
    pass


def _word_mode(modulus: Optional[int]) -> bool:
    return modulus is not None and modulus <= WORD_MODULUS_LIMIT


def _normalize(values: np.ndarray, modulus: Optional[int]) -> np.ndarray:
    """Convert raw coefficients to the canonical storage for `modulus`."""
    if modulus is None:
        if values.dtype != object:
            values = values.astype(object)
        return values
    if _word_mode(modulus):
        if values.dtype == object:
            return (values % modulus).astype(np.int64)
        return values.astype(np.int64) % modulus
    if values.dtype != object:
        values = values.astype(object)
    return values % modulus


def _zeros(length: int, modulus: Optional[int]) -> np.ndarray:
    return np.zeros(length, dtype=np.int64 if _word_mode(modulus) else object)


@dataclass(frozen=True, eq=False)
class Series:
    """
    A truncated formal power series sum_{n <= trunc} c_n q^n.

    Attributes:
        trunc: Highest retained exponent (inclusive)
        modulus: None for integer coefficients, otherwise m >= 2 and every
            coefficient lies in [0, m)
        coeffs: numpy array of length trunc + 1, read-only

    Build instances with `from_coefficients` or the constructors in this
    module; the raw constructor expects canonical storage.
    """
    trunc: int
    modulus: Optional[int]
    coeffs: np.ndarray

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError(f"trunc must be non-negative, got {self.trunc}")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {self.modulus}")
        if len(self.coeffs) != self.trunc + 1:
            raise ValueError(
                f"expected {self.trunc + 1} coefficients, got {len(self.coeffs)}"
            )
        if self.modulus is not None and len(self.coeffs):
            if self.coeffs.min() < 0 or self.coeffs.max() >= self.modulus:
                raise ValueError(f"coefficients must lie in [0, {self.modulus})")
        self.coeffs.flags.writeable = False

    @classmethod
    def from_coefficients(
        cls,
        values: Iterable[int],
        modulus: Optional[int] = None,
        trunc: Optional[int] = None
    ) -> "Series":
        """
        Build a series from a coefficient sequence.

        Args:
            values: Coefficients of q^0, q^1, ...
            modulus: Optional coefficient modulus
            trunc: Truncation; defaults to len(values) - 1. Missing
                coefficients are zero, extra ones are dropped.

        Example:
            >>> Series.from_coefficients([1, -3, 0, 5], modulus=4).to_list()
            [1, 1, 0, 1]
        """
        items = [int(v) for v in values]
        if trunc is None:
            trunc = max(len(items) - 1, 0)
        items = (items + [0] * (trunc + 1))[:trunc + 1]
        return cls(trunc, modulus, _normalize(np.array(items, dtype=object), modulus))

    def __getitem__(self, n: int) -> int:
        """Coefficient of q^n (n must be within the truncation)."""
        if n < 0 or n > self.trunc:
            raise IndexError(f"exponent {n} outside 0..{self.trunc}")
        return int(self.coeffs[n])

    def to_list(self) -> List[int]:
        return [int(c) for c in self.coeffs]

    def nonzero_terms(self) -> List[Term]:
        """(exponent, coefficient) pairs of the nonzero coefficients."""
        return _terms(self.coeffs)

    def truncate(self, trunc: int) -> "Series":
        if trunc > self.trunc:
            raise ValueError(f"cannot raise truncation from {self.trunc} to {trunc}")
        return Series(trunc, self.modulus, self.coeffs[:trunc + 1].copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.trunc == other.trunc
            and self.modulus == other.modulus
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Series") -> "Series":
        return add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        return sub(self, other)

    def __neg__(self) -> "Series":
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        return NotImplemented

    def __pow__(self, e: int) -> "Series":
        return power(self, e)

    def __str__(self) -> str:
        shown = []
        for n, c in _terms(self.coeffs[:12]):
            shown.append(f"{c}" if n == 0 else f"{c}*q^{n}")
        body = " + ".join(shown) if shown else "0"
        more = " + ..." if self.trunc >= 12 else ""
        ring = "Z" if self.modulus is None else f"Z/{self.modulus}"
        return f"{body}{more} + O(q^{self.trunc + 1}) over {ring}"

    def __repr__(self) -> str:
        return f"Series(trunc={self.trunc}, modulus={self.modulus}, coeffs={self.to_list()[:8]}...)"


def _terms(values: np.ndarray) -> List[Term]:
    return [(int(i), int(values[i])) for i in np.flatnonzero(values)]


def _common(a: Series, b: Series) -> Tuple[int, Optional[int]]:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(
            f"cannot combine series over {a.modulus or 'Z'} and {b.modulus or 'Z'}"
        )
    return min(a.trunc, b.trunc), a.modulus


def _from_terms(terms: Iterable[Term], trunc: int, modulus: Optional[int]) -> Series:
    values = np.zeros(trunc + 1, dtype=object)
    for e, c in terms:
        if e <= trunc:
            values[e] += c
    return Series(trunc, modulus, _normalize(values, modulus))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def zero(trunc: int, modulus: Optional[int] = None) -> Series:
    return Series(trunc, modulus, _zeros(trunc + 1, modulus))


def constant(c: int, trunc: int, modulus: Optional[int] = None) -> Series:
    return _from_terms([(0, c)], trunc, modulus)


def one(trunc: int, modulus: Optional[int] = None) -> Series:
    return constant(1, trunc, modulus)


def monomial(e: int, c: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """c * q^e truncated (zero if e > trunc)."""
    if e < 0:
        raise ValueError(f"q-power exponent must be non-negative, got {e}")
    return _from_terms([(e, c)], trunc, modulus)


def pentagonal_terms(k: int, trunc: int) -> List[Term]:
    """
    Sparse terms of f_k = sum_{n in Z} (-1)^n q^{k n(3n-1)/2} up to trunc.

    Returns:
        Sorted (exponent, sign) pairs
    """
    if k < 1:
        raise ValueError(f"generator index must be positive, got {k}")
    terms = [(0, 1)]
    n = 1
    while k * n * (3 * n - 1) // 2 <= trunc:
        sign = -1 if n % 2 else 1
        terms.append((k * n * (3 * n - 1) // 2, sign))
        plus = k * n * (3 * n + 1) // 2
        if plus <= trunc:
            terms.append((plus, sign))
        n += 1
    terms.sort()
    return terms


def series_f(k: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """
    f_k = prod_{i >= 1} (1 - q^{ki}) from Euler's pentagonal number theorem.

    Example:
        >>> series_f(1, 8).to_list()
        [1, -1, -1, 0, 0, 1, 0, 1, 0]
    """
    return _from_terms(pentagonal_terms(k, trunc), trunc, modulus)


def naive_eta_product(k: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """f_k by multiplying out prod_{i <= trunc/k} (1 - q^{ki}) factor by factor."""
    values = np.zeros(trunc + 1, dtype=object)
    values[0] = 1
    step = k
    while step <= trunc:
        values[step:] = values[step:] - values[:trunc + 1 - step]
        step += k
    return Series(trunc, modulus, _normalize(values, modulus))


def theta_phi(k: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """phi(q^k) = 1 + 2 sum_{n >= 1} q^{k n^2}."""
    if k < 1:
        raise ValueError(f"theta index must be positive, got {k}")
    terms = [(0, 1)]
    n = 1
    while k * n * n <= trunc:
        terms.append((k * n * n, 2))
        n += 1
    return _from_terms(terms, trunc, modulus)


def theta_psi(k: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """psi(q^k) = sum_{n >= 0} q^{k n(n+1)/2}."""
    if k < 1:
        raise ValueError(f"theta index must be positive, got {k}")
    terms = []
    n = 0
    while k * n * (n + 1) // 2 <= trunc:
        terms.append((k * n * (n + 1) // 2, 1))
        n += 1
    return _from_terms(terms, trunc, modulus)


def jacobi_cube_sum(trunc: int, modulus: Optional[int] = None) -> Series:
    """sum_{n >= 0} (-1)^n (2n+1) q^{n(n+1)/2}, the triple-product form of f_1^3."""
    terms = []
    n = 0
    while n * (n + 1) // 2 <= trunc:
        terms.append((n * (n + 1) // 2, (-1) ** n * (2 * n + 1)))
        n += 1
    return _from_terms(terms, trunc, modulus)


def odd_square_sum(trunc: int, modulus: Optional[int] = None) -> Series:
    """sum_{n >= 0} q^{(2n+1)^2}."""
    terms = []
    n = 0
    while (2 * n + 1) ** 2 <= trunc:
        terms.append(((2 * n + 1) ** 2, 1))
        n += 1
    return _from_terms(terms, trunc, modulus)


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------

def add(a: Series, b: Series) -> Series:
    trunc, modulus = _common(a, b)
    return Series(trunc, modulus, _normalize(a.coeffs[:trunc + 1] + b.coeffs[:trunc + 1], modulus))


def sub(a: Series, b: Series) -> Series:
    trunc, modulus = _common(a, b)
    return Series(trunc, modulus, _normalize(a.coeffs[:trunc + 1] - b.coeffs[:trunc + 1], modulus))


def scale(a: Series, c: int) -> Series:
    """c * a for an integer c."""
    if _word_mode(a.modulus):
        c %= a.modulus
    return Series(a.trunc, a.modulus, _normalize(a.coeffs * c, a.modulus))


def _mul_sparse(terms: Sequence[Term], dense: np.ndarray, trunc: int,
                modulus: Optional[int]) -> np.ndarray:
    """sum over (e, c) of c * q^e * dense, truncated, not yet reduced."""
    out = np.zeros(trunc + 1, dtype=dense.dtype)
    word = _word_mode(modulus)
    for count, (e, c) in enumerate(terms):
        if e > trunc:
            break
        if c == 1:
            out[e:] += dense[:trunc + 1 - e]
        elif c == -1:
            out[e:] -= dense[:trunc + 1 - e]
        else:
            out[e:] += c * dense[:trunc + 1 - e]
        if word and count % 1024 == 1023:
            out %= modulus
    return out


def _mul_raw(x: np.ndarray, y: np.ndarray, trunc: int,
             modulus: Optional[int]) -> np.ndarray:
    nx = int(np.count_nonzero(x))
    ny = int(np.count_nonzero(y))
    if 4 * min(nx, ny) <= trunc + 1:
        if nx <= ny:
            return _mul_sparse(_terms(x), y, trunc, modulus)
        return _mul_sparse(_terms(y), x, trunc, modulus)
    return np.convolve(x, y)[:trunc + 1]


def mul(a: Series, b: Series) -> Series:
    """
    Cauchy product truncated at min(a.trunc, b.trunc).

    Raises:
        ModulusMismatchError: If the operands have different moduli
    """
    trunc, modulus = _common(a, b)
    raw = _mul_raw(a.coeffs[:trunc + 1], b.coeffs[:trunc + 1], trunc, modulus)
    return Series(trunc, modulus, _normalize(raw, modulus))


def _unit_inverse(c: int, modulus: Optional[int]) -> int:
    if modulus is None:
        if c in (1, -1):
            return c
        raise NonUnitError(f"constant term {c} is not a unit in Z")
    c %= modulus
    try:
        return pow(c, -1, modulus)
    except ValueError:
        raise NonUnitError(f"constant term {c} is not a unit modulo {modulus}") from None


def _solve(v: np.ndarray, terms: List[Term], dense: np.ndarray,
           lo: int, hi: int, modulus: Optional[int]) -> None:
    """
    In-place triangular solve of (1 + sum c q^e) * x = v on exponents [lo, hi).

    On entry v[lo:hi] already has the contributions of x[0:lo] subtracted;
    on exit v[lo:hi] holds x[lo:hi].
    """
    if hi - lo <= _LEAF_SIZE:
        seg = v[lo:hi].tolist()
        for i in range(len(seg)):
            acc = seg[i]
            for e, c in terms:
                if e > i:
                    break
                acc -= c * seg[i - e]
            if modulus is not None:
                acc %= modulus
            seg[i] = acc
        v[lo:hi] = seg
        return

    mid = (lo + hi) // 2
    _solve(v, terms, dense, lo, mid, modulus)

    span = hi - lo
    relevant = [t for t in terms if t[0] < span]
    if _DENSE_BLOCK_RATIO * len(relevant) > span:
        conv = np.convolve(v[lo:mid], dense[:span])
        v[mid:hi] -= conv[mid - lo:span]
    else:
        for e, c in relevant:
            start = max(mid, lo + e)
            stop = min(hi, mid + e)
            if start < stop:
                v[start:stop] -= c * v[start - e:stop - e]
    if modulus is not None:
        v[mid:hi] %= modulus

    _solve(v, terms, dense, mid, hi, modulus)


def _divide_raw(u: np.ndarray, a: np.ndarray, trunc: int,
                modulus: Optional[int]) -> np.ndarray:
    inv0 = _unit_inverse(int(a[0]), modulus)
    dense = _normalize(a[:trunc + 1] * inv0, modulus) if modulus is not None else a[:trunc + 1] * inv0
    dense = dense.copy()
    dense[0] = 0
    terms = _terms(dense)
    v = _normalize(u[:trunc + 1] * inv0, modulus).copy()
    _solve(v, terms, dense, 0, trunc + 1, modulus)
    return v


def divide(u: Series, a: Series) -> Series:
    """
    The series v with a * v = u up to the shared truncation.

    Raises:
        NonUnitError: If the constant term of `a` is not a unit
        ModulusMismatchError: If the operands have different moduli
    """
    trunc, modulus = _common(u, a)
    return Series(trunc, modulus, _normalize(_divide_raw(u.coeffs, a.coeffs, trunc, modulus), modulus))


def inverse(a: Series) -> Series:
    """
    Multiplicative inverse of a series with unit constant term.

    Raises:
        NonUnitError: Naming the constant term when it is not a unit

    Example:
        >>> inverse(Series.from_coefficients([1, -1, 0, 0])).to_list()
        [1, 1, 1, 1]
    """
    return divide(one(a.trunc, a.modulus), a)


def power(a: Series, e: int) -> Series:
    """
    a^e by repeated squaring; negative e inverts first.

    Raises:
        NonUnitError: If e < 0 and the constant term of `a` is not a unit
    """
    result = one(a.trunc, a.modulus)
    if e == 0:
        return result
    base = inverse(a) if e < 0 else a
    e = abs(e)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# ---------------------------------------------------------------------------
# Dissection and substitutions
# ---------------------------------------------------------------------------

def dissect(a: Series, m: int, r: int) -> Series:
    """
    sum_n c_{mn+r} q^n, the series of coefficients in the class r mod m.

    The result has truncation floor((a.trunc - r) / m).
    """
    if m < 1:
        raise ValueError(f"dissection modulus must be positive, got {m}")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} outside 0..{m - 1}")
    if r > a.trunc:
        raise ValueError(f"residue {r} exceeds truncation {a.trunc}")
    return Series((a.trunc - r) // m, a.modulus, a.coeffs[r::m].copy())


def magnify(a: Series, m: int) -> Series:
    """a(q^m), with truncation m * a.trunc."""
    if m < 1:
        raise ValueError(f"magnification must be positive, got {m}")
    trunc = m * a.trunc
    values = _zeros(trunc + 1, a.modulus)
    values[::m] = a.coeffs
    return Series(trunc, a.modulus, values)


def shift(a: Series, e: int) -> Series:
    """q^e * a, with truncation a.trunc + e."""
    if e < 0:
        raise ValueError(f"shift must be non-negative, got {e}")
    values = _zeros(a.trunc + e + 1, a.modulus)
    values[e:] = a.coeffs
    return Series(a.trunc + e, a.modulus, values)


def reduce_mod(a: Series, M: int) -> Series:
    """
    Map coefficients into Z/M.

    Raises:
        ValueError: If M < 2, or if `a` is modular and M does not divide its modulus
    """
    if M < 2:
        raise ValueError(f"modulus must be at least 2, got {M}")
    if a.modulus is not None and a.modulus % M:
        raise ValueError(f"{M} does not divide the series modulus {a.modulus}")
    return Series(a.trunc, M, _normalize(a.coeffs, M))


def alternate(a: Series) -> Series:
    """a(-q): coefficient n multiplied by (-1)^n."""
    values = a.coeffs.copy()
    values[1::2] = -values[1::2]
    return Series(a.trunc, a.modulus, _normalize(values, a.modulus))


# ---------------------------------------------------------------------------
# Powers of f_k and the generating function of the overpartition counts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def _f1_power_exact(e: int, trunc: int) -> Tuple[int, ...]:
    """
    Coefficients of f_1^e up to trunc for any integer e.

    Uses n b_n = sum_{j=1}^{n} ((e+1) j - n) a_j b_{n-j} with a = f_1, which
    only touches the sparse pentagonal terms of f_1.
    """
    terms = [t for t in pentagonal_terms(1, trunc) if t[0] > 0]
    b = [0] * (trunc + 1)
    b[0] = 1
    for n in range(1, trunc + 1):
        acc = 0
        for j, s in terms:
            if j > n:
                break
            acc += s * ((e + 1) * j - n) * b[n - j]
        b[n] = acc // n
    return tuple(b)


def eta_power(k: int, e: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """
    f_k^e for any integer exponent e.

    Example:
        >>> eta_power(1, 3, 6).to_list()
        [1, -3, 0, 5, 0, 0, -7]
    """
    if k < 1:
        raise ValueError(f"generator index must be positive, got {k}")
    base = _f1_power_exact(e, trunc // k)
    values = np.zeros(trunc + 1, dtype=object)
    values[::k] = np.array(base, dtype=object)
    logger.debug("built f_%d^%d to q^%d", k, e, trunc)
    return Series(trunc, modulus, _normalize(values, modulus))


def _two_power_exponent(modulus: Optional[int]) -> int:
    """j with modulus == 2**j, or 0 if modulus is not a power of two."""
    if modulus is None or modulus & (modulus - 1):
        return 0
    return modulus.bit_length() - 1


def _binomial_weights(step: int, j: int) -> List[int]:
    """
    C(step, k) 2^k mod 2^j for k = 0 .. min(step, j - 1).

    These expand phi^step = (1 + 2X)^step; the 2-adic valuation of the k-th
    weight is at least k, so terms with k >= j vanish mod 2^j.
    """
    modulus = 2 ** j
    return [math.comb(step, k) * 2 ** k % modulus for k in range(min(step, j - 1) + 1)]


# Longest table built so far per (ell, modulus); shorter requests are cut from it
_RAST_TABLES: "OrderedDict[Tuple[int, Optional[int]], Series]" = OrderedDict()
_RAST_TABLE_SLOTS = 16


def rast_series(ell: int, trunc: int, modulus: Optional[int] = None) -> Series:
    """
    Generating function sum R*_ell(n) q^n = f_2 f_ell / f_1^2.

    Tables are memoised per (ell, modulus). A request beyond the stored table
    rebuilds to at least twice its length, so a sequence of growing requests
    costs a bounded multiple of the last one.
    """
    if ell < 1:
        raise ValueError(f"ell must be positive, got {ell}")
    if trunc < 0:
        raise ValueError(f"truncation must be non-negative, got {trunc}")
    key = (ell, modulus)
    table = _RAST_TABLES.get(key)
    if table is None or table.trunc < trunc:
        target = trunc if table is None else max(trunc, 2 * table.trunc)
        table = _build_rast(ell, target, modulus)
        _RAST_TABLES[key] = table
    _RAST_TABLES.move_to_end(key)
    while len(_RAST_TABLES) > _RAST_TABLE_SLOTS:
        _RAST_TABLES.popitem(last=False)
    return table if table.trunc == trunc else table.truncate(trunc)


def clear_rast_tables() -> None:
    _RAST_TABLES.clear()


def _build_rast(ell: int, trunc: int, modulus: Optional[int]) -> Series:
    """
    For modulus 2^j this uses f_2 / f_1^2 = prod_{i >= 0} phi(q^{2^i})^{2^i}
    and keeps only the factors with i <= j - 2; the others are 1 mod 2^j.
    Each kept factor is applied as a polynomial in X = sum_{n >= 1} q^{2^i n^2}
    by Horner's rule. Every other ring divides f_ell once by phi(-q) = f_1^2 / f_2.
    """
    j = _two_power_exponent(modulus)
    if j and _word_mode(modulus):
        values = series_f(ell, trunc, modulus).coeffs.copy()
        for i in range(j - 1):
            step = 2 ** i
            if step > trunc:
                break
            squares = [(step * n * n, 1) for n in range(1, math.isqrt(trunc // step) + 1)]
            weights = _binomial_weights(step, j)
            acc = values * weights[-1] % modulus
            for weight in reversed(weights[:-1]):
                acc = (_mul_sparse(squares, acc, trunc, modulus) + weight * values) % modulus
            values = acc
        logger.debug("built R*_%d mod %d to q^%d via theta product", ell, modulus, trunc)
        return Series(trunc, modulus, values)

    result = divide(series_f(ell, trunc, modulus), alternate(theta_phi(1, trunc, modulus)))
    logger.debug("built R*_%d over %s to q^%d via division", ell, modulus or "Z", trunc)
    return result


def phi_tower(trunc: int, modulus: Optional[int] = None, levels: Optional[int] = None) -> Series:
    """
    prod_{0 <= i < levels} phi(q^{2^i})^{2^i}.

    With levels omitted every factor that reaches q^trunc is used, which gives
    1 / phi(-q) = f_2 / f_1^2 exactly.
    """
    if levels is None:
        levels = trunc.bit_length()
    if levels < 0:
        raise ValueError(f"levels must be non-negative, got {levels}")
    result = one(trunc, modulus)
    for i in range(levels):
        step = 2 ** i
        result = mul(result, power(theta_phi(step, trunc, modulus), step))
    return result
