"""Exact arithmetic building blocks.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`
(always reduced, positive denominator).  On top of those this module provides

* memoized Stirling tables of both kinds,
* binomial coefficients that vanish outside the triangle,
* :class:`IntPolynomial`, a dense integer polynomial in one variable ``q``,
* :class:`BivariateSeries`, a truncated power series in ``x`` and ``y`` with
  rational Taylor coefficients.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from ..exceptions import PreconditionError

logger = logging.getLogger(__name__)

Ratio = Fraction
Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
#  Stirling numbers
# ---------------------------------------------------------------------------

class StirlingTable:
    """Triangular Stirling table that grows on demand.

    ``kind`` is ``"second"`` for S(n, m) or ``"first_signed"`` for s(n, m).
    Rows are stored as tuples and replaced wholesale on growth, so readers
    never observe a half-built row.
    """

    KINDS = ("second", "first_signed")

    def __init__(self, kind: str, max_n: int = 32):
        if kind not in self.KINDS:
            raise ValueError(f"unknown Stirling kind {kind!r}")
        self.kind = kind
        self._rows: tuple[tuple[int, ...], ...] = ((1,),)
        self._lock = threading.Lock()
        self._grow(max_n)

    @property
    def max_n(self) -> int:
        return len(self._rows) - 1

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = list(self._rows)
            if len(rows) > n:
                return
            second = self.kind == "second"
            while len(rows) <= n:
                r = len(rows)
                prev = rows[-1]
                row = [0] * (r + 1)
                for m in range(1, r + 1):
                    left = prev[m - 1]
                    right = prev[m] if m < r else 0
                    row[m] = m * right + left if second else left - (r - 1) * right
                rows.append(tuple(row))
            self._rows = tuple(rows)
            logger.debug("stirling %s table grown to n=%d", self.kind, n)

    def __call__(self, n: int, m: int) -> int:
        if n < 0 or m < 0 or m > n:
            return 0
        if n > self.max_n:
            self._grow(max(n, 2 * self.max_n))
        return self._rows[n][m]

    def row(self, n: int) -> tuple[int, ...]:
        """Entries m = 0..n of row *n*."""
        if n < 0:
            return ()
        if n > self.max_n:
            self._grow(max(n, 2 * self.max_n))
        return self._rows[n]


_STIRLING2 = StirlingTable("second")
_STIRLING1 = StirlingTable("first_signed")


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind, 0 outside the triangle."""
    return _STIRLING2(n, m)


def stirling1_signed(n: int, m: int) -> int:
    """Signed Stirling number of the first kind, 0 outside the triangle."""
    return _STIRLING1(n, m)


def binomial(n: int, m: int) -> int:
    if n < 0 or m < 0 or m > n:
        return 0
    return math.comb(n, m)


def factorial(n: int) -> int:
    return math.factorial(n)


def bell_numbers(count: int) -> list[int]:
    """First *count* Bell numbers via the Bell triangle (no Stirling numbers)."""
    if count <= 0:
        return []
    bells = [1]
    row = [1]
    while len(bells) < count:
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
        bells.append(row[0])
    return bells


# ---------------------------------------------------------------------------
#  Dense integer polynomials
# ---------------------------------------------------------------------------

def _trim(coefficients: Iterable[int]) -> tuple[int, ...]:
    coeffs = list(coefficients)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (0,)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in ``q`` with integer coefficients, index = degree."""

    coefficients: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(int(c) for c in self.coefficients))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def q(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def coefficient(self, d: int) -> int:
        if 0 <= d < len(self.coefficients):
            return self.coefficients[d]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(self.coefficient(d) + other.coefficient(d) for d in range(size))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coefficients)
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, value: Number) -> Number:
        """Horner evaluation; exact for ``int`` and ``Fraction`` arguments."""
        acc: Number = 0
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(d * c for d, c in enumerate(self.coefficients) if d > 0)

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                power = "q" if d == 1 else f"q^{d}"
                body = power if mag == 1 else f"{mag}{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def falling_factorial_poly(l: int) -> IntPolynomial:
    """(q)_l = q(q-1)...(q-l+1); the empty product for l = 0."""
    if l < 0:
        raise PreconditionError(f"falling factorial length must be >= 0, got {l}")
    poly = IntPolynomial.constant(1)
    for i in range(l):
        poly = poly * IntPolynomial((-i, 1))
    return poly


# ---------------------------------------------------------------------------
#  Truncated bivariate power series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BivariateSeries:
    """Σ c[a][b] x^a y^b for 0 ≤ a ≤ order_x, 0 ≤ b ≤ order_y.

    Coefficients are raw Taylor coefficients; EGF values are obtained with
    :meth:`egf_coefficient`.
    """

    order_x: int
    order_y: int
    coefficients: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.order_x < 0 or self.order_y < 0:
            raise PreconditionError("truncation orders must be >= 0")
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.coefficients)
        if len(rows) != self.order_x + 1 or any(len(row) != self.order_y + 1 for row in rows):
            raise PreconditionError(
                f"coefficient grid must be {self.order_x + 1}x{self.order_y + 1}"
            )
        object.__setattr__(self, "coefficients", rows)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_function(cls, order_x: int, order_y: int,
                      fn: Callable[[int, int], Number]) -> "BivariateSeries":
        return cls(order_x, order_y, tuple(
            tuple(Fraction(fn(a, b)) for b in range(order_y + 1)) for a in range(order_x + 1)
        ))

    @classmethod
    def constant(cls, c: Number, order_x: int, order_y: int) -> "BivariateSeries":
        return cls.from_function(order_x, order_y, lambda a, b: c if a == b == 0 else 0)

    @classmethod
    def exp_x(cls, order_x: int, order_y: int) -> "BivariateSeries":
        """e^x."""
        return cls.from_function(order_x, order_y,
                                 lambda a, b: Fraction(1, math.factorial(a)) if b == 0 else 0)

    @classmethod
    def exp_y(cls, order_x: int, order_y: int) -> "BivariateSeries":
        """e^y."""
        return cls.from_function(order_x, order_y,
                                 lambda a, b: Fraction(1, math.factorial(b)) if a == 0 else 0)

    @classmethod
    def exp_xy(cls, order_x: int, order_y: int) -> "BivariateSeries":
        """e^(x+y)."""
        return cls.from_function(
            order_x, order_y,
            lambda a, b: Fraction(1, math.factorial(a) * math.factorial(b)),
        )

    # -- access ------------------------------------------------------------
    def coefficient(self, a: int, b: int) -> Fraction:
        if 0 <= a <= self.order_x and 0 <= b <= self.order_y:
            return self.coefficients[a][b]
        return Fraction(0)

    def egf_coefficient(self, a: int, b: int) -> Fraction:
        """a! b! times the Taylor coefficient of x^a y^b."""
        return self.coefficient(a, b) * math.factorial(a) * math.factorial(b)

    def truncate(self, order_x: int, order_y: int) -> "BivariateSeries":
        return BivariateSeries.from_function(order_x, order_y, self.coefficient)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "BivariateSeries":
        if isinstance(other, BivariateSeries):
            return other
        return BivariateSeries.constant(other, self.order_x, self.order_y)

    def __add__(self, other) -> "BivariateSeries":
        other = self._coerce(other)
        ox, oy = min(self.order_x, other.order_x), min(self.order_y, other.order_y)
        return BivariateSeries.from_function(
            ox, oy, lambda a, b: self.coefficients[a][b] + other.coefficients[a][b])

    __radd__ = __add__

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries.from_function(
            self.order_x, self.order_y, lambda a, b: -self.coefficients[a][b])

    def __sub__(self, other) -> "BivariateSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BivariateSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            scale = Fraction(other)
            return BivariateSeries.from_function(
                self.order_x, self.order_y, lambda a, b: self.coefficients[a][b] * scale)
        ox, oy = min(self.order_x, other.order_x), min(self.order_y, other.order_y)
        out = [[Fraction(0)] * (oy + 1) for _ in range(ox + 1)]
        for i in range(ox + 1):
            for j in range(oy + 1):
                s = self.coefficients[i][j]
                if s == 0:
                    continue
                for a in range(ox + 1 - i):
                    row = other.coefficients[a]
                    target = out[i + a]
                    for b in range(oy + 1 - j):
                        if row[b]:
                            target[j + b] += s * row[b]
        return BivariateSeries(ox, oy, tuple(tuple(r) for r in out))

    __rmul__ = __mul__

    def reciprocal(self) -> "BivariateSeries":
        """t with self·t = 1 up to the truncation orders."""
        s00 = self.coefficients[0][0]
        if s00 == 0:
            raise PreconditionError("series reciprocal needs a nonzero constant term")
        ox, oy = self.order_x, self.order_y
        t = [[Fraction(0)] * (oy + 1) for _ in range(ox + 1)]
        inv = 1 / s00
        for a in range(ox + 1):
            for b in range(oy + 1):
                if a == 0 and b == 0:
                    t[0][0] = inv
                    continue
                acc = Fraction(0)
                for i in range(a + 1):
                    for j in range(b + 1):
                        if i == 0 and j == 0:
                            continue
                        s = self.coefficients[i][j]
                        if s:
                            acc += s * t[a - i][b - j]
                t[a][b] = -acc * inv
        return BivariateSeries(ox, oy, tuple(tuple(r) for r in t))

    def __pow__(self, exponent: int) -> "BivariateSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = BivariateSeries.constant(1, self.order_x, self.order_y)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


def series_reciprocal(s: BivariateSeries) -> BivariateSeries:
    return s.reciprocal()


def as_ratio(value: Number | str) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def ratio_to_str(value: Fraction) -> str:
    """``"p/q"`` form, or just ``"p"`` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ratios(values: Sequence[Number | str]) -> list[Fraction]:
    return [as_ratio(v) for v in values]
