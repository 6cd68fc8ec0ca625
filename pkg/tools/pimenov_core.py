"""
Pimenov algebra D2 and its dual-number subalgebra.

D2 is the commutative algebra with unit and two nilpotent generators
i1, i2 (i1^2 = i2^2 = 0, i1 i2 = i2 i1 != 0). Every element is stored by its
four coefficients in the fixed basis order (1, i1, i2, i1i2).

Two scalar backends share one interface: exact rationals (fractions.Fraction)
and 64-bit floats. Integers are coerced to Fraction on construction, so
integer input stays exact.

Usage:
    from pimenov_core import D2Element, d2_mul, d2_inverse, d2_exp

    a = D2Element(2, 1)
    d2_mul(a, d2_inverse(a))        # D2Element(1, 0, 0, 0)
    d2_exp(D2Element(0, 1, 1))      # 1 + i1 + i2 + i1i2
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Integral, Real
from typing import Callable, Optional, Union

from config import D2_BASIS, EPS_INV
from errors import GalileanError, NonInvertible, ParseError

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ──────────────────────────────────────────────
# Scalar backends
# ──────────────────────────────────────────────

class ScalarMode(Enum):
    RATIONAL = "rational"
    FLOAT = "float"


def coerce_scalar(value) -> Scalar:
    """Normalize a number to the scalar types the library computes with."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        return float(value)
    if isinstance(value, Real):
        return float(value)
    raise TypeError(f"not a real scalar: {value!r}")


def is_exact(value) -> bool:
    return isinstance(value, Fraction)


def to_scalar(value, mode: Optional[ScalarMode] = None) -> Scalar:
    """Convert a number or numeric string into the requested backend.

    With mode=None integers and "p/q" strings become Fractions and decimals
    become floats.
    """
    if isinstance(value, str):
        return parse_scalar(value, mode)
    scalar = coerce_scalar(value)
    if mode is ScalarMode.RATIONAL:
        return Fraction(scalar)
    if mode is ScalarMode.FLOAT:
        return float(scalar)
    return scalar


_SCALAR_RE = re.compile(
    r"^[+-]?(\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?|\d+/\d+)$"
)


def parse_scalar(text: str, mode: Optional[ScalarMode] = None) -> Scalar:
    """Parse "3", "-1.5", "2/3" or "1e-3" into a scalar."""
    token = text.strip()
    if not _SCALAR_RE.match(token):
        raise ParseError(f"not a number: {text!r}")
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ParseError(f"zero denominator: {text!r}")
    if mode is ScalarMode.FLOAT:
        return float(Fraction(token))
    if mode is ScalarMode.RATIONAL:
        return Fraction(token)
    if any(ch in token for ch in ".eE"):
        return float(token)
    return Fraction(token)


def format_scalar(value: Scalar) -> str:
    if is_exact(value):
        return str(value)
    return repr(float(value))


def scalars_close(x: Scalar, y: Scalar, tol: float) -> bool:
    """Exact comparison when both sides are rational, absolute tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(x - y) <= tol


def is_zero_scalar(x: Scalar, tol: float) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


# ──────────────────────────────────────────────
# D2 elements
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class D2Element:
    """a0 + a1*i1 + a2*i2 + a3*i1i2."""

    a0: Scalar = Fraction(0)
    a1: Scalar = Fraction(0)
    a2: Scalar = Fraction(0)
    a3: Scalar = Fraction(0)

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, coerce_scalar(getattr(self, name)))

    @classmethod
    def _unchecked(cls, a0: Scalar, a1: Scalar, a2: Scalar, a3: Scalar) -> "D2Element":
        # coefficients must already be Fraction or float
        element = object.__new__(cls)
        element.__dict__.update(a0=a0, a1=a1, a2=a2, a3=a3)
        return element

    @classmethod
    def zero(cls) -> "D2Element":
        return cls()

    @classmethod
    def one(cls) -> "D2Element":
        return cls(1)

    @classmethod
    def basis(cls, index: int) -> "D2Element":
        coeffs = [0, 0, 0, 0]
        coeffs[index] = 1
        return cls(*coeffs)

    @classmethod
    def from_coefficients(cls, coeffs, mode: Optional[ScalarMode] = None) -> "D2Element":
        values = list(coeffs)
        if len(values) != 4:
            raise ParseError(f"D2 element needs 4 coefficients, got {len(values)}")
        return cls(*(to_scalar(v, mode) for v in values))

    @property
    def coefficients(self) -> tuple:
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def scalar_part(self) -> Scalar:
        return self.a0

    @property
    def imaginary_part(self) -> "D2Element":
        return D2Element(0, self.a1, self.a2, self.a3)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coefficients)

    def is_invertible(self, eps: float = EPS_INV) -> bool:
        if is_exact(self.a0):
            return self.a0 != 0
        return abs(self.a0) > eps

    def is_real(self, tol: float = 0.0) -> bool:
        return all(is_zero_scalar(c, tol) for c in (self.a1, self.a2, self.a3))

    def close(self, other: "D2Element", tol: float) -> bool:
        return all(
            scalars_close(x, y, tol)
            for x, y in zip(self.coefficients, other.coefficients)
        )

    def to_float(self) -> "D2Element":
        return D2Element(*(float(c) for c in self.coefficients))

    # Operators delegate to the module functions below

    def __add__(self, other):
        return d2_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return d2_sub(self, _lift(other))

    def __rsub__(self, other):
        return d2_sub(_lift(other), self)

    def __mul__(self, other):
        return d2_mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return d2_div(self, _lift(other))

    def __rtruediv__(self, other):
        return d2_div(_lift(other), self)

    def __neg__(self):
        return d2_neg(self)

    def __pow__(self, n: int):
        return d2_pow(self, n)

    def __str__(self) -> str:
        return format_d2(self)


I1 = D2Element(0, 1, 0, 0)
I2 = D2Element(0, 0, 1, 0)
I1I2 = D2Element(0, 0, 0, 1)


def _lift(value) -> D2Element:
    if isinstance(value, D2Element):
        return value
    return D2Element(coerce_scalar(value))


def d2_add(a: D2Element, b: D2Element) -> D2Element:
    return D2Element._unchecked(a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3)


def d2_sub(a: D2Element, b: D2Element) -> D2Element:
    return D2Element._unchecked(a.a0 - b.a0, a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3)


def d2_neg(a: D2Element) -> D2Element:
    return D2Element._unchecked(-a.a0, -a.a1, -a.a2, -a.a3)


def d2_scale(a: D2Element, r) -> D2Element:
    r = coerce_scalar(r)
    return D2Element._unchecked(r * a.a0, r * a.a1, r * a.a2, r * a.a3)


def d2_mul(a: D2Element, b: D2Element) -> D2Element:
    """Product under i1^2 = i2^2 = 0, i1 i2 = i2 i1."""
    return D2Element._unchecked(
        a.a0 * b.a0,
        a.a0 * b.a1 + a.a1 * b.a0,
        a.a0 * b.a2 + a.a2 * b.a0,
        a.a0 * b.a3 + a.a3 * b.a0 + a.a1 * b.a2 + a.a2 * b.a1,
    )


def d2_inverse(a: D2Element, eps: float = EPS_INV) -> D2Element:
    """Inverse of an element with nonzero scalar part.

    a^-1 = (1/a0^2) [a0 - a1 i1 - a2 i2 + (2 a1 a2 / a0 - a3) i1i2]

    Raises:
        NonInvertible: when |a0| <= eps (a0 == 0 in rational mode).
    """
    if not a.is_invertible(eps):
        logger.debug("d2_inverse: scalar part %s is not invertible", a.a0)
        raise NonInvertible(f"scalar part {format_scalar(a.a0)} is not invertible")
    r = 1 / a.a0
    r2 = r * r
    return D2Element._unchecked(
        r2 * a.a0,
        -r2 * a.a1,
        -r2 * a.a2,
        r2 * (2 * a.a1 * a.a2 * r - a.a3),
    )


def d2_div(a: D2Element, b: D2Element, eps: float = EPS_INV) -> D2Element:
    return d2_mul(a, d2_inverse(b, eps))


def d2_pow(a: D2Element, n: int) -> D2Element:
    """Integer power; negative exponents go through d2_inverse."""
    if n < 0:
        return d2_pow(d2_inverse(a), -n)
    result = D2Element.one()
    base = a
    while n:
        if n & 1:
            result = d2_mul(result, base)
        base = d2_mul(base, base)
        n >>= 1
    return result


def d2_conj_iota2(a: D2Element) -> D2Element:
    """Conjugation by the generator i2: i2 -> -i2 (hence i1i2 -> -i1i2)."""
    return D2Element._unchecked(a.a0, a.a1, -a.a2, -a.a3)


# ──────────────────────────────────────────────
# Taylor jets
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class Jet2:
    """Value, first and second derivative of f at the scalar part."""

    f0: Scalar
    f1: Scalar
    f2: Scalar

    def __post_init__(self):
        for name in ("f0", "f1", "f2"):
            object.__setattr__(self, name, coerce_scalar(getattr(self, name)))

    @classmethod
    def from_callables(
        cls,
        f: Callable[[Scalar], Scalar],
        df: Callable[[Scalar], Scalar],
        d2f: Callable[[Scalar], Scalar],
        a0: Scalar,
    ) -> "Jet2":
        return cls(f(a0), df(a0), d2f(a0))


def d2_eval(jet: Jet2, a: D2Element) -> D2Element:
    """f(a) = f(a0) + f'(a0)(a1 i1 + a2 i2 + a3 i1i2) + f''(a0) a1 a2 i1i2.

    The jet must have been taken at a.a0; nilpotency truncates the Taylor
    series after the second-order term.
    """
    return D2Element(
        jet.f0,
        jet.f1 * a.a1,
        jet.f1 * a.a2,
        jet.f1 * a.a3 + jet.f2 * a.a1 * a.a2,
    )


def _exact_zero(x: Scalar) -> bool:
    return is_exact(x) and x == 0


def jet_exp(a0: Scalar) -> Jet2:
    value = Fraction(1) if _exact_zero(a0) else math.exp(a0)
    return Jet2(value, value, value)


def jet_sin(a0: Scalar) -> Jet2:
    if _exact_zero(a0):
        return Jet2(0, 1, 0)
    return Jet2(math.sin(a0), math.cos(a0), -math.sin(a0))


def jet_cos(a0: Scalar) -> Jet2:
    if _exact_zero(a0):
        return Jet2(1, 0, -1)
    return Jet2(math.cos(a0), -math.sin(a0), -math.cos(a0))


def jet_log(a0: Scalar) -> Jet2:
    if a0 <= 0:
        raise GalileanError(f"log needs a positive scalar part, got {format_scalar(a0)}")
    value = Fraction(0) if (is_exact(a0) and a0 == 1) else math.log(a0)
    return Jet2(value, 1 / a0, -1 / (a0 * a0))


def jet_power(a0: Scalar, p) -> Jet2:
    """Jet of x**p. Integer p keeps rational input exact."""
    p = coerce_scalar(p)
    if is_exact(p) and p.denominator == 1:
        n = int(p)
        if n == 0:
            return Jet2(1, 0, 0)
        if n == 1:
            return Jet2(a0, 1, 0)
        if a0 == 0 and n < 0:
            raise NonInvertible("negative power of an element with zero scalar part")
        return Jet2(a0 ** n, n * a0 ** (n - 1), n * (n - 1) * a0 ** (n - 2))
    if a0 <= 0:
        raise GalileanError(f"non-integer power needs a positive scalar part, got {format_scalar(a0)}")
    x = float(a0)
    q = float(p)
    return Jet2(x ** q, q * x ** (q - 1), q * (q - 1) * x ** (q - 2))


JETS = {
    "exp": jet_exp,
    "sin": jet_sin,
    "cos": jet_cos,
    "log": jet_log,
    "power": jet_power,
}


def d2_apply(name: str, a: D2Element, **kwargs) -> D2Element:
    """Evaluate a built-in function on a D2 element by its jet."""
    try:
        factory = JETS[name]
    except KeyError:
        raise GalileanError(f"unknown function '{name}' (known: {', '.join(sorted(JETS))})")
    return d2_eval(factory(a.a0, **kwargs), a)


def d2_exp(a: D2Element) -> D2Element:
    """e^a = e^{a0} (1 + a1 i1 + a2 i2 + (a3 + a1 a2) i1i2)."""
    return d2_eval(jet_exp(a.a0), a)


# ──────────────────────────────────────────────
# Dual numbers
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class DualNumber:
    """a0 + a1*iota with iota^2 = 0."""

    a0: Scalar = Fraction(0)
    a1: Scalar = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a0", coerce_scalar(self.a0))
        object.__setattr__(self, "a1", coerce_scalar(self.a1))

    def __add__(self, other):
        other = _lift_dual(other)
        return DualNumber(self.a0 + other.a0, self.a1 + other.a1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift_dual(other)
        return DualNumber(self.a0 - other.a0, self.a1 - other.a1)

    def __rsub__(self, other):
        return _lift_dual(other) - self

    def __mul__(self, other):
        other = _lift_dual(other)
        return DualNumber(self.a0 * other.a0, self.a0 * other.a1 + self.a1 * other.a0)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _lift_dual(other).inverse()

    def __neg__(self):
        return DualNumber(-self.a0, -self.a1)

    def inverse(self, eps: float = EPS_INV) -> "DualNumber":
        if is_zero_scalar(self.a0, eps):
            raise NonInvertible(f"dual number {self} has zero real part")
        r = 1 / self.a0
        return DualNumber(r, -self.a1 * r * r)

    def conj(self) -> "DualNumber":
        return DualNumber(self.a0, -self.a1)

    def exp(self) -> "DualNumber":
        value = Fraction(1) if _exact_zero(self.a0) else math.exp(self.a0)
        return DualNumber(value, value * self.a1)

    def close(self, other: "DualNumber", tol: float) -> bool:
        return scalars_close(self.a0, other.a0, tol) and scalars_close(self.a1, other.a1, tol)

    def to_d2(self, generator: int = 1) -> D2Element:
        """Embed into D2 with iota identified with i1 (default) or i2."""
        if generator == 1:
            return D2Element(self.a0, self.a1, 0, 0)
        if generator == 2:
            return D2Element(self.a0, 0, self.a1, 0)
        raise GalileanError(f"generator must be 1 or 2, got {generator}")

    @classmethod
    def from_d2(cls, a: D2Element, generator: int = 1, tol: float = 0.0) -> "DualNumber":
        if generator == 1:
            rest, dual = (a.a2, a.a3), a.a1
        elif generator == 2:
            rest, dual = (a.a1, a.a3), a.a2
        else:
            raise GalileanError(f"generator must be 1 or 2, got {generator}")
        if not all(is_zero_scalar(c, tol) for c in rest):
            raise GalileanError(f"{a} is not in the dual subalgebra of i{generator}")
        return cls(a.a0, dual)

    def __str__(self) -> str:
        return f"{format_scalar(self.a0)} + {format_scalar(self.a1)}*i"


def _lift_dual(value) -> DualNumber:
    if isinstance(value, DualNumber):
        return value
    return DualNumber(coerce_scalar(value))


# ──────────────────────────────────────────────
# Text form: a0 + a1*i1 + a2*i2 + a3*i1i2
# ──────────────────────────────────────────────

_UNITS = ("",) + D2_BASIS[1:]

_TERM_RE = re.compile(
    r"\s*([+-])?\s*"
    r"(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)?"
    r"\s*(?:\*?\s*(i1i2|i1|i2))?\s*"
)


def format_d2(a: D2Element) -> str:
    """Zero terms are omitted; the zero element prints as '0'."""
    parts = []
    for coeff, unit in zip(a.coefficients, _UNITS):
        if coeff == 0:
            continue
        negative = coeff < 0
        body = format_scalar(-coeff if negative else coeff)
        if unit:
            body = f"{body}*{unit}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{'-' if negative else '+'} {body}")
    return " ".join(parts) if parts else "0"


def parse_d2(text: str, mode: Optional[ScalarMode] = None) -> D2Element:
    """Inverse of format_d2. Accepts a bare unit ('i1') as coefficient 1."""
    coeffs = [Fraction(0)] * 4
    pos = 0
    first = True
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty D2 expression")
    while pos < len(stripped):
        m = _TERM_RE.match(stripped, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"cannot parse D2 expression at {stripped[pos:]!r}")
        sign, number, unit = m.groups()
        if not first and sign is None:
            raise ParseError(f"missing '+' or '-' before {stripped[pos:]!r}")
        value = parse_scalar(number, mode) if number is not None else to_scalar(1, mode)
        if sign == "-":
            value = -value
        coeffs[_UNITS.index(unit or "")] += value
        pos = m.end()
        first = False
    return D2Element(*(to_scalar(c, mode) for c in coeffs))
