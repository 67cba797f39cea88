"""Gaussian-rational scalars and the two numeric backends.

The exact backend works over Q(i) with :class:`GaussianRational`; the float
backend uses plain Python ``complex``.  The two never mix: any arithmetic
between them raises :class:`BackendMismatch`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import BackendMismatch, ParseError

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


class GaussianRational:
    """Immutable number ``re + im*i`` with ``re``, ``im`` rational.

    ``Fraction`` keeps both parts in lowest terms with positive denominators.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
            raise BackendMismatch("floating value passed to an exact scalar")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise BackendMismatch(f"cannot use {type(x).__name__} in the exact backend")

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(other)
        if isinstance(other, (float, complex)):
            raise BackendMismatch("exact and floating scalars cannot be mixed")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o.im and not self.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> GaussianRational:
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, (float, complex)):
            raise BackendMismatch("exact and floating scalars cannot be compared")
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __lt__(self, other):
        return self.sort_key() < GaussianRational.coerce(other).sort_key()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

_FRAC_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _frac(text: str, field) -> Fraction:
    if not _FRAC_RE.match(text):
        raise ParseError(f"malformed rational {text!r}", field=field)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", field=field)
    return Fraction(int(num), int(den) if den else 1)


def _imag_coeff(text: str, field) -> Fraction:
    # text is the imaginary term without its trailing "i", e.g. "-1/3*", "+", "2"
    if text.endswith("*"):
        if text[:-1] in ("", "+", "-"):
            raise ParseError(f"malformed imaginary part {text + 'i'!r}", field=field)
        return _frac(text[:-1], field)
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return _frac(text, field)


def parse_scalar(text, field=None) -> GaussianRational:
    """Parse ``"a/b"``, ``"a/b+c/d*i"`` or ``"c/d*i"`` (denominators optional)."""
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return GaussianRational(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a scalar string, got {text!r}", field=field)
    s = "".join(text.split())
    if not s:
        raise ParseError("empty scalar", field=field)
    if not s.endswith("i"):
        return GaussianRational(_frac(s, field))
    s = s[:-1]
    cut = max(s.rfind("+"), s.rfind("-"))
    if cut <= 0:
        return GaussianRational(0, _imag_coeff(s, field))
    return GaussianRational(_frac(s[:cut], field), _imag_coeff(s[cut:], field))


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text form; inverse of :func:`parse_scalar` for exact values."""
    if isinstance(x, complex):
        return repr(x)
    x = GaussianRational.coerce(x)
    if not x.im:
        return _fmt_frac(x.re)
    im = _fmt_frac(abs(x.im)) + "*i"
    if not x.re:
        return ("-" if x.im < 0 else "") + im
    return _fmt_frac(x.re) + ("-" if x.im < 0 else "+") + im


def backend_of(x) -> str:
    if isinstance(x, GaussianRational):
        return EXACT
    if isinstance(x, complex):
        return FLOAT
    raise BackendMismatch(f"{type(x).__name__} is not a backend scalar")


def to_backend(x, backend: str):
    """Lift an int, Fraction, string or exact scalar into ``backend``."""
    if backend == EXACT:
        return GaussianRational.coerce(x)
    if backend == FLOAT:
        if isinstance(x, complex):
            return x
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, GaussianRational):
            return complex(x)
        if isinstance(x, (int, float, Rational)):
            return complex(float(x))
        raise BackendMismatch(f"cannot use {type(x).__name__} in the float backend")
    raise ValueError(f"unknown backend {backend!r}")


def zero(backend: str):
    return ZERO if backend == EXACT else 0j


def one(backend: str):
    return ONE if backend == EXACT else 1 + 0j
