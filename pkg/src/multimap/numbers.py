"""Exact rationals and closed rational intervals.

Rationals are plain :class:`fractions.Fraction` values; this module adds the
``"p/q"`` text encoding used by every file format, the closed interval type,
and outward-rounded rational bounds for ``k``-th roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import MalformedRational

__all__ = [
    "Fraction",
    "IntervalQ",
    "parse_rational",
    "format_rational",
    "as_fraction",
    "root_bounds",
]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")

# Binary digits kept when bracketing an irrational root.
ROOT_BITS = 64


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a reduced Fraction."""
    if isinstance(text, bool):
        raise MalformedRational(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedRational(f"rationals are encoded as 'p/q' strings, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise MalformedRational(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedRational(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise MalformedRational(f"floats are not accepted as exact values: {value!r}")
    return parse_rational(value)


@dataclass(frozen=True)
class IntervalQ:
    """Closed interval ``[lo, hi]`` with rational endpoints.

    ``exact`` is False when an endpoint came out of outward rounding, in which
    case the true set is contained in (not equal to) this one.
    """

    lo: Fraction
    hi: Fraction
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> IntervalQ:
        return cls(x, x)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_open(self, x) -> bool:
        return self.lo < x < self.hi

    def issubset(self, other: IntervalQ) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def meets_any(self, points) -> bool:
        return any(self.lo <= p <= self.hi for p in points)

    def same_set(self, other: IntervalQ) -> bool:
        """Endpoint equality, ignoring the exactness flag."""
        return self.lo == other.lo and self.hi == other.hi

    def to_json(self) -> list:
        return [format_rational(self.lo), format_rational(self.hi)]

    def __str__(self):
        if self.is_point:
            return f"{{{self.lo}}}"
        return f"[{self.lo}, {self.hi}]"


def _iroot_floor(n: int, k: int) -> int:
    """Largest integer r with r**k <= n, for n >= 0."""
    if n < 2:
        return n
    if k == 2:
        return isqrt(n)
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def root_bounds(s: Fraction, k: int, bits: int = ROOT_BITS) -> tuple[Fraction, Fraction, bool]:
    """Rational ``lo <= s**(1/k) <= hi`` for ``s >= 0``.

    Returns ``(lo, hi, exact)``; ``exact`` is True (and ``lo == hi``) when
    ``s`` is a perfect ``k``-th power of a rational.
    """
    s = Fraction(s)
    if s < 0:
        raise ValueError("root of a negative number")
    rn = _iroot_floor(s.numerator, k)
    rd = _iroot_floor(s.denominator, k)
    if rn ** k == s.numerator and rd ** k == s.denominator:
        r = Fraction(rn, rd)
        return r, r, True
    scale = 1 << bits
    # floor(s**(1/k) * 2**bits) = floor((num * 2**(k*bits) / den) ** (1/k))
    base = _iroot_floor((s.numerator << (k * bits)) // s.denominator, k)
    return Fraction(base, scale), Fraction(base + 1, scale), False
