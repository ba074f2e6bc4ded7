"""Exact complex-rational arithmetic.

The structure constants of the observable algebra and the quantization
operators must distinguish an exact zero from roundoff, so everything
downstream of them is built on Fraction pairs rather than floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


@dataclass(frozen=True)
class ComplexRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re=0, im=0) -> "ComplexRational":
        return cls(_frac(re), _frac(im))

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "ComplexRational":
        return _coerce(other) - self

    def __mul__(self, other) -> "ComplexRational":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}j)"


def _coerce(x) -> ComplexRational:
    if isinstance(x, ComplexRational):
        return x
    return ComplexRational(_frac(x))


ZERO = ComplexRational()
ONE = ComplexRational.of(1)
I = ComplexRational.of(0, 1)
