"""Exact complex rationals.

Every coefficient in this package is an element of Q(i): a pair of
arbitrary-precision rationals (re, im).  No floating point anywhere; all
comparisons are exact equality.
"""
from __future__ import annotations

from fractions import Fraction

__all__ = ["Scalar", "ZERO", "ONE", "I", "sc"]


class Scalar:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- ring structure -------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- involutions and predicates -------------------------------------
    def conj(self):
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        """Canonical text form ``a/b+c/d*i`` used in scene files and reports."""
        if self.im < 0:
            return f"{self.re}-{-self.im}*i"
        return f"{self.re}+{self.im}*i"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)} i)"

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of :meth:`render`; also accepts bare rationals and ``c*i``."""
        s = text.strip().replace(" ", "")
        if s in ("i", "+i"):
            return Scalar(0, 1)
        if s == "-i":
            return Scalar(0, -1)
        if s.endswith("*i"):
            body = s[:-2]
            # split at the last +/- that is not a leading sign or inside a fraction
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "+-/*":
                    re_part, im_part = body[:k], body[k:]
                    if im_part in ("+", "-"):
                        im_part += "1"
                    return Scalar(Fraction(re_part), Fraction(im_part))
            if body in ("", "+", "-"):
                body += "1"
            return Scalar(0, Fraction(body))
        return Scalar(Fraction(s), 0)


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


def sc(re=0, im=0) -> Scalar:
    """Shorthand constructor."""
    return Scalar(re, im)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
