"""Exact arithmetic in Q(i).

Real and imaginary parts are Python ints while they are integral and
Fractions otherwise; int arithmetic is several times faster than Fraction
arithmetic and most coefficients met in practice are integers.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _part(x):
    if type(x) is int:
        return x
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _part(re)
        self.im = _part(im)

    @classmethod
    def _make(cls, re, im) -> "GaussianRational":
        # parts already produced by int/Fraction arithmetic: skip conversion
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot convert {x!r} to a Gaussian rational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a"``, ``"a+bi"``, ``"a+b*i"``, ``"bi"`` or ``"i"`` with rational a, b."""
        s = text.replace(" ", "").replace("*i", "i")
        if not s:
            raise ValueError("empty Gaussian rational")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        # the imaginary part starts at the last sign past position 0
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            im = body
            re = "0"
        else:
            re, im = body[:cut], body[cut:]
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        return cls(Fraction(re), Fraction(im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return Fraction(self.re * self.re + self.im * self.im)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im:
            return GaussianRational._make(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational._make(self.re * o.re, self.re * o.im)
        return GaussianRational._make(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(Fraction(num.re, 1) / n, Fraction(num.im, 1) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else f'{mag}*'}i"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, data) -> "GaussianRational":
        if isinstance(data, dict):
            return cls(Fraction(data["re"]), Fraction(data.get("im", "0")))
        return cls.coerce(data)


I = GaussianRational(0, 1)
