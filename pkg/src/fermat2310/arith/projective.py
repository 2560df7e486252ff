"""Points of P^1 and rational self-maps of P^1 given by homogeneous pairs.

A map of degree n is stored dehomogenised: ``numerator(x)`` and
``denominator(x)`` stand for ``f1(s, t) = t^n N(s/t)`` and
``f2(s, t) = t^n D(s/t)``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import InvalidInput
from .numfield import NFElem
from .poly import UniPoly, poly_gcd
from .rational import to_rat


def _is_zero(c) -> bool:
    return c == 0


class ProjPoint:
    """A point [x : y] of P^1 over Q or a number field, kept normalised.

    Over Q the coordinates are coprime integers with positive first nonzero
    entry.  Over a number field the point is stored as [z : 1] or [1 : 0].
    """

    __slots__ = ("x", "y")

    def __init__(self, x, y=1):
        if isinstance(x, (int, str)):
            x = to_rat(x)
        if isinstance(y, (int, str)):
            y = to_rat(y)
        if _is_zero(x) and _is_zero(y):
            raise InvalidInput("[0:0] is not a point of P^1")
        if isinstance(x, NFElem) or isinstance(y, NFElem):
            if _is_zero(y):
                one = x.field.one() if isinstance(x, NFElem) else y.field.one()
                self.x, self.y = one, one * 0
            else:
                z = x / y if isinstance(y, NFElem) else x * (Fraction(1) / y)
                if not isinstance(z, NFElem):
                    z = y.field(z)
                self.x, self.y = z, z.field.one()
            return
        x, y = Fraction(x), Fraction(y)
        den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        xi, yi = int(x * den), int(y * den)
        g = math.gcd(xi, yi)
        xi, yi = xi // g, yi // g
        if xi < 0 or (xi == 0 and yi < 0):
            xi, yi = -xi, -yi
        self.x, self.y = Fraction(xi), Fraction(yi)

    @classmethod
    def infinity(cls, field=None) -> "ProjPoint":
        if field is None:
            return cls(1, 0)
        return cls(field.one(), field.zero())

    @property
    def is_infinity(self) -> bool:
        return _is_zero(self.y)

    def affine(self):
        """The coordinate x/y, or None at infinity."""
        if self.is_infinity:
            return None
        return self.x / self.y

    @property
    def field(self):
        return self.x.field if isinstance(self.x, NFElem) else None

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.x * other.y == self.y * other.x

    def __hash__(self):
        if self.is_infinity:
            return hash(("inf",))
        return hash(self.affine())

    def __repr__(self):
        return f"[{self.x} : {self.y}]"


class RationalMapP1:
    """phi = [f1 : f2] on P^1 with coprime dehomogenised parts."""

    def __init__(self, numerator: UniPoly, denominator: UniPoly, degree: int | None = None):
        if numerator.is_zero() and denominator.is_zero():
            raise InvalidInput("both components of the map vanish")
        n = max(numerator.degree, denominator.degree) if degree is None else degree
        if numerator.degree > n or denominator.degree > n:
            raise InvalidInput("component degree exceeds map degree")
        if max(numerator.degree, denominator.degree) != n:
            raise InvalidInput("neither component attains the map degree")
        if poly_gcd(numerator, denominator).degree > 0:
            raise InvalidInput("numerator and denominator share a factor")
        self.numerator = numerator
        self.denominator = denominator
        self.degree = n

    @classmethod
    def constant(cls, value) -> "RationalMapP1":
        """The constant map to a rational value (or to infinity for None)."""
        if value is None:
            return cls(UniPoly([1]), UniPoly([]), 0)
        q = to_rat(value)
        return cls(UniPoly([q.numerator]), UniPoly([q.denominator]), 0)

    def homogeneous_eval(self, s, t):
        n = self.degree

        def ev(f: UniPoly):
            acc = 0
            for i, c in enumerate(f.coeffs):
                if c != 0:
                    acc = acc + c * s ** i * t ** (n - i)
            return acc

        return ev(self.numerator), ev(self.denominator)

    def __call__(self, point) -> ProjPoint:
        if not isinstance(point, ProjPoint):
            point = ProjPoint(point, 1)
        a, b = self.homogeneous_eval(point.x, point.y)
        return ProjPoint(a, b)

    def at_infinity_chart(self) -> tuple[UniPoly, UniPoly]:
        """Components in the chart [1 : y] (used for the class [1 : pZ_p])."""
        n = self.degree
        return self.numerator.reverse(n), self.denominator.reverse(n)

    def scaled(self, c) -> "RationalMapP1":
        return RationalMapP1(self.numerator * c, self.denominator * c, self.degree)

    def __eq__(self, other):
        if not isinstance(other, RationalMapP1):
            return NotImplemented
        # equal up to a common scalar
        return self.degree == other.degree and self.numerator * other.denominator == other.numerator * self.denominator

    def __repr__(self):
        return f"RationalMapP1(({self.numerator}) / ({self.denominator}), degree={self.degree})"
