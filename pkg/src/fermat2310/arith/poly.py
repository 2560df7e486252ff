"""Dense univariate polynomials over Q or over a number field.

Coefficients are stored in ascending degree.  Integers and "num/den"
strings are coerced to :class:`Fraction`; number-field elements are kept
as they are, so the same class serves Q[x] and K[x].
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from sympy import divisors

from ..errors import InvalidInput
from .rational import format_rat, to_rat


def _coerce(c):
    if isinstance(c, (int, str, Fraction)):
        return to_rat(c)
    return c


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- construction -------------------------------------------------------

    @classmethod
    def x(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "UniPoly":
        out = cls([1], var)
        for r in roots:
            out = out * cls([-_coerce(r), 1], var)
        return out

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> "UniPoly":
        """Parse expressions such as ``"x^3-6x-6"`` or ``"t^2 + 1/2*t"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise InvalidInput("empty polynomial string")
        names = set(re.findall(r"[A-Za-z_]\w*", s))
        if len(names) > 1:
            raise InvalidInput(f"more than one indeterminate in {text!r}")
        name = next(iter(names)) if names else (var or "x")
        if var is not None and name != var:
            raise InvalidInput(f"expected indeterminate {var!r} in {text!r}")
        if s[0] not in "+-":
            s = "+" + s
        term_re = re.compile(
            r"([+-])(\d+(?:/\d+)?)?\*?(?:(" + re.escape(name) + r")(?:\^(\d+))?)?"
        )
        pos = 0
        acc: dict[int, Fraction] = {}
        while pos < len(s):
            mt = term_re.match(s, pos)
            if mt is None or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
                raise InvalidInput(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
            sign = -1 if mt.group(1) == "-" else 1
            coef = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
            deg = 0
            if mt.group(3):
                deg = int(mt.group(4)) if mt.group(4) else 1
            acc[deg] = acc.get(deg, Fraction(0)) + sign * coef
            pos = mt.end()
        top = max(acc) if acc else 0
        return cls([acc.get(i, 0) for i in range(top + 1)], name)

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "x") -> "UniPoly":
        return cls([to_rat(c) for c in data], var)

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs] if self.coeffs else ["0"]

    # -- basic queries --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def low_index(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise InvalidInput("zero polynomial has no lowest coefficient")

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1 for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            other = _coerce(other)
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInput("negative polynomial power")
        result = UniPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        lead_inv = 1 / other.leading() if isinstance(other.leading(), Fraction) else other.leading().inverse()
        quot = [Fraction(0)] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * lead_inv
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(quot, self.var), UniPoly(rem[:dg], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InvalidInput("polynomial division is not exact")
        return q

    def __truediv__(self, scalar):
        scalar = _coerce(scalar)
        inv = 1 / scalar if isinstance(scalar, Fraction) else scalar.inverse()
        return self * inv

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a) -> "UniPoly":
        """f(x + a)."""
        return self.compose(UniPoly([a, 1], self.var))

    def reverse(self, n: int | None = None) -> "UniPoly":
        """x^n f(1/x); n defaults to the degree."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise InvalidInput("reversal degree below polynomial degree")
        return UniPoly([self[n - i] for i in range(n + 1)], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self / self.leading()

    def scale_var(self, s) -> "UniPoly":
        """f(s x)."""
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * s
        return UniPoly(out, self.var)

    # -- integer structure ----------------------------------------------------

    def denominator_lcm(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in self.coeffs), 1)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficient list proportional to self (positive leading)."""
        if self.is_zero():
            return []
        d = self.denominator_lcm()
        ints = [int(c * d) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]

    def primitive(self) -> "UniPoly":
        return UniPoly(self.integer_coeffs(), self.var)

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        return f"UniPoly({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                cs = "" if (mag == 1 and i > 0) else str(mag)
            else:
                sign, cs = "+", f"({c})"
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            body = cs + ("*" if cs and mono else "") + mono
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(f, 0) = monic(f), gcd(0, 0) = 0."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: UniPoly, g: UniPoly):
    """Return (d, s, t) with s*f + t*g = d = monic gcd(f, g)."""
    r0, r1 = f, g
    s0, s1 = UniPoly([1], f.var), UniPoly([], f.var)
    t0, t1 = UniPoly([], f.var), UniPoly([1], f.var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading()
    return r0 / lc, s0 / lc, t0 / lc


def resultant(f: UniPoly, g: UniPoly):
    """Res(f, g) by the Euclidean recurrence over the coefficient field."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = f.degree, g.degree
    if n == 0:
        return g.leading() ** m
    if m == 0:
        return f.leading() ** n
    r = f % g
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * g.leading() ** (m - r.degree) * resultant(g, r)


def poly_discriminant(f: UniPoly):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 2:
        raise InvalidInput("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.leading()


def is_squarefree(f: UniPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree <= 0


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Rational roots of f with multiplicity, in increasing order."""
    if f.is_zero():
        raise InvalidInput("zero polynomial has every number as a root")
    roots: list[Fraction] = []
    g = f.primitive()
    while g.degree >= 1 and g[0] == 0:
        roots.append(Fraction(0))
        g = UniPoly(g.coeffs[1:], g.var)
    if g.degree < 1:
        return sorted(roots)
    ints = g.integer_coeffs()
    cands = set()
    for num in divisors(abs(ints[0])):
        for den in divisors(abs(ints[-1])):
            q = Fraction(num, den)
            cands.add(q)
            cands.add(-q)
    for q in sorted(cands):
        while g.degree >= 1 and g(q) == 0:
            roots.append(q)
            g = g.exact_div(UniPoly([-q, 1], g.var))
    return sorted(roots)
