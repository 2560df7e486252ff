"""p-adic tools: valuations, Newton polygons, Hensel lifting and value classes.

The value-class engine describes the image of x -> N(x)/D(x) on a subset
of Z_p by pairs (v, u): the p-adic valuation of the value and its unit
part modulo p^m.  It works by residue-disc subdivision.  On a disc
c + p^k Z_p both polynomials are expanded as polynomials in the local
parameter t (x = c + p^k t, t in Z_p).  A polynomial is *determined* on the
disc when its constant term strictly dominates, meaning every other local
coefficient has valuation at least v(constant) + m.  Then its valuation and
unit class are constant on the disc.

Only a window of valuations is enumerated exactly.  With the valuation cap
``vcap`` a finite class (v, u) is reported when |v| < vcap.  The marker
``+inf`` means some point has v >= vcap (zeros of the map), and ``-inf``
means some point has v <= -vcap (poles).  By default vcap = depth - m + 1,
which is exactly the range that brute force over x mod p^depth can decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith.poly import UniPoly, poly_gcd
from .arith.projective import RationalMapP1
from .arith.rational import INF, is_prime, to_rat, vp_int
from .errors import IntegrityError, InvalidInput, SimpleRootViolation

DEFAULT_M = 2
DEFAULT_DEPTH = 12


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"{p!r} is not a prime")


def padic_valuation(q, p: int):
    """v_p of a rational number; ``inf`` for 0."""
    _check_prime(p)
    q = to_rat(q)
    if q == 0:
        return INF
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def unit_part(q, p: int, m: int) -> int:
    """q / p^v(q) reduced modulo p^m (q nonzero, denominator coprime after scaling)."""
    q = to_rat(q)
    v = padic_valuation(q, p)
    num, den = q.numerator, q.denominator
    if v > 0:
        num //= p ** v
    elif v < 0:
        den //= p ** (-v)
    mod = p ** m
    return num * pow(den, -1, mod) % mod


# -- Newton polygons ----------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    vertices: tuple[tuple[int, Fraction], ...]
    segments: tuple[tuple[Fraction, int], ...]  # (slope, horizontal length)

    def root_valuations(self) -> list[Fraction]:
        """Valuations of the nonzero roots, with multiplicity, increasing."""
        out: list[Fraction] = []
        for slope, length in reversed(self.segments):
            out.extend([-slope] * length)
        return out

    def lower_bound(self, k) -> Fraction:
        """min_i (v(c_i) + i k): a lower bound for v(f(x)) when v(x) = k."""
        return min(w + i * k for i, w in self.vertices)


def newton_polygon(f: UniPoly, p: int) -> NewtonPolygon:
    """Lower convex hull of the points (i, v_p(c_i))."""
    _check_prime(p)
    if f.is_zero():
        raise InvalidInput("Newton polygon of the zero polynomial")
    pts = [(i, Fraction(padic_valuation(c, p))) for i, c in enumerate(f.coeffs) if c != 0]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(p, tuple(hull), tuple(segs))


# -- Hensel lifting -------------------------------------------------------------

@dataclass(frozen=True)
class PadicApprox:
    """p^valuation * unit, known modulo p^precision.

    ``precision`` is absolute here: the represented number is determined
    modulo p^precision.  The zero approximation has unit 0 and
    valuation = precision.
    """

    p: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise InvalidInput("precision must be at least 1")
        if self.unit % self.p == 0 and self.unit != 0:
            raise InvalidInput("unit part divisible by p")

    @classmethod
    def from_int(cls, n: int, p: int, precision: int) -> "PadicApprox":
        n %= p ** precision
        if n == 0:
            return cls(p, precision, 0, precision)
        v = vp_int(n, p)
        return cls(p, v, n // p ** v, precision)

    def to_int(self) -> int:
        return self.unit * self.p ** self.valuation % self.p ** self.precision


def hensel_lift(f: UniPoly, p: int, r0: int, precision: int) -> PadicApprox:
    """Lift a simple root r0 of f mod p to a root modulo p^precision."""
    _check_prime(p)
    if precision < 1:
        raise InvalidInput("precision must be at least 1")
    g = f.integer_coeffs()
    dg = [i * c for i, c in enumerate(g)][1:]

    def ev(coeffs, x, mod):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % mod
        return acc

    if ev(g, r0, p) != 0:
        raise InvalidInput(f"{r0} is not a root of {f} modulo {p}")
    if ev(dg, r0, p) == 0:
        raise SimpleRootViolation(f"{r0} is a multiple root of {f} modulo {p}")
    r, k = r0 % p, 1
    while k < precision:
        k = min(2 * k, precision)
        mod = p ** k
        r = (r - ev(g, r, mod) * pow(ev(dg, r, mod), -1, mod)) % mod
    return PadicApprox.from_int(r, p, precision)


# -- value classes --------------------------------------------------------------

@dataclass(frozen=True)
class ResidueDisc:
    p: int
    center: int
    k: int

    def __post_init__(self):
        if self.k < 0 or not 0 <= self.center < self.p ** self.k:
            raise InvalidInput("residue disc needs 0 <= center < p^k")


R1 = "R1"  # [Z_p : 1]
R2 = "R2"  # [1 : pZ_p]


@dataclass(frozen=True)
class ValueClass:
    v: int | float  # int, or +-inf for the markers
    u: int

    @property
    def is_marker(self) -> bool:
        return not isinstance(self.v, int)

    def sort_key(self):
        return (self.v, self.u)

    def to_json(self) -> dict:
        if self.is_marker:
            return {"v": "inf" if self.v > 0 else "-inf", "u": 0}
        return {"v": self.v, "u": self.u}


PLUS_INF = ValueClass(INF, 0)
MINUS_INF = ValueClass(-INF, 0)


@dataclass(frozen=True)
class ValueClassSet:
    p: int
    m: int
    vcap: int
    classes: frozenset = field(default_factory=frozenset)
    complete: bool = True

    def sorted(self) -> list[ValueClass]:
        return sorted(self.classes, key=ValueClass.sort_key)

    def valuations(self) -> set[int]:
        return {c.v for c in self.classes if not c.is_marker}

    def finite(self) -> set[ValueClass]:
        return {c for c in self.classes if not c.is_marker}

    def markers(self) -> set[ValueClass]:
        return {c for c in self.classes if c.is_marker}

    def units_at(self, v: int) -> set[int]:
        return {c.u for c in self.classes if c.v == v}

    def union(self, other: "ValueClassSet") -> "ValueClassSet":
        if (self.p, self.m, self.vcap) != (other.p, other.m, other.vcap):
            raise InvalidInput("cannot merge value sets with different p, m or vcap")
        return ValueClassSet(self.p, self.m, self.vcap, self.classes | other.classes,
                             self.complete and other.complete)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "vcap": self.vcap,
            "complete": self.complete,
            "classes": [c.to_json() for c in self.sorted()],
        }


def _default_vcap(depth: int, m: int, vcap: int | None) -> int:
    if m < 1:
        raise InvalidInput("unit modulus exponent m must be at least 1")
    if vcap is None:
        vcap = depth - m + 1
    if vcap < 1:
        raise InvalidInput("depth must be at least m (valuation window is empty)")
    return vcap


def _taylor_shift(coeffs: list[int], a: int) -> list[int]:
    """Coefficients of g(t) = f(t + a)."""
    c = list(coeffs)
    n = len(c)
    if a == 0:
        return c
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _scale(coeffs: list[int], s: int) -> list[int]:
    out, pw = [], 1
    for c in coeffs:
        out.append(c * pw)
        pw *= s
    return out


def _analyse(coeffs: list[int], p: int, m: int):
    """('det', v, unit mod p^m) or ('und', lower bound of v on the disc)."""
    vals = [vp_int(c, p) for c in coeffs]
    lo = min(vals) if vals else INF
    v0 = vals[0] if vals else INF
    if v0 != INF and all(w >= v0 + m for w in vals[1:]):
        mod = p ** m
        return ("det", v0, (coeffs[0] // p ** v0) % mod)
    return ("und", lo)


def _all_units(p: int, m: int) -> list[int]:
    return [u for u in range(p ** m) if u % p]


def _quotient_engine(num: list[int], den: list[int], p: int, m: int, depth: int, vcap: int):
    """Value classes of num(t)/den(t) for t in Z_p, for integer coefficient lists."""
    mod = p ** m
    found: set[ValueClass] = set()
    complete = True
    stack = [(num, den, 0)]
    units = None
    while stack:
        a, b, level = stack.pop()
        sa = _analyse(a, p, m)
        sb = _analyse(b, p, m)
        if sa[0] == "det" and sb[0] == "det":
            v = sa[1] - sb[1]
            if v >= vcap:
                found.add(PLUS_INF)
            elif v <= -vcap:
                found.add(MINUS_INF)
            else:
                found.add(ValueClass(v, sa[2] * pow(sb[2], -1, mod) % mod))
            continue
        if sb[0] == "det" and sa[1] - sb[1] >= vcap:
            found.add(PLUS_INF)
            continue
        if sa[0] == "det" and sa[1] - sb[1] <= -vcap:
            found.add(MINUS_INF)
            continue
        if level >= depth:
            # budget exhausted: report every class the disc could still produce
            complete = False
            units = units or _all_units(p, m)
            lo_v, hi_v = -vcap + 1, vcap - 1
            if sb[0] == "det":
                lo_v = max(lo_v, sa[1] - sb[1])
                found.add(PLUS_INF)
            elif sa[0] == "det":
                hi_v = min(hi_v, sa[1] - sb[1])
                found.add(MINUS_INF)
            else:
                found.add(PLUS_INF)
                found.add(MINUS_INF)
            for v in range(lo_v, hi_v + 1):
                found.update(ValueClass(v, u) for u in units)
            continue
        for j in range(p):
            stack.append((_scale(_taylor_shift(a, j), p), _scale(_taylor_shift(b, j), p), level + 1))
    return found, complete


def _clear(num: UniPoly, den: UniPoly) -> tuple[list[int], list[int]]:
    """Scale both polynomials by one integer so that all coefficients are integral."""
    lcm = math.lcm(num.denominator_lcm(), den.denominator_lcm())
    a = [int(c * lcm) for c in num.coeffs] or [0]
    b = [int(c * lcm) for c in den.coeffs] or [0]
    g = math.gcd(*(a + b))
    return [c // g for c in a], [c // g for c in b]


def quotient_classes(num: UniPoly, den: UniPoly, p: int, m: int = DEFAULT_M,
                     depth: int = DEFAULT_DEPTH, vcap: int | None = None) -> ValueClassSet:
    """Value classes of num(x)/den(x) over x in Z_p."""
    _check_prime(p)
    vcap = _default_vcap(depth, m, vcap)
    if num.is_zero() and den.is_zero():
        raise InvalidInput("0/0 is not a map")
    if den.is_zero():
        return ValueClassSet(p, m, vcap, frozenset({MINUS_INF}))
    if num.is_zero():
        return ValueClassSet(p, m, vcap, frozenset({PLUS_INF}))
    a, b = _clear(num, den)
    found, complete = _quotient_engine(a, b, p, m, depth, vcap)
    return ValueClassSet(p, m, vcap, frozenset(found), complete)


def value_classes(f: UniPoly, p: int, m: int = DEFAULT_M, depth: int = DEFAULT_DEPTH,
                  vcap: int | None = None) -> ValueClassSet:
    """Value classes of f(x) for x in Z_p."""
    if f.is_zero():
        raise InvalidInput("value classes of the zero polynomial")
    return quotient_classes(f, UniPoly([1], f.var), p, m, depth, vcap)


def chart_polynomials(phi: RationalMapP1, p: int, selector) -> tuple[UniPoly, UniPoly]:
    """Components of phi in a local parameter y ranging over Z_p.

    ``R1`` is [y : 1], ``R2`` is [1 : p y] and a ResidueDisc(center, k)
    of the affine chart is [center + p^k y : 1].
    """
    if selector == R1:
        return phi.numerator, phi.denominator
    if selector == R2:
        n_rev, d_rev = phi.at_infinity_chart()
        return n_rev.scale_var(p), d_rev.scale_var(p)
    if isinstance(selector, ResidueDisc):
        if selector.p != p:
            raise InvalidInput("residue disc belongs to another prime")
        sub = UniPoly([selector.center, p ** selector.k], phi.numerator.var)
        return phi.numerator.compose(sub), phi.denominator.compose(sub)
    raise InvalidInput(f"unknown residue class selector {selector!r}")


def map_image_classes(phi: RationalMapP1, p: int, selector=R1, m: int = DEFAULT_M,
                      depth: int = DEFAULT_DEPTH, vcap: int | None = None) -> ValueClassSet:
    """Value classes of phi = f1/f2 on R1, R2 or a residue disc of the affine chart."""
    _check_prime(p)
    if poly_gcd(phi.numerator, phi.denominator).degree > 0:
        raise IntegrityError("map components share a root")
    num, den = chart_polynomials(phi, p, selector)
    return quotient_classes(num, den, p, m, depth, vcap)


def map_image_all(phi: RationalMapP1, p: int, m: int = DEFAULT_M, depth: int = DEFAULT_DEPTH,
                  vcap: int | None = None) -> ValueClassSet:
    """Image classes of phi on all of P^1(Q_p) = R1 u R2."""
    r1 = map_image_classes(phi, p, R1, m, depth, vcap)
    return r1.union(map_image_classes(phi, p, R2, m, depth, vcap))


def brute_force_value_classes(f: UniPoly, p: int, m: int, depth: int) -> ValueClassSet:
    """Reference enumeration over x mod p^depth for integral f.

    f(x) mod p^depth is a function of x mod p^depth, so the class of f is
    decided whenever v(f(x)) <= depth - m, and f(x) = 0 mod p^(depth-m+1)
    witnesses the +inf marker.
    """
    if not f.is_integral():
        raise InvalidInput("brute-force oracle needs integer coefficients")
    vcap = depth - m + 1
    mod = p ** depth
    umod = p ** m
    coeffs = [int(c) for c in f.coeffs]
    found = set()
    for x in range(mod):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % mod
        v = vp_int(acc, p) if acc else INF
        if v >= vcap:
            found.add(PLUS_INF)
        else:
            found.add(ValueClass(v, (acc // p ** v) % umod))
    return ValueClassSet(p, m, vcap, frozenset(found))


def classes_from_values(values: Iterable, p: int, m: int, vcap: int) -> set[ValueClass]:
    """Classes of explicit rational (or None = infinity) values in the window."""
    out = set()
    for q in values:
        if q is None:
            out.add(MINUS_INF)
            continue
        v = padic_valuation(q, p)
        if v >= vcap:
            out.add(PLUS_INF)
        elif v <= -vcap:
            out.add(MINUS_INF)
        else:
            out.add(ValueClass(v, unit_part(q, p, m)))
    return out
