"""Weierstrass curves y^2 = x^3 + a2 x^2 + a x + b over Q or a number field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .arith.numfield import NFElem, NumberField, elem_to_json
from .arith.poly import UniPoly
from .arith.rational import is_square_rat, primes_below, to_rat
from .errors import InvalidInput


def _coerce(x, field: NumberField | None):
    if isinstance(x, NFElem):
        if field is None or x.field != field:
            raise InvalidInput("coefficient lies in a different field")
        return x
    q = to_rat(x)
    return field(q) if field is not None else q


def _is_zero(x) -> bool:
    return x == 0


@dataclass(frozen=True)
class CurveInvariants:
    delta: object
    c4: object
    c6: object
    j: object  # field element, or None for a singular curve (j = infinity)


class WeierstrassCurve:
    """y^2 = x^3 + a2*x^2 + a*x + b; ``field`` is None for Q."""

    __slots__ = ("a", "b", "a2", "field")

    def __init__(self, a, b, a2=0, field: NumberField | None = None, check: bool = True):
        self.field = field
        self.a = _coerce(a, field)
        self.b = _coerce(b, field)
        self.a2 = _coerce(a2, field)
        if check and _is_zero(self.discriminant()):
            raise InvalidInput(f"singular curve {self}: discriminant is 0")

    def discriminant(self):
        a2, a4, a6 = self.a2, self.a, self.b
        b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
        b8 = 4 * a2 * a6 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def cubic(self) -> UniPoly:
        return UniPoly([self.b, self.a, self.a2, 1])

    def rhs(self, x):
        return x ** 3 + self.a2 * x * x + self.a * x + self.b

    def contains(self, x, y) -> bool:
        return y * y == self.rhs(x)

    def is_short(self) -> bool:
        return _is_zero(self.a2)

    def __eq__(self, other):
        if not isinstance(other, WeierstrassCurve):
            return NotImplemented
        return (self.field, self.a, self.b, self.a2) == (other.field, other.a, other.b, other.a2)

    def __hash__(self):
        return hash((self.a, self.b, self.a2))

    def __repr__(self):
        rhs = UniPoly([self.b, self.a, self.a2, 1])
        return f"WeierstrassCurve(y^2 = {rhs})"

    def to_json(self) -> dict:
        out = {"a": elem_to_json(self.a), "b": elem_to_json(self.b)}
        if not _is_zero(self.a2):
            out["a2"] = elem_to_json(self.a2)
        out["field"] = "Q" if self.field is None else self.field.to_json()
        return out

    def point(self, x, y) -> "CurvePoint":
        return CurvePoint(self, _coerce(x, self.field), _coerce(y, self.field))

    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)


def invariants(curve: WeierstrassCurve) -> CurveInvariants:
    """Delta, c4, c6 and j = c4^3 / Delta."""
    a2, a4, a6 = curve.a2, curve.a, curve.b
    b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    delta = curve.discriminant()
    if _is_zero(delta):
        raise InvalidInput("invariants of a singular curve")
    return CurveInvariants(delta, c4, c6, c4 ** 3 / delta)


class CurvePoint:
    """Affine point (x, y) on a curve, or the point at infinity (x = y = None)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve = curve
        self.x, self.y = x, y
        if x is not None and not curve.contains(x, y):
            raise InvalidInput(f"({x}, {y}) is not on {curve}")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self):
        if self.is_infinity:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, other):
        return point_add(self, other)

    def __sub__(self, other):
        return point_add(self, -other)

    def __mul__(self, n: int):
        return scalar_mul(self, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.curve == other.curve and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "O"
        return [elem_to_json(self.x), elem_to_json(self.y)]


def point_add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent addition."""
    if P.curve != Q.curve:
        raise InvalidInput("points lie on different curves")
    E = P.curve
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return E.infinity()
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(E, x3, y3)


def scalar_mul(P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return scalar_mul(-P, -n)
    result = P.curve.infinity()
    base = P
    while n:
        if n & 1:
            result = point_add(result, base)
        base = point_add(base, base)
        n >>= 1
    return result


def point_order(P: CurvePoint, bound: int) -> int | None:
    """Order of P if it is at most ``bound``, else None."""
    Q = P
    for n in range(1, bound + 1):
        if Q.is_infinity:
            return n
        Q = point_add(Q, P)
    return None


# -- triples and Frey curves ------------------------------------------------------

@dataclass(frozen=True)
class PrimitiveTriple:
    """Integers with a^2 + b^3 = c^10 and gcd(a, b, c) = 1."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a * self.a + self.b ** 3 != self.c ** 10:
            raise InvalidInput(f"{self.as_tuple()} does not satisfy a^2 + b^3 = c^10")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise InvalidInput(f"{self.as_tuple()} is not primitive")
        # a primitive solution is automatically pairwise coprime
        assert math.gcd(self.a, self.b) == math.gcd(self.a, self.c) == math.gcd(self.b, self.c) == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @classmethod
    def parse(cls, text: str) -> "PrimitiveTriple":
        try:
            a, b, c = (int(s) for s in text.split(","))
        except ValueError:
            raise InvalidInput(f"triple must look like 3,-2,1, got {text!r}") from None
        return cls(a, b, c)


def frey_curve(t, primitive: bool = True) -> WeierstrassCurve:
    """E_(a,b,c): y^2 = x^3 + 3b x - 2a.

    With ``primitive=False`` any integer solution of a^2 + b^3 = c^10 is
    accepted, which is how weighted rescalings of triples are handled.
    """
    if isinstance(t, PrimitiveTriple):
        a, b, c = t.as_tuple()
    elif primitive:
        a, b, c = PrimitiveTriple(*t).as_tuple()
    else:
        a, b, c = t
        if a * a + b ** 3 != c ** 10:
            raise InvalidInput(f"{(a, b, c)} does not satisfy a^2 + b^3 = c^10")
    return WeierstrassCurve(3 * b, -2 * a)


def quadratic_twist(curve: WeierstrassCurve, d) -> WeierstrassCurve:
    """y^2 = x^3 + d a2 x^2 + d^2 a x + d^3 b."""
    d = _coerce(d, curve.field)
    if _is_zero(d):
        raise InvalidInput("twist parameter must be nonzero")
    return WeierstrassCurve(d * d * curve.a, d ** 3 * curve.b, d * curve.a2, curve.field)


def minus3_square_test(j) -> bool:
    """Whether j - 1728 is -3 times a rational square (0 included)."""
    if j is None:
        raise InvalidInput("j = infinity")
    j = to_rat(j)
    return j == 1728 or is_square_rat(-3 * (j - 1728))


# -- 2-isogenies ------------------------------------------------------------------

def kernel_at_origin(curve: WeierstrassCurve, x0) -> WeierstrassCurve:
    """Translate x -> x + x0 so that (x0, 0) becomes (0, 0): y^2 = x^3 + A x^2 + B x."""
    x0 = _coerce(x0, curve.field)
    if not _is_zero(curve.rhs(x0)):
        raise InvalidInput(f"({x0}, 0) is not a point of {curve}")
    A = 3 * x0 + curve.a2
    B = 3 * x0 * x0 + 2 * curve.a2 * x0 + curve.a
    return WeierstrassCurve(B, 0, A, curve.field)


def two_isogeny(curve: WeierstrassCurve, x0):
    """Codomain of the isogeny with kernel {O, (x0, 0)} and its j-invariant."""
    E = kernel_at_origin(curve, x0)
    A, B = E.a2, E.a
    codomain = WeierstrassCurve(A * A - 4 * B, 0, -2 * A, curve.field)
    return codomain, invariants(codomain).j


def isogeny_on_points(E: WeierstrassCurve):
    """For E: y^2 = x^3 + A x^2 + B x, the 2-isogeny with kernel <(0,0)> and its dual.

    Returns (codomain, phi, phi_hat) with phi_hat(phi(P)) = 2P.
    """
    if not (_is_zero(E.b)):
        raise InvalidInput("kernel point (0,0) needs a model with b = 0")
    A, B = E.a2, E.a
    Ep = WeierstrassCurve(A * A - 4 * B, 0, -2 * A, E.field)
    Bp = A * A - 4 * B

    def phi(P: CurvePoint) -> CurvePoint:
        if P.is_infinity or _is_zero(P.x):
            return Ep.infinity()
        x, y = P.x, P.y
        return CurvePoint(Ep, y * y / (x * x), y * (B - x * x) / (x * x))

    def phi_hat(Q: CurvePoint) -> CurvePoint:
        if Q.is_infinity or _is_zero(Q.x):
            return E.infinity()
        X, Y = Q.x, Q.y
        return CurvePoint(E, Y * Y / (4 * X * X), Y * (Bp - X * X) / (8 * X * X))

    return Ep, phi, phi_hat


# -- rational torsion ----------------------------------------------------------------

@dataclass(frozen=True)
class TorsionGroup:
    points: tuple[CurvePoint, ...]
    order: int
    structure: tuple[int, ...]  # invariant factors, e.g. (6,) or (2, 4)
    reduction_bound: int


def _short_model(curve: WeierstrassCurve):
    """(A, B, s) with x = X - s putting the curve in the form Y^2 = X^3 + A X + B."""
    s = curve.a2 / 3
    A = curve.a - curve.a2 * curve.a2 / 3
    B = curve.b - curve.a * curve.a2 / 3 + 2 * curve.a2 ** 3 / 27
    return A, B, s


def _integral_scale(A: Fraction, B: Fraction) -> int:
    """Smallest u > 0 with u^4 A and u^6 B integral."""
    u = 1
    den = math.lcm(A.denominator, B.denominator)
    for q, _ in factorint(den).items():
        k = 0
        while (A * q ** (4 * k)).denominator % q == 0 or (B * q ** (6 * k)).denominator % q == 0:
            k += 1
        u *= q ** k
    return u


def _count_points_mod(A: int, B: int, p: int) -> int:
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    total = 1
    for x in range(p):
        total += squares[(x * x * x + A * x + B) % p]
    return total


def _square_divisor_roots(n: int) -> list[int]:
    """All y >= 1 with y^2 dividing n (n nonzero)."""
    ys = [1]
    for q, e in factorint(abs(n)).items():
        ys = [y * q ** k for y in ys for k in range(e // 2 + 1)]
    return sorted(ys)


def _integer_roots_depressed_cubic(A: int, C: int) -> list[int]:
    """Integer roots of g(x) = x^3 + A x + C by bisection on monotone runs."""
    def g(x):
        return x * x * x + A * x + C

    M = 1 + max(abs(A), abs(C))
    runs = [(-M, M, 1)]
    if A < 0:
        f = math.isqrt(-A // 3)  # largest f with 3 f^2 <= -A
        runs = [(-M, -f - 1, 1), (-f, f, -1), (f + 1, M, 1)]
    roots = []
    for lo, hi, sign in runs:
        while lo < hi:
            mid = (lo + hi) // 2
            if sign * g(mid) < 0:
                lo = mid + 1
            else:
                hi = mid
        if lo <= hi and g(lo) == 0:
            roots.append(lo)
    return sorted(set(roots))


def torsion_points(curve: WeierstrassCurve) -> TorsionGroup:
    """Rational torsion via a reduction bound and the Lutz-Nagell theorem."""
    if curve.field is not None:
        raise InvalidInput("torsion is implemented over Q only")
    A, B, s = _short_model(curve)
    u = _integral_scale(A, B)
    Ai, Bi = int(A * u ** 4), int(B * u ** 6)
    D = 4 * Ai ** 3 + 27 * Bi ** 2
    bound = 0
    good = 0
    for p in primes_below(10 ** 4):
        if p < 5 or D % p == 0:
            continue
        bound = math.gcd(bound, _count_points_mod(Ai, Bi, p))
        good += 1
        if good == 2:
            break
    short = WeierstrassCurve(Ai, Bi)
    candidates = [short.infinity()]
    for y in [0] + _square_divisor_roots(D):
        for x in _integer_roots_depressed_cubic(Ai, Bi - y * y):
            candidates.append(short.point(x, y))
            if y:
                candidates.append(short.point(x, -y))
    torsion = [P for P in candidates if scalar_mul(P, bound).is_infinity]

    # back to the original coordinates: x = X/u^2 - s, y = Y/u^3
    def back(P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return curve.infinity()
        return curve.point(P.x / u ** 2 - s, P.y / u ** 3)

    orders = {P: point_order(P, bound) for P in torsion}
    n = len(torsion)
    two_torsion = sum(1 for P in torsion if orders[P] in (1, 2))
    structure = (n,) if two_torsion < 4 else (2, n // 2)
    pts = sorted((back(P) for P in torsion), key=_point_key)
    return TorsionGroup(tuple(pts), n, structure, bound)


def _point_key(P: CurvePoint):
    if P.is_infinity:
        return (0, Fraction(0), Fraction(0))
    return (1, P.x, P.y)


def torsion_closed(group: TorsionGroup) -> bool:
    s = set(group.points)
    return all(point_add(P, Q) in s for P in group.points for Q in group.points)


def curve_from_json(data: dict, field: NumberField | None = None) -> WeierstrassCurve:
    def conv(v):
        if isinstance(v, list):
            return field(v)
        return to_rat(v)

    return WeierstrassCurve(conv(data["a"]), conv(data["b"]), conv(data.get("a2", "0")), field)

