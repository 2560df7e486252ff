"""Moebius transformations of P^1 and three-point descent of maps to the j-line.

A Moebius map z -> (a1 z + a2) / (a3 z + a4) is a 2x2 matrix up to scalars.
It is stored with its first nonzero coefficient (in the order a1, a2, a3,
a4) scaled to 1, so that equality and rationality are tests on the stored
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith.numfield import NFElem, NumberField, nf_is_rational
from .arith.poly import UniPoly, poly_discriminant, rational_roots
from .arith.projective import ProjPoint, RationalMapP1
from .arith.rational import is_square_rat, to_rat
from .elliptic import WeierstrassCurve, two_isogeny
from .errors import DescentFailure, InvalidInput


def _field_of(values) -> NumberField | None:
    fields = {v.field for v in values if isinstance(v, NFElem)}
    if len(fields) > 1:
        raise InvalidInput("coefficients from different fields")
    return fields.pop() if fields else None


def _lift(x, field: NumberField | None):
    if isinstance(x, NFElem):
        return x
    x = to_rat(x)
    return field(x) if field is not None else x


def as_point(z, field: NumberField | None = None) -> ProjPoint:
    """None means infinity; ProjPoints pass through; values become [z : 1]."""
    if isinstance(z, ProjPoint):
        return z
    if z is None:
        return ProjPoint.infinity(field)
    return ProjPoint(_lift(z, field), _lift(1, field))


class Moebius:
    __slots__ = ("coeffs", "field")

    def __init__(self, a1, a2, a3, a4, field: NumberField | None = None):
        field = field or _field_of((a1, a2, a3, a4))
        cs = [_lift(c, field) for c in (a1, a2, a3, a4)]
        if cs[0] * cs[3] - cs[1] * cs[2] == 0:
            raise InvalidInput("Moebius matrix is singular")
        lead = next(c for c in cs if c != 0)
        self.coeffs = tuple(c / lead for c in cs)
        self.field = field

    @classmethod
    def identity(cls, field: NumberField | None = None) -> "Moebius":
        return cls(1, 0, 0, 1, field)

    def det(self):
        a1, a2, a3, a4 = self.coeffs
        return a1 * a4 - a2 * a3

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        a1, a2, a3, a4 = self.coeffs
        return f"Moebius(({a1})z + ({a2}) / ({a3})z + ({a4}))"

    def __call__(self, P) -> ProjPoint:
        return apply(self, P)

    def to_json(self) -> list:
        from .arith.numfield import elem_to_json
        return [elem_to_json(c) for c in self.coeffs]


def apply(phi: Moebius, P) -> ProjPoint:
    P = as_point(P, phi.field)
    a1, a2, a3, a4 = phi.coeffs
    return ProjPoint(a1 * P.x + a2 * P.y, a3 * P.x + a4 * P.y)


def compose(phi: Moebius, psi: Moebius) -> Moebius:
    """phi o psi."""
    a1, a2, a3, a4 = phi.coeffs
    b1, b2, b3, b4 = psi.coeffs
    field = phi.field or psi.field
    return Moebius(a1 * b1 + a2 * b3, a1 * b2 + a2 * b4, a3 * b1 + a4 * b3, a3 * b2 + a4 * b4, field)


def invert(phi: Moebius) -> Moebius:
    a1, a2, a3, a4 = phi.coeffs
    return Moebius(a4, -a2, -a3, a1, phi.field)


@dataclass(frozen=True)
class Correspondence:
    sources: tuple[ProjPoint, ProjPoint, ProjPoint]
    targets: tuple[ProjPoint, ProjPoint, ProjPoint]

    def __post_init__(self):
        if len(self.sources) != 3 or len(self.targets) != 3:
            raise InvalidInput("a correspondence needs exactly three pairs")
        for side in (self.sources, self.targets):
            if side[0] == side[1] or side[0] == side[2] or side[1] == side[2]:
                raise InvalidInput("points on each side must be distinct")

    @classmethod
    def of(cls, sources, targets, field: NumberField | None = None) -> "Correspondence":
        vals = [v for v in list(sources) + list(targets) if isinstance(v, NFElem)]
        vals += [pt.x for pt in list(sources) + list(targets) if isinstance(pt, ProjPoint)]
        field = field or _field_of(vals)
        return cls(tuple(as_point(s, field) for s in sources), tuple(as_point(t, field) for t in targets))


def _frame(P1: ProjPoint, P2: ProjPoint, P3: ProjPoint, field) -> Moebius:
    """The Moebius map sending [1:0], [0:1], [1:1] to P1, P2, P3."""
    det = P1.x * P2.y - P2.x * P1.y
    if det == 0:
        raise InvalidInput("degenerate correspondence")
    lam = (P3.x * P2.y - P2.x * P3.y) / det
    mu = (P1.x * P3.y - P3.x * P1.y) / det
    if lam == 0 or mu == 0:
        raise InvalidInput("degenerate correspondence")
    return Moebius(lam * P1.x, mu * P2.x, lam * P1.y, mu * P2.y, field)


def moebius_from_three(c: Correspondence) -> Moebius:
    """The unique Moebius map with phi(source_i) = target_i."""
    field = _field_of([c.sources[0].x, c.targets[0].x, c.sources[1].x, c.targets[1].x,
                       c.sources[2].x, c.targets[2].x])
    src = _frame(*c.sources, field)
    tgt = _frame(*c.targets, field)
    return compose(tgt, invert(src))


def is_rational_map(phi: Moebius) -> Moebius | None:
    """The same map over Q when all canonically scaled coefficients are rational."""
    qs = [nf_is_rational(c) for c in phi.coeffs]
    if any(q is None for q in qs):
        return None
    return Moebius(*qs)


# -- maps of P^1 composed with Moebius maps ---------------------------------------------

def compose_map_moebius(g: RationalMapP1, mu: Moebius) -> RationalMapP1:
    """g o mu for a map g given by a homogeneous pair of degree n."""
    a1, a2, a3, a4 = mu.coeffs
    X = UniPoly([a2, a1])
    Y = UniPoly([a4, a3])
    n = g.degree
    xs = [UniPoly([1])]
    ys = [UniPoly([1])]
    for _ in range(n):
        xs.append(xs[-1] * X)
        ys.append(ys[-1] * Y)

    def hom(f: UniPoly) -> UniPoly:
        acc = UniPoly([])
        for i, c in enumerate(f.coeffs):
            if c != 0:
                acc = acc + xs[i] * ys[n - i] * c
        return acc

    return RationalMapP1(hom(g.numerator), hom(g.denominator), n)


def map_coefficients(g: RationalMapP1) -> list:
    n = g.degree
    return [g.numerator[i] for i in range(n + 1)] + [g.denominator[i] for i in range(n + 1)]


def normalise_map(g: RationalMapP1) -> RationalMapP1:
    """Scale so that the first nonzero coefficient (numerator first) is 1."""
    lead = next(c for c in map_coefficients(g) if c != 0)
    inv = 1 / lead
    return RationalMapP1(g.numerator * inv, g.denominator * inv, g.degree)


def rational_model(g: RationalMapP1) -> RationalMapP1 | None:
    """The map over Q if its normalised coefficients are all rational."""
    h = normalise_map(g)
    qs = [nf_is_rational(c) for c in map_coefficients(h)]
    if any(q is None for q in qs):
        return None
    n = h.degree
    return RationalMapP1(UniPoly(qs[:n + 1]), UniPoly(qs[n + 1:]), n)


def branch_polynomial(g: RationalMapP1) -> UniPoly:
    """Monic polynomial in j whose roots are the finite branch values of g over Q.

    It is the discriminant of N(x) - j D(x) as a binary form of degree n,
    which changes only by a nonzero scalar under a Moebius change of the
    source.  Computed by interpolation at values of j where the form keeps
    full degree.
    """
    n = g.degree
    if n < 2:
        raise InvalidInput("branch polynomial needs degree at least 2")
    if not (g.numerator.is_rational() and g.denominator.is_rational()):
        raise InvalidInput("branch polynomial is implemented for maps over Q")
    pts, vals = [], []
    j = 0
    while len(pts) < 2 * n - 1:
        h = g.numerator - g.denominator * j
        if h.degree == n:
            pts.append(Fraction(j))
            vals.append(poly_discriminant(h))
        j += 1
    poly = UniPoly([])
    for i, xi in enumerate(pts):
        basis = UniPoly([1], "j")
        denom = Fraction(1)
        for k, xk in enumerate(pts):
            if k != i:
                basis = basis * UniPoly([-xk, 1], "j")
                denom *= xi - xk
        poly = poly + basis * (vals[i] / denom)
    return UniPoly(poly.monic().coeffs, "j")


# -- 2-torsion data and descent -------------------------------------------------

@dataclass(frozen=True)
class TwoTorsionData:
    curve: WeierstrassCurve
    field: NumberField | None  # None means the 2-torsion is rational
    roots: tuple
    isogenous: tuple[WeierstrassCurve, WeierstrassCurve, WeierstrassCurve]
    j_invariants: tuple

    @property
    def degree(self) -> int:
        return 1 if self.field is None else self.field.degree

    def j_symmetric_functions(self) -> tuple:
        j1, j2, j3 = self.j_invariants
        return (j1 + j2 + j3, j1 * j2 + j1 * j3 + j2 * j3, j1 * j2 * j3)

    def galois_stable(self) -> bool:
        return all(nf_is_rational(s) is not None for s in self.j_symmetric_functions())


def _split_quadratic(q: UniPoly):
    """Roots of a rational monic quadratic in Q or in Q[x]/(q)."""
    B = q[1]
    roots = rational_roots(q)
    if roots:
        return None, (roots[0], roots[1])
    K = NumberField(UniPoly(q.coeffs), name="a")
    alpha = K.gen
    return K, (alpha, -B - alpha)


def _splitting_field_of_cubic(f: UniPoly):
    """(field or None, the three roots) for a rational monic cubic with distinct roots."""
    a2, a1 = f[2], f[1]
    roots = rational_roots(f)
    if len(roots) == 3:
        return None, tuple(roots)
    if len(roots) == 1:
        r = roots[0]
        q = f.exact_div(UniPoly([-r, 1]))
        K, (s, t) = _split_quadratic(q)
        return K, (K(r), s, t)
    d = poly_discriminant(f)
    if is_square_rat(d):
        K = NumberField(UniPoly(f.coeffs), name="a")
        alpha = K.gen
        sq = Fraction(_isqrt_rat(d))
        fp = 3 * alpha * alpha + 2 * a2 * alpha + a1
        s = sq * fp.inverse()
        B = alpha + a2
        return K, (alpha, (-B + s) / 2, (-B - s) / 2)
    # degree 6: theta = alpha + k sqrt(d); f(x + k sqrt d) = A(x) + sqrt(d) B(x)
    for k in range(1, 50):
        A, Bp = _split_shift(f, Fraction(k), d)
        m = A * A - Bp * Bp * d
        try:
            K = NumberField(m.monic(), name="a")
        except InvalidInput:
            continue
        theta = K.gen
        sqrt_d = A(theta) / Bp(theta)
        assert sqrt_d * sqrt_d == d
        alpha = theta - sqrt_d * k
        fp = 3 * alpha * alpha + 2 * a2 * alpha + a1
        s = sqrt_d * fp.inverse()
        B = alpha + a2
        return K, (alpha, (-B + s) / 2, (-B - s) / 2)
    raise ArithmeticError("no primitive element found")


def _isqrt_rat(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def _split_shift(f: UniPoly, k: Fraction, d: Fraction) -> tuple[UniPoly, UniPoly]:
    """A, B with f(x + k w) = A(x) + w B(x) where w^2 = d."""
    # powers of (x + k w) as pairs (P, Q) meaning P + w Q
    A, B = UniPoly([]), UniPoly([])
    P, Q = UniPoly([1]), UniPoly([])
    for c in f.coeffs:
        A, B = A + P * c, B + Q * c
        # multiply (P + wQ)(x + k w) = (xP + k d Q) + w (k P + x Q)
        x = UniPoly([0, 1])
        P, Q = x * P + Q * (k * d), P * k + x * Q
    return A, B


def two_torsion_data(E: WeierstrassCurve) -> TwoTorsionData:
    """Splitting field of the 2-division cubic, its roots and the three 2-isogenous curves."""
    if E.field is not None:
        raise InvalidInput("two_torsion_data expects a curve over Q")
    f = E.cubic()
    K, roots = _splitting_field_of_cubic(f)
    EK = E if K is None else WeierstrassCurve(K(E.a), K(E.b), K(E.a2), K)
    isog, js = [], []
    for r in roots:
        Ei, ji = two_isogeny(EK, r)
        isog.append(Ei)
        js.append(ji)
    for r in roots:
        assert EK.rhs(r) == 0
    return TwoTorsionData(E, K, tuple(roots), tuple(isog), tuple(js))


@dataclass(frozen=True)
class TransportResult:
    model: RationalMapP1
    phi_prime: Moebius
    phi_prime_rational: bool


def transport_map(g: RationalMapP1, data: TwoTorsionData, marked) -> TransportResult:
    """Descend g o (phi')^-1 to Q, where phi' sends the marked points to [r_i : 1].

    ``marked`` are the three points of g's source representing the images
    of the isogeny points; they are matched with the roots in order.
    """
    field = data.field
    sources = [as_point(P, field) for P in marked]
    targets = [as_point(r, field) for r in data.roots]
    phi_p = moebius_from_three(Correspondence(tuple(sources), tuple(targets)))
    g2 = compose_map_moebius(g, invert(phi_p))
    model = rational_model(g2)
    if model is None:
        h = normalise_map(g2)
        bad = next(c for c in map_coefficients(h) if nf_is_rational(c) is None)
        raise DescentFailure(f"composition is not defined over Q: coefficient {bad}", witness=bad)
    return TransportResult(model, phi_p, is_rational_map(phi_p) is not None)
