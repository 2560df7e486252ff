"""Random Moebius data shared by the Moebius tests and the acceptance suite."""

from fractions import Fraction

from fermat2310.arith.numfield import NumberField
from fermat2310.arith.poly import UniPoly, poly_gcd
from fermat2310.arith.projective import RationalMapP1
from fermat2310.elliptic import WeierstrassCurve
from fermat2310.moebius import Moebius, apply, as_point, compose, compose_map_moebius, invert, two_torsion_data

QUADRATIC_FIELDS = [NumberField(UniPoly.parse("x^2+3")), NumberField(UniPoly.parse("x^2-2")),
                    NumberField(UniPoly.parse("x^2+1"))]


def rand_rat(rng, h=9):
    return Fraction(rng.randint(-h, h), rng.randint(1, 4))


def rand_elem(rng, K):
    if K is None:
        return rand_rat(rng)
    return K([rand_rat(rng) for _ in range(K.degree)])


def rand_point(rng, K, allow_inf=True):
    if allow_inf and rng.random() < 0.1:
        return as_point(None, K)
    return as_point(rand_elem(rng, K), K)


def distinct_points(rng, K, n=3):
    pts = []
    while len(pts) < n:
        P = rand_point(rng, K)
        if P not in pts:
            pts.append(P)
    return pts


def rand_moebius(rng, K):
    while True:
        c = [rand_elem(rng, K) for _ in range(4)]
        if c[0] * c[3] - c[1] * c[2] != 0:
            return Moebius(*c, field=K)


def rand_rational_map(rng, degree):
    while True:
        num = UniPoly([rng.randint(-5, 5) for _ in range(degree + 1)])
        den = UniPoly([rng.randint(-5, 5) for _ in range(degree + 1)])
        if num.is_zero() or den.is_zero() or max(num.degree, den.degree) != degree:
            continue
        if poly_gcd(num, den).degree > 0:
            continue
        return RationalMapP1(num, den, degree)


# curves with 2-torsion field of degree 1, 2, 6 and 3
TRANSPORT_CURVES = [WeierstrassCurve(-1, 0), WeierstrassCurve(4, 0), WeierstrassCurve(-6, -6),
                    WeierstrassCurve(-7, 7)]


def transport_case(rng, data):
    """(g, marked, expected) with transport_map(g, data, marked).model == expected."""
    K = data.field
    g0 = rand_rational_map(rng, rng.choice([2, 3]))
    while True:
        rho = Moebius(*[rand_rat(rng) for _ in range(4)])
        if rho.det() != 0:
            break
    mu = rand_moebius(rng, K)
    g = compose_map_moebius(g0, invert(mu))
    both = compose(mu, rho if K is None else Moebius(*[K(c) for c in rho.coeffs], field=K))
    marked = [apply(both, as_point(r, K)) for r in data.roots]
    expected = compose_map_moebius(g0, rho)
    return g, marked, expected, g0


def torsion_data_cache():
    return [two_torsion_data(E) for E in TRANSPORT_CURVES]
