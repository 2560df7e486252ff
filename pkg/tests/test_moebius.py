import random
from fractions import Fraction

import pytest

from fermat2310.arith.poly import UniPoly
from fermat2310.arith.projective import RationalMapP1
from fermat2310.elliptic import WeierstrassCurve
from fermat2310.errors import DescentFailure, InvalidInput
from fermat2310.moebius import (Correspondence, Moebius, apply, as_point, branch_polynomial, compose,
                                compose_map_moebius, invert, is_rational_map, moebius_from_three, transport_map,
                                two_torsion_data)

from moebius_cases import (QUADRATIC_FIELDS, TRANSPORT_CURVES, distinct_points, rand_moebius, transport_case)


def test_classical_maps():
    one = moebius_from_three(Correspondence.of([0, 1, None], [1, 0, None]))
    assert one == Moebius(-1, 1, 0, 1)  # z -> 1 - z
    inv = moebius_from_three(Correspondence.of([0, 1, None], [None, 1, 0]))
    assert inv == Moebius(0, 1, 1, 0)  # z -> 1 / z
    assert apply(compose(one, inv), as_point(2)) == as_point(Fraction(1, 2))


def test_degenerate_correspondence():
    with pytest.raises(InvalidInput):
        Correspondence.of([0, 0, 1], [1, 2, 3])
    with pytest.raises(InvalidInput):
        Moebius(1, 2, 2, 4)


def test_interpolation_over_q_and_quadratic_fields():
    rng = random.Random(1)
    for i in range(100):
        K = None if i % 2 == 0 else QUADRATIC_FIELDS[i % 3]
        src, tgt = distinct_points(rng, K), distinct_points(rng, K)
        phi = moebius_from_three(Correspondence(tuple(src), tuple(tgt)))
        assert [apply(phi, P) for P in src] == tgt
        # uniqueness: any ordering of the pairs gives the same canonical map
        perm = [2, 0, 1]
        psi = moebius_from_three(Correspondence(tuple(src[k] for k in perm), tuple(tgt[k] for k in perm)))
        assert psi == phi


def test_group_laws():
    rng = random.Random(2)
    for i in range(60):
        K = None if i % 3 == 0 else QUADRATIC_FIELDS[i % 3]
        a, b, c = (rand_moebius(rng, K) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))
        assert compose(a, invert(a)) == Moebius.identity(K)
        assert compose(invert(a), a) == Moebius.identity(K)
        P = distinct_points(rng, K, 1)[0]
        assert apply(compose(a, b), P) == apply(a, apply(b, P))


def test_rationality_detection():
    assert is_rational_map(Moebius(2, 4, 6, 10)) == Moebius(1, 2, 3, 5)
    K = QUADRATIC_FIELDS[0]
    a = K.gen
    assert is_rational_map(Moebius(a, 2 * a, 3 * a, 5 * a, field=K)) == Moebius(1, 2, 3, 5)
    assert is_rational_map(Moebius(1, a, 0, 1, field=K)) is None


def test_compose_map_moebius():
    g = RationalMapP1(UniPoly.parse("x^2"), UniPoly.parse("1"), 2)
    h = compose_map_moebius(g, Moebius(0, 1, 1, 0))  # g(1/z) = 1/z^2
    assert h == RationalMapP1(UniPoly.parse("1"), UniPoly.parse("x^2"), 2)


@pytest.mark.parametrize("cubic,degree", [("x^3-x", 1), ("x^3-6x-6", 6), ("x^3+4x", 2), ("x^3-2", 6),
                                          ("x^3-7x+7", 3), ("x^3-3x^2+2x-6", 2)])
def test_two_torsion_degrees(cubic, degree):
    f = UniPoly.parse(cubic)
    E = WeierstrassCurve(f[1], f[0], f[2])
    data = two_torsion_data(E)
    assert data.degree == degree
    assert data.galois_stable()
    for r in data.roots:
        assert E.cubic()(r) == 0
    assert len(set(data.roots)) == 3


def test_branch_polynomial_invariant_under_rational_moebius():
    g = RationalMapP1(UniPoly.parse("x^3-3x"), UniPoly.parse("x^2+1"), 3)
    h = compose_map_moebius(g, Moebius(2, 1, 1, 3))
    assert branch_polynomial(g) == branch_polynomial(h)


def test_transport_round_trips():
    rng = random.Random(3)
    data = [two_torsion_data(E) for E in TRANSPORT_CURVES]
    for i in range(8):
        d = data[i % len(data)]
        g, marked, expected, g0 = transport_case(rng, d)
        res = transport_map(g, d, marked)
        assert res.model == expected
        assert branch_polynomial(res.model) == branch_polynomial(g0)


def test_transport_failure_has_witness():
    rng = random.Random(4)
    d = two_torsion_data(WeierstrassCurve(4, 0))
    g, marked, _, _ = transport_case(rng, d)
    # an unrelated third marked point breaks rationality of the transported map
    K = d.field
    bad = [marked[0], marked[1], as_point(K.gen * 7 + 1, K)]
    with pytest.raises(DescentFailure) as info:
        transport_map(g, d, bad)
    assert info.value.witness is not None
