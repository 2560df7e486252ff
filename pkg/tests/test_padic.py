import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fermat2310.arith.poly import UniPoly
from fermat2310.arith.projective import RationalMapP1
from fermat2310.errors import IntegrityError, InvalidInput, SimpleRootViolation
from fermat2310.modular import j5_map
from fermat2310.padic import (MINUS_INF, PLUS_INF, R1, R2, ResidueDisc, ValueClass, brute_force_value_classes,
                              hensel_lift, map_image_all, map_image_classes, newton_polygon, padic_valuation,
                              quotient_classes, unit_part, value_classes)

from oracles import engine_classes_as_pairs, numpy_value_classes
from strategies import int_polys


def test_valuations_of_lemma_j_values():
    assert padic_valuation(Fraction(-102400, 3), 5) == 2
    assert padic_valuation(Fraction(20480, 243), 5) == 1
    assert padic_valuation(-13824, 5) == 0
    assert padic_valuation(Fraction(20480, 243), 3) == -5


def test_unit_part():
    assert unit_part(Fraction(-102400, 3), 5, 2) == (-4096 * pow(3, -1, 25)) % 25


def test_newton_polygon_of_j5_numerator_factor():
    # t^2 + 250 t + 3125 at 5: single segment from (0,5) to (2,0)
    NP = newton_polygon(UniPoly.parse("t^2+250t+3125"), 5)
    assert NP.segments == ((Fraction(-5, 2), 2),)
    assert NP.root_valuations() == [Fraction(5, 2)] * 2


def test_newton_polygon_two_slopes():
    NP = newton_polygon(UniPoly([25, 5, 1]), 5)  # x^2 + 5x + 25: slope -1 twice
    assert NP.root_valuations() == [1, 1]
    NP = newton_polygon(UniPoly([5, 1, 1]), 5)
    assert sorted(NP.root_valuations()) == [0, 1]


@given(int_polys(6, -30, 30))
def test_newton_polygon_shape(f):
    NP = newton_polygon(f, 3)
    assert sum(l for _, l in NP.segments) == f.degree - f.low_index()
    slopes = [s for s, _ in NP.segments]
    assert all(a < b for a, b in zip(slopes, slopes[1:]))


def test_hensel_sqrt_minus_one():
    r = hensel_lift(UniPoly.parse("x^2+1"), 5, 2, 6)
    assert (r.to_int() ** 2 + 1) % 5 ** 6 == 0
    assert r.to_int() % 5 == 2


def test_hensel_rejects_non_roots_and_multiple_roots():
    with pytest.raises(InvalidInput):
        hensel_lift(UniPoly.parse("x^2+1"), 5, 1, 4)
    with pytest.raises(SimpleRootViolation):
        hensel_lift(UniPoly.parse("x^2"), 5, 0, 4)


@given(st.integers(2, 9), st.sampled_from([5, 13, 17]))
def test_hensel_refinement_monotone(k, p):
    f = UniPoly.parse("x^2+1")
    r0 = [x for x in range(p) if (x * x + 1) % p == 0][0]
    hi = hensel_lift(f, p, r0, k + 1).to_int()
    lo = hensel_lift(f, p, r0, k).to_int()
    assert hi % p ** k == lo
    assert (hi * hi + 1) % p ** (k + 1) == 0


def test_value_classes_frozen():
    S = value_classes(UniPoly.parse("x^2+1"), 5, m=1, depth=4)
    assert S.complete
    assert S.valuations() == {0, 1, 2, 3}  # every valuation occurs near the two roots
    assert PLUS_INF in S.classes  # x^2 + 1 has roots in Z_5
    assert S.units_at(0) == {1, 2}


@given(int_polys(4), st.sampled_from([2, 3, 5]), st.integers(1, 2), st.integers(2, 5))
def test_value_classes_match_brute_force(f, p, m, depth):
    if depth < m:
        return
    S = value_classes(f, p, m, depth)
    assert S.complete
    assert S.classes == brute_force_value_classes(f, p, m, depth).classes
    assert engine_classes_as_pairs(S) == numpy_value_classes([int(c) for c in f.coeffs], p, m, depth)


@given(int_polys(3), int_polys(3), st.integers(1, 5), st.sampled_from([2, 3, 5]))
def test_quotient_classes_scale_invariant(f, g, lam, p):
    try:
        base = map_image_classes(RationalMapP1(f, g), p, R1, 1, 4)
    except InvalidInput:
        return
    scaled = map_image_classes(RationalMapP1(f * Fraction(lam, 7), g * Fraction(lam, 7)), p, R1, 1, 4)
    assert base.classes == scaled.classes


def test_map_image_on_charts_of_j5():
    phi = j5_map()
    r2 = map_image_classes(phi, 5, R2, 2, 12)
    # the pole of order 5 at t = 0 shows up as -inf on R1; R2 contains t = infinity (also a pole)
    assert MINUS_INF in map_image_classes(phi, 5, R1, 2, 12).classes
    assert MINUS_INF in r2.classes
    full = map_image_all(phi, 5, 2, 12)
    assert full.complete


def test_pole_order_five_at_zero():
    # on the disc t in 5^k Z_5 with unit t the valuation of j is 15 - 5(k + 0) from (5^5)^3 / t^5
    phi = j5_map()
    for k in (3, 4):
        S = map_image_classes(phi, 7, ResidueDisc(7, 0, k), 1, 14)
        # v_7(3125^3 / t^5) = -5 v(t) and v(t) >= k
        assert all(c.v <= -5 * k for c in S.finite())


def test_map_with_shared_root_is_an_integrity_error():
    phi = RationalMapP1.__new__(RationalMapP1)
    phi.numerator, phi.denominator, phi.degree = UniPoly.parse("x^2-1"), UniPoly.parse("x-1"), 2
    with pytest.raises(IntegrityError):
        map_image_classes(phi, 5)


def test_incomplete_budget_gives_superset():
    f = UniPoly.parse("x^2-17")
    tight = value_classes(f, 2, 1, 3, vcap=6)
    assert not tight.complete
    exact = value_classes(f, 2, 1, 12, vcap=6)
    assert exact.complete
    assert exact.classes <= tight.classes


def test_constant_quotients():
    assert quotient_classes(UniPoly([0]), UniPoly([1]), 5).classes == {PLUS_INF}
    assert quotient_classes(UniPoly([1]), UniPoly([0]), 5).classes == {MINUS_INF}
    S = quotient_classes(UniPoly([50]), UniPoly([3]), 5, 2, 6)
    assert S.classes == {ValueClass(2, 2 * pow(3, -1, 25) % 25)}


def test_random_sample_against_numpy():
    rng = random.Random(3)
    for _ in range(40):
        cs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))] + [rng.choice([1, 2, 5])]
        p = rng.choice([2, 3, 5])
        S = value_classes(UniPoly(cs), p, 2, 5)
        assert engine_classes_as_pairs(S) == numpy_value_classes(cs, p, 2, 5)


# -- frozen examples ---------------------------------------------------------------

def test_newton_polygon_examples():
    NP = newton_polygon(UniPoly.parse("x^2-5"), 5)
    assert NP.segments == ((Fraction(-1, 2), 2),)
    NP = newton_polygon(UniPoly.parse("x^2-1"), 3)
    assert NP.segments == ((0, 2),)


@pytest.mark.parametrize("poly,p,r0,prec,expected", [
    ("x^2-2", 7, 3, 3, 108),
    ("x-5", 3, 2, 4, 5),
    ("x^2+1", 5, 2, 2, 7),
])
def test_hensel_examples(poly, p, r0, prec, expected):
    assert hensel_lift(UniPoly.parse(poly), p, r0, prec).to_int() == expected


def test_value_class_examples():
    S = value_classes(UniPoly.parse("x^2+1"), 3, 1, 6)
    assert S.complete and S.classes == {ValueClass(0, 1), ValueClass(0, 2)}
    S = value_classes(UniPoly.parse("x"), 5, 1, 6)
    assert S.classes == {ValueClass(v, u) for v in range(6) for u in range(1, 5)} | {PLUS_INF}
    S = value_classes(UniPoly.parse("x^2+1"), 5, 1, 6)
    assert S.valuations() == set(range(6)) and PLUS_INF in S.classes


def test_j5_on_valuation_two_discs():
    # t = 25 u with u a unit: v(numerator) = 3 * 4, v(t^5) = 10
    phi = j5_map()
    for u in range(1, 5):
        S = map_image_classes(phi, 5, ResidueDisc(5, 25 * u, 3), 2, 12)
        assert S.complete and S.valuations() == {2}


def test_identity_map_matches_value_classes():
    phi = RationalMapP1(UniPoly.parse("x"), UniPoly([1]))
    assert map_image_classes(phi, 3, R1, 2, 6).classes == value_classes(UniPoly.parse("x"), 3, 2, 6).classes


def test_dividing_by_p_shifts_valuations():
    phi = RationalMapP1(UniPoly.parse("x^2"), UniPoly([3]))
    shifted = map_image_classes(phi, 3, R1, 1, 10, vcap=12)
    plain = value_classes(UniPoly.parse("x^2"), 3, 1, 10, vcap=12)
    # compare away from the window edge
    assert ({(c.v, c.u) for c in shifted.finite() if c.v < 10}
            == {(c.v - 1, c.u) for c in plain.finite() if c.v - 1 < 10})
