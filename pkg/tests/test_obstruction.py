import random
from fractions import Fraction

import pytest

from fermat2310.arith.projective import RationalMapP1
from fermat2310.errors import IndeterminateError
from fermat2310.modular import j5_map
from fermat2310.obstruction import (DISJOINT, INCONCLUSIVE, INTERSECTING, attainable_valuations,
                                    brute_force_j_classes_integral, brute_force_j_classes_modular, compare_images,
                                    obstruction_test, primitive_j_classes, v_divisibility_filter)
from fermat2310.padic import ValueClass, ValueClassSet, classes_from_values


@pytest.fixture(scope="module")
def image5():
    return primitive_j_classes(5, 2, 12)


def test_p5_valuations(image5):
    vals = image5.valuations()
    assert image5.complete
    assert vals == {-10, 0, 3, 6, 9}
    assert 1 not in vals and 2 not in vals
    assert all(v % 3 == 0 or v % 10 == 0 for v in vals)
    # (3, -2, 1) has j = -13824, a 5-adic unit
    assert ValueClass(0, (-13824) % 25) in image5.classes


def test_p3_has_no_unit_j():
    S = primitive_j_classes(3, 2, 12)
    assert 0 not in S.valuations()
    assert S.valuations() == {-7, 3, 6, 9}


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_closed_form_valuations(p):
    S = primitive_j_classes(p, 1, 10)
    assert S.complete
    assert S.valuations() == attainable_valuations(p, S.vcap)


@pytest.mark.parametrize("p,m,depth", [(2, 1, 4), (2, 2, 4), (3, 1, 4), (3, 2, 4), (5, 1, 3), (5, 2, 3)])
def test_engine_matches_residue_enumeration(p, m, depth):
    S = primitive_j_classes(p, m, depth)
    B, coprime = brute_force_j_classes_modular(p, m, S.vcap, depth)
    assert coprime
    assert B == S.classes


@pytest.mark.parametrize("p,m,depth,K", [(2, 1, 4, 5), (2, 2, 4, 5), (3, 1, 4, 3), (3, 2, 4, 3), (5, 2, 4, 2)])
def test_engine_matches_integer_points(p, m, depth, K):
    S = primitive_j_classes(p, m, depth)
    assert brute_force_j_classes_integral(p, m, S.vcap, K) == S.classes


def test_constant_map_verdicts(image5):
    for j, expected in [("-102400/3", DISJOINT), ("20480/243", DISJOINT), ("-13824", INTERSECTING)]:
        rep = obstruction_test(RationalMapP1.constant(j), 5, triple_image=image5)
        assert rep.verdict == expected, j


def test_j5_map_intersects(image5):
    rep = obstruction_test(j5_map(), 5, triple_image=image5)
    assert rep.verdict == INTERSECTING
    assert rep.witnesses
    assert {c.v for c in rep.witnesses} <= image5.valuations()


def test_verdict_monotone_in_depth():
    for j in ("-102400/3", "20480/243", "-13824", "1728"):
        phi = RationalMapP1.constant(j)
        seen = [obstruction_test(phi, 5, 2, d).verdict for d in (4, 6, 8, 10)]
        for a, b in zip(seen, seen[1:]):
            assert not (a == DISJOINT and b == INTERSECTING)
            assert a == b or a == INCONCLUSIVE


def test_constant_maps_agree_with_filter_and_units(image5):
    rng = random.Random(20)
    for _ in range(20):
        j = Fraction(rng.choice([-1, 1]) * rng.randint(1, 5 ** 6), rng.randint(1, 5 ** 4))
        if j == 0:
            continue
        rep = obstruction_test(RationalMapP1.constant(j), 5, triple_image=image5)
        (cls,) = classes_from_values([j], 5, 2, image5.vcap)
        if not v_divisibility_filter(j, 5):
            assert rep.verdict == DISJOINT
        else:
            assert rep.verdict == (INTERSECTING if cls in image5.classes else DISJOINT)


def test_filter_examples():
    assert not v_divisibility_filter(Fraction(-102400, 3), 5)
    assert not v_divisibility_filter(Fraction(20480, 243), 5)
    assert v_divisibility_filter(-13824, 5)
    assert v_divisibility_filter(Fraction(1, 5 ** 10), 5)
    with pytest.raises(IndeterminateError):
        v_divisibility_filter(0, 5)
    # general p goes through the engine
    assert not v_divisibility_filter(1728 * 3, 3)
    assert v_divisibility_filter(1728, 3)


def test_incomplete_side_never_gives_disjoint():
    a = ValueClassSet(5, 1, 4, frozenset({ValueClass(1, 1)}), complete=False)
    b = ValueClassSet(5, 1, 4, frozenset({ValueClass(0, 1)}), complete=True)
    assert compare_images(a, b)[0] == INCONCLUSIVE
    assert compare_images(b, b)[0] == INTERSECTING
    c = ValueClassSet(5, 1, 4, frozenset({ValueClass(2, 1)}), complete=True)
    assert compare_images(b, c)[0] == DISJOINT


def test_depth_budget_marks_incomplete():
    S = primitive_j_classes(5, 2, 3, vcap=8)
    assert not S.complete
    assert primitive_j_classes(5, 2, 12, vcap=8).classes <= S.classes
