"""Local obstructions: p-adic j-images of primitive triples versus a map to the j-line.

A primitive triple (a, b, c) over Z_p is determined, up to the sign of a,
by a pair (b, c) of p-adic integers that are not both divisible by p and
for which c^10 - b^3 is a square in Z_p.  (If p divides b and c it divides
a, so primitivity only constrains b and c.)  The j-invariant is
1728 b^3 / c^10.

``primitive_j_classes`` explores boxes b0 + p^sb Z_p  x  c0 + p^sc Z_p.
On a box it decides two things separately:

* whether the j-class is constant on the box (or is beyond the valuation
  window, giving a marker), and
* whether the box contains a point with c^10 - b^3 a square.

Since c^10 - b^3 is a sum of a function of b and a function of c, its local
expansion on a box splits into a b-part and a c-part, which makes the
square-class and Hensel tests below cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith.projective import RationalMapP1
from .arith.rational import INF, legendre, to_rat, vp_int
from .errors import IndeterminateError
from .padic import (DEFAULT_DEPTH, DEFAULT_M, MINUS_INF, PLUS_INF, ValueClass, ValueClassSet,
                    _all_units, _check_prime, _default_vcap, classes_from_values, map_image_all,
                    padic_valuation)
from .workers import pmap


def is_padic_square_int(n: int, p: int) -> bool:
    """Whether the integer n is a square in Z_p (0 counts as a square)."""
    if n == 0:
        return True
    v = vp_int(n, p)
    if v % 2:
        return False
    w = n // p ** v
    if p == 2:
        return w % 8 == 1
    return legendre(w, p) == 1


def _square_precision(p: int) -> int:
    # a unit congruent to 1 mod p^e is a square
    return 3 if p == 2 else 1


@dataclass(frozen=True)
class Box:
    b0: int
    sb: int
    c0: int
    sc: int


def _j_constants(p: int) -> tuple[int, int]:
    v = vp_int(1728, p)
    return v, 1728 // p ** v


def _j_state(box: Box, p: int, m: int, vcap: int):
    """('emit', ValueClass) when the j-class is constant on the box, else ('refine', coordinate)."""
    v1728, u1728 = _j_constants(p)
    b_exact = box.b0 % p ** box.sb != 0
    c_exact = box.c0 % p ** box.sc != 0
    vb = vp_int(box.b0, p) if b_exact else None
    vc = vp_int(box.c0, p) if c_exact else None
    if b_exact and c_exact:
        v = v1728 + 3 * vb - 10 * vc
        if v >= vcap:
            return ("emit", PLUS_INF)
        if v <= -vcap:
            return ("emit", MINUS_INF)
        if box.sb - vb < m:
            return ("refine", "b")
        if box.sc - vc < m:
            return ("refine", "c")
        mod = p ** m
        ub = (box.b0 // p ** vb) % mod
        uc = (box.c0 // p ** vc) % mod
        u = u1728 * pow(ub, 3, mod) * pow(pow(uc, 10, mod), -1, mod) % mod
        return ("emit", ValueClass(v, u))
    if c_exact:
        # b is only known to be divisible by p^sb
        if v1728 + 3 * box.sb - 10 * vc >= vcap:
            return ("emit", PLUS_INF)
        return ("refine", "b")
    if b_exact:
        if v1728 + 3 * vb - 10 * box.sc <= -vcap:
            return ("emit", MINUS_INF)
        return ("refine", "c")
    return ("refine", "b" if box.sb <= box.sc else "c")


def _expansion(box: Box, p: int):
    """delta0 and the local coefficients of the b-part and c-part of c^10 - b^3."""
    delta0 = box.c0 ** 10 - box.b0 ** 3
    beta = [-math.comb(3, i) * box.b0 ** (3 - i) * p ** (i * box.sb) for i in range(1, 4)]
    gamma = [math.comb(10, i) * box.c0 ** (10 - i) * p ** (i * box.sc) for i in range(1, 11)]
    return delta0, beta, gamma


def _hensel_root(delta0: int, coeffs: list[int], p: int) -> bool:
    """delta0 + sum coeffs[i-1] t^i has a root in Z_p by a simple-root argument."""
    v1 = vp_int(coeffs[0], p)
    if v1 == INF:
        return False
    if any(vp_int(c, p) <= v1 for c in coeffs[1:]):
        return False
    return vp_int(delta0, p) >= v1


def _validity(box: Box, p: int):
    """('yes' | 'no' | 'unknown', coordinate whose refinement helps)."""
    delta0, beta, gamma = _expansion(box, p)
    vbeta = min(vp_int(c, p) for c in beta)
    vgamma = min(vp_int(c, p) for c in gamma)
    mu = min(vbeta, vgamma)
    which = "b" if vbeta < vgamma or (vbeta == vgamma and box.sb <= box.sc) else "c"
    if delta0 == 0:
        return "yes", which
    if vp_int(delta0, p) + _square_precision(p) <= mu:
        return ("yes" if is_padic_square_int(delta0, p) else "no"), which
    if is_padic_square_int(delta0, p):
        return "yes", which
    if _hensel_root(delta0, beta, p) or _hensel_root(delta0, gamma, p):
        return "yes", which
    return "unknown", which


def _children(box: Box, p: int, coord: str) -> list[Box]:
    if coord == "b":
        return [Box(box.b0 + j * p ** box.sb, box.sb + 1, box.c0, box.sc) for j in range(p)]
    return [Box(box.b0, box.sb, box.c0 + j * p ** box.sc, box.sc + 1) for j in range(p)]


def _conservative(p: int, m: int, vcap: int) -> set[ValueClass]:
    units = _all_units(p, m)
    out = {PLUS_INF, MINUS_INF}
    for v in range(-vcap + 1, vcap):
        out.update(ValueClass(v, u) for u in units)
    return out


def _explore(args) -> tuple[set[ValueClass], bool, int]:
    root, p, m, depth, vcap = args
    found: set[ValueClass] = set()
    complete = True
    visited = 0
    stack = [root]
    while stack:
        box = stack.pop()
        visited += 1
        state, what = _j_state(box, p, m, vcap)
        valid, which = _validity(box, p)
        if valid == "no":
            continue
        if state == "emit":
            if valid == "yes":
                found.add(what)
                continue
            coord = which
        else:
            coord = what
        s = box.sb if coord == "b" else box.sc
        if s >= depth:
            other = "c" if coord == "b" else "b"
            if (box.sc if other == "c" else box.sb) < depth and state == "emit":
                coord = other
            else:
                complete = False
                found |= {what} if state == "emit" else _conservative(p, m, vcap)
                continue
        stack.extend(_children(box, p, coord))
    return found, complete, visited


def primitive_j_classes(p: int, m: int = DEFAULT_M, depth: int = DEFAULT_DEPTH,
                        vcap: int | None = None, workers: int | None = None) -> ValueClassSet:
    """Value classes of 1728 b^3 / c^10 over primitive Z_p-solutions of a^2 + b^3 = c^10."""
    _check_prime(p)
    vcap = _default_vcap(depth, m, vcap)
    roots = [Box(b0, 1, c0, 1) for c0 in range(p) for b0 in range(p) if (b0, c0) != (0, 0)]
    results = pmap(_explore, [(r, p, m, depth, vcap) for r in roots], workers)
    found: set[ValueClass] = set()
    complete = True
    for f, c, _ in results:
        found |= f
        complete = complete and c
    return ValueClassSet(p, m, vcap, frozenset(found), complete)


# -- reference enumerations ------------------------------------------------------------

def brute_force_j_classes_integral(p: int, m: int, vcap: int, K: int) -> set[ValueClass]:
    """Classes realised by integer pairs 0 <= b, c < p^K (each an honest Z_p point)."""
    N = p ** K
    vals = []
    for c in range(N):
        c10 = c ** 10
        for b in range(N):
            if b % p == 0 and c % p == 0:
                continue
            if is_padic_square_int(c10 - b ** 3, p):
                vals.append(None if c == 0 else Fraction(1728 * b ** 3, c10))
    return classes_from_values(vals, p, m, vcap)


def brute_force_j_classes_modular(p: int, m: int, vcap: int, k: int) -> tuple[set[ValueClass], bool]:
    """Classes from residue triples (a, b, c) mod p^k that lift by Hensel's lemma.

    A residue solution lifts when some partial derivative of
    a^2 + b^3 - c^10 has valuation w with 2w < k; the lifted point agrees
    with the residue modulo p^(k-w), which fixes j-classes on that box.
    Also reports whether every witness had p dividing at most one of a, b, c.
    """
    N = p ** k
    squares: dict[int, list[int]] = {}
    for a in range(N):
        squares.setdefault(a * a % N, []).append(a)
    out: set[ValueClass] = set()
    coprime_ok = True
    for b in range(N):
        for c in range(N):
            if b % p == 0 and c % p == 0:
                continue
            for a in squares.get((c ** 10 - b ** 3) % N, ()):
                w = min(vp_int(2 * a % N, p), vp_int(3 * b * b % N, p), vp_int(10 * c ** 9 % N, p))
                w = min(w, k)
                if 2 * w >= k:
                    continue
                if sum(1 for x in (a, b, c) if x % p == 0) > 1:
                    coprime_ok = False
                kk = k - w
                state, cls = _j_state(Box(b % p ** kk, kk, c % p ** kk, kk), p, m, vcap)
                if state == "emit":
                    out.add(cls)
    return out, coprime_ok


# -- obstruction verdicts ------------------------------------------------------------

DISJOINT = "disjoint"
INTERSECTING = "intersecting"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ObstructionReport:
    p: int
    m: int
    map_image: ValueClassSet
    triple_image: ValueClassSet
    verdict: str
    witnesses: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "verdict": self.verdict,
            "witnesses": [c.to_json() for c in self.witnesses],
            "map_image": self.map_image.to_json(),
            "triple_image": self.triple_image.to_json(),
        }


def compare_images(map_image: ValueClassSet, triple_image: ValueClassSet) -> tuple[str, tuple]:
    """Verdict for two value sets.

    Markers only say that some point lies beyond the valuation window, so a
    shared marker is never evidence either way.
    """
    common_finite = map_image.finite() & triple_image.finite()
    common_markers = map_image.markers() & triple_image.markers()
    both_complete = map_image.complete and triple_image.complete
    witnesses = tuple(sorted(common_finite, key=ValueClass.sort_key))
    if common_finite:
        verdict = INTERSECTING if both_complete else INCONCLUSIVE
    elif common_markers or not both_complete:
        verdict = INCONCLUSIVE
        witnesses = tuple(sorted(common_markers, key=ValueClass.sort_key))
    else:
        verdict = DISJOINT
    return verdict, witnesses


def obstruction_test(phi: RationalMapP1, p: int, m: int = DEFAULT_M, depth: int = DEFAULT_DEPTH,
                     workers: int | None = None, triple_image: ValueClassSet | None = None) -> ObstructionReport:
    """Compare the image of phi on P^1(Q_p) with the j-image of primitive triples."""
    _check_prime(p)
    image = map_image_all(phi, p, m, depth)
    if triple_image is None:
        triple_image = primitive_j_classes(p, m, depth, workers=workers)
    verdict, witnesses = compare_images(image, triple_image)
    return ObstructionReport(p, m, image, triple_image, verdict, witnesses)


def v_divisibility_filter(j, p: int) -> bool:
    """Whether v_p(j) is a valuation attained by j-invariants of primitive triples."""
    _check_prime(p)
    j = to_rat(j)
    if j == 0:
        raise IndeterminateError("v_p(0) is infinite; the filter is indeterminate")
    v = padic_valuation(j, p)
    if p == 5:
        return v % 3 == 0 or v % 10 == 0
    depth = max(4, abs(v) + 1)
    return v in primitive_j_classes(p, 1, depth).valuations()


def attainable_valuations(p: int, bound: int) -> set[int]:
    """Closed form: v(1728) + 3 v(b) - 10 v(c) with min(v(b), v(c)) = 0, |value| < bound."""
    v1728 = vp_int(1728, p)
    out = set()
    for k in range(0, bound + 1):
        for v in (v1728 + 3 * k, v1728 - 10 * k):
            if abs(v) < bound:
                out.add(v)
    return out
