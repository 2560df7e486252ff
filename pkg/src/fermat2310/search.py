"""Desk-scale searches: primitive solutions of a^2 + b^3 = c^10 and points on y^2 = x^5 - k."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import PrimitiveTriple, frey_curve, invariants, minus3_square_test
from .errors import InvalidInput
from .workers import pmap

# the complete list of primitive solutions
KNOWN_TRIPLES = tuple(sorted([
    (1, -1, 0), (-1, -1, 0),
    (1, 0, 1), (-1, 0, 1), (1, 0, -1), (-1, 0, -1),
    (0, 1, 1), (0, 1, -1),
    (3, -2, 1), (-3, -2, 1), (3, -2, -1), (-3, -2, -1),
]))


@dataclass(frozen=True)
class SearchWindow:
    z_bound: int
    y_bound: int

    def __post_init__(self):
        if self.z_bound < 0 or self.y_bound < 0:
            raise InvalidInput("search bounds must be non-negative")


def _row(args) -> list[tuple[int, int, int]]:
    """All solutions with a fixed c != 0 and 0 < |b| <= y_bound."""
    c, y_bound = args
    c10 = c ** 10
    out = []
    for b in range(-y_bound, y_bound + 1):
        if b == 0:
            continue
        n = c10 - b ** 3
        if n < 0:
            continue
        a = math.isqrt(n)
        if a * a == n and math.gcd(a, b, c) == 1:
            out.append((a, b, c))
            if a:
                out.append((-a, b, c))
    return out


def search_primitive(w: SearchWindow, workers: int | None = None) -> list[PrimitiveTriple]:
    """Primitive (a, b, c) with |c| <= z_bound and |b| <= y_bound."""
    found: set[tuple[int, int, int]] = set()
    # c = 0: a^2 = -b^3 forces b = -k^2, a = +-k^3, and primitivity forces k = 1
    if w.y_bound >= 1:
        found |= {(1, -1, 0), (-1, -1, 0)}
    # b = 0: a = +-c^5 and primitivity forces |c| = 1
    if w.z_bound >= 1:
        found |= {(1, 0, 1), (-1, 0, 1), (1, 0, -1), (-1, 0, -1)}
    rows = [(c, w.y_bound) for c in range(-w.z_bound, w.z_bound + 1) if c != 0]
    for row in pmap(_row, rows, workers):
        found.update(row)
    return [PrimitiveTriple(*t) for t in sorted(found)]


def expected_in_window(w: SearchWindow) -> list[tuple[int, int, int]]:
    return [t for t in KNOWN_TRIPLES if abs(t[2]) <= w.z_bound and abs(t[1]) <= w.y_bound]


def check(name: str, ok: bool, witness=None) -> dict:
    return {"check": name, "status": "pass" if ok else "fail", "witness": witness}


def verify_triple(a: int, b: int, c: int) -> list[dict]:
    """Run the identity checks on a triple; raises if the equation fails."""
    if a * a + b ** 3 != c ** 10:
        raise InvalidInput(f"{(a, b, c)} does not satisfy a^2 + b^3 = c^10")
    out = [check("equation", True)]
    prim = math.gcd(a, b, c) == 1
    out.append(check("primitive", prim, None if prim else math.gcd(a, b, c)))
    pair = math.gcd(a, b) == math.gcd(a, c) == math.gcd(b, c) == 1
    out.append(check("pairwise_coprime", pair))
    if c == 0:
        out.append({"check": "frey_curve", "status": "skipped", "witness": "c = 0 gives a singular curve"})
        return out
    E = frey_curve((a, b, c), primitive=False)
    inv = invariants(E)
    c10 = Fraction(c ** 10)
    out.append(check("delta = -12^3 c^10", inv.delta == -1728 * c10, str(inv.delta)))
    out.append(check("j = 12^3 b^3 / c^10", inv.j == 1728 * b ** 3 / c10, str(inv.j)))
    out.append(check("j - 1728 = -12^3 a^2 / c^10", inv.j - 1728 == -1728 * a * a / c10, str(inv.j - 1728)))
    out.append(check("j - 1728 is -3 times a square", minus3_square_test(inv.j), str(inv.j)))
    return out


def weighted_scale(t, lam: int) -> tuple[int, int, int]:
    """(lam^15 a, lam^10 b, lam^3 c), again a solution by weighted homogeneity."""
    if lam == 0:
        raise InvalidInput("scale factor must be nonzero")
    a, b, c = t.as_tuple() if isinstance(t, PrimitiveTriple) else t
    return lam ** 15 * a, lam ** 10 * b, lam ** 3 * c


# -- genus two curves --------------------------------------------------------------

@dataclass(frozen=True)
class Genus2Curve:
    """y^2 = x^5 - k."""

    k: int

    def __post_init__(self):
        if self.k == 0:
            raise InvalidInput("k must be nonzero")

    def contains(self, x, y) -> bool:
        return Fraction(y) ** 2 == Fraction(x) ** 5 - self.k


def _genus2_row(args) -> list[tuple[Fraction, Fraction]]:
    k, d, H = args
    d2, d10 = d * d, d ** 10
    out = []
    for a in range(-H, H + 1):
        if math.gcd(a, d) != 1:
            continue
        n = a ** 5 - k * d10
        if n < 0:
            continue
        r = math.isqrt(n)
        if r * r == n:
            x = Fraction(a, d2)
            y = Fraction(r, d ** 5)
            out.append((x, y))
            if r:
                out.append((x, -y))
    return out


def genus2_point_search(curve: Genus2Curve, height: int, workers: int | None = None) -> list[tuple[Fraction, Fraction]]:
    """Affine points with x = a/d^2 in lowest terms, |a| <= H and d^2 <= H."""
    if height < 1:
        raise InvalidInput("height bound must be at least 1")
    rows = [(curve.k, d, height) for d in range(1, math.isqrt(height) + 1)]
    pts = [pt for row in pmap(_genus2_row, rows, workers) for pt in row]
    return sorted(pts)
