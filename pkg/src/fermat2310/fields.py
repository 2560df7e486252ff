"""Ramification and field comparison for small number fields.

Ramification at p is decided by the Dedekind criterion on the equation
order.  When the order is not p-maximal the polynomial is changed to one
generating a larger order: f(x + k) Eisenstein settles the question, and
when every root of f(x + k) has valuation >= 1 the root (alpha - k)/p is
integral with monic minimal polynomial p^-n f(p x + k).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from sympy import primefactors

from .arith import modp
from .arith.factor_q import is_irreducible
from .arith.poly import UniPoly, poly_discriminant, rational_roots
from .arith.rational import is_prime, primes_below, squarefree_part_rat, to_rat, vp_int
from .errors import InvalidInput

RAMIFIED = "ramified"
UNRAMIFIED = "unramified"
UNDETERMINED = "undetermined"


def _monic_integral_coeffs(f: UniPoly) -> list[int]:
    if not f.is_integral() or f.leading() != 1:
        raise InvalidInput(f"{f} must be monic with integer coefficients")
    return [int(c) for c in f.coeffs]


@dataclass(frozen=True)
class DedekindResult:
    p: int
    p_maximal: bool
    p_ramified: bool
    shape: tuple[tuple[int, int], ...]  # (degree, exponent) of the factors mod p


def dedekind_test(f: UniPoly, p: int) -> DedekindResult:
    """Dedekind's criterion for Z[x]/(f) at p."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not a prime")
    coeffs = _monic_integral_coeffs(f)
    _, facs = modp.factor(coeffs, p)
    prod = [1]
    repeated = [1]
    for g, e in facs:
        for _ in range(e):
            prod = _zmul(prod, g)
        if e > 1:
            repeated = modp.mul(repeated, g, p)
    diff = [(a - b) for a, b in itertools.zip_longest(coeffs, prod, fillvalue=0)]
    assert all(c % p == 0 for c in diff)
    F = modp.trim([c // p for c in diff], p)
    if modp.deg(repeated) <= 0:
        maximal = True
    else:
        maximal = modp.deg(modp.gcd(F, repeated, p)) <= 0 if F else False
    shape = tuple((modp.deg(g), e) for g, e in facs)
    return DedekindResult(p, maximal, any(e > 1 for _, e in facs), shape)


def _zmul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _is_eisenstein(coeffs: list[int], p: int) -> bool:
    return (coeffs[-1] % p != 0 and all(c % p == 0 for c in coeffs[:-1])
            and coeffs[0] % (p * p) != 0)


def decide_ramification(f: UniPoly, p: int, rounds: int = 3) -> tuple[str, str]:
    """(status, method) for the prime p in the field defined by monic integral f."""
    g = f
    for _ in range(rounds + 1):
        res = dedekind_test(g, p)
        if res.p_maximal:
            return (RAMIFIED if res.p_ramified else UNRAMIFIED), "dedekind"
        n = g.degree
        moved = False
        for k in range(p):
            h = [int(c) for c in g.shift(k).coeffs]
            if _is_eisenstein(h, p):
                return RAMIFIED, "eisenstein"
            if all(vp_int(h[i], p) >= n - i for i in range(n)):
                # every root of h has valuation >= 1: pass to (alpha - k)/p
                g = UniPoly([h[i] // p ** (n - i) for i in range(n + 1)], f.var)
                moved = True
                break
        if not moved:
            break
    return UNDETERMINED, "dedekind"


@dataclass(frozen=True)
class RamificationProfile:
    poly: UniPoly
    discriminant: object
    candidates: tuple[int, ...]
    status: dict = field(default_factory=dict)
    methods: dict = field(default_factory=dict)

    def ramified(self) -> set[int]:
        return {p for p, s in self.status.items() if s == RAMIFIED}

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "discriminant": str(self.discriminant),
            "candidates": list(self.candidates),
            "status": {str(p): self.status[p] for p in self.candidates},
            "methods": {str(p): self.methods[p] for p in self.candidates},
        }


def monic_integral_model(f: UniPoly) -> UniPoly:
    """a^(n-1) f(x / a) for the primitive integer form of f with leading coefficient a."""
    ints = f.integer_coeffs()
    a, n = ints[-1], len(ints) - 1
    return UniPoly([c * a ** (n - 1 - i) if i < n else 1 for i, c in enumerate(ints)], f.var)


def ramification_profile(f: UniPoly) -> RamificationProfile:
    if f.degree < 2:
        raise InvalidInput("need degree at least 2")
    if not is_irreducible(f):
        raise InvalidInput(f"{f} is reducible over Q")
    g = monic_integral_model(f)
    disc = poly_discriminant(g)
    cands = tuple(sorted(primefactors(abs(int(disc)))))
    status, methods = {}, {}
    for p in cands:
        s, how = decide_ramification(g, p)
        if s == UNDETERMINED and vp_int(int(disc), p) % 2:
            s, how = RAMIFIED, "discriminant parity"
        status[p], methods[p] = s, how
    return RamificationProfile(g, disc, cands, status, methods)


def enumerate_quadratic_unramified(S) -> list[int]:
    """Squarefree d != 1 with Q(sqrt d) unramified outside S and infinity."""
    S = sorted(set(S))
    for q in S:
        if not is_prime(q):
            raise InvalidInput(f"{q} is not a prime")
    out = []
    for r in range(len(S) + 1):
        for subset in itertools.combinations(S, r):
            n = math.prod(subset)
            for d in (n, -n):
                if d == 1:
                    continue
                ramified = {q for q in subset if q != 2}
                if d % 4 != 1:
                    ramified.add(2)
                if ramified <= set(S):
                    out.append(d)
    return sorted(set(out))


@dataclass(frozen=True)
class SplittingFingerprint:
    poly: UniPoly
    primes: tuple[int, ...]
    shapes: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict[int, tuple[int, ...]]:
        return dict(zip(self.primes, self.shapes))

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "primes": list(self.primes),
                "shapes": [list(s) for s in self.shapes]}


def _irreducible(f: UniPoly) -> bool:
    if f.degree <= 3:
        return f.degree >= 1 and not rational_roots(f)
    return is_irreducible(f)


def fingerprint(f: UniPoly, bound: int) -> SplittingFingerprint:
    """Factorisation shapes of f mod p for the good primes p < bound."""
    if not _irreducible(f):
        raise InvalidInput(f"{f} is reducible over Q")
    ints = f.integer_coeffs()
    disc = to_rat(poly_discriminant(UniPoly(ints)))
    primes, shapes = [], []
    for p in primes_below(bound):
        if ints[-1] % p == 0 or disc.numerator % p == 0:
            continue
        primes.append(p)
        shapes.append(modp.factor_shape(ints, p))
    return SplittingFingerprint(f, tuple(primes), tuple(shapes))


def fields_plausibly_isomorphic(f: UniPoly, g: UniPoly, bound: int = 500) -> bool:
    """Discriminant square classes agree and factorisation shapes agree at shared good primes."""
    if f.degree != g.degree:
        return False
    if f.degree > 3:
        raise InvalidInput("comparison is designed for degree at most 3")
    if squarefree_part_rat(poly_discriminant(f)) != squarefree_part_rat(poly_discriminant(g)):
        return False
    ff, fg = fingerprint(f, bound).as_dict(), fingerprint(g, bound).as_dict()
    return all(ff[p] == fg[p] for p in ff.keys() & fg.keys())


def frey_cubic(a: int, b: int) -> UniPoly:
    """x^3 + 3b x - 2a, the 2-division polynomial of the Frey curve."""
    return UniPoly([-2 * a, 3 * b, 0, 1])
