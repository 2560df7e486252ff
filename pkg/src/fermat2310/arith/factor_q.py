"""Irreducibility and factorisation of polynomials over Q.

Two routes.  ``modular_degree_sets`` intersects the sets of possible
factor degrees coming from factorisations mod several good primes, which
proves irreducibility cheaply in most cases.  ``factor_over_q`` is a
Zassenhaus factoriser (Hensel lifting + subset recombination) used when
the cheap route is inconclusive or when actual factors are wanted.
"""

from __future__ import annotations

import itertools
import math
from functools import reduce

from . import modp
from .poly import UniPoly, poly_gcd, rational_roots
from .rational import primes_below

_SMALL_PRIMES = primes_below(2000)


# -- integer polynomial helpers (ascending lists of ints) -------------------

def _zmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _zsym(f, m):
    """Coefficients reduced to the symmetric range (-m/2, m/2]."""
    out = []
    for c in f:
        c %= m
        if c > m // 2:
            c -= m
        out.append(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _zdivexact(f, g):
    """Exact division f / g in Z[x]; None if it does not divide."""
    rem = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(rem) - 1 < dg:
        return None if any(rem) else []
    quot = [0] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c, r = divmod(rem[k + dg], lg)
        if r:
            return None
        quot[k] = c
        if c:
            for j, b in enumerate(g):
                rem[k + j] -= c * b
    if any(rem[:dg]):
        return None
    return quot


def _zprimitive(f):
    g = reduce(math.gcd, f)
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def _mod_list(f, m):
    return [c % m for c in f]


def _pmul(f, g, m):
    return _mod_list(_zmul(f, g), m)


def _pdivmod(f, g, m):
    """Division by a monic g modulo m."""
    rem = list(f)
    dg = len(g) - 1
    quot = [0] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg] % m
        quot[k] = c
        if c:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - c * b) % m
    r = [c % m for c in rem[:dg]]
    while r and r[-1] == 0:
        r.pop()
    return quot, r


def _padd(f, g, m):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _psub(f, g, m):
    return _padd(f, [-c for c in g], m)


def _xgcd_modp(f, g, p):
    """s, t with s f + t g = 1 mod p, for coprime f, g."""
    r0, r1 = modp.trim(f, p), modp.trim(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, modp.sub(s0, modp.mul(q, s1, p), p)
        t0, t1 = t1, modp.sub(t0, modp.mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return modp.scale(s0, inv, p), modp.scale(t0, inv, p)


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: f = g h mod m -> mod m^2 (g, h monic-in-h sense)."""
    m2 = m * m
    e = _psub(f, _pmul(g, h, m2), m2)
    q, r = _pdivmod(_pmul(s, e, m2), h, m2)
    g1 = _padd(g, _padd(_pmul(t, e, m2), _pmul(q, g, m2), m2), m2)
    h1 = _padd(h, r, m2)
    b = _psub(_padd(_pmul(s, g1, m2), _pmul(t, h1, m2), m2), [1], m2)
    c, d = _pdivmod(_pmul(s, b, m2), h1, m2)
    s1 = _psub(s, d, m2)
    t1 = _psub(t, _padd(_pmul(t, b, m2), _pmul(c, g1, m2), m2), m2)
    return g1, h1, s1, t1


def _lift_pair(f, g, h, p, k):
    """Lift f = g h (mod p, h monic) to mod p^k."""
    s, t = _xgcd_modp(g, h, p)
    m = p
    while m < p ** k:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    pk = p ** k
    return _mod_list(g, pk), _mod_list(h, pk)


def _multi_lift(f, factors, p, k):
    """Lift monic modular factors of f (leading coeff lc) to mod p^k."""
    if len(factors) == 1:
        pk = p ** k
        inv = pow(f[-1], -1, pk)
        return [_mod_list([c * inv for c in f], pk)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    lc = f[-1]
    gl = [lc % p]
    for fac in left:
        gl = modp.mul(gl, fac, p)
    hr = [1]
    for fac in right:
        hr = modp.mul(hr, fac, p)
    g, h = _lift_pair(f, gl, hr, p, k)
    return _multi_lift(g, left, p, k) + _multi_lift(h, right, p, k)


def _mignotte_bound(f):
    n = len(f) - 1
    norm = math.isqrt(sum(c * c for c in f)) + 1
    return math.comb(n, n // 2) * norm * abs(f[-1])


def _good_prime(f):
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if f[-1] % p == 0:
            continue
        fp = modp.trim(f, p)
        if len(fp) != len(f) or not modp.is_squarefree(fp, p):
            continue
        _, facs = modp.factor(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, [g for g, _ in facs])
        tried += 1
        if tried >= 5 or len(best[1]) == 1:
            break
    return best


def _zassenhaus(f):
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    found = _good_prime(f)
    if found is None:
        raise ArithmeticError("no good prime found for Zassenhaus factorisation")
    p, modfacs = found
    if len(modfacs) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) * abs(f[-1])
    k = 1
    while p ** k <= bound:
        k += 1
    pk = p ** k
    lifted = _multi_lift(f, modfacs, p, k)
    result = []
    remaining = list(range(len(lifted)))
    current = list(f)
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for combo in itertools.combinations(remaining, size):
            lc = current[-1]
            g = [lc]
            for i in combo:
                g = _pmul(g, lifted[i], pk)
            g = _zprimitive(_zsym(g, pk))
            q = _zdivexact(current, g)
            if q is not None:
                result.append(g)
                current = q
                remaining = [i for i in remaining if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    result.append(_zprimitive(current))
    return result


def _yun_q(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Squarefree decomposition over Q (monic factors)."""
    out = []
    f = f.monic()
    a = poly_gcd(f, f.derivative())
    b = f.exact_div(a)
    c = f.derivative().exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def factor_over_q(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Irreducible factors over Q (primitive integral, positive leading) with exponents."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for g, e in _yun_q(f):
        for h in _zassenhaus(g.integer_coeffs()):
            out.append((UniPoly(h, f.var), e))
    out.sort(key=lambda t: (t[0].degree, [abs(c) for c in t[0].coeffs], t[1]))
    return out


def modular_degree_sets(f: UniPoly, primes: int = 40) -> tuple[set[int], list[tuple[int, tuple[int, ...]]]]:
    """Intersect achievable factor degrees over good primes.

    Returns the set of degrees a rational factor could have together with
    the (prime, shape) evidence used.
    """
    ints = f.integer_coeffs()
    n = len(ints) - 1
    possible = set(range(n + 1))
    evidence = []
    used = 0
    for p in _SMALL_PRIMES:
        if used >= primes or possible == {0, n}:
            break
        if ints[-1] % p == 0:
            continue
        fp = modp.trim(ints, p)
        if not modp.is_squarefree(fp, p):
            continue
        shape = modp.factor_shape(fp, p)
        sums = {0}
        for d in shape:
            sums |= {s + d for s in sums}
        possible &= sums
        evidence.append((p, shape))
        used += 1
    return possible, evidence


def is_irreducible(f: UniPoly) -> bool:
    """Irreducibility over Q of a nonconstant rational polynomial."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    if f.degree <= 3:
        return not rational_roots(f)
    possible, _ = modular_degree_sets(f)
    if possible == {0, f.degree}:
        return True
    facs = factor_over_q(f)
    return len(facs) == 1 and facs[0][1] == 1
