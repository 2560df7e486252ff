"""Polynomials over F_p as ascending lists of ints in [0, p).

Factorisation follows the usual pipeline: squarefree decomposition,
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting
driven by a seeded RNG so results are reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence

Poly = list  # list[int], ascending, no trailing zeros


def trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([a * c for a in f], p)


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return []
    return scale(f, pow(f[-1], -1, p), p)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    rem = list(f)
    dg = deg(g)
    inv = pow(g[-1], -1, p)
    quot = [0] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg] * inv % p
        quot[k] = c
        if c:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - c * b) % p
    return trim(quot, p), trim(rem[:dg], p)


def rem(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    a, b = trim(f, p), trim(g, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(f: Poly, p: int) -> Poly:
    return trim([i * c for i, c in enumerate(f)][1:], p)


def powmod(base: Poly, e: int, modulus: Poly, p: int) -> Poly:
    result = [1]
    b = rem(base, modulus, p)
    while e:
        if e & 1:
            result = rem(mul(result, b, p), modulus, p)
        b = rem(mul(b, b, p), modulus, p)
        e >>= 1
    return result


def evaluate(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def roots(f: Poly, p: int) -> list[int]:
    """Distinct roots in F_p by exhaustive evaluation."""
    return [x for x in range(p) if evaluate(f, x, p) == 0]


def _pth_root(f: Poly, p: int) -> Poly:
    # f(x) = g(x)^p with coefficients in F_p, so g_i = f_{ip}
    return [f[i] for i in range(0, len(f), p)]


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities; product equals monic(f)."""
    f = monic(trim(f, p), p)
    if deg(f) <= 0:
        return []
    out: dict[int, Poly] = {}

    def merge(g: Poly, e: int):
        if deg(g) <= 0:
            return
        out[e] = mul(out[e], g, p) if e in out else g

    h = gcd(f, derivative(f, p), p)
    w = divmod_(f, h, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, h, p)
        merge(divmod_(w, y, p)[0], i)
        w = y
        h = divmod_(h, y, p)[0]
        i += 1
    if deg(h) > 0:
        for g, e in squarefree_decomposition(_pth_root(h, p), p):
            merge(g, e * p)
    return sorted(((g, e) for e, g in out.items()), key=lambda t: t[1])


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """For monic squarefree f: list of (product of all degree-d factors, d)."""
    out = []
    h = [0, 1]
    g = f
    d = 0
    while deg(g) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, g, p)
        t = gcd(g, sub(h, [0, 1], p), p)
        if deg(t) > 0:
            out.append((t, d))
            g = divmod_(g, t, p)[0]
            h = rem(h, g, p)
    if deg(g) > 0:
        out.append((g, deg(g)))
    return out


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f, all of whose factors have degree d."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) <= 0:
            continue
        if p == 2:
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            b = acc
        else:
            b = sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < deg(g) < n:
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def factor(f: Sequence[int], p: int, seed: int = 0) -> tuple[int, list[tuple[Poly, int]]]:
    """Complete factorisation: (leading coefficient, [(monic irreducible, exponent)])."""
    f = trim(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(seed)
    factors: list[tuple[Poly, int]] = []
    for g, e in squarefree_decomposition(f, p):
        for block, d in distinct_degree(g, p):
            for irr in equal_degree(block, d, p, rng):
                factors.append((irr, e))
    factors.sort(key=lambda t: (deg(t[0]), t[0][::-1], t[1]))
    return lc, factors


def factor_shape(f: Sequence[int], p: int) -> tuple[int, ...]:
    """Sorted degrees of irreducible factors, repeated by multiplicity."""
    _, facs = factor(f, p)
    shape = []
    for g, e in facs:
        shape.extend([deg(g)] * e)
    return tuple(sorted(shape))


def is_squarefree(f: Sequence[int], p: int) -> bool:
    f = trim(f, p)
    return deg(gcd(f, derivative(f, p), p)) == 0
