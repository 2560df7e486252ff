"""Independent reference computations used by several test modules.

These deliberately avoid the library's own engines: value classes are
computed with numpy over all residues, root valuations by direct
evaluation at p^k u.
"""

import math
import random

import numpy as np

INF = math.inf


def vp(n: int, p: int):
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def numpy_value_classes(coeffs, p, m, depth):
    """{(v, u)} with v <= depth - m, plus 'inf' when some f(x) = 0 mod p^(depth-m+1)."""
    mod = p ** depth
    x = np.arange(mod, dtype=np.int64)
    acc = np.zeros(mod, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    vcap = depth - m + 1
    out = set()
    for r in np.unique(acc).tolist():
        v = vp(r, p)
        if v >= vcap:
            out.add(("inf", 0))
        else:
            out.add((v, (r // p ** v) % p ** m))
    return out


def engine_classes_as_pairs(S):
    return {("inf", 0) if (c.is_marker and c.v > 0) else ("-inf", 0) if c.is_marker else (c.v, c.u)
            for c in S.classes}


def min_valuation_on_shell(coeffs, p, k, samples=None):
    """min over units u mod p^2 of v_p(f(p^k u)), exact integer arithmetic."""
    units = [u for u in range(1, p * p + 1) if u % p]
    best = INF
    for u in units:
        x = p ** k * u
        val = sum(c * x ** i for i, c in enumerate(coeffs))
        best = min(best, vp(val, p))
    return best


def random_monic(rng: random.Random, max_degree=4, lo=-9, hi=9):
    d = rng.randint(1, max_degree)
    return [rng.randint(lo, hi) for _ in range(d)] + [1]
