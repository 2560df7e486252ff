"""Small helpers around :class:`fractions.Fraction` and Python integers."""

from __future__ import annotations

import math
from fractions import Fraction

from sympy import factorint

from ..errors import InvalidInput

INF = math.inf


def to_rat(value) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidInput(f"{value!r} is not an exact rational (use num/den)")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"cannot parse {value!r} as a rational number") from None
    raise InvalidInput(f"cannot interpret {value!r} as a rational number")


def format_rat(q) -> str:
    """Serialise a rational as a "num/den" string ("5" for integers)."""
    return str(to_rat(q))


def vp_int(n: int, p: int):
    """p-adic valuation of an integer; ``INF`` for 0."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_square_rat(q) -> bool:
    """True iff q is the square of a rational number (0 included)."""
    q = to_rat(q)
    return is_square_int(q.numerator) and is_square_int(q.denominator)


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * k^2."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = -1 if n < 0 else 1
    for q, e in factorint(abs(n)).items():
        if e % 2:
            s *= q
    return s


def squarefree_part_rat(q) -> int:
    """Squarefree integer d with q = d * (rational square)."""
    q = to_rat(q)
    return squarefree_part(q.numerator * q.denominator)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    r = math.isqrt(p)
    f = 3
    while f <= r:
        if p % f == 0:
            return False
        f += 2
    return True


def primes_below(bound: int) -> list[int]:
    if bound < 3:
        return []
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, flag in enumerate(sieve) if flag]


def legendre(a: int, p: int) -> int:
    """Legendre symbol for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
