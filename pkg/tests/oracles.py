"""Brute-force oracles that share no code path with the library's local-global machinery."""

from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Optional, Sequence, Tuple


def vp(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def integral_coeffs(coeffs: Sequence[Fraction]) -> list:
    """Scale a diagonal form by a square so that all entries are integers."""
    out = []
    for c in coeffs:
        c = Fraction(c)
        out.append(c.numerator * c.denominator)
    return out


def primitive_zero_mod(coeffs: Sequence[int], p: int, k: int) -> bool:
    """Is there a primitive x (mod p^k) with sum a_i x_i^2 = 0 mod p^k?"""
    m = p**k
    states = {(0, False)}
    for a in coeffs:
        values = {((a * x * x) % m, x % p != 0) for x in range(m)}
        states = {((r + v) % m, u or w) for r, u in states for v, w in values}
    return (0, True) in states


def hilbert_oracle(a: int, b: int, p) -> int:
    """(a, b)_p from solubility of a x^2 + b y^2 = z^2 in Q_p.

    Searches primitive solutions mod p^k that satisfy the Hensel criterion
    f = 0 mod p^(2e+1), e the smallest valuation of a partial derivative.
    Assumes a, b are squarefree integers.
    """
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    k = 6 if p == 2 else 3
    m = p**k
    roots = {}
    for z in range(m):
        roots.setdefault(z * z % m, []).append(z)
    for x in range(m):
        for y in range(m):
            t = (a * x * x + b * y * y) % m
            for z in roots.get(t, ()):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                e = min(vp(2 * a * x, p), vp(2 * b * y, p), vp(2 * z, p))
                if 2 * e + 1 <= k:
                    return 1
    return -1


def anisotropy_certificate(coeffs: Sequence[Fraction], primes: Sequence[int], max_k: int = 6) -> Optional[Tuple]:
    """A place where the form has no nontrivial zero: ("inf",) if definite, or (p, k) with no primitive zero mod p^k."""
    if all(c > 0 for c in coeffs) or all(c < 0 for c in coeffs):
        return ("inf",)
    ints = integral_coeffs(coeffs)
    for p in primes:
        for k in range(1, max_k + 1):
            if p**k > 64 and p**(k * len(ints)) > 10**7:
                break
            if not primitive_zero_mod(ints, p, k):
                return (p, k)
    return None


def rational_zero(coeffs: Sequence[Fraction], box: int, height: int) -> Optional[Tuple[int, ...]]:
    """Nonzero integer zero of a diagonal form, searching the first n-1 coordinates in [-box, box]."""
    ints = integral_coeffs(coeffs)
    *head, last = ints
    n = len(ints)
    for xs in product(range(-box, box + 1), repeat=n - 1):
        s = sum(a * x * x for a, x in zip(head, xs))
        if s == 0:
            if any(xs):
                return tuple(xs) + (0,)
            continue
        q = Fraction(-s, last)
        if q <= 0:
            continue
        r_num, r_den = isqrt(q.numerator), isqrt(q.denominator)
        if r_num * r_num == q.numerator and r_den * r_den == q.denominator:
            v = tuple(x * r_den for x in xs) + (r_num,)
            if max(abs(t) for t in v) <= height:
                return v
    return None
