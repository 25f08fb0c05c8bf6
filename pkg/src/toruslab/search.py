"""Bounded witness searches for norm equations.

Searches enumerate candidates in shells of increasing height and stop at
the height bound or the candidate budget, whichever comes first.  Results
depend only on the bound and budget, never on timing.
"""

import os
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Iterator, List, Optional, Tuple

import sympy

from . import linalg
from .exact_numbers import Q, is_square, rational_sqrt
from .etale import Algebra, CubicEtale, Elem, minimal_polynomial

DEFAULT_HEIGHT_BOUND = 500
DEFAULT_BUDGET = 20000
ENV_HEIGHT_BOUND = "TORUSLAB_HEIGHT_BOUND"


def default_height_bound() -> int:
    raw = os.environ.get(ENV_HEIGHT_BOUND)
    if raw is None:
        return DEFAULT_HEIGHT_BOUND
    value = int(raw)
    if value < 1:
        raise ValueError(f"{ENV_HEIGHT_BOUND} must be a positive integer")
    return value


def shells(dim: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors ordered by max-norm, then lexicographically."""
    yield (0,) * dim
    for r in range(1, bound + 1):
        for v in product(range(-r, r + 1), repeat=dim):
            if max(abs(t) for t in v) == r:
                yield v


def rational_shells(dim: int, bound: int) -> Iterator[Tuple[Fraction, ...]]:
    """Rational vectors x / D ordered by max(|x_i|, D), then D, then lexicographically."""
    yield (Fraction(0),) * dim
    for r in range(1, bound + 1):
        for D in range(1, r + 1):
            for v in product(range(-r, r + 1), repeat=dim):
                if any(v) and (D == r or max(abs(t) for t in v) == r) and gcd(D, *v) == 1:
                    yield tuple(Fraction(t, D) for t in v)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def binary_norm_witness(x: Fraction, alpha: int, bound: int, budget: int = DEFAULT_BUDGET) -> Optional[Tuple[Fraction, Fraction]]:
    """(a, b) with a^2 - alpha b^2 = x, searched as A^2 = x D^2 + alpha B^2."""
    x = Q(x)
    n, d = x.numerator, x.denominator
    # a^2 - alpha b^2 = n/d  <=>  (a d)^2 - alpha (b d)^2 = n d
    nd = n * d
    count = 0
    for r in range(1, bound + 1):
        for D in range(1, r + 1):
            for B in ([r] if D < r else range(0, r + 1)):
                count += 1
                if count > budget:
                    return None
                val = nd * D * D + alpha * B * B
                if is_perfect_square(val):
                    A = isqrt(val)
                    return Fraction(A, D * d), Fraction(B, D * d)
    return None


def quadratic_sqrt(p: Fraction, q: Fraction, d: int) -> Optional[Tuple[Fraction, Fraction]]:
    """(x, y) with (x + y sqrt d)^2 = p + q sqrt d, d a non-square."""
    p, q = Q(p), Q(q)
    n = p * p - d * q * q
    if not is_square(n):
        return None
    r = rational_sqrt(n)
    for s in (r, -r):
        x2, y2 = (p + s) / 2, (p - s) / (2 * d)
        if is_square(x2) and is_square(y2):
            x, y = rational_sqrt(x2), rational_sqrt(y2)
            if 2 * x * y != q:
                y = -y
            if 2 * x * y == q:
                return x, y
    return None


def field_sqrt(L: CubicEtale, w: Elem) -> Optional[Elem]:
    """Square root of w in a cubic field, or None."""
    if w.is_zero():
        return L.zero
    if all(v == 0 for v in w.c[1:]):
        return L.scalar(rational_sqrt(w.c[0])) if is_square(w.c[0]) else None
    m = minimal_polynomial(w)
    t = sympy.Symbol("t")
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t ** (2 * i) for i, c in enumerate(m)), t, domain="QQ")
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() != 3:
            continue
        h = fac.monic().all_coeffs()
        h2, h1, h0 = (Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in h[1:])
        den = w + h1
        if L.norm(den) == 0:
            continue
        y = -(w * h2 + h0) / den
        if y * y == w:
            return y
    return None


@lru_cache(maxsize=None)
def _norm_form_terms(L: CubicEtale) -> List[Tuple[Fraction, Tuple[int, int, int]]]:
    xs = sympy.symbols("x0 x1 x2")
    m = sympy.zeros(3, 3)
    basis = L.basis()
    for k, bk in enumerate(basis):
        for i, bi in enumerate(basis):
            prod_c = L.mul(bi.c, bk.c)
            for r in range(3):
                v = prod_c[r]
                m[r, k] += xs[i] * sympy.Rational(v.numerator, v.denominator)
    poly = sympy.Poly(sympy.expand(m.det()), *xs)
    return [(Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)), tuple(e)) for e, c in poly.terms()]


def integer_norm(L: CubicEtale, x: Tuple) -> Fraction:
    """N_{L/Q} of the element with coordinates x, from the cached norm polynomial."""
    return sum((c * x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2] for c, e in _norm_form_terms(L)), Fraction(0))


def cubic_norm_witness(L: CubicEtale, c: Fraction, bound: int, budget: int = DEFAULT_BUDGET) -> Optional[Elem]:
    """b in L with N(b) = c, searched over b = x / D with max(|x_i|, D) <= bound.

    N(b) = 1/c is tried alongside, since then N(1/b) = c.
    """
    c = Q(c)
    if c == 0:
        return None
    count = 0
    for r in range(1, bound + 1):
        for D in range(1, r + 1):
            d3 = D**3
            for x in product(range(-r, r + 1), repeat=3):
                if D < r and max(abs(t) for t in x) != r:
                    continue
                count += 1
                if count > budget:
                    return None
                n = integer_norm(L, x)
                if n == c * d3:
                    return L.elem([Fraction(t, D) for t in x])
                if n * c == d3:
                    return L.elem([Fraction(t, D) for t in x]).inverse()
    return None


def totally_positive(a: Algebra, x: Elem) -> bool:
    """x > 0 at every real embedding, via signatures of Tr(x y^2) and Tr(y^2)."""
    b = a.basis()
    gx = [[a.trace(x * u * v) for v in b] for u in b]
    g1 = a.trace_gram()
    dx, _ = linalg.congruence_diagonalize(gx)
    d1, _ = linalg.congruence_diagonalize(g1)
    sig = lambda d: sum(1 if t > 0 else -1 for t in d)
    return sig(dx) == sig(d1)
