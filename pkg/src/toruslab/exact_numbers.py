"""Exact rational arithmetic and elementary number theory.

Every scalar in the package is a :class:`fractions.Fraction`.  Square
classes are carried by their square-free integer representative.
"""

from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, List, Union

RationalLike = Union[int, Fraction, str]

FACTOR_BOUND = 10**6


class FactorizationError(ValueError):
    pass


def Q(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fmt(q: Fraction) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int, bound: int = FACTOR_BOUND) -> Dict[int, int]:
    """Trial-division factorization of a nonzero integer (sign dropped).

    Raises FactorizationError if a cofactor above bound**2 remains that is
    not provably prime by the division already performed.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorizationError(f"trial division bound {bound} exceeded")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> List[int]:
    return sorted(factorize(n)) if n not in (0, 1, -1) else []


def squarefree_int(n: int) -> int:
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return sign * out


def squarefree_part(q: RationalLike) -> int:
    """Square-free integer d with q = d * (nonzero rational square)."""
    q = Q(q)
    if q == 0:
        raise ValueError("zero has no square class")
    return squarefree_int(q.numerator * q.denominator)


def is_square(q: RationalLike) -> bool:
    q = Q(q)
    if q < 0:
        return False
    if q == 0:
        return True
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(q: RationalLike) -> Fraction:
    q = Q(q)
    if not is_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def same_square_class(a: RationalLike, b: RationalLike) -> bool:
    a, b = Q(a), Q(b)
    if a == 0 or b == 0:
        raise ValueError("zero has no square class")
    return is_square(a / b)


def padic_valuation(q: RationalLike, p: int) -> int:
    q = Q(q)
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def support(values: Iterable[RationalLike]) -> List[int]:
    """Primes dividing numerator or denominator of any value."""
    primes = set()
    for x in values:
        x = Q(x)
        if x == 0:
            raise ValueError("zero has no support")
        primes.update(prime_divisors(x.numerator))
        primes.update(prime_divisors(x.denominator))
    return sorted(primes)


def height(q: RationalLike) -> int:
    q = Q(q)
    return max(abs(q.numerator), q.denominator)
