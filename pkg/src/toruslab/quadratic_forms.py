"""Diagonal quadratic forms over Q, local symbols and Pfister forms.

Pfister notation: <<a1,...,an>> = <1,-a1> (x) ... (x) <1,-an>.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

from .exact_numbers import Q, RationalLike, is_square, legendre_symbol, padic_valuation, squarefree_part, support

REAL = "inf"
Place = Union[int, str]


@dataclass(frozen=True)
class QuadraticForm:
    coefficients: Tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[RationalLike]):
        coeffs = tuple(Q(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a quadratic form needs at least one coefficient")
        if any(c == 0 for c in coeffs):
            raise ValueError("diagonal coefficients must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, x: Sequence[RationalLike]) -> Fraction:
        if len(x) != self.dim:
            raise ValueError("vector length does not match form dimension")
        return sum((a * Q(t) ** 2 for a, t in zip(self.coefficients, x)), Fraction(0))

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        return QuadraticForm(self.coefficients + other.coefficients)

    def scaled(self, c: RationalLike) -> "QuadraticForm":
        c = Q(c)
        return QuadraticForm(c * a for a in self.coefficients)

    def __neg__(self) -> "QuadraticForm":
        return self.scaled(-1)

    def tensor(self, other: "QuadraticForm") -> "QuadraticForm":
        return QuadraticForm(a * b for a in self.coefficients for b in other.coefficients)

    def determinant(self) -> Fraction:
        d = Fraction(1)
        for a in self.coefficients:
            d *= a
        return d

    def signature(self) -> Tuple[int, int]:
        pos = sum(1 for a in self.coefficients if a > 0)
        return pos, self.dim - pos

    def squarefree(self) -> List[int]:
        return [squarefree_part(a) for a in self.coefficients]

    def __repr__(self) -> str:
        return "<" + ", ".join(str(a) for a in self.coefficients) + ">"


def form(*coefficients: RationalLike) -> QuadraticForm:
    return QuadraticForm(coefficients)


def hyperbolic_form(m: int) -> QuadraticForm:
    return QuadraticForm([1, -1] * m)


def hilbert_symbol(a: RationalLike, b: RationalLike, v: Place) -> int:
    a, b = squarefree_part(a), squarefree_part(b)
    if v == REAL:
        return -1 if a < 0 and b < 0 else 1
    p = int(v)
    alpha, beta = padic_valuation(a, p), padic_valuation(b, p)
    u, w = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u, p) ** beta * legendre_symbol(w, p) ** alpha


def is_local_square(x: RationalLike, v: Place) -> bool:
    x = squarefree_part(x)
    if v == REAL:
        return x > 0
    p = int(v)
    if x % p == 0:
        return False
    if p == 2:
        return x % 8 == 1
    return legendre_symbol(x, p) == 1


def hasse_invariant(f: QuadraticForm, v: Place) -> int:
    """Product of (a_i, a_j)_v over i < j."""
    out = 1
    for a, b in combinations(f.coefficients, 2):
        out *= hilbert_symbol(a, b, v)
    return out


def relevant_places(*forms: QuadraticForm) -> List[Place]:
    coeffs = [a for f in forms for a in f.coefficients]
    primes = set(support(coeffs)) | {2}
    return [REAL] + sorted(primes)


def is_locally_isotropic(f: QuadraticForm, v: Place) -> bool:
    n = f.dim
    if n == 1:
        return False
    if v == REAL:
        pos, neg = f.signature()
        return pos > 0 and neg > 0
    if n >= 5:
        return True
    d = f.determinant()
    if n == 2:
        return is_local_square(-d, v)
    eps = hasse_invariant(f, v)
    if n == 3:
        return hilbert_symbol(-1, -d, v) == eps
    return (not is_local_square(d, v)) or eps == hilbert_symbol(-1, -1, v)


def anisotropic_places(f: QuadraticForm) -> List[Place]:
    """Places among the relevant ones where f is anisotropic."""
    return [v for v in relevant_places(f) if not is_locally_isotropic(f, v)]


def is_isotropic(f: QuadraticForm) -> bool:
    if f.dim == 1:
        return False
    if f.dim == 2:
        return is_square(-f.determinant())
    return not anisotropic_places(f)


def represents(f: QuadraticForm, b: RationalLike) -> bool:
    b = Q(b)
    if b == 0:
        raise ValueError("represents() needs a nonzero value")
    return is_isotropic(f + form(-b))


def isometric(f: QuadraticForm, g: QuadraticForm) -> bool:
    if f.dim != g.dim or f.signature() != g.signature():
        return False
    if not is_square(f.determinant() / g.determinant()):
        return False
    return all(hasse_invariant(f, p) == hasse_invariant(g, p) for p in relevant_places(f, g)[1:])


def is_hyperbolic(f: QuadraticForm) -> bool:
    if f.dim % 2:
        return False
    return isometric(f, hyperbolic_form(f.dim // 2))


def witt_equivalent(f: QuadraticForm, g: QuadraticForm) -> bool:
    if (f.dim - g.dim) % 2:
        return False
    return is_hyperbolic(f + (-g))


@dataclass(frozen=True)
class PfisterForm:
    slots: Tuple[Fraction, ...]

    def __init__(self, slots: Iterable[RationalLike]):
        slots = tuple(Q(a) for a in slots)
        if any(a == 0 for a in slots):
            raise ValueError("Pfister slots must be nonzero")
        object.__setattr__(self, "slots", slots)

    @property
    def fold(self) -> int:
        return len(self.slots)

    @property
    def expansion(self) -> QuadraticForm:
        entries = [Fraction(1)]
        for a in self.slots:
            entries = entries + [-a * e for e in entries]
        return QuadraticForm(entries)

    @property
    def pure_part(self) -> QuadraticForm:
        return QuadraticForm(self.expansion.coefficients[1:])

    def __repr__(self) -> str:
        return "<<" + ", ".join(str(a) for a in self.slots) + ">>"


def pfister(slots: Iterable[RationalLike]) -> PfisterForm:
    return PfisterForm(slots)


def tensor(f: PfisterForm, g: PfisterForm) -> PfisterForm:
    return PfisterForm(f.slots + g.slots)


def arason_trivial(pi: PfisterForm) -> bool:
    if not pi.slots:
        return False
    return is_hyperbolic(pi.expansion)


def pfister_divides_1fold(d: RationalLike, pi: PfisterForm) -> bool:
    """Whether <1,-d> divides pi in the sense pi = <1,-d> (x) rho."""
    d = Q(d)
    if d == 0:
        raise ValueError("slot must be nonzero")
    if not pi.slots:
        return False
    if arason_trivial(pi):
        return True
    return represents(pi.pure_part, -d)


def binary_norm_form(alpha: RationalLike) -> QuadraticForm:
    """Norm form <1,-alpha> of Q(sqrt(alpha))."""
    return form(1, -Q(alpha))


def norm_obstruction(x: RationalLike, alpha: RationalLike) -> Union[Place, None]:
    """A place where x fails to be a local norm from Q(sqrt(alpha)), or None.

    None means x is a global norm (Hasse norm theorem for quadratic fields).
    """
    x, alpha = Q(x), Q(alpha)
    if is_square(alpha):
        return None
    for v in [REAL] + sorted(set(support([x, alpha])) | {2}):
        if hilbert_symbol(x, alpha, v) == -1:
            return v
    return None
