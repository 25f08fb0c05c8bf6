"""Composition algebras over Q built by Cayley-Dickson doubling.

Doubling product, with g the parameter of the current step:

    (x1, x2)(y1, y2) = (x1 y1 + g conj(y2) x2,  y2 x1 + x2 conj(y1))

so the new generator squares to g and the norm picks up the factor <1, -g>.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .exact_numbers import Q, RationalLike
from .etale import QuadraticEtale
from .quadratic_forms import PfisterForm, is_isotropic, pfister_divides_1fold

Vec = Tuple[Fraction, ...]


def _mul(x: Vec, y: Vec, params: Sequence[Fraction]) -> Vec:
    if not params:
        return (x[0] * y[0],)
    h = len(x) // 2
    g = params[-1]
    rest = params[:-1]
    x1, x2, y1, y2 = x[:h], x[h:], y[:h], y[h:]
    a = _mul(x1, y1, rest)
    b = _mul(_conj(y2, rest), x2, rest)
    c = _mul(y2, x1, rest)
    d = _mul(x2, _conj(y1, rest), rest)
    return tuple(p + g * q for p, q in zip(a, b)) + tuple(p + q for p, q in zip(c, d))


def _conj(x: Vec, params: Sequence[Fraction]) -> Vec:
    if not params:
        return x
    h = len(x) // 2
    return _conj(x[:h], params[:-1]) + tuple(-v for v in x[h:])


@dataclass(frozen=True)
class CompositionAlgebra:
    params: Tuple[Fraction, ...]

    def __init__(self, params: Iterable[RationalLike]):
        ps = tuple(Q(a) for a in params)
        if not 1 <= len(ps) <= 3:
            raise ValueError("composition algebras take 1 to 3 parameters")
        if any(a == 0 for a in ps):
            raise ValueError("Cayley-Dickson parameters must be nonzero")
        object.__setattr__(self, "params", ps)
        object.__setattr__(self, "_coeffs", PfisterForm(ps).expansion.coefficients)

    @property
    def dim(self) -> int:
        return 2 ** len(self.params)

    def element(self, coords: Sequence[RationalLike]) -> Vec:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return tuple(Q(c) for c in coords)

    def one(self) -> Vec:
        return (Fraction(1),) + (Fraction(0),) * (self.dim - 1)

    def scalar(self, q: RationalLike) -> Vec:
        return (Q(q),) + (Fraction(0),) * (self.dim - 1)

    def basis(self) -> List[Vec]:
        return [tuple(Fraction(int(i == k)) for i in range(self.dim)) for k in range(self.dim)]

    def multiply(self, x: Vec, y: Vec) -> Vec:
        return _mul(x, y, self.params)

    def conj(self, x: Vec) -> Vec:
        return _conj(x, self.params)

    def norm(self, x: Vec) -> Fraction:
        return sum((c * v * v for c, v in zip(self._coeffs, x)), Fraction(0))

    def trace(self, x: Vec) -> Fraction:
        return 2 * x[0]

    def bilinear(self, x: Vec, y: Vec) -> Fraction:
        """Polar form N(x, y) = n(x + y) - n(x) - n(y)."""
        coeffs = self._coeffs
        return 2 * sum((c * a * b for c, a, b in zip(coeffs, x, y)), Fraction(0))

    def norm_form(self) -> PfisterForm:
        return PfisterForm(self.params)

    def random_element(self, rng: random.Random, height: int = 4, den: int = 3) -> Vec:
        return tuple(Fraction(rng.randint(-height, height), rng.randint(1, den)) for _ in range(self.dim))

    def to_dict(self) -> dict:
        return {"params": [str(a) for a in self.params]}


def add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(c: RationalLike, x: Vec) -> Vec:
    c = Q(c)
    return tuple(c * a for a in x)


def multiply(C: CompositionAlgebra, x: Vec, y: Vec) -> Vec:
    return C.multiply(x, y)


def norm_form(C: CompositionAlgebra) -> PfisterForm:
    return C.norm_form()


def is_division(C: CompositionAlgebra) -> bool:
    return not is_isotropic(C.norm_form().expansion)


def embeds_quadratic(K: QuadraticEtale, C: CompositionAlgebra) -> bool:
    if K.split:
        return not is_division(C)
    return pfister_divides_1fold(K.alpha, C.norm_form())


def find_square_root(C: CompositionAlgebra, alpha: RationalLike, bound: int = 3) -> Optional[Vec]:
    """A non-scalar j with j^2 = alpha, from small integer pure vectors."""
    alpha = Q(alpha)
    coeffs = C.norm_form().expansion.coefficients
    for r in range(1, bound + 1):
        for v in product(range(-r, r + 1), repeat=C.dim - 1):
            if max(abs(t) for t in v) != r:
                continue
            x = (Fraction(0),) + tuple(Fraction(t) for t in v)
            if sum((c * t * t for c, t in zip(coeffs, x)), Fraction(0)) == -alpha:
                return x
    return None


Kelt = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HermitianData:
    """h on the K-module K-perp, K = Q(j), values a + b j stored as (a, b)."""

    base: CompositionAlgebra
    j: Vec
    alpha: Fraction
    k_basis: Tuple[Vec, Vec, Vec]
    gram: Tuple[Tuple[Kelt, ...], ...]

    def h(self, x: Vec, y: Vec) -> Kelt:
        return hermitian_value(self.base, self.j, self.alpha, x, y)

    def k_action(self, k: Kelt, x: Vec) -> Vec:
        return add(scale(k[0], x), scale(k[1], self.base.multiply(self.j, x)))

    def perp_basis(self) -> List[Vec]:
        out = []
        for v in self.k_basis:
            out += [v, self.base.multiply(self.j, v)]
        return out


def hermitian_value(C: CompositionAlgebra, j: Vec, alpha: Fraction, x: Vec, y: Vec) -> Kelt:
    return C.bilinear(x, y), C.bilinear(C.multiply(j, x), y) / alpha


def k_mul(alpha: Fraction, a: Kelt, b: Kelt) -> Kelt:
    return a[0] * b[0] + alpha * a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def k_det3(alpha: Fraction, m: Sequence[Sequence[Kelt]]) -> Kelt:
    def mul(a, b):
        return k_mul(alpha, a, b)

    def sub2(a, b):
        return a[0] - b[0], a[1] - b[1]

    def add2(a, b):
        return a[0] + b[0], a[1] + b[1]

    t0 = mul(m[0][0], sub2(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
    t1 = mul(m[0][1], sub2(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
    t2 = mul(m[0][2], sub2(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
    return add2(sub2(t0, t1), t2)


def hermitian_structure(C: CompositionAlgebra, j: Sequence[RationalLike]) -> HermitianData:
    if C.dim != 8:
        raise ValueError("hermitian structure needs an octonion algebra")
    j = C.element(j)
    sq = C.multiply(j, j)
    if any(v != 0 for v in sq[1:]) or all(v == 0 for v in j[1:]):
        raise ValueError("j must be a non-scalar element with scalar square")
    alpha = sq[0]
    if alpha == 0:
        raise ValueError("j must square to a nonzero scalar")
    one = C.one()
    rows = [[C.bilinear(b, one) for b in C.basis()], [C.bilinear(b, j) for b in C.basis()]]
    perp = [tuple(v) for v in linalg.nullspace(rows)]
    chosen: List[Vec] = []
    span: List[Vec] = []
    for v in perp:
        if linalg.rank(span + [v]) > len(span):
            chosen.append(v)
            span += [v, C.multiply(j, v)]
            if linalg.rank(span) != len(span):
                raise ValueError("K-span of K-perp is degenerate for this j; choose another")
        if len(chosen) == 3:
            break
    if len(chosen) != 3:
        raise ValueError("K-perp does not have K-rank 3")
    gram = tuple(tuple(hermitian_value(C, j, alpha, x, y) for y in chosen) for x in chosen)
    if k_det3(alpha, gram) == (0, 0):
        raise ValueError("hermitian form is degenerate for this j; choose another")
    return HermitianData(C, j, alpha, tuple(chosen), gram)


def composition_from_dict(d: dict) -> CompositionAlgebra:
    return CompositionAlgebra(Q(a) for a in d["params"])
