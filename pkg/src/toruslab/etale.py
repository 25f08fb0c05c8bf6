"""Quadratic and cubic étale algebras over Q, and the unitary algebra E = L (x) K.

Algebras are given by structure constants in a fixed basis; elements are
coordinate vectors of Fractions tied to their parent algebra.
"""

import random
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from . import linalg
from .exact_numbers import Q, RationalLike, is_square, squarefree_part

Coords = Tuple[Fraction, ...]


class Elem:
    """An element of a structure-constant algebra."""

    __slots__ = ("parent", "c")

    def __init__(self, parent: "Algebra", coords: Sequence[RationalLike]):
        if len(coords) != parent.dim:
            raise ValueError(f"{parent.name} expects {parent.dim} coordinates, got {len(coords)}")
        self.parent = parent
        self.c: Coords = tuple(Q(x) for x in coords)

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            if other.parent is not self.parent and other.parent != self.parent:
                raise ValueError(f"elements of {self.parent.name} and {other.parent.name} do not mix")
            return other
        return self.parent.scalar(other)

    def __add__(self, other) -> "Elem":
        o = self._coerce(other)
        return Elem(self.parent, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other) -> "Elem":
        o = self._coerce(other)
        return Elem(self.parent, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other) -> "Elem":
        return self._coerce(other) - self

    def __neg__(self) -> "Elem":
        return Elem(self.parent, [-a for a in self.c])

    def __mul__(self, other) -> "Elem":
        if isinstance(other, (int, Fraction)):
            return Elem(self.parent, [a * other for a in self.c])
        return Elem(self.parent, self.parent.mul(self.c, self._coerce(other).c))

    def __rmul__(self, other) -> "Elem":
        return self * other

    def inverse(self) -> "Elem":
        return Elem(self.parent, self.parent.inverse(self.c))

    def __truediv__(self, other) -> "Elem":
        if isinstance(other, (int, Fraction)):
            return Elem(self.parent, [a / other for a in self.c])
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "Elem":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Elem":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.parent.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.parent.scalar(other)
        if not isinstance(other, Elem):
            return NotImplemented
        return self.parent == other.parent and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.parent.name, self.c))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def __repr__(self) -> str:
        return f"{self.parent.name}({', '.join(str(a) for a in self.c)})"


class Algebra:
    """Commutative associative unital algebra given by structure constants."""

    def __init__(self, name: str, table: Sequence[Sequence[Sequence[RationalLike]]], one: Sequence[RationalLike]):
        self.name = name
        self.dim = len(table)
        self._sparse: List[List[List[Tuple[int, Fraction]]]] = [
            [[(k, Q(v)) for k, v in enumerate(table[i][j]) if Q(v) != 0] for j in range(self.dim)]
            for i in range(self.dim)
        ]
        self._one = tuple(Q(x) for x in one)

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name

    def elem(self, coords: Sequence[RationalLike]) -> Elem:
        return Elem(self, coords)

    @property
    def one(self) -> Elem:
        return Elem(self, self._one)

    @property
    def zero(self) -> Elem:
        return Elem(self, [0] * self.dim)

    def scalar(self, q: RationalLike) -> Elem:
        q = Q(q)
        return Elem(self, [q * a for a in self._one])

    def basis(self) -> List[Elem]:
        return [Elem(self, [1 if i == k else 0 for i in range(self.dim)]) for k in range(self.dim)]

    def mul(self, x: Coords, y: Coords) -> Coords:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._sparse[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                p = xi * yj
                for k, v in row[j]:
                    out[k] += p * v
        return tuple(out)

    def mult_matrix(self, x: Elem) -> linalg.Matrix:
        cols = [self.mul(x.c, b.c) for b in self.basis()]
        return linalg.transpose(cols)

    def norm(self, x: Elem) -> Fraction:
        return linalg.det(self.mult_matrix(x))

    def trace(self, x: Elem) -> Fraction:
        m = self.mult_matrix(x)
        return sum((m[i][i] for i in range(self.dim)), Fraction(0))

    def inverse(self, x: Coords) -> Coords:
        m = self.mult_matrix(Elem(self, x))
        sol = linalg.solve(m, list(self._one))
        if sol is None or linalg.det(m) == 0:
            raise ZeroDivisionError(f"element of {self.name} is not invertible")
        return tuple(sol)

    def trace_gram(self) -> linalg.Matrix:
        b = self.basis()
        return [[self.trace(x * y) for y in b] for x in b]

    def random_element(self, rng: random.Random, height: int = 5, den: int = 3) -> Elem:
        return Elem(self, [Fraction(rng.randint(-height, height), rng.randint(1, den)) for _ in range(self.dim)])

    def random_unit(self, rng: random.Random, height: int = 5, den: int = 3) -> Elem:
        while True:
            x = self.random_element(rng, height, den)
            if self.norm(x) != 0:
                return x


def _powers(theta_cubed: Sequence[Fraction]) -> List[List[Fraction]]:
    """Coordinates of theta^0..theta^4 in the basis 1, theta, theta^2."""
    pw = [[Fraction(1), Fraction(0), Fraction(0)], [Fraction(0), Fraction(1), Fraction(0)],
          [Fraction(0), Fraction(0), Fraction(1)], list(theta_cubed)]
    t3 = pw[3]
    # theta^4 = theta * theta^3
    pw.append([t3[2] * theta_cubed[0], t3[0] + t3[2] * theta_cubed[1], t3[1] + t3[2] * theta_cubed[2]])
    return pw


class QuadraticEtale(Algebra):
    """K = Q[j]/(j^2 - alpha), alpha a square-free integer; basis (1, j)."""

    def __init__(self, alpha: RationalLike):
        a = squarefree_part(alpha)
        self.alpha = a
        table = [[[1, 0], [0, 1]], [[0, 1], [a, 0]]]
        super().__init__(f"K[{a}]", table, [1, 0])

    @property
    def split(self) -> bool:
        return self.alpha == 1

    def conj(self, x: Elem) -> Elem:
        return Elem(self, [x.c[0], -x.c[1]])

    @property
    def j(self) -> Elem:
        return Elem(self, [0, 1])

    def to_dict(self) -> dict:
        return {"alpha": str(self.alpha)}


class CubicEtale(Algebra):
    """L in one of three shapes: split Q^3, mixed Q x Q(sqrt(alpha0)), or a cubic field."""

    def __init__(self, kind: str, alpha0: Optional[RationalLike] = None,
                 min_poly: Optional[Sequence[RationalLike]] = None):
        self.kind = kind
        self.alpha0: Optional[int] = None
        self.min_poly: Optional[Tuple[Fraction, ...]] = None
        if kind == "split":
            table = [[[1 if k == i == j else 0 for k in range(3)] for j in range(3)] for i in range(3)]
            one = [1, 1, 1]
            name = "L[split]"
        elif kind == "mixed":
            if alpha0 is None:
                raise ValueError("mixed cubic algebra needs alpha0")
            a = squarefree_part(alpha0)
            if a == 1:
                raise ValueError("alpha0 must be a non-square for the mixed shape")
            self.alpha0 = a
            z = [0, 0, 0]
            table = [
                [[1, 0, 0], z, z],
                [z, [0, 1, 0], [0, 0, 1]],
                [z, [0, 0, 1], [0, a, 0]],
            ]
            one = [1, 1, 0]
            name = f"L[mixed {a}]"
        elif kind == "field":
            if min_poly is None or len(min_poly) != 4 or Q(min_poly[3]) != 1:
                raise ValueError("field shape needs a monic cubic [c0, c1, c2, 1]")
            f = tuple(Q(c) for c in min_poly)
            x = sympy.Symbol("x")
            poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x, domain="QQ")
            if not poly.is_irreducible:
                raise ValueError(f"min_poly {list(map(str, f))} is reducible over Q")
            self.min_poly = f
            pw = _powers([-f[0], -f[1], -f[2]])
            table = [[pw[i + j] for j in range(3)] for i in range(3)]
            one = [1, 0, 0]
            name = "L[field " + ",".join(str(c) for c in f) + "]"
        else:
            raise ValueError(f"unknown cubic kind {kind!r}")
        super().__init__(name, table, one)

    @classmethod
    def split_triple(cls) -> "CubicEtale":
        return cls("split")

    @classmethod
    def mixed(cls, alpha0: RationalLike) -> "CubicEtale":
        return cls("mixed", alpha0=alpha0)

    @classmethod
    def field(cls, min_poly: Sequence[RationalLike]) -> "CubicEtale":
        return cls("field", min_poly=min_poly)

    @property
    def is_field(self) -> bool:
        return self.kind == "field"

    def to_dict(self) -> dict:
        if self.kind == "split":
            return {"kind": "split"}
        if self.kind == "mixed":
            return {"kind": "mixed", "alpha0": str(self.alpha0)}
        return {"kind": "field", "min_poly": [str(c) for c in self.min_poly]}

    def discriminant(self) -> int:
        if self.kind == "split":
            return 1
        if self.kind == "mixed":
            return self.alpha0
        return squarefree_part(cubic_discriminant(self.min_poly))

    def is_cyclic(self) -> bool:
        return self.kind == "field" and self.discriminant() == 1

    @cached_property
    def automorphisms(self) -> List[linalg.Matrix]:
        """All algebra automorphisms as matrices acting on coordinate columns."""
        if self.kind == "split":
            out = []
            for perm in permutations(range(3)):
                m = linalg.zeros(3)
                for i, p in enumerate(perm):
                    m[p][i] = Fraction(1)
                out.append(m)
            return out
        if self.kind == "mixed":
            conj = linalg.identity(3)
            conj[2][2] = Fraction(-1)
            return [linalg.identity(3), conj]
        if not self.is_cyclic():
            return [linalg.identity(3)]
        return _field_automorphisms(self)

    def apply_automorphism(self, m: linalg.Matrix, x: Elem) -> Elem:
        return Elem(self, linalg.mat_vec(m, x.c))


def cubic_discriminant(f: Sequence[RationalLike]) -> Fraction:
    """Discriminant of x^3 + a x^2 + b x + c given as [c, b, a, 1]."""
    c, b, a = Q(f[0]), Q(f[1]), Q(f[2])
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c


def tensor_product(a: Algebra, b: Algebra) -> Algebra:
    n, m = a.dim, b.dim
    ab = a.basis()
    bb = b.basis()
    table = []
    for i in range(n):
        for j in range(m):
            row = []
            for k in range(n):
                for l in range(m):
                    x = a.mul(ab[i].c, ab[k].c)
                    y = b.mul(bb[j].c, bb[l].c)
                    row.append([xi * yj for xi in x for yj in y])
            table.append(row)
    one = [x * y for x in a.one.c for y in b.one.c]
    return Algebra(f"({a.name} (x) {b.name})", table, one)


def _to_sympy(q: Fraction):
    return sympy.Rational(q.numerator, q.denominator)


def _from_sympy(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def minimal_polynomial(x: Elem) -> List[Fraction]:
    """Monic minimal polynomial of x, lowest degree coefficient first."""
    a = x.parent
    pw = [a.one]
    while True:
        pw.append(pw[-1] * x)
        cols = linalg.transpose([p.c for p in pw])
        ns = linalg.nullspace(cols)
        if ns:
            v = ns[0]
            lead = v[-1]
            return [c / lead for c in v]


def evaluate_poly(coeffs: Sequence[Fraction], x: Elem) -> Elem:
    out = x.parent.zero
    for c in reversed(coeffs):
        out = out * x + x.parent.scalar(c)
    return out


def idempotents(a: Algebra, attempts: int = 50) -> List[Elem]:
    """Complete orthogonal set of primitive idempotents of an étale algebra."""
    rng = random.Random(0)
    sym_x = sympy.Symbol("x")
    for _ in range(attempts):
        g = Elem(a, [rng.randint(-3, 3) for _ in range(a.dim)])
        m = minimal_polynomial(g)
        if len(m) - 1 != a.dim:
            continue
        mp = sympy.Poly([_to_sympy(c) for c in reversed(m)], sym_x, domain="QQ")
        _, factors = mp.factor_list()
        if any(e != 1 for _, e in factors):
            continue
        out = []
        for fac, _ in factors:
            h = sympy.Poly(sympy.quo(mp, fac), sym_x, domain="QQ")
            inv = sympy.Poly(sympy.invert(h.as_expr(), fac.as_expr(), sym_x), sym_x, domain="QQ")
            e_poly = (h * inv).rem(mp)
            coeffs = [_from_sympy(c) for c in reversed(e_poly.all_coeffs())]
            out.append(evaluate_poly(coeffs, g))
        for e in out:
            assert e * e == e
        assert sum(out[1:], out[0]) == a.one
        return sorted(out, key=lambda e: [(-abs(c), c) for c in e.c])
    raise ArithmeticError(f"no primitive element found for {a.name}")


def _field_automorphisms(l: CubicEtale) -> List[linalg.Matrix]:
    """Automorphisms of a cyclic cubic field read off from the blocks of L (x) L."""
    t = tensor_product(l, l)
    out = []
    lb = l.basis()
    for e in idempotents(t):
        block = [e * Elem(t, [x * y for x in b.c for y in l.one.c]) for b in lb]
        if linalg.rank([v.c for v in block]) != 3:
            continue
        theta = Elem(t, [x * y for x in l.one.c for y in lb[1].c])
        target = e * theta
        coeffs = linalg.solve(linalg.transpose([v.c for v in block]), list(target.c))
        if coeffs is None:
            continue
        y = Elem(l, coeffs)
        m = linalg.transpose([l.one.c, y.c, (y * y).c])
        out.append(m)
    for m in out:
        for x in lb:
            for z in lb:
                assert l.apply_automorphism(m, x * z) == l.apply_automorphism(m, x) * l.apply_automorphism(m, z)
    out.sort(key=lambda m: m != linalg.identity(3))
    return out


class UnitaryAlgebra(Algebra):
    """E = L (x) K with basis l_i (x) 1, l_i (x) j and involution tau = 1 (x) conj."""

    def __init__(self, L: CubicEtale, K: QuadraticEtale):
        self.L = L
        self.K = K
        a = K.alpha
        lb = L.basis()
        table = []
        for s in range(2):
            for i in range(3):
                row = []
                for t in range(2):
                    for k in range(3):
                        p = L.mul(lb[i].c, lb[k].c)
                        if s + t == 0:
                            row.append(list(p) + [0, 0, 0])
                        elif s + t == 1:
                            row.append([0, 0, 0] + list(p))
                        else:
                            row.append([a * v for v in p] + [0, 0, 0])
                table.append(row)
        super().__init__(f"E[{L.name} (x) {K.name}]", table, list(L.one.c) + [0, 0, 0])

    def tau(self, x: Elem) -> Elem:
        return Elem(self, x.c[:3] + tuple(-v for v in x.c[3:]))

    def from_L(self, l: Elem) -> Elem:
        return Elem(self, l.c + (Fraction(0),) * 3)

    def from_K(self, k: Elem) -> Elem:
        one = self.L.one.c
        return Elem(self, [k.c[0] * v for v in one] + [k.c[1] * v for v in one])

    def from_parts(self, x0: Elem, x1: Elem) -> Elem:
        """x0 + x1 * j for x0, x1 in L."""
        return Elem(self, x0.c + x1.c)

    def parts(self, x: Elem) -> Tuple[Elem, Elem]:
        return Elem(self.L, x.c[:3]), Elem(self.L, x.c[3:])

    @property
    def j(self) -> Elem:
        return self.from_K(self.K.j)

    def to_L(self, x: Elem) -> Elem:
        if any(v != 0 for v in x.c[3:]):
            raise ValueError("element is not fixed by tau")
        return Elem(self.L, x.c[:3])

    def to_K(self, x: Elem) -> Elem:
        one = self.L.one.c
        k = next(i for i, v in enumerate(one) if v != 0)
        a, b = x.c[k] / one[k], x.c[3 + k] / one[k]
        if self.from_K(self.K.elem([a, b])) != x:
            raise ValueError("element does not lie in K")
        return self.K.elem([a, b])

    def norm_EK(self, x: Elem) -> Elem:
        """Determinant of multiplication by x on E viewed as a free K-module of rank 3."""
        K = self.K
        cols = [self.mul(x.c, self.from_L(b).c) for b in self.L.basis()]
        m = [[K.elem([cols[c][r], cols[c][3 + r]]) for c in range(3)] for r in range(3)]
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def norm_EL(self, x: Elem) -> Elem:
        return self.to_L(x * self.tau(x))

    def relative_norms(self, x: Elem) -> Tuple[Elem, Elem]:
        return self.norm_EK(x), self.norm_EL(x)

    def lift_automorphism(self, m: linalg.Matrix, x: Elem) -> Elem:
        x0, x1 = self.parts(x)
        return self.from_parts(self.L.apply_automorphism(m, x0), self.L.apply_automorphism(m, x1))

    def split_components(self, x: Elem) -> Tuple[Elem, Elem]:
        """For split K, the images of x in L x L under the idempotents (1 +- j)/2."""
        if not self.K.split:
            raise ValueError("K is not split")
        x0, x1 = self.parts(x)
        return x0 + x1, x0 - x1

    def from_split_components(self, a: Elem, b: Elem) -> Elem:
        if not self.K.split:
            raise ValueError("K is not split")
        return self.from_parts((a + b) / 2, (a - b) / 2)


def unitary_algebra(L: CubicEtale, K: QuadraticEtale) -> UnitaryAlgebra:
    return UnitaryAlgebra(L, K)


def discriminant(L: CubicEtale) -> int:
    return L.discriminant()


def trace_form_discriminant(a: Algebra) -> int:
    """Square class of the Gram determinant of the trace form."""
    return squarefree_part(linalg.det(a.trace_gram()))


def cubic_from_dict(d: dict) -> CubicEtale:
    kind = d.get("kind")
    if kind == "split":
        return CubicEtale.split_triple()
    if kind == "mixed":
        return CubicEtale.mixed(Q(d["alpha0"]))
    if kind == "field":
        return CubicEtale.field([Q(c) for c in d["min_poly"]])
    raise ValueError(f"unknown cubic kind {kind!r}")


def parse_cubic(text: str) -> CubicEtale:
    """Parse "split", "mixed:A" or "field:c0,c1,c2"."""
    text = text.strip()
    if text == "split":
        return CubicEtale.split_triple()
    kind, _, rest = text.partition(":")
    if kind == "mixed":
        return CubicEtale.mixed(Q(rest))
    if kind == "field":
        coeffs = [Q(c) for c in rest.split(",")]
        if len(coeffs) == 3:
            coeffs.append(Fraction(1))
        return CubicEtale.field(coeffs)
    raise ValueError(f"cannot parse cubic algebra {text!r}")


def same_quadratic(K1: QuadraticEtale, alpha: RationalLike) -> bool:
    return is_square(Q(K1.alpha) * Q(alpha))


def fixed_algebra_is_L(E: UnitaryAlgebra) -> bool:
    """E^tau equals the image of L, compared as subspaces of Q^6."""
    rows = [[(E.tau(b).c[i] - b.c[i]) for b in E.basis()] for i in range(E.dim)]
    fixed = linalg.nullspace(rows)
    image = [E.from_L(b).c for b in E.L.basis()]
    return len(fixed) == 3 and linalg.rank(image) == 3 and linalg.rank(list(fixed) + image) == 3


def switch_idempotents(E: UnitaryAlgebra) -> Optional[Tuple[Elem, Elem]]:
    """For split K: e+- = (1 +- j)/2 with tau swapping them, so (E, tau) = (L x L, switch)."""
    if not E.K.split:
        return None
    half = Fraction(1, 2)
    ep = (E.one + E.j) * half
    em = (E.one - E.j) * half
    ok = (ep * ep == ep and em * em == em and ep * em == E.zero and ep + em == E.one
          and E.tau(ep) == em)
    return (ep, em) if ok else None
