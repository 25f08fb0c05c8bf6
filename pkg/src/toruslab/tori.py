"""Unitary tori T = SU(E, tau) attached to a pair (L, K)."""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .exact_numbers import squarefree_part
from .etale import CubicEtale, Elem, QuadraticEtale, UnitaryAlgebra
from .quadratic_forms import QuadraticForm, form, is_hyperbolic

SPLIT_RANK2 = "SplitRank2"
WEIL_RESTRICTION = "WeilRestriction"
NORM_ONE_SQUARE = "NormOneSquare"
RESTRICTED_NORM_ONE = "RestrictedNormOne"
GENERAL = "General"


@dataclass(frozen=True)
class TorusShape:
    tag: str
    field: Optional[int] = None
    second: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"tag": self.tag}
        if self.field is not None:
            out["field"] = str(self.field)
        if self.second is not None:
            out["second"] = str(self.second)
        return out

    def __str__(self) -> str:
        if self.field is None:
            return self.tag
        if self.second is None:
            return f"{self.tag}(Q(sqrt({self.field})))"
        return f"{self.tag}(Q(sqrt({self.field})), Q(sqrt({self.second})))"


class UnitaryTorus:
    def __init__(self, L: CubicEtale, K: QuadraticEtale):
        self.ealg = UnitaryAlgebra(L, K)

    @property
    def L(self) -> CubicEtale:
        return self.ealg.L

    @property
    def K(self) -> QuadraticEtale:
        return self.ealg.K

    @property
    def alpha(self) -> int:
        return self.K.alpha

    @property
    def delta(self) -> int:
        return self.L.discriminant()

    def q_T(self) -> QuadraticForm:
        return form(1, -self.alpha * self.delta)

    def qt_class(self) -> int:
        """Square class of alpha * delta, the slot of q_T."""
        return squarefree_part(self.alpha * self.delta)

    def is_distinguished(self) -> bool:
        return self.qt_class() == 1

    def classify(self) -> TorusShape:
        L, K = self.L, self.K
        if L.kind == "field":
            return TorusShape(GENERAL)
        if L.kind == "split":
            return TorusShape(SPLIT_RANK2) if K.split else TorusShape(NORM_ONE_SQUARE, K.alpha)
        if K.split or K.alpha == L.alpha0:
            return TorusShape(WEIL_RESTRICTION, L.alpha0)
        return TorusShape(RESTRICTED_NORM_ONE, L.alpha0, K.alpha)

    def is_point(self, x: Elem) -> bool:
        E = self.ealg
        return x * E.tau(x) == E.one and E.norm_EK(x) == E.K.one

    def sample_point(self, rng: random.Random, height: int = 4) -> Elem:
        """(b/tau(b))^3 * tau(beta)/beta with beta = N_{E/K}(b) lies on T."""
        E = self.ealg
        b = E.random_unit(rng, height)
        beta = E.from_K(E.norm_EK(b))
        return (b / E.tau(b)) ** 3 * E.tau(beta) / beta

    def to_dict(self) -> dict:
        return {"L": self.L.to_dict(), "K": self.K.to_dict()}


def torus(L: CubicEtale, K: QuadraticEtale) -> UnitaryTorus:
    return UnitaryTorus(L, K)


@dataclass
class ShapeModel:
    """Explicit point-level parametrization of T for one shape."""

    sample_param: Callable[[random.Random], tuple]
    param_mul: Callable[[tuple, tuple], tuple]
    forward: Callable[[tuple], Elem]
    backward: Callable[[Elem], tuple]


def _k_unit_circle(K: QuadraticEtale, rng: random.Random) -> Elem:
    z = K.random_unit(rng)
    return z / K.conj(z)


def shape_model(T: UnitaryTorus) -> ShapeModel:
    E, L, K = T.ealg, T.L, T.K
    shape = T.classify()
    if shape.tag == GENERAL:
        raise ValueError("no closed-form isomorphism for a cubic field L")

    def nonzero(rng: random.Random) -> Fraction:
        while True:
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if q:
                return q

    if shape.tag == SPLIT_RANK2:
        def forward(p):
            a, b = p
            x = L.elem([a, b, 1 / (a * b)])
            return E.from_split_components(x, x.inverse())

        def backward(x):
            c = E.split_components(x)[0]
            return c.c[0], c.c[1]

        return ShapeModel(lambda rng: (nonzero(rng), nonzero(rng)),
                          lambda p, q: (p[0] * q[0], p[1] * q[1]), forward, backward)

    if shape.tag == WEIL_RESTRICTION and K.split:
        K0 = QuadraticEtale(L.alpha0)

        def forward(p):
            z = p[0]
            first = L.elem([1 / K0.norm(z), z.c[0], z.c[1]])
            return E.from_split_components(first, first.inverse())

        def backward(x):
            c = E.split_components(x)[0]
            return (K0.elem([c.c[1], c.c[2]]),)

        return ShapeModel(lambda rng: (K0.random_unit(rng),), lambda p, q: (p[0] * q[0],), forward, backward)

    if shape.tag == WEIL_RESTRICTION:
        a = K.alpha

        def from_components(x: Elem, y: Elem, z: Elem) -> Elem:
            # y, z are the images of the K0 (x) K part under j0 -> +j and j0 -> -j
            p0 = (y.c[0] + z.c[0]) / 2
            q1 = (y.c[0] - z.c[0]) / (2 * a)
            p1 = (y.c[1] + z.c[1]) / 2
            q0 = (y.c[1] - z.c[1]) / 2
            return E.elem([x.c[0], p0, q0, x.c[1], p1, q1])

        def components(e: Elem) -> Tuple[Elem, Elem, Elem]:
            a0, p0, q0, a1, p1, q1 = e.c
            return (K.elem([a0, a1]), K.elem([p0 + q1 * a, q0 + p1]), K.elem([p0 - q1 * a, p1 - q0]))

        def forward(p):
            z = p[0]
            zb = K.conj(z)
            return from_components(zb / z, zb.inverse(), z)

        def backward(e):
            return (components(e)[2],)

        return ShapeModel(lambda rng: (K.random_unit(rng),), lambda p, q: (p[0] * q[0],), forward, backward)

    if shape.tag == NORM_ONE_SQUARE:
        def forward(p):
            x, y = p
            w = (x * y).inverse()
            return E.elem([x.c[0], y.c[0], w.c[0], x.c[1], y.c[1], w.c[1]])

        def backward(e):
            return K.elem([e.c[0], e.c[3]]), K.elem([e.c[1], e.c[4]])

        return ShapeModel(lambda rng: (_k_unit_circle(K, rng), _k_unit_circle(K, rng)),
                          lambda p, q: (p[0] * q[0], p[1] * q[1]), forward, backward)

    # RESTRICTED_NORM_ONE: E = K x M with M = K0 (x) K; T = {(N_{M/K}(m)^-1, m) : m tau(m) = 1}
    e_m = E.from_L(L.elem([0, 1, 0]))
    e_q = E.from_L(L.elem([1, 0, 0]))

    def sample(rng):
        z = E.random_unit(rng)
        return (e_m * z / E.tau(z),)

    def forward(p):
        m = p[0]
        # N_{E/K}(e_Q + m) = N_{M/K}(m) since the Q-factor contributes 1
        nk = E.from_K(E.norm_EK(e_q + m))
        return e_q * nk.inverse() + m

    def backward(e):
        return (e_m * e,)

    return ShapeModel(sample, lambda p, q: (p[0] * q[0],), forward, backward)


def _params_equal(p: tuple, q: tuple) -> bool:
    return all(a == b for a, b in zip(p, q))


def shape_isomorphism_check(T: UnitaryTorus, samples: int = 100, seed: int = 0) -> dict:
    model = shape_model(T)
    rng = random.Random(seed)
    lands = hom = back = onto = True
    for _ in range(samples):
        p, q = model.sample_param(rng), model.sample_param(rng)
        fp, fq = model.forward(p), model.forward(q)
        lands &= T.is_point(fp) and T.is_point(fq)
        hom &= model.forward(model.param_mul(p, q)) == fp * fq
        back &= _params_equal(model.backward(fp), p)
        x = T.sample_point(rng)
        onto &= model.forward(model.backward(x)) == x
    return {
        "shape": str(T.classify()),
        "samples": samples,
        "lands_in_points": lands,
        "homomorphism": hom,
        "inverse_roundtrip": back,
        "onto_sampled_points": onto,
        "passed": lands and hom and back and onto,
    }
