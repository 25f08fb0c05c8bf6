"""H^1(Q, T) for T = SU(E, tau), modelled as admissible pairs modulo twisting.

A class is represented by (s, z) in L* x K* with N_{L/Q}(s) = z conj(z).
(s, z) ~ (b s tau(b), N_{E/K}(b) z) for b in E*; products are coordinatewise.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .exact_numbers import fmt, is_prime, is_square
from .etale import CubicEtale, Elem, QuadraticEtale, UnitaryAlgebra
from .quadratic_forms import REAL, norm_obstruction
from .search import (DEFAULT_BUDGET, binary_norm_witness, cubic_norm_witness, default_height_bound,
                     field_sqrt, integer_norm, quadratic_sqrt, rational_shells, totally_positive)
from .tori import (GENERAL, NORM_ONE_SQUARE, RESTRICTED_NORM_ONE, SPLIT_RANK2, WEIL_RESTRICTION,
                   UnitaryTorus)

TRUE, FALSE, UNKNOWN = "true", "false", "unknown"

# each candidate in the cubic-field search may need a sympy factorization
FIELD_BUDGET = DEFAULT_BUDGET // 4


class AdmissibilityError(ValueError):
    pass


def elem_to_list(x: Elem) -> List[str]:
    return [fmt(v) for v in x.c]


@dataclass
class Verdict:
    verdict: str
    witness: Optional[Elem] = None
    obstruction: Optional[dict] = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else elem_to_list(self.witness),
            "obstruction": self.obstruction,
        }


class CohomologyClass:
    def __init__(self, T: UnitaryTorus, s: Elem, z: Elem):
        self.T = T
        self.s = s
        self.z = z

    @property
    def ealg(self) -> UnitaryAlgebra:
        return self.T.ealg

    def _check(self, other: "CohomologyClass") -> None:
        if other.ealg != self.ealg:
            raise ValueError("classes belong to different tori")

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        return CohomologyClass(self.T, self.s * other.s, self.z * other.z)

    def inverse(self) -> "CohomologyClass":
        return CohomologyClass(self.T, self.s.inverse(), self.z.inverse())

    def twist(self, b: Elem) -> "CohomologyClass":
        """Representative (b s tau(b), N_{E/K}(b) z) of the same class."""
        E = self.ealg
        s = E.to_L(b * E.from_L(self.s) * E.tau(b))
        return CohomologyClass(self.T, s, E.norm_EK(b) * self.z)

    def same_representative(self, other: "CohomologyClass") -> bool:
        return self.s == other.s and self.z == other.z

    def equivalent_via(self, other: "CohomologyClass", b: Elem) -> bool:
        return self.twist(b).same_representative(other)

    def to_dict(self) -> dict:
        return {"s": elem_to_list(self.s), "z": elem_to_list(self.z)}


def make_class(T: UnitaryTorus, s, z) -> CohomologyClass:
    L, K = T.L, T.K
    s = s if isinstance(s, Elem) else L.elem(s)
    z = z if isinstance(z, Elem) else K.elem(z)
    if L.norm(s) == 0 or K.norm(z) == 0:
        raise AdmissibilityError("s and z must be invertible")
    if L.norm(s) != K.norm(z):
        raise AdmissibilityError(f"N_L(s) = {L.norm(s)} differs from z conj(z) = {K.norm(z)}")
    return CohomologyClass(T, s, z)


def trivial_class(T: UnitaryTorus) -> CohomologyClass:
    return CohomologyClass(T, T.L.one, T.K.one)


def multiply(c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    return c1 * c2


def k_part(c: CohomologyClass) -> CohomologyClass:
    """t([(u, mu)]) = [(1, mu^-1 conj(mu))]."""
    K = c.T.K
    return CohomologyClass(c.T, c.T.L.one, K.conj(c.z) / c.z)


def decompose(c: CohomologyClass) -> Tuple[CohomologyClass, Elem]:
    """Split c into its K^(1)-part and the coset representative u of S / N_{E/L}(E*)."""
    return k_part(c), c.s


def psi(T: UnitaryTorus, u: Elem, mu: Elem) -> CohomologyClass:
    """Section [(u, mu^2 conj(mu)^-1)] for N_L(u) = mu conj(mu)."""
    K = T.K
    return make_class(T, u, mu * mu / K.conj(mu))


def q_class(T: UnitaryTorus, mu: Elem) -> CohomologyClass:
    """[(1, mu)] for mu of norm one."""
    if T.K.norm(mu) != 1:
        raise AdmissibilityError("mu must have norm one")
    return CohomologyClass(T, T.L.one, mu)


chi = q_class


def _e_from_component(E: UnitaryAlgebra, idx: int, k: Elem) -> Elem:
    """Element of E supported on the Q-factor idx of a split or mixed L, equal to k there."""
    e = [0, 0, 0]
    e[idx] = 1
    e_l = E.from_L(E.L.elem(e))
    return e_l * E.from_K(k)


def _fix_z(E: UnitaryAlgebra, b: Elem, z: Elem) -> Elem:
    """Adjust b inside U(E, tau) on the first Q-factor so that N_{E/K}(b) = z."""
    rho = z / E.norm_EK(b)
    e = [0, 0, 0]
    e[0] = 1
    e_l = E.from_L(E.L.elem(e))
    lam = e_l * E.from_K(rho) + (E.one - e_l)
    return b * lam


def _norm_from_K(K: QuadraticEtale, x: Fraction, bound: int) -> Tuple[Optional[object], Optional[Elem]]:
    """(obstruction place or None, witness k in K with N(k) = x or None)."""
    place = norm_obstruction(x, K.alpha)
    if place is not None:
        return place, None
    if K.split:
        return None, K.elem([(x + 1) / 2, (x - 1) / 2])
    w = binary_norm_witness(x, K.alpha, bound)
    return None, None if w is None else K.elem(list(w))


def _obstruction(place, component: str, reason: str) -> dict:
    return {"place": place if place == REAL else int(place), "component": component, "reason": reason}


def is_in_norm_EL(E: UnitaryAlgebra, s: Elem, bound: Optional[int] = None) -> Verdict:
    """Decide s in N_{E/L}(E*) (three-valued); witness b with b tau(b) = s."""
    bound = default_height_bound() if bound is None else bound
    L, K = E.L, E.K
    if K.split:
        return Verdict(TRUE, E.from_split_components(s, L.one))
    if K.alpha < 0 and not totally_positive(L, s):
        return Verdict(FALSE, obstruction=_obstruction(REAL, "L", "not totally positive, norms from a CM extension are"))
    if L.kind == "split":
        parts = []
        for i in range(3):
            place, w = _norm_from_K(K, s.c[i], bound)
            if place is not None:
                return Verdict(FALSE, obstruction=_obstruction(place, f"L[{i}]", f"{fmt(s.c[i])} is not a norm from K"))
            parts.append(w)
        if any(w is None for w in parts):
            return Verdict(TRUE)
        b = sum((_e_from_component(E, i, w) for i, w in enumerate(parts)), E.zero)
        return Verdict(TRUE, b)
    if L.kind == "mixed":
        place, w0 = _norm_from_K(K, s.c[0], bound)
        if place is not None:
            return Verdict(FALSE, obstruction=_obstruction(place, "L[Q]", f"{fmt(s.c[0])} is not a norm from K"))
        s2 = (s.c[1], s.c[2])
        b2 = _norm_from_quadratic_extension(E, s2, bound)
        if isinstance(b2, dict):
            return Verdict(FALSE, obstruction=b2)
        if b2 is None:
            return Verdict(UNKNOWN)
        if w0 is None:
            return Verdict(TRUE)
        return Verdict(TRUE, _e_from_component(E, 0, w0) + b2)
    return _field_norm_EL(E, s, bound)


def _norm_from_quadratic_extension(E: UnitaryAlgebra, s2: Tuple[Fraction, Fraction], bound: int):
    """For L = Q x K0: b supported on K0 (x) K with b tau(b) = s2, an obstruction dict, or None."""
    L, K = E.L, E.K
    a0, alpha = L.alpha0, K.alpha
    p, q = s2

    def in_e(x0: Tuple[Fraction, Fraction], x1: Tuple[Fraction, Fraction]) -> Elem:
        return E.elem([0, x0[0], x0[1], 0, x1[0], x1[1]])

    if alpha == a0:
        # alpha = j0^2 is a square in K0: X = (s2 + 1)/2, Y = (1 - s2)/(2 j0)
        X = ((p + 1) / 2, q / 2)
        Y = (-q / 2, (1 - p) / (2 * a0))
        b = in_e(X, Y)
        if E.to_L(b * E.tau(b)) == L.elem([0, p, q]):
            return b
        return None
    norm_down = p * p - a0 * q * q
    place = norm_obstruction(norm_down, alpha)
    if place is not None:
        return _obstruction(place, "L[K0]", "norm to Q is not a norm from K")
    place = norm_obstruction(norm_down, alpha * a0)
    if place is not None:
        return _obstruction(place, "L[K0]", "norm to Q is not a norm from Q(sqrt(alpha alpha0))")
    if alpha < 0 and a0 > 0 and not (p > 0 and norm_down > 0):
        return _obstruction(REAL, "L[K0]", "not totally positive")
    # X^2 - alpha Y^2 = t over K0 for t = s2 or 1/s2 (same norm class): search Y, take square roots
    inv = 1 / (p * p - a0 * q * q)
    targets = [((p, q), None), ((p * inv, -q * inv), in_e((p, q), (0, 0)))]
    for count, (y0, y1) in enumerate(rational_shells(2, bound)):
        if count > DEFAULT_BUDGET:
            return None
        for (tp, tq), scale in targets:
            # alpha Y^2 with Y = y0 + y1 j0
            w0 = tp + alpha * (y0 * y0 + a0 * y1 * y1)
            w1 = tq + alpha * 2 * y0 * y1
            root = quadratic_sqrt(w0, w1, a0)
            if root is not None:
                b = in_e(root, (y0, y1))
                if scale is not None:
                    b = scale * b
                if E.to_L(b * E.tau(b)) == L.elem([0, p, q]):
                    return b
    return None


def _field_norm_EL(E: UnitaryAlgebra, s: Elem, bound: int) -> Verdict:
    L, K = E.L, E.K
    place = norm_obstruction(L.norm(s), K.alpha)
    if place is not None:
        return Verdict(FALSE, obstruction=_obstruction(place, "L", "N_{L/Q}(s) is not a norm from K"))
    # b = X + Y j with X^2 - alpha Y^2 = t, t = s or 1/s; X exists only if N_L(t + alpha Y^2) is a square
    targets = [(s, None), (s.inverse(), E.from_L(s))]
    for count, y in enumerate(rational_shells(3, bound)):
        if count > FIELD_BUDGET:
            return Verdict(UNKNOWN)
        b1 = L.elem(list(y))
        for t, scale in targets:
            w = t + b1 * b1 * K.alpha
            if not is_square(integer_norm(L, w.c)):
                continue
            root = field_sqrt(L, w)
            if root is not None:
                b = E.from_parts(root, b1)
                if scale is not None:
                    b = scale * b
                if E.norm_EL(b) == s:
                    return Verdict(TRUE, b)
    return Verdict(UNKNOWN)


def is_trivial(c: CohomologyClass, bound: Optional[int] = None) -> Verdict:
    """Is c = [(1, 1)]?  Witness b satisfies twist((1, 1), b) = c."""
    bound = default_height_bound() if bound is None else bound
    T, E = c.T, c.ealg
    L, K = T.L, T.K
    if c.s == L.one and c.z == K.one:
        return Verdict(TRUE, E.one)
    base = trivial_class(T)
    if K.split:
        z_plus = c.z.c[0] + c.z.c[1]
        if L.kind == "split":
            b1 = L.elem([z_plus, 1, 1])
        elif L.kind == "mixed":
            b1 = L.elem([z_plus, 1, 0])
        else:
            b1 = cubic_norm_witness(L, z_plus, bound)
            if b1 is None:
                return Verdict(UNKNOWN, detail={"question": f"is {fmt(z_plus)} a norm from L"})
        b = E.from_split_components(b1, c.s / b1)
        assert base.equivalent_via(c, b)
        return Verdict(TRUE, b)
    if L.kind in ("split", "mixed"):
        v = is_in_norm_EL(E, c.s, bound)
        if v.verdict != TRUE or v.witness is None:
            return v
        b = _fix_z(E, v.witness, c.z)
        assert base.equivalent_via(c, b)
        return Verdict(TRUE, b)
    v = is_in_norm_EL(E, c.s, bound)
    if v.verdict == FALSE:
        return v
    if v.witness is not None:
        b0 = v.witness
        # remaining freedom: b0 lambda with lambda tau(lambda) = 1 and N_{E/K}(lambda) = rho
        lam = _unitary_with_norm(E, c.z / E.norm_EK(b0), bound)
        if lam is not None:
            b = b0 * lam
            assert base.equivalent_via(c, b)
            return Verdict(TRUE, b)
    return Verdict(UNKNOWN)


def _unitary_with_norm(E: UnitaryAlgebra, rho: Elem, bound: int) -> Optional[Elem]:
    """lambda = x / tau(x) with N_{E/K}(lambda) = rho, for rho of norm one.

    x / tau(x) is unchanged by scaling x by L*, so x = 1 + m j covers every x with
    invertible first part.  With k = 1 + rho (so rho = k / conj(k)) the condition is
    N_{E/K}(x) conj(k) in Q.
    """
    K = E.K
    if rho == K.one:
        return E.one
    if rho == -K.one:
        return -E.one
    kbar = K.conj(K.one + rho)
    for count, m in enumerate(rational_shells(3, bound)):
        if count > DEFAULT_BUDGET:
            return None
        x = E.one + E.from_L(E.L.elem(list(m))) * E.j
        if E.norm(x) == 0:
            continue
        n = E.norm_EK(x) * kbar
        if n.c[1] == 0 and n.c[0] != 0:
            return x / E.tau(x)
    return None


def sample_class(T: UnitaryTorus, rng: random.Random) -> CohomologyClass:
    """Random element of V: (b tau(b) u, N(b) mu) with (u, mu) from a shape-specific generator."""
    E, L, K = T.ealg, T.L, T.K
    mu = K.random_unit(rng)
    n = K.norm(mu)
    if L.kind == "split":
        a, b = (Fraction(rng.choice([-5, -3, -2, -1, 1, 2, 3, 5, 7]), rng.randint(1, 3)) for _ in range(2))
        u = L.elem([a, b, n / (a * b)])
    elif L.kind == "mixed":
        K0 = QuadraticEtale(L.alpha0)
        y = K0.random_unit(rng)
        u = L.elem([n / K0.norm(y), y.c[0], y.c[1]])
    else:
        v = L.random_unit(rng)
        u = v * v
        mu = K.scalar(L.norm(v))
    c = make_class(T, u, mu)
    return c.twist(E.random_unit(rng))


@dataclass
class H1Description:
    shape: str
    group: str
    trivial: Optional[bool]
    nontrivial_class: Optional[CohomologyClass] = None

    def membership(self, c: CohomologyClass, bound: Optional[int] = None) -> Verdict:
        return is_trivial(c, bound)

    def to_dict(self) -> dict:
        return {
            "shape": self.shape,
            "group": self.group,
            "trivial": self.trivial,
            "nontrivial_class": None if self.nontrivial_class is None else self.nontrivial_class.to_dict(),
        }


def _non_norm_prime(alpha: int, limit: int = 1000) -> Optional[int]:
    for p in range(2, limit):
        if is_prime(p) and norm_obstruction(p, alpha) is not None:
            return p
    return None


def h1_description(T: UnitaryTorus) -> H1Description:
    shape = T.classify()
    L, K = T.L, T.K
    if shape.tag in (SPLIT_RANK2, WEIL_RESTRICTION):
        return H1Description(str(shape), "0", True)
    if shape.tag == NORM_ONE_SQUARE:
        p = _non_norm_prime(K.alpha)
        c = make_class(T, [p, p, 1], [p, 0])
        return H1Description(str(shape), f"(Q*/N(Q(sqrt({K.alpha}))*))^2", False, c)
    if shape.tag == RESTRICTED_NORM_ONE:
        group = f"Q(sqrt({L.alpha0}))*/N(Q(sqrt({L.alpha0}),sqrt({K.alpha}))*)"
        if K.alpha < 0 < L.alpha0:
            return H1Description(str(shape), group, False, make_class(T, [1, -1, 0], [1, 0]))
        return H1Description(str(shape), group, None)
    if K.split:
        return H1Description(str(shape), "Q*/N_{L/Q}(L*)", None)
    return H1Description(str(shape), "K^(1)/N_{E/K}(U(E,tau)) x S/N_{E/L}(E*)", None)


@dataclass
class FullUnitaryH1:
    ealg: UnitaryAlgebra

    group = "L*/N_{E/L}(E*)"

    def membership(self, u, bound: Optional[int] = None) -> Verdict:
        L = self.ealg.L
        u = u if isinstance(u, Elem) else L.elem(u)
        if L.norm(u) == 0:
            raise ValueError("u must be invertible")
        return is_in_norm_EL(self.ealg, u, bound)


def h1_full_unitary(L: CubicEtale, K: QuadraticEtale) -> FullUnitaryH1:
    return FullUnitaryH1(UnitaryAlgebra(L, K))
