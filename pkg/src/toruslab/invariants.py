"""Mod-2 invariants of groups of type A2, G2 and F4, and necessary conditions for torus embeddings.

A2 groups are SU(M_3(K), sigma) with sigma = Int(diag(a)) o conjugate-transpose.  G2 groups
are Aut(C).  F4 groups are Aut(H_3(C, Gamma)).  Every check here is a necessary condition: a
pass never certifies that an embedding exists.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .exact_numbers import Q, RationalLike, is_square, squarefree_part
from .composition import CompositionAlgebra, embeds_quadratic, is_division
from .etale import CubicEtale, Elem, QuadraticEtale
from .quadratic_forms import (PfisterForm, QuadraticForm, arason_trivial, form, pfister_divides_1fold,
                              witt_equivalent)
from .tori import UnitaryTorus

KMatrix = List[List[Elem]]


@dataclass(frozen=True)
class DiagonalUnitaryInvolution:
    alpha: int
    a: Tuple[Fraction, Fraction, Fraction]

    def __init__(self, alpha: RationalLike, a: Sequence[RationalLike]):
        al = squarefree_part(alpha)
        av = tuple(Q(x) for x in a)
        if len(av) != 3 or any(x == 0 for x in av):
            raise ValueError("a must be three nonzero rationals")
        object.__setattr__(self, "alpha", al)
        object.__setattr__(self, "a", av)

    @property
    def K(self) -> QuadraticEtale:
        return QuadraticEtale(self.alpha)

    def apply(self, x: KMatrix) -> KMatrix:
        """sigma(x) = a conj(x)^t a^-1."""
        K = self.K
        return [[K.conj(x[j][i]) * (self.a[i] / self.a[j]) for j in range(3)] for i in range(3)]

    def symmetric_basis(self) -> List[KMatrix]:
        """Q-basis of (M_3(K), sigma)_+: 3 diagonal and 6 off-diagonal directions."""
        K = self.K
        out = []
        for i in range(3):
            m = [[K.zero for _ in range(3)] for _ in range(3)]
            m[i][i] = K.one
            out.append(m)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for v in (K.one, K.j):
                m = [[K.zero for _ in range(3)] for _ in range(3)]
                m[i][j] = v
                m[j][i] = K.conj(v) * (self.a[j] / self.a[i])
                out.append(m)
        return out

    def to_dict(self) -> dict:
        return {"alpha": str(self.alpha), "a": [str(x) for x in self.a]}


def k_matmul(x: KMatrix, y: KMatrix) -> KMatrix:
    return [[sum((x[i][k] * y[k][j] for k in range(3)), x[0][0].parent.zero) for j in range(3)] for i in range(3)]


def k_trace(x: KMatrix) -> Elem:
    return x[0][0] + x[1][1] + x[2][2]


def trace_form(inv: DiagonalUnitaryInvolution) -> QuadraticForm:
    """<1,1,1> + <2> <<alpha>> <a1 a2, a1 a3, a2 a3>, with <<alpha>> = <1, -alpha>."""
    a1, a2, a3 = inv.a
    pairs = [a1 * a2, a1 * a3, a2 * a3]
    return form(1, 1, 1, *[2 * p for p in pairs], *[-2 * inv.alpha * p for p in pairs])


def trace_form_gram(inv: DiagonalUnitaryInvolution) -> linalg.Matrix:
    """Gram matrix of (x, y) -> T_B(xy) on the symmetric basis, computed from matrices."""
    basis = inv.symmetric_basis()
    gram = []
    for x in basis:
        row = []
        for y in basis:
            t = k_trace(k_matmul(x, y))
            if t.c[1] != 0:
                raise AssertionError("trace of a product of symmetric elements must be rational")
            row.append(t.c[0])
        gram.append(row)
    return gram


def trace_form_direct(inv: DiagonalUnitaryInvolution) -> QuadraticForm:
    d, _ = linalg.congruence_diagonalize(trace_form_gram(inv))
    return QuadraticForm(d)


def f3_involution(inv: DiagonalUnitaryInvolution) -> PfisterForm:
    a1, a2, a3 = inv.a
    return PfisterForm([inv.alpha, -a1 * a2, -a2 * a3])


def is_distinguished(inv: DiagonalUnitaryInvolution) -> bool:
    return arason_trivial(f3_involution(inv))


G2, A2, F4 = "G2", "A2", "F4"


@dataclass
class GroupData:
    kind: str
    C: Optional[CompositionAlgebra] = None
    involution: Optional[DiagonalUnitaryInvolution] = None
    gamma: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    division: bool = False

    def __post_init__(self):
        if self.kind not in (G2, A2, F4):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in (G2, F4) and (self.C is None or self.C.dim != 8):
            raise ValueError(f"{self.kind} needs an octonion algebra C")
        if self.kind == A2 and self.involution is None:
            raise ValueError("A2 needs a diagonal unitary involution")
        if self.kind == F4:
            if self.gamma is None or len(self.gamma) != 3 or any(Q(g) == 0 for g in self.gamma):
                raise ValueError("F4 needs three nonzero Gamma entries")
            self.gamma = tuple(Q(g) for g in self.gamma)
        if self.division and self.kind == G2:
            raise ValueError("the division flag applies to A2 and F4 only")

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.C is not None:
            out["C"] = self.C.to_dict()
        if self.involution is not None:
            out.update(self.involution.to_dict())
        if self.gamma is not None:
            out["Gamma"] = [str(g) for g in self.gamma]
        if self.division:
            out["division"] = True
        return out


def group_from_dict(d: dict) -> GroupData:
    kind = d.get("kind")
    C = CompositionAlgebra(d["C"]["params"]) if "C" in d else None
    inv = DiagonalUnitaryInvolution(d["alpha"], d["a"]) if kind == A2 else None
    gamma = tuple(Q(g) for g in d["Gamma"]) if "Gamma" in d else None
    return GroupData(kind, C, inv, gamma, bool(d.get("division", False)))


def oct_of_group(G: GroupData) -> CompositionAlgebra:
    if G.kind == A2:
        return CompositionAlgebra(f3_involution(G.involution).slots)
    return G.C


def f3_group(G: GroupData) -> PfisterForm:
    if G.kind == A2:
        return f3_involution(G.involution)
    return G.C.norm_form()


def f5_albert(C: CompositionAlgebra, gamma: Sequence[RationalLike]) -> PfisterForm:
    """n_C (x) <<-g1^-1 g2, -g2^-1 g3>>."""
    g1, g2, g3 = (Q(g) for g in gamma)
    if 0 in (g1, g2, g3):
        raise ValueError("Gamma entries must be nonzero")
    return PfisterForm(list(C.params) + [-g2 / g1, -g3 / g2])


def f5_albert_binary(C: CompositionAlgebra, gamma: Sequence[RationalLike]) -> PfisterForm:
    """n_C (x) <1, g1^-1 g2> (x) <1, g2^-1 g3>, each <1, c> read as the slot -c."""
    g1, g2, g3 = (Q(g) for g in gamma)
    if 0 in (g1, g2, g3):
        raise ValueError("Gamma entries must be nonzero")
    binaries = [form(1, g2 / g1), form(1, g3 / g2)]
    slots = list(C.params) + [-b.coefficients[1] for b in binaries]
    return PfisterForm(slots)


def f5_group(G: GroupData) -> PfisterForm:
    if G.kind != F4:
        raise ValueError("f5 is attached to F4 groups only")
    return f5_albert(G.C, G.gamma)


@dataclass
class CubicEmbedding:
    involution: DiagonalUnitaryInvolution
    change_of_basis: linalg.Matrix
    images: List[linalg.Matrix]

    def image(self, L: CubicEtale, l: Elem) -> linalg.Matrix:
        p = self.change_of_basis
        return linalg.mat_mul(linalg.mat_mul(linalg.inverse(p), L.mult_matrix(l)), p)


def embed_cubic_symmetric(L: CubicEtale, alpha: RationalLike) -> CubicEmbedding:
    """Embed L in (M_3(K), sigma)_+ through its regular representation.

    With P^t G P = D for the trace Gram G, the matrices P^-1 M_l P are D-self-adjoint,
    so a = D^-1 makes every one of them sigma-symmetric.
    """
    d, p = linalg.congruence_diagonalize(L.trace_gram())
    if any(x == 0 for x in d):
        raise ValueError("trace form of L is degenerate")
    inv = DiagonalUnitaryInvolution(alpha, [1 / x for x in d])
    emb = CubicEmbedding(inv, p, [])
    K = inv.K
    for b in L.basis():
        m = emb.image(L, b)
        km = [[K.scalar(v) for v in row] for row in m]
        if inv.apply(km) != km:
            raise AssertionError("embedded element is not sigma-symmetric")
        emb.images.append(m)
    return emb


PASS, FAIL, NA, INFO = "pass", "fail", "not applicable", "info"


def _record(theorem: str, condition: str, verdict: str, detail: str) -> dict:
    return {"theorem": theorem, "condition": condition, "verdict": verdict, "detail": detail}


def check_embedding_necessary(G: GroupData, T: UnitaryTorus) -> dict:
    """Evaluate the necessary conditions for T -> G; a pass is not a sufficiency claim."""
    alpha, delta = T.alpha, T.delta
    qt = squarefree_part(alpha * delta)
    C = oct_of_group(G)
    K = T.K
    records = []
    if G.kind in (A2, G2):
        f3 = f3_group(G)
        ok = pfister_divides_1fold(qt, f3)
        slots = ", ".join(str(s) for s in f3.slots)
        records.append(_record("n_C = q_T (x) gamma", f"<1, {-qt}> divides <<{slots}>>", PASS if ok else FAIL,
                               "q_T must divide the norm form of Oct(G)"))
        ok = embeds_quadratic(K, C)
        records.append(_record("K inside Oct(G) for A2/G2", f"Q(sqrt({alpha})) embeds in Oct(G)",
                               PASS if ok else FAIL, "K must embed in the octonion algebra of G"))
    else:
        f5 = f5_group(G)
        ok = pfister_divides_1fold(qt, f5)
        records.append(_record("f5(A) = q_T (x) gamma", f"<1, {-qt}> divides f5", PASS if ok else FAIL,
                               "q_T must divide f5"))
        ok = pfister_divides_1fold(alpha, f5)
        records.append(_record("f5(A) = <1, -alpha> (x) gamma", f"<1, {-alpha}> divides f5",
                               PASS if ok else FAIL, "<1, -alpha> must divide f5"))
        if squarefree_part(delta) == 1:
            ok = embeds_quadratic(K, C)
            records.append(_record("K inside Oct(G) for F4, trivial discriminant",
                                   f"Q(sqrt({alpha})) embeds in Oct(G)", PASS if ok else FAIL,
                                   "applies since disc(L) is trivial"))
        else:
            embeds = embeds_quadratic(K, C)
            records.append(_record("K inside Oct(G) for F4, trivial discriminant",
                                   f"Q(sqrt({alpha})) embeds in Oct(G)", NA,
                                   f"disc(L) = {squarefree_part(delta)} is not trivial; "
                                   f"K embeds in Oct(G): {embeds}; for F4 this is not required"))
    if G.division and G.kind in (A2, F4):
        ok = T.L.kind == "field"
        records.append(_record("division-arising A2/F4 forces a field L", "L is a field",
                               PASS if ok else FAIL, f"L is {T.L.kind}"))
    impossible = any(r["verdict"] == FAIL for r in records)
    return {
        "group": G.to_dict(),
        "torus": T.to_dict(),
        "records": records,
        "verdict": "embedding impossible" if impossible else "no obstruction found",
    }


def distinguished_torus_exists(G: GroupData) -> Tuple[bool, Optional[UnitaryTorus], str]:
    """(verdict, witness torus or None, construction used)."""
    split_l = CubicEtale.split_triple()
    if G.kind in (G2, A2):
        verdict = arason_trivial(f3_group(G))
    else:
        verdict = arason_trivial(f5_group(G))
    if not verdict:
        return False, None, "invariant nontrivial"
    if G.kind == A2:
        alpha = G.involution.alpha
        if alpha == 1:
            return True, UnitaryTorus(split_l, QuadraticEtale(1)), "split L and K"
        # distinguished sigma on M_3(K): L = Q x K sits in (B, sigma)_+ and T(L, K) has q_T = <1, -alpha^2>
        return True, UnitaryTorus(CubicEtale.mixed(alpha), QuadraticEtale(alpha)), "L = Q x K, K = center"
    if not is_division(G.C):
        return True, UnitaryTorus(split_l, QuadraticEtale(1)), "split L and K"
    if G.kind == G2:
        return True, None, "no construction"
    # reduced Albert algebras are classified by (f3, f5): A = H_3(C, diag(1, -1, -1)); take F inside C
    f = squarefree_part(G.C.params[0])
    return True, UnitaryTorus(CubicEtale.mixed(f), QuadraticEtale(f)), "L = Q x F, K = F with F inside C"


def f3a_check(first_construction: bool, L: CubicEtale, f3: PfisterForm) -> dict:
    """Consistency of f3(A) = 0 <=> L^(1) embeds (trivial disc L) <=> SL_1(D) embeds."""
    delta = squarefree_part(L.discriminant())
    if delta != 1:
        raise ValueError(f"L must have trivial discriminant, got square class {delta}")
    trivial = arason_trivial(f3)
    if trivial:
        certified = "f3 = 0: L^(1) embeds for L = Q^3 and SL_1(M_3(Q)) embeds"
        l_status = "L = Q^3 is a witness" if L.kind == "split" else "f3 = 0 allows the embedding of L^(1)"
    else:
        certified = "f3 != 0: no L^(1) with trivial discriminant and no SL_1(D) embeds"
        l_status = "f3 = 0 required for embedding; L^(1) does not embed"
    return {
        "L": L.to_dict(),
        "f3": [str(s) for s in f3.slots],
        "f3_trivial": trivial,
        "first_construction": first_construction,
        "certified": certified,
        "L_status": l_status,
        "consistent": trivial or not first_construction,
    }


def trace_form_agrees(inv: DiagonalUnitaryInvolution) -> bool:
    return witt_equivalent(trace_form(inv), trace_form_direct(inv))


def slots_square_equivalent(p: PfisterForm, q: PfisterForm) -> bool:
    return len(p.slots) == len(q.slots) and all(is_square(a / b) for a, b in zip(p.slots, q.slots))
