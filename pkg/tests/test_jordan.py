import random
from fractions import Fraction

import pytest

from conftest import CORPUS, corpus_pair, rand_rational
from toruslab import linalg
from toruslab.cohomology import FALSE, TRUE, UNKNOWN, AdmissibilityError
from toruslab.composition import CompositionAlgebra
from toruslab.etale import QuadraticEtale, UnitaryAlgebra, parse_cubic
from toruslab.jordan import (ReducedAlbert, TitsProcessAlgebra, albert_product, albert_trace_and_norm,
                             cubic_norm_tits, degree3_residual, find_zero_divisor, first_tits_norm, isotope_map,
                             l_isomorphic, normalize, tits_algebra, titsisom_harness, trace_gram)


def J_of(L, K, u, mu):
    return tits_algebra(parse_cubic(L), QuadraticEtale(K), u, mu)


def test_admissibility():
    with pytest.raises(AdmissibilityError):
        J_of("split", -1, [2, 1, 1], [1, 0])
    assert J_of("split", -1, [3, 3, 1], [3, 0]).dim == 9


def test_norm_examples():
    J = J_of("split", -1, [1, 1, 1], [1, 0])
    assert cubic_norm_tits(J, J.identity()) == 1
    x = J.ealg.from_parts(J.L.zero, J.L.one)
    assert J.ealg.tau(x) == -x
    assert J.norm(J.L.zero, x) == 0
    rng = random.Random(1)
    for _ in range(20):
        a = J.L.random_element(rng)
        assert J.norm(a, J.ealg.zero) == J.L.norm(a)


def test_norm_is_cubic_form():
    J = J_of("mixed:5", -1, [5, 1, 0], [1, 2])
    rng = random.Random(3)
    for _ in range(20):
        a, x = J.random_element(rng)
        lam = rand_rational(rng)
        assert J.norm(a * lam, x * lam) == lam**3 * J.norm(a, x)


def test_isotope_by_one_is_identity():
    J = J_of("split", 2, [2, 1, 1], [2, 1])
    iso = isotope_map(J, J.ealg.one)
    assert iso.target.u == J.u and iso.target.mu == J.mu
    rng = random.Random(0)
    p = J.random_element(rng)
    assert iso.forward(p) == p


@pytest.mark.parametrize("case", CORPUS, ids=str)
def test_isotope_preserves_norm(case):
    L, K = corpus_pair(case)
    E = UnitaryAlgebra(L, K)
    rng = random.Random(6)
    # (N_{E/L}(b) q^2, N_{E/K}(b) q^3) is admissible
    b = E.random_unit(rng)
    q = rand_rational(rng)
    J = TitsProcessAlgebra(E, E.norm_EL(b) * q**2, E.norm_EK(b) * q**3)
    iso = isotope_map(J, E.random_unit(rng))
    for _ in range(40):
        p = J.random_element(rng)
        q = iso.forward(p)
        assert iso.target.norm(*q) == J.norm(*p)
        assert iso.backward(q) == p


def test_normalize():
    J = J_of("split", -1, [3, 3, 1], [3, 0])
    N = normalize(J).target
    assert N.L.norm(N.u) == 1 and N.K.norm(N.mu) == 1


@pytest.mark.parametrize("case", CORPUS, ids=str)
def test_zero_divisor_of_base_algebra(case):
    L, K = corpus_pair(case)
    J = TitsProcessAlgebra(UnitaryAlgebra(L, K), L.one, K.one)
    z = find_zero_divisor(J)
    assert z.verdict == TRUE and J.norm(*z.element) == 0
    assert not z.element[1].is_zero()


def test_zero_divisor_transported_by_isotope():
    J = J_of("split", -1, [1, 1, 1], [1, 0])
    rng = random.Random(4)
    iso = isotope_map(J, J.ealg.random_unit(rng))
    z = find_zero_divisor(J)
    moved = iso.forward(z.element)
    assert iso.target.norm(*moved) == 0
    z2 = find_zero_divisor(iso.target)
    assert z2.verdict == TRUE and iso.target.norm(*z2.element) == 0


def test_zero_divisor_unknown_when_mu_uncertified():
    # conductor-9 cyclic field, K = Q(i), mu of norm one; no certificate is available
    J = J_of("field:1,-3,0", -1, [1, 0, 0], [Fraction(3, 5), Fraction(4, 5)])
    z = find_zero_divisor(J, 4)
    assert z.element is None and z.verdict == UNKNOWN


def _check_witness(r, J1, J2):
    rng = random.Random(9)
    for _ in range(20):
        p = J1.random_element(rng)
        assert J2.norm(*r.apply(p)) == J1.norm(*p)


@pytest.mark.parametrize("L, K, u, mu", [("split", -1, [3, 3, 1], [3, 0]), ("mixed:5", 2, [7, 1, 0], [3, 1]),
                                         ("split", 1, [2, 3, 1], [Fraction(7, 2), Fraction(5, 2)])])
def test_l_isomorphic(L, K, u, mu):
    J = J_of(L, K, u, mu)
    r = l_isomorphic(J, J)
    assert r.verdict == TRUE
    _check_witness(r, J, J)
    rng = random.Random(2)
    iso = isotope_map(J, J.ealg.random_unit(rng, 2))
    r = l_isomorphic(J, iso.target)
    assert r.verdict == TRUE
    _check_witness(r, J, iso.target)


def test_l_isomorphic_with_hint_over_cubic_field():
    J = J_of("field:-1,-3,0", -1, [1, 0, 0], [1, 0])
    w = J.ealg.elem([1, 1, 0, 0, 1, 0])
    target = isotope_map(J, w).target
    r = l_isomorphic(J, target, 5, hints=[w.inverse()])
    assert r.verdict == TRUE
    _check_witness(r, J, target)


def test_l_isomorphic_false_for_obstructed_class():
    J1 = J_of("split", -1, [1, 1, 1], [1, 0])
    J2 = J_of("split", -1, [3, 3, 1], [3, 0])
    r = l_isomorphic(J1, J2)
    assert r.verdict == FALSE and len(r.branches) == 12


def test_harness():
    L, K = parse_cubic("split"), QuadraticEtale(1)
    assert titsisom_harness(L, K, [])["passed"]
    rep = titsisom_harness(L, K, [([2, 3, 1], [Fraction(7, 2), Fraction(5, 2)]), ([1, 1, 1], [1, 0])])
    assert rep["passed"] and rep["counts"][TRUE] == 2
    rep = titsisom_harness(L, QuadraticEtale(-1), [([3, 3, 1], [3, 0])])
    assert rep["passed"] and rep["counts"][FALSE] == 1


ALBERTS = [((-1, -1, -1), (1, 1, 1)), ((1, -1, -1), (1, -1, -1)), ((2, -3, 5), (1, 2, -7)), ((-1, 3, 7), (3, -1, 2))]


@pytest.mark.parametrize("params, gamma", ALBERTS)
def test_albert_product(params, gamma):
    A = ReducedAlbert(CompositionAlgebra(params), gamma)
    rng = random.Random(5)
    one = A.identity()
    for _ in range(30):
        X, Y = A.random_element(rng), A.random_element(rng)
        assert albert_product(A, X, one) == X
        assert A.product(X, Y) == A.product(Y, X)
        assert A.is_hermitian(A.to_matrix(X))
        assert A.from_matrix(A.to_matrix(X)) == X
    e11 = A.element([1, 0, 0], [[0] * 8] * 3)
    assert A.product(e11, e11) == e11


@pytest.mark.parametrize("params, gamma", ALBERTS)
def test_albert_invariants(params, gamma):
    A = ReducedAlbert(CompositionAlgebra(params), gamma)
    assert albert_trace_and_norm(A, A.identity()) == (3, 3, 1)
    D = A.element([2, -3, Fraction(1, 2)], [[0] * 8] * 3)
    assert albert_trace_and_norm(A, D)[2] == -3
    rng = random.Random(8)
    for _ in range(10):
        assert A.is_zero(degree3_residual(A, A.random_element(rng)))


def test_trace_form_nondegenerate():
    A = ReducedAlbert(CompositionAlgebra([2, -3, 5]), [1, 2, -7])
    assert linalg.rank(trace_gram(A)) == 27


def test_gamma_validation():
    with pytest.raises(ValueError):
        ReducedAlbert(CompositionAlgebra([-1, -1, -1]), [1, 0, 1])


def _cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _cofactor_det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def _rand_matrix(rng):
    return [[rand_rational(rng, 5, False) for _ in range(3)] for _ in range(3)]


def test_first_tits_norm_examples():
    I = linalg.identity(3)
    Z = linalg.zeros(3)
    assert first_tits_norm(1, (I, Z, Z)) == 1
    assert first_tits_norm(Fraction(5, 3), (Z, I, Z)) == Fraction(5, 3)
    with pytest.raises(ValueError):
        first_tits_norm(0, (I, Z, Z))


def test_first_tits_norm_matches_cofactor_oracle():
    rng = random.Random(10)
    for _ in range(30):
        mu = rand_rational(rng)
        x, y, z = (_rand_matrix(rng) for _ in range(3))
        xyz = linalg.mat_mul(linalg.mat_mul(x, y), z)
        expected = _cofactor_det(x) + mu * _cofactor_det(y) + _cofactor_det(z) / mu - sum(xyz[i][i] for i in range(3))
        assert first_tits_norm(mu, (x, y, z)) == expected


def test_first_tits_norm_invariance():
    # (x, y, z) -> (a x a^-1, a y b, b^-1 z a^-1) with det(a) det(b) = 1 preserves the norm
    rng = random.Random(12)
    for _ in range(20):
        mu = rand_rational(rng)
        x, y, z = (_rand_matrix(rng) for _ in range(3))
        a = _rand_matrix(rng)
        if linalg.det(a) == 0:
            continue
        b = _rand_matrix(rng)
        if linalg.det(b) == 0:
            continue
        scale = 1 / (linalg.det(a) * linalg.det(b))
        b = [[b[0][j] * scale for j in range(3)], b[1], b[2]]
        ai, bi = linalg.inverse(a), linalg.inverse(b)
        mm = linalg.mat_mul
        moved = (mm(mm(a, x), ai), mm(mm(a, y), b), mm(mm(bi, z), ai))
        assert first_tits_norm(mu, moved) == first_tits_norm(mu, (x, y, z))
