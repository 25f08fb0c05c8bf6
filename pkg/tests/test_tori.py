import random

import pytest

from conftest import CORPUS, corpus_pair
from toruslab.etale import CubicEtale, QuadraticEtale, UnitaryAlgebra, parse_cubic
from toruslab.quadratic_forms import is_hyperbolic
from toruslab.tori import (GENERAL, NORM_ONE_SQUARE, RESTRICTED_NORM_ONE, SPLIT_RANK2, WEIL_RESTRICTION,
                           UnitaryTorus, shape_isomorphism_check)


def torus(L, K):
    return UnitaryTorus(parse_cubic(L), QuadraticEtale(K))


def test_q_T_examples():
    assert torus("split", -1).q_T().coefficients == (1, 1)
    assert torus("mixed:-1", -1).q_T().coefficients == (1, -1)
    assert torus("split", 1).q_T().coefficients == (1, -1)
    assert torus("field:-1,-3,0", 1).q_T().coefficients == (1, -1)


def test_distinguished_examples():
    assert torus("split", 1).is_distinguished()
    assert torus("field:-1,-3,0", 1).is_distinguished()
    assert not torus("split", -1).is_distinguished()


@pytest.mark.parametrize("case", CORPUS, ids=str)
def test_distinguished_iff_q_T_hyperbolic(case):
    T = UnitaryTorus(*corpus_pair(case))
    assert T.is_distinguished() == is_hyperbolic(T.q_T())


@pytest.mark.parametrize("L, K, tag", [("split", 1, SPLIT_RANK2), ("mixed:5", 1, WEIL_RESTRICTION),
                                       ("mixed:5", 5, WEIL_RESTRICTION), ("split", -1, NORM_ONE_SQUARE),
                                       ("mixed:5", -1, RESTRICTED_NORM_ONE), ("field:-1,-3,0", -1, GENERAL)])
def test_classify(L, K, tag):
    assert torus(L, K).classify().tag == tag


def test_classify_stable_under_square_classes():
    assert torus("mixed:20", 4).classify() == torus("mixed:5", 1).classify()
    assert torus("split", -9).classify() == torus("split", -1).classify()
    assert torus("mixed:5", 45).classify() == torus("mixed:5", 5).classify()


def test_is_point_examples():
    T = torus("split", -1)
    E = T.ealg
    assert T.is_point(E.one)
    x = E.from_parts(E.L.elem([0, 0, 1]), E.L.elem([1, -1, 0]))
    assert T.is_point(x)
    assert not T.is_point(E.scalar(2))


@pytest.mark.parametrize("case", CORPUS, ids=str)
def test_points_form_a_group(case):
    T = UnitaryTorus(*corpus_pair(case))
    rng = random.Random(17)
    pts = [T.sample_point(rng, 3) for _ in range(10)]
    for _ in range(50):
        x, y = rng.choice(pts), rng.choice(pts)
        assert T.is_point(x) and T.is_point(x * y) and T.is_point(x.inverse())


@pytest.mark.parametrize("L, K", [("split", -1), ("split", 1), ("mixed:5", 1), ("mixed:-3", -3)])
def test_shape_isomorphisms(L, K):
    report = shape_isomorphism_check(torus(L, K), samples=100, seed=4)
    assert report["passed"], report


def test_shape_check_general_is_not_claimed():
    with pytest.raises(ValueError):
        shape_isomorphism_check(torus("field:-1,-3,0", -1), samples=5, seed=0)
