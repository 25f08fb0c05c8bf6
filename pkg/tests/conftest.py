import random
from fractions import Fraction

import pytest

from toruslab.etale import CubicEtale, QuadraticEtale, parse_cubic

CYCLIC_CUBICS = ["field:-1,-3,0", "field:-1,-2,1", "field:1,-4,1", "field:-7,-6,1", "field:-8,-10,1"]
MIXED_CUBICS = ["mixed:5", "mixed:-1", "mixed:2", "mixed:-3", "mixed:7"]

# the ten (L, K) pairs used wherever a small corpus of unitary algebras is needed
CORPUS = [
    ("split", 1), ("split", -1), ("split", 2),
    ("mixed:5", 1), ("mixed:5", -1), ("mixed:-1", -1), ("mixed:2", 5),
    ("field:-1,-3,0", 1), ("field:-1,-3,0", -1), ("field:-2,0,0", -3),
]


def corpus_pair(case):
    return parse_cubic(case[0]), QuadraticEtale(case[1])


def rand_rational(rng: random.Random, height: int = 9, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


@pytest.fixture
def rng():
    return random.Random(12345)
