import random

import pytest

from obd import floer as F
from obd.heegaard import is_nice, validate
from obd.oracle import arrow_set, oracle_arrows
from obd.randomgen import random_nice_diagram


def sample(seed, count):
    rng = random.Random(seed)
    return [random_nice_diagram(rng) for _ in range(count)]


def test_random_diagrams_are_valid_and_nice(seed):
    for d in sample(seed, 60):
        assert validate(d) == []
        assert is_nice(d)[0]


def test_random_d_squared(seed):
    for d in sample(seed, 150):
        assert F.d_squared_zero(F.complex_of(d, notation="points"))[0]


def test_oracle_agrees(seed):
    compared = 0
    for d in sample(seed + 1, 150):
        if sum(not r.basepoint for r in d.regions) > 12:
            continue
        gens = F.enumerate_generators(d)
        assert arrow_set(F.enumerate_arrows(d, gens)) == oracle_arrows(d)
        compared += 1
    assert compared > 100


def test_seed_reproducible(seed):
    a, b = sample(seed, 5), sample(seed, 5)
    assert [x.points for x in a] == [y.points for y in b]


def test_oracle_limit():
    d = sample(3, 1)[0]
    with pytest.raises(ValueError):
        oracle_arrows(d, max_regions=-1)
