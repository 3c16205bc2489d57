import random
from fractions import Fraction
from itertools import product as cartesian

import pytest

from rieszlab.constructions import Partition, RangeError
from rieszlab.dini import (CellWitness, DichotomyBranch, WitnessError, combine_witnesses, dichotomy, dini_expr,
                           dini_pointwise, dini_uniform)
from rieszlab.finite import FinVec
from rieszlab.generators import random_vector

q = Fraction
GRID = [q(j, 8) for j in range(9)]


def test_dichotomy_examples():
    assert dichotomy(0, 5).kind == "at_most" and dichotomy(0, 5).bound == q(2, 5)
    assert dichotomy(1, 5).kind == "at_least" and dichotomy(1, 5).bound == q(1, 5)
    assert dichotomy(q(3, 20), 10).kind == "at_least"


def test_dichotomy_errors():
    with pytest.raises(RangeError):
        dichotomy(q(3, 2), 4)
    with pytest.raises(ValueError):
        dichotomy(q(1, 2), 0)


@pytest.mark.parametrize("m", [1, 2, 3, 7, 10])
def test_dichotomy_total_with_overlap(m):
    for j in range(1001):
        xv = q(j, 1000)
        branch = dichotomy(xv, m)
        assert branch.holds_for(xv)
        if q(1, m) <= xv <= q(2, m):
            assert DichotomyBranch("at_least", q(1, m)).holds_for(xv)
            assert DichotomyBranch("at_most", q(2, m)).holds_for(xv)


def test_pointwise_examples():
    r = dini_pointwise(1, 1, 1, 3)
    assert (r.n, r.value) == (9, 0)
    assert dini_pointwise(0, q(1, 2), 1, 7).value == 0
    r = dini_pointwise(q(1, 4), q(1, 4), q(1, 4), 4)
    assert r.n == 16 and r.value == 0
    assert min(q(1, 4), q(1, 4)) * q(1, 4) == q(1, 16)


@pytest.mark.parametrize("m", [2, 4, 10])
def test_pointwise_bound_exhaustive_grid(m):
    for f, g, h in cartesian(GRID, repeat=3):
        assert dini_pointwise(f, g, h, m).value <= q(2, m)


@pytest.mark.parametrize("m", [2, 4, 10])
def test_larger_n_keeps_the_bound(m):
    for f, g, h in cartesian(GRID, repeat=3):
        for n in (m * m, m * m + 1, 4 * m * m):
            assert dini_expr(f, g, h, n) <= q(2, m)


def test_below_threshold_can_fail():
    # the threshold matters: n = 1 leaves a positive part above 2/m for m = 10
    assert dini_expr(q(1, 8), 1, 1, 1) == 0
    assert max(dini_expr(f, g, h, 1) for f, g, h in cartesian(GRID, repeat=3)) > q(2, 10)


def test_uniform_examples():
    one, zero = FinVec.const(4, 1), FinVec.const(4, 0)
    assert dini_uniform(one, one, one, 3).entries[0].left == 0
    assert dini_uniform(zero, zero, zero, 3).entries[0].left == 0
    rng = random.Random(10)
    f, g, h = (random_vector(rng, 8) for _ in range(3))
    led = dini_uniform(f, g, h, 10)
    assert led.holds and led.extra["n"] == 100 and led.entries[0].right == q(1, 5)


def test_uniform_random_triples():
    rng = random.Random(1000)
    for i in range(1000):
        m = (2, 4, 10)[i % 3]
        size = rng.randint(1, 8)
        f, g, h = (random_vector(rng, size) for _ in range(3))
        led = dini_uniform(f, g, h, m)
        assert led.holds
        assert led.extra["combined_n"] == m * m and led.extra["global_bound"] == q(2, m)


def test_uniform_range_check():
    with pytest.raises(RangeError):
        dini_uniform(FinVec([2]), FinVec([0]), FinVec([0]), 2)


def _coords(k):
    return Partition(tuple(FinVec.basis(k, i) for i in range(k)))


def test_combine_single_cell():
    seq = lambda n: FinVec([q(1, n)])
    assert combine_witnesses([CellWitness(0, 4, q(1, 4))], _coords(1), seq) == (4, q(1, 4))


def test_combine_takes_largest_bound():
    seq = lambda n: FinVec([q(1, 10), q(1, 5)])
    n, bound = combine_witnesses([CellWitness(0, 1, q(1, 10)), CellWitness(1, 1, q(1, 5))],
                                 _coords(2), seq)
    assert (n, bound) == (1, q(1, 5))


def test_combine_uses_largest_n_for_decreasing_sequences():
    seq = lambda n: FinVec([q(1, n), q(2, n)])
    n, bound = combine_witnesses([CellWitness(0, 2, q(1, 2)), CellWitness(1, 8, q(1, 4))],
                                 _coords(2), seq)
    assert n == 8 and bound == q(1, 2)


def test_combine_rejects_bad_input():
    seq = lambda n: FinVec([q(1, n), q(1, n)])
    with pytest.raises(WitnessError):
        combine_witnesses([CellWitness(0, 1, q(1, 2))], _coords(2), seq)
    with pytest.raises(WitnessError):
        combine_witnesses([CellWitness(0, 1, q(1, 2)), CellWitness(1, 4, q(1, 4))], _coords(2), seq)
    with pytest.raises(WitnessError):
        half = Partition((FinVec([q(1, 2), q(1, 2)]),))
        combine_witnesses([CellWitness(0, 4, 1)], half, seq)


def test_combine_matches_uniform_ledger():
    rng = random.Random(3)
    for m in (2, 4, 10):
        f, g, h = (random_vector(rng, 8) for _ in range(3))
        led = dini_uniform(f, g, h, m)
        ws = led.extra["witnesses"]
        n, bound = combine_witnesses(ws, _coords(8), lambda j: dini_expr(f, g, h, j))
        assert n == m * m and bound == q(2, m) == led.entries[0].right
