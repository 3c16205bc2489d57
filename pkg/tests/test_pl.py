import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rieszlab import pl
from rieszlab.generators import random_term
from rieszlab.lp import DimensionCapError
from rieszlab.pl import (ONE, ZERO, Add, BoxDomain, Const, DominanceCeilingError, Join, Meet,
                         Scale, Unit, abs_, counterexample, dominates, evaluate, gen, leq, neg,
                         norm, normalize, pos, upper_bound)

from .conftest import DOMS, points, terms

I = BoxDomain.unit_cube(1)
SQ = BoxDomain.unit_cube(2)
x, y, z = gen(0), gen(1), gen(2)
half = Const(Fraction(1, 2))


def equal(a, b, dom):
    return leq(a, b, dom) and leq(b, a, dom)


# -- examples -----------------------------------------------------------------

def test_generator_normal_form_is_one_clause():
    nf = normalize(x, I)
    assert len(nf.clauses) == 1 and len(nf.clauses[0]) == 1


def test_negation_swaps_join_and_meet():
    a, b = x - half, Fraction(1, 3) * x
    assert equal(Scale(Fraction(-1), Join(a, b)), Meet(-a, -b), I)


def test_normal_form_matches_evaluation_at_random_points():
    t = Meet(Join(x, y), Join(x, z))
    dom = BoxDomain.unit_cube(3)
    nf = normalize(t, dom)
    rng = random.Random(0)
    for _ in range(100):
        p = tuple(Fraction(rng.randint(0, 60), 60) for _ in range(3))
        assert nf(p) == evaluate(t, p)


def test_evaluation_examples():
    assert evaluate(Unit(), (Fraction(1, 3),)) == 1
    assert evaluate(Meet(x, ONE - x), (half.value,)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        evaluate(x, (Fraction(2),), I)


def test_order_examples():
    assert leq(x, x, I)
    assert leq(x, Join(x, y), SQ)
    assert leq(Meet(x, ONE - x), half, I)
    assert not leq(half, Meet(x, ONE - x), I)


def test_parts_examples():
    assert equal(pos(Unit()), ONE, I)
    assert equal(pos(Scale(Fraction(-1), Unit())), ZERO, I)
    assert evaluate(abs_(x - half), (Fraction(0),)) == Fraction(1, 2)


def test_norm_examples():
    assert norm(ONE, I) == 1
    assert norm(ZERO, I) == 0
    assert norm(x - half, I) == Fraction(1, 2)
    # the literal one-sided bound differs from the norm
    assert upper_bound(x - 1, I) == 0 and norm(x - 1, I) == 1


def test_dominance_examples():
    assert dominates(x, Scale(Fraction(2), x), I) == pl.Dominated(1, True)
    r = dominates(ONE, Meet(x, ONE - x), I)
    assert not r.dominated
    assert r.witness == (0,)
    assert dominates(pos(x - half), x, I) == pl.Dominated(1, True)


def test_dominance_minimal_multiplier():
    r = dominates(x, Fraction(1, 5) * x, I)
    assert r == pl.Dominated(5, True)
    coarse = dominates(x, Fraction(1, 5) * x, I, minimal=False)
    assert coarse.dominated and coarse.n >= 5 and leq(x, coarse.n * (Fraction(1, 5) * x), I)


def test_dominance_ceiling():
    with pytest.raises(DominanceCeilingError):
        dominates(x, Fraction(1, 1000) * x, I, ceiling=64)


def test_dimension_cap_and_generator_range():
    with pytest.raises(DimensionCapError):
        leq(ZERO, ONE, BoxDomain.unit_cube(4))
    with pytest.raises(ValueError):
        leq(y, ONE, I)


def test_nonunit_box():
    dom = BoxDomain(((-2, 3),))
    assert norm(x, dom) == 3
    assert pl.lower_bound(x, dom) == -2
    assert not leq(ZERO, x, dom)


def test_degenerate_box_rejected():
    with pytest.raises(ValueError):
        BoxDomain(((1, 1),))


def test_scalar_times_term_requires_a_rational():
    with pytest.raises(TypeError):
        Const(Fraction(1, 2)) * x


# -- properties -----------------------------------------------------------------

dom_and_terms = st.sampled_from(DOMS).flatmap(
    lambda d: st.tuples(st.just(d), terms(d.dim), terms(d.dim)))


@given(dom_and_terms)
def test_riesz_identity(case):
    dom, f, g = case
    assert equal(Meet(f, g) + Join(f, g), f + g, dom)


@given(dom_and_terms)
def test_positive_and_negative_parts(case):
    dom, f, _ = case
    assert equal(pos(f) - neg(f), f, dom)
    assert equal(pos(f) + neg(f), abs_(f), dom)


@given(st.sampled_from(DOMS).flatmap(lambda d: st.tuples(st.just(d), terms(d.dim))))
def test_strong_unit(case):
    dom, f = case
    q = norm(f, dom)
    assert leq(abs_(f), math.ceil(q) * ONE, dom)
    assert leq(abs_(f), q * ONE, dom)
    if q > 0:
        assert not leq(abs_(f), (q - Fraction(1, 10 ** 6)) * ONE, dom)


@given(dom_and_terms)
def test_archimedean(case):
    dom, f, g = case
    q = norm(f, dom)
    if q == 0:
        assert equal(f, ZERO, dom)
        return
    n = math.floor(norm(g, dom) / q) + 1
    assert not leq(n * abs_(f), g, dom)


@given(dom_and_terms, st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9)))
def test_norm_properties(case, q):
    dom, a, b = case
    assert norm(a + b, dom) <= norm(a, dom) + norm(b, dom)
    assert norm(q * a, dom) == abs(q) * norm(a, dom)
    assert (norm(a, dom) == 0) == equal(a, ZERO, dom)


@given(st.sampled_from(DOMS).flatmap(
    lambda d: st.tuples(st.just(d), terms(d.dim), terms(d.dim), st.lists(points(d), min_size=20, max_size=20))))
def test_decision_coherence(case):
    dom, a, b, pts = case
    if leq(a, b, dom):
        assert all(evaluate(a, p) <= evaluate(b, p) for p in pts)
        assert counterexample(a, b, dom) is None
    else:
        w = counterexample(a, b, dom)
        assert dom.contains(w) and evaluate(a, w) > evaluate(b, w)


@given(st.sampled_from(DOMS).flatmap(
    lambda d: st.tuples(st.just(d), terms(d.dim), st.lists(points(d), min_size=10, max_size=10))))
def test_normal_form_is_pointwise_equal(case):
    dom, t, pts = case
    nf = normalize(t, dom)
    assert all(nf(p) == evaluate(t, p) for p in pts)


@given(dom_and_terms)
def test_arrangement_decision_agrees(case):
    dom, a, b = case
    assert pl.leq_by_arrangement(a, b, dom) == leq(a, b, dom)


@given(st.sampled_from(DOMS).flatmap(
    lambda d: st.tuples(st.just(d), terms(d.dim), st.lists(points(d), min_size=10, max_size=10))))
def test_bounds_are_attained_extrema(case):
    dom, t, pts = case
    hi, lo = upper_bound(t, dom), pl.lower_bound(t, dom)
    assert all(lo <= evaluate(t, p) <= hi for p in pts)
    assert counterexample(t, hi * ONE, dom) is None
    assert leq(lo * ONE, t, dom)
    # attained: the function reaches hi, so it is not below anything smaller
    assert not leq(t, (hi - Fraction(1, 10 ** 9)) * ONE, dom)


@given(dom_and_terms)
def test_dominance_soundness(case):
    dom, a, b = case
    a, b = pos(a), pos(b)
    r = dominates(a, b, dom)
    if r.dominated:
        assert leq(a, r.n * b, dom)
        if r.n >= 2:
            assert not leq(a, (r.n - 1) * b, dom)
    else:
        w = r.witness
        assert dom.contains(w)
        assert evaluate(b, w) == 0 < evaluate(a, w)


def test_simplify_preserves_values():
    rng = random.Random(2)
    for _ in range(200):
        t = random_term(rng, 2)
        s = pl.simplify(t)
        for _ in range(5):
            p = (Fraction(rng.randint(0, 9), 9), Fraction(rng.randint(0, 9), 9))
            assert evaluate(s, p) == evaluate(t, p)


def test_operator_sugar():
    t = x + 1
    assert isinstance(t, Add) and evaluate(t, (Fraction(1, 2),)) == Fraction(3, 2)
    assert evaluate(x | half, (Fraction(0),)) == Fraction(1, 2)
    assert evaluate(x & half, (Fraction(1),)) == Fraction(1, 2)
    assert evaluate(1 - x, (Fraction(1, 4),)) == Fraction(3, 4)
