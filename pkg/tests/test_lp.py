import random
from fractions import Fraction

import numpy as np
import pytest

from rieszlab.lp import (AffineForm, DimensionCapError, EmptyRegion, LinearSystem,
                         affine_extrema, as_fraction, cell_samples, fm_feasible,
                         simplest_between)

X = AffineForm.coordinate(1, 0)
X2, Y2 = AffineForm.coordinate(2, 0), AffineForm.coordinate(2, 1)
UNIT = ((0, 1),)
SQUARE = ((0, 1), (0, 1))


def test_contradictory_signs_are_infeasible():
    assert fm_feasible(LinearSystem([(X, True), (-X, False)], UNIT)) is None


def test_empty_system_is_feasible_in_the_box():
    x = fm_feasible(LinearSystem([], SQUARE))
    assert x is not None and all(0 <= c <= 1 for c in x)


def test_disjoint_strict_intervals():
    assert fm_feasible(LinearSystem([(2 * X - 1, True), (1 - 3 * X, True)], UNIT)) is None


def test_strict_boundary_point_is_excluded():
    # x >= 1/2 and 1/2 - x > 0 touch only at 1/2, which the strict row excludes
    assert fm_feasible(LinearSystem([(X - Fraction(1, 2), False), (Fraction(1, 2) - X, True)], UNIT)) is None
    assert fm_feasible(LinearSystem([(X - Fraction(1, 2), False), (Fraction(1, 2) - X, False)], UNIT)) == (Fraction(1, 2),)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearSystem([(X2, False)], UNIT)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_extrema_of_coordinate():
    e = affine_extrema(X, LinearSystem([], UNIT))
    assert (e.min, e.max) == (0, 1)


def test_extrema_of_constant():
    e = affine_extrema(AffineForm.constant(2, 1), LinearSystem([(X2 - Y2, False)], SQUARE))
    assert (e.min, e.max) == (1, 1)


def test_extrema_on_half_square():
    form = X2 + Y2
    system = LinearSystem([(X2 - Y2, False)], SQUARE)
    e = affine_extrema(form, system)
    assert (e.min, e.max) == (0, 2)
    # vertex oracle: the region's vertices are (0,0), (1,0), (1,1)
    verts = [(0, 0), (1, 0), (1, 1)]
    assert e.min == min(form(v) for v in verts) and e.max == max(form(v) for v in verts)


def test_extrema_empty_region():
    with pytest.raises(EmptyRegion):
        affine_extrema(X, LinearSystem([(X - 2, False)], UNIT))


def test_extrema_rejects_strict_rows():
    with pytest.raises(ValueError):
        affine_extrema(X, LinearSystem([(X, True)], UNIT))


def test_cell_counts():
    assert len(cell_samples([X - Fraction(1, 2)], UNIT)) == 2
    assert len(cell_samples([], UNIT)) == 1
    assert len(cell_samples([X2 - Y2, X2 + Y2 - 1], SQUARE)) == 4


def test_cell_samples_match_feasibility_of_each_sign_vector():
    forms = [X2 - Y2, X2 + Y2 - 1, X2 - Fraction(1, 3)]
    found = {signs for signs, _ in cell_samples(forms, SQUARE)}
    for signs in [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]:
        cons = [(f if s > 0 else -f, True) for f, s in zip(forms, signs)]
        assert (fm_feasible(LinearSystem(cons, SQUARE)) is not None) == (signs in found)


def test_dimension_cap():
    box = ((0, 1),) * 4
    with pytest.raises(DimensionCapError):
        cell_samples([AffineForm.coordinate(4, 0)], box)
    assert len(cell_samples([AffineForm.coordinate(4, 0) - Fraction(1, 2)], box, cap=4)) == 2


def test_simplest_between():
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(0), Fraction(1)) == Fraction(1, 2)
    assert simplest_between(Fraction(-3, 2), Fraction(7, 3)) == 0
    assert simplest_between(Fraction(3, 2), Fraction(7, 3)) == 2
    q = simplest_between(Fraction(-3, 2), Fraction(-1, 3))
    assert Fraction(-3, 2) < q < Fraction(-1, 3)


# -- randomized oracles -------------------------------------------------------

GRID = 24


def _random_system(rng, n):
    cons = []
    for _ in range(rng.randint(1, 4)):
        coeffs = tuple(rng.randint(-4, 4) for _ in range(n))
        cons.append((AffineForm(coeffs, Fraction(rng.randint(-4 * GRID, 4 * GRID), 2 * GRID)),
                     rng.random() < 0.5))
    return LinearSystem(cons, ((0, 1),) * n)


def _grid_hit(system):
    """Any grid point ``j / GRID`` satisfying the system, found with integer arithmetic."""
    n = system.dim
    axes = np.meshgrid(*[np.arange(GRID + 1)] * n, indexing="ij")
    ok = np.ones(axes[0].shape, dtype=bool)
    for form, strict in system.constraints:
        den = 2 * GRID * form.const.denominator
        # den * form(j / GRID), kept integral
        val = sum(int(c) * (den // GRID) * a for c, a in zip(form.coeffs, axes)) + int(form.const * den)
        ok &= (val > 0) if strict else (val >= 0)
    return ok.any()


def test_fm_soundness_against_grid():
    rng = random.Random(7)
    feasible = 0
    for i in range(10_000):
        system = _random_system(rng, 1 + i % 2)
        w = fm_feasible(system)
        if w is None:
            assert not _grid_hit(system)
        else:
            feasible += 1
            assert system.satisfied_by(w)
    assert 0 < feasible < 10_000


def test_extrema_attained_and_bounding():
    rng = random.Random(11)
    for i in range(300):
        n = 1 + i % 3
        system = _random_system(rng, n)
        system = LinearSystem([(a, False) for a, _ in system.constraints], system.box)
        form = AffineForm(tuple(rng.randint(-5, 5) for _ in range(n)), Fraction(rng.randint(-3, 3), 2))
        try:
            e = affine_extrema(form, system)
        except EmptyRegion:
            assert fm_feasible(system) is None
            continue
        assert system.satisfied_by(e.argmin) and system.satisfied_by(e.argmax)
        assert form(e.argmin) == e.min and form(e.argmax) == e.max
        # nothing feasible beyond the bounds
        assert fm_feasible(LinearSystem(system.constraints + ((e.min - form, True),), system.box)) is None
        assert fm_feasible(LinearSystem(system.constraints + ((form - e.max, True),), system.box)) is None


def test_one_dimensional_cell_count():
    rng = random.Random(3)
    for _ in range(300):
        forms = [AffineForm((rng.randint(-3, 3),), Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
                 for _ in range(rng.randint(0, 5))]
        roots = {-f.const / f.coeffs[0] for f in forms if f.coeffs[0]}
        inside = {r for r in roots if 0 < r < 1}
        cells = cell_samples(forms, UNIT)
        assert len(cells) == len(inside) + 1
        for signs, (x,) in cells:
            assert 0 < x < 1
            for f, s in zip(forms, signs):
                v = f((x,))
                assert (v > 0 if s > 0 else v < 0) if s else v == 0


def test_cell_samples_distinct_and_interior():
    rng = random.Random(5)
    for i in range(60):
        n = 2 + i % 2
        forms = [AffineForm(tuple(rng.randint(-3, 3) for _ in range(n)), Fraction(rng.randint(-4, 4), 4))
                 for _ in range(rng.randint(1, 4))]
        cells = cell_samples(forms, ((0, 1),) * n)
        assert len({s for s, _ in cells}) == len(cells)
        for signs, x in cells:
            assert all(0 < c < 1 for c in x)
            for f, s in zip(forms, signs):
                v = f(x)
                assert (v > 0) if s > 0 else (v < 0) if s < 0 else (v == 0)
