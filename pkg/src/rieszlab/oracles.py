"""
Independent checks for the order decision: exact grid evaluation and 1D breakpoints.

Grid values are computed with integer numpy arrays over a common
denominator, falling back to Python-int object arrays when magnitudes could
overflow 64 bits, so every comparison stays exact.
"""

import math
from fractions import Fraction

import numpy as np

from . import pl
from .pl import Add, Const, Generator, Join, Meet, Scale, Unit

_LIMIT = 2 ** 62


class _Val:
    """``num / den`` with ``|num| <= bound``; ``num`` is an int or an integer array."""

    __slots__ = ("num", "den", "bound")

    def __init__(self, num, den, bound):
        self.num, self.den, self.bound = num, den, bound

    def rescale(self, factor):
        num = self.num
        bound = self.bound * factor
        if isinstance(num, np.ndarray) and num.dtype != object and bound >= _LIMIT:
            num = num.astype(object)
        return num * factor, bound


def _align(a, b):
    den = math.lcm(a.den, b.den)
    na, ba = a.rescale(den // a.den)
    nb, bb = b.rescale(den // b.den)
    if isinstance(na, np.ndarray) and isinstance(nb, np.ndarray) and (na.dtype == object) != (nb.dtype == object):
        na, nb = na.astype(object), nb.astype(object)
    return na, nb, den, max(ba, bb)


def _grid_eval(t, axes):
    if isinstance(t, Generator):
        return axes[t.index]
    if isinstance(t, (Unit, Const)):
        q = Fraction(1) if isinstance(t, Unit) else t.value
        return _Val(q.numerator, q.denominator, abs(q.numerator))
    if isinstance(t, Scale):
        v = _grid_eval(t.term, axes)
        num, bound = v.rescale(abs(t.coeff.numerator))
        if t.coeff < 0:
            num = -num
        return _Val(num, v.den * t.coeff.denominator, bound)
    a, b = _grid_eval(t.left, axes), _grid_eval(t.right, axes)
    na, nb, den, bound = _align(a, b)
    if isinstance(t, Add):
        bound *= 2
        if isinstance(na, np.ndarray) and na.dtype != object and bound >= _LIMIT:
            na = na.astype(object)
        return _Val(na + nb, den, bound)
    if isinstance(t, Join):
        return _Val(np.maximum(na, nb), den, bound)
    if isinstance(t, Meet):
        return _Val(np.minimum(na, nb), den, bound)
    raise TypeError(f"not a term: {t!r}")


def grid_axes(dom, per_axis):
    """Coordinates ``lo + (hi - lo) j / G`` on a product grid as exact integer arrays."""
    n = dom.dim
    axes, coords = [], []
    for i, (lo, hi) in enumerate(dom.intervals):
        w = hi - lo
        den = math.lcm(lo.denominator, w.denominator * per_axis)
        j = np.arange(per_axis + 1, dtype=np.int64)
        base = lo.numerator * (den // lo.denominator)
        step = w.numerator * (den // (w.denominator * per_axis))
        bound = abs(base) + abs(step) * per_axis
        if bound >= _LIMIT:
            j = j.astype(object)
        nums = base + step * j
        shape = [1] * n
        shape[i] = per_axis + 1
        axes.append(_Val(nums.reshape(shape), den, bound))
        coords.append((lo, w / per_axis))
    return axes, coords


def grid_refutation(a, b, dom, points=10_000):
    """A grid point where ``a > b``, or None.  Uses about ``points`` grid points."""
    per_axis = max(1, round(points ** (1 / dom.dim)) - 1)
    axes, coords = grid_axes(dom, per_axis)
    v = _grid_eval(b - a, axes)
    num = np.broadcast_to(v.num, (per_axis + 1,) * dom.dim) if isinstance(v.num, np.ndarray) \
        else np.full((per_axis + 1,) * dom.dim, v.num, dtype=object)
    bad = np.argwhere(num < 0)
    if len(bad) == 0:
        return None
    idx = bad[0]
    return tuple(lo + step * int(j) for (lo, step), j in zip(coords, idx))


def grid_count(dom, points=10_000):
    per_axis = max(1, round(points ** (1 / dom.dim)) - 1)
    return (per_axis + 1) ** dom.dim


def breakpoint_leq_1d(a, b, dom):
    """Decide ``a <= b`` in 1D by checking every crossing of the normal-form pieces of a and b.

    Between consecutive candidates both functions are affine, so checking the
    candidates (and the box ends) is exact.
    """
    pts = set(pl.breakpoints_1d(a, dom)) | set(pl.breakpoints_1d(b, dom))
    return all(pl.evaluate(a, (x,)) <= pl.evaluate(b, (x,)) for x in sorted(pts))
