"""
Exact rational linear feasibility and extrema over boxes.

Everything here is Fourier-Motzkin elimination; rows are kept with primitive
integer coefficients and a ``fractions.Fraction`` constant.
Strict inequalities are carried through elimination natively: combining a
strict row with any other row gives a strict row.  Witness points are read
back by substituting into the stored intermediate systems, choosing at each
step the simplest rational inside the admissible interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

DEFAULT_DIM_CAP = 3

Point = tuple  # tuple of Fraction


class DimensionCapError(ValueError):
    pass


class EmptyRegion(ValueError):
    pass


def as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(q)


@dataclass(frozen=True)
class AffineForm:
    """``sum(coeffs[i] * x[i]) + const`` over ``len(coeffs)`` generators."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", as_fraction(self.const))

    @classmethod
    def _raw(cls, coeffs, const):
        # unchecked constructor for results of arithmetic on valid forms
        obj = object.__new__(cls)
        obj.__dict__.update(coeffs=coeffs, const=const)
        return obj

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.coeffs, self.const))
            self.__dict__["_hash"] = h
        return h

    @classmethod
    def constant(cls, n, q):
        return cls((Fraction(0),) * n, q)

    @classmethod
    def coordinate(cls, n, i):
        return cls(tuple(Fraction(int(j == i)) for j in range(n)), 0)

    @property
    def dim(self):
        return len(self.coeffs)

    def is_constant(self):
        return not any(self.coeffs)

    def __call__(self, x):
        return sum((c * xi for c, xi in zip(self.coeffs, x)), self.const)

    def __add__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm._raw(tuple([a + b for a, b in zip(self.coeffs, other.coeffs)]),
                                   self.const + other.const)
        return AffineForm._raw(self.coeffs, self.const + as_fraction(other))

    __radd__ = __add__

    def __neg__(self):
        return AffineForm._raw(tuple([-c for c in self.coeffs]), -self.const)

    def __rsub__(self, other):
        return (-self) + other

    def __sub__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm._raw(tuple([a - b for a, b in zip(self.coeffs, other.coeffs)]),
                                   self.const - other.const)
        return AffineForm._raw(self.coeffs, self.const - as_fraction(other))

    def scale(self, q):
        q = as_fraction(q)
        return AffineForm._raw(tuple([q * c for c in self.coeffs]), q * self.const)

    def __mul__(self, q):
        if isinstance(q, AffineForm):
            return NotImplemented
        return self.scale(q)

    __rmul__ = __mul__

    def canonical(self):
        """Return ``(s, g)`` with ``self == s * g``, ``s > 0`` and g's leading term ±1.

        Positive multiples of one form share the same ``g``; a form and its
        negation differ only in the sign of ``g``.
        """
        for c in self.coeffs:
            if c:
                s = abs(c)
                return s, self.scale(1 / s)
        if self.const:
            s = abs(self.const)
            return s, self.scale(1 / s)
        return Fraction(1), self

    def __repr__(self):
        terms = [f"{c}*x{i}" for i, c in enumerate(self.coeffs) if c]
        if self.const or not terms:
            terms.append(str(self.const))
        return "Affine(" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class LinearSystem:
    """Constraints ``form > 0`` (strict) or ``form >= 0`` on a closed box."""

    constraints: tuple  # of (AffineForm, strict: bool)
    box: tuple  # of (lo, hi)

    def __post_init__(self):
        box = tuple((as_fraction(lo), as_fraction(hi)) for lo, hi in self.box)
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "constraints",
                           tuple((a, bool(s)) for a, s in self.constraints))
        n = len(box)
        if n < 1:
            raise ValueError("box must have at least one interval")
        for lo, hi in box:
            if lo > hi:
                raise ValueError(f"empty box interval [{lo}, {hi}]")
        for a, _ in self.constraints:
            if a.dim != n:
                raise ValueError(f"constraint of dimension {a.dim} on a box of dimension {n}")

    @property
    def dim(self):
        return len(self.box)

    def satisfied_by(self, x):
        if any(not (lo <= xi <= hi) for (lo, hi), xi in zip(self.box, x)):
            return False
        for a, strict in self.constraints:
            v = a(x)
            if v < 0 or (strict and v == 0):
                return False
        return True


# -- Fourier-Motzkin core -------------------------------------------------
#
# A row is (coeffs, const, strict) meaning  coeffs . x + const  (> or >=)  0.

class _Infeasible(Exception):
    pass


def _normalize(coeffs, const, strict):
    """Scale a row to primitive integer coefficients (positive factor); None if trivially true."""
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    if g == 0:
        if const < 0 or (strict and const == 0):
            raise _Infeasible
        return None
    return tuple(c // g for c in ints), Fraction(const) * den / g, strict


def _prune(rows):
    """Keep the tightest row per direction."""
    best = {}
    for row in rows:
        coeffs, const, strict = row
        cur = best.get(coeffs)
        if cur is None or const < cur[1] or (const == cur[1] and strict and not cur[2]):
            best[coeffs] = row
    return list(best.values())


def _eliminate(rows, j):
    pos, neg, rest = [], [], []
    for row in rows:
        c = row[0][j]
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            rest.append(row)
    for pc, pk, ps in pos:
        a = pc[j]
        for nc, nk, ns in neg:
            b = -nc[j]
            coeffs = [b * p + a * q for p, q in zip(pc, nc)]
            g = math.gcd(*coeffs)
            const = (b * pk + a * nk) / g if g else b * pk + a * nk
            if g == 0:
                if const < 0 or ((ps or ns) and const == 0):
                    raise _Infeasible
                continue
            rest.append((tuple(c // g for c in coeffs), const, ps or ns))
    return _prune(rest)


def _floor(q):
    return q.numerator // q.denominator


def simplest_between(lo, hi):
    """The rational with smallest denominator strictly inside ``(lo, hi)``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = _floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    # here n <= lo < hi <= n + 1
    if lo == n:
        return n + Fraction(1, _floor(1 / (hi - n)) + 1)
    return n + 1 / simplest_between(1 / (hi - n), 1 / (lo - n))


def _choose(rows, j, x):
    """Pick a value for variable j given values ``x`` for variables < j."""
    lo = hi = None
    lo_strict = hi_strict = False
    for coeffs, const, strict in rows:
        c = coeffs[j]
        rest = const + sum(coeffs[i] * x[i] for i in range(j))
        if c == 0:
            continue
        bound = -rest / c
        if c > 0:
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        else:
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(_floor(hi) - 1)
    if hi is None:
        return Fraction(_floor(lo) + 1)
    if lo < hi:
        return simplest_between(lo, hi)
    if lo == hi and not lo_strict and not hi_strict:
        return lo
    raise AssertionError("elimination produced an inconsistent back-substitution")


def _box_rows(box, offset, nvars):
    rows = []
    for i, (lo, hi) in enumerate(box):
        e = tuple(Fraction(int(k == i + offset)) for k in range(nvars))
        rows.append((e, -lo, False))
        rows.append((tuple(-v for v in e), hi, False))
    return rows


def _solve(rows, nvars, fixed=()):
    """Eliminate variables ``nvars-1 .. len(fixed)`` and back-substitute.

    Returns a point (with ``fixed`` as its prefix) or None when infeasible.
    """
    try:
        stages = []
        cur = []
        for coeffs, const, strict in rows:
            r = _normalize(coeffs, const, strict)
            if r is not None:
                cur.append(r)
        cur = _prune(cur)
        k = len(fixed)
        if k:
            cur = [_substitute(r, fixed) for r in cur]
            cur = [r for r in cur if r is not None]
        for j in range(nvars - 1, k - 1, -1):
            stages.append(cur)
            cur = _eliminate(cur, j)
    except _Infeasible:
        return None
    x = list(fixed)
    for j, stage in zip(range(k, nvars), reversed(stages)):
        x.append(_choose(stage, j, x))
    return tuple(x)


def _substitute(row, fixed):
    coeffs, const, strict = row
    k = len(fixed)
    const = const + sum(c * v for c, v in zip(coeffs[:k], fixed))
    coeffs = (Fraction(0),) * k + coeffs[k:]
    return _normalize(coeffs, const, strict)


def _check_cap(n, cap):
    if cap is not None and n > cap:
        raise DimensionCapError(f"dimension {n} exceeds the configured cap {cap}")


# -- public operations ----------------------------------------------------

def fm_feasible(system: LinearSystem) -> Optional[Point]:
    """Return a rational point satisfying ``system`` or None if there is none.

    Strict constraints are satisfied strictly by the returned witness.
    """
    n = system.dim
    rows = [(a.coeffs, a.const, s) for a, s in system.constraints]
    rows += _box_rows(system.box, 0, n)
    return _solve(rows, n)


class Extrema(NamedTuple):
    min: Fraction
    max: Fraction
    argmin: Point
    argmax: Point


def affine_extrema(form: AffineForm, system: LinearSystem) -> Extrema:
    """Exact min and max of ``form`` over the box cut by the non-strict constraints.

    Raises EmptyRegion when the region is empty.
    """
    if any(s for _, s in system.constraints):
        raise ValueError("affine_extrema accepts only non-strict constraints")
    if form.dim != system.dim:
        raise ValueError("form and system dimensions differ")
    return _extrema(form, [a for a, _ in system.constraints], system.box)


def _extrema(form, closed_forms, box):
    # variable 0 is t = form(x); variables 1..n are x
    n = len(box)
    nv = n + 1
    one = Fraction(1)
    rows = [((one,) + tuple(-c for c in form.coeffs), -form.const, False),
            ((-one,) + form.coeffs, form.const, False)]
    rows += [((Fraction(0),) + a.coeffs, a.const, False) for a in closed_forms]
    rows += _box_rows(box, 1, nv)
    try:
        cur = _prune([r for r in (_normalize(*r) for r in rows) if r is not None])
        for j in range(nv - 1, 0, -1):
            cur = _eliminate(cur, j)
    except _Infeasible:
        raise EmptyRegion("region is empty") from None
    lo = hi = None
    for coeffs, const, _ in cur:
        c = coeffs[0]
        bound = -const / c
        if c > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None or lo > hi:
        raise EmptyRegion("region is empty")
    argmin = _solve(rows, nv, fixed=(lo,))
    argmax = _solve(rows, nv, fixed=(hi,))
    return Extrema(lo, hi, argmin[1:], argmax[1:])


def cell_samples(forms: Sequence[AffineForm], box, cap=DEFAULT_DIM_CAP):
    """One interior rational point per full-dimensional cell of ``{a = 0 : a in forms}``.

    Returns a list of ``(signs, point)`` where ``signs[i]`` is the sign of
    ``forms[i]`` on the cell.  Constant forms carry their constant sign and do
    not cut the box.
    """
    box = tuple((as_fraction(lo), as_fraction(hi)) for lo, hi in box)
    n = len(box)
    _check_cap(n, cap)
    for a in forms:
        if a.dim != n:
            raise ValueError("form dimension does not match the box")
    if any(lo >= hi for lo, hi in box):
        return []
    base = []
    for i, (lo, hi) in enumerate(box):
        e = AffineForm.coordinate(n, i)
        base += [e - lo, -e + hi]
    # each cell: (signs so far, strict constraint forms, sample)
    cells = [((), base, tuple((lo + hi) / 2 for lo, hi in box))]
    for a in forms:
        if a.is_constant():
            s = (a.const > 0) - (a.const < 0)
            cells = [(signs + (s,), cons, pt) for signs, cons, pt in cells]
            continue
        nxt = []
        for signs, cons, pt in cells:
            v = a(pt)
            for s, f in ((1, a), (-1, -a)):
                if v * s > 0:
                    nxt.append((signs + (s,), cons + [f], pt))
                    continue
                w = _solve([(g.coeffs, g.const, True) for g in cons + [f]], n)
                if w is not None:
                    nxt.append((signs + (s,), cons + [f], w))
        cells = nxt
    return [(signs, pt) for signs, _, pt in cells]


# -- open cells used by the piecewise-linear decision engine --------------

def _clip(verts, form):
    """Vertices of ``hull(verts) ∩ {form >= 0}`` for a convex polygon, segment or point."""
    vals = [form(v) for v in verts]
    if len(verts) == 1:
        return list(verts) if vals[0] >= 0 else []
    out = []
    m = len(verts)
    for i in range(m):
        p, fp = verts[i], vals[i]
        q, fq = verts[(i + 1) % m], vals[(i + 1) % m]
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            out.append(tuple(a + t * (b - a) for a, b in zip(p, q)))
    seen, uniq = set(), []
    for v in out:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    return uniq


def _box_vertices(box):
    if len(box) == 1:
        (lo, hi), = box
        return [(lo,), (hi,)]
    if len(box) == 2:
        (a, b), (c, d) = box
        return [(a, c), (b, c), (b, d), (a, d)]
    return None


class Cell:
    """An open polytope ``{x in box interior : g(x) > 0 for g in cuts}``.

    In dimensions 1 and 2 the closure's vertices are kept explicitly and
    updated by exact clipping; higher dimensions go through elimination.
    ``known`` caches signs of canonical forms already determined on the
    closure of this cell; subcells inherit it.
    """

    __slots__ = ("box", "cuts", "known", "verts", "parent")

    def __init__(self, box, cuts=(), known=None, verts=None, parent=None):
        self.box = box
        self.parent = parent
        self.cuts = tuple(cuts)
        self.known = {} if known is None else known
        self.verts = _box_vertices(box) if verts is None and not cuts else verts

    def split(self, form):
        """The two halves of this cell cut by ``form = 0``."""
        _, g = form.canonical()
        pv = mv = None
        if self.verts is not None:
            pv, mv = _clip(self.verts, form), _clip(self.verts, -form)
        plus = Cell(self.box, self.cuts + (form,), dict(self.known), pv, self)
        minus = Cell(self.box, self.cuts + (-form,), dict(self.known), mv, self)
        plus.known[g] = 1
        minus.known[g] = -1
        return plus, minus

    def range_of(self, form):
        """Exact (min, max) of ``form`` over the closure of the cell."""
        if self.verts is not None:
            vals = [form(v) for v in self.verts]
            return min(vals), max(vals)
        e = _extrema(form, self.cuts, self.box)
        return e.min, e.max

    def sign_of(self, form):
        """1 if form >= 0 on the closure, -1 if <= 0, 0 if it changes sign inside."""
        if form.is_constant():
            return 1 if form.const >= 0 else -1
        s, g = form.canonical()
        k = self.known.get(g)
        if k is None:
            kneg = self.known.get(-g)
            if kneg is not None:
                return -kneg
            lo, hi = self.range_of(g)
            k = 1 if lo >= 0 else -1 if hi <= 0 else 0
            if k:
                self.known[g] = k
        return k

    def find(self, extra_closed=(), extra_strict=()):
        """A point of the closure satisfying the extra constraints, or None."""
        if self.verts is not None and len(extra_strict) <= 1:
            verts = self.verts
            for g in extra_closed:
                verts = _clip(verts, g)
                if not verts:
                    return None
            if not extra_strict:
                return verts[0]
            s = extra_strict[0]
            best = max(verts, key=s)
            return best if s(best) > 0 else None
        n = len(self.box)
        rows = [(g.coeffs, g.const, False) for g in self.cuts + tuple(extra_closed)]
        rows += [(g.coeffs, g.const, True) for g in extra_strict]
        rows += _box_rows(self.box, 0, n)
        return _solve(rows, n)

    def interior_point(self):
        if self.verts is not None:
            k = len(self.verts)
            return tuple(sum(c) / k for c in zip(*self.verts))
        n = len(self.box)
        rows = [(g.coeffs, g.const, True) for g in self.cuts]
        for i, (lo, hi) in enumerate(self.box):
            e = tuple(Fraction(int(k == i)) for k in range(n))
            rows.append((e, -lo, True))
            rows.append((tuple(-v for v in e), hi, True))
        return _solve(rows, n)
