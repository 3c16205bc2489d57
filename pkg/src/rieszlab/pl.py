"""
Piecewise-linear functions on a rational box as a concrete Riesz space.

Elements are ``PLTerm`` syntax trees over generators ``x_i``, the unit ``1``,
rational constants, sums, rational scalings, joins (pointwise max) and meets
(pointwise min).  Order questions are decided exactly by splitting the box
into open polyhedral cells on which the term is affine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .lp import DEFAULT_DIM_CAP, AffineForm, Cell, _check_cap, as_fraction, cell_samples

DEFAULT_DOUBLING_CEILING = 2 ** 24


class DominanceCeilingError(RuntimeError):
    """The doubling search for a dominance multiplier exceeded its ceiling."""


# -- terms ------------------------------------------------------------------

class PLTerm:
    """Base class for Riesz-space terms.  Supports ``+ - * | &`` (``*`` by scalars)."""

    __slots__ = ()

    def __add__(self, other):
        return Add(self, _lift(other))

    def __radd__(self, other):
        return Add(_lift(other), self)

    def __sub__(self, other):
        return Add(self, Scale(Fraction(-1), _lift(other)))

    def __rsub__(self, other):
        return Add(_lift(other), Scale(Fraction(-1), self))

    def __neg__(self):
        return Scale(Fraction(-1), self)

    def __mul__(self, q):
        if isinstance(q, PLTerm):
            raise TypeError("products of piecewise-linear terms are not piecewise linear")
        return Scale(as_fraction(q), self)

    __rmul__ = __mul__

    def __or__(self, other):
        return Join(self, _lift(other))

    def __and__(self, other):
        return Meet(self, _lift(other))

    def __str__(self):
        from .sexpr import format_term
        return format_term(self)


def _lift(t):
    if isinstance(t, PLTerm):
        return t
    return Const(as_fraction(t))


def _lin_of(t):
    """Sparse linear part ``({index: coeff}, const)`` or None if t uses join/meet."""
    if isinstance(t, Generator):
        return {t.index: Fraction(1)}, Fraction(0)
    if isinstance(t, Unit):
        return {}, Fraction(1)
    if isinstance(t, Const):
        return {}, t.value
    if isinstance(t, Add):
        a, b = t.left._lin, t.right._lin
        if a is None or b is None:
            return None
        coeffs = dict(a[0])
        for i, c in b[0].items():
            coeffs[i] = coeffs.get(i, 0) + c
        return coeffs, a[1] + b[1]
    if isinstance(t, Scale):
        a = t.term._lin
        if a is None:
            return None
        return {i: t.coeff * c for i, c in a[0].items()}, t.coeff * a[1]
    return None


class _Node(PLTerm):
    def __post_init__(self):
        object.__setattr__(self, "_lin", _lin_of(self))


_meta = dict(init=False, compare=False, repr=False, default=None)


@dataclass(frozen=True, repr=False)
class Generator(_Node):
    index: int
    _lin: object = field(**_meta)

    def __repr__(self):
        return f"x{self.index}"


@dataclass(frozen=True, repr=False)
class Unit(_Node):
    _lin: object = field(**_meta)

    def __repr__(self):
        return "1"


@dataclass(frozen=True, repr=False)
class Const(_Node):
    value: Fraction
    _lin: object = field(**_meta)

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        super().__post_init__()

    def __repr__(self):
        return f"{self.value}"


@dataclass(frozen=True, repr=False)
class Add(_Node):
    left: PLTerm
    right: PLTerm
    _lin: object = field(**_meta)

    def __repr__(self):
        return f"({self.left!r} + {self.right!r})"


@dataclass(frozen=True, repr=False)
class Scale(_Node):
    coeff: Fraction
    term: PLTerm
    _lin: object = field(**_meta)

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        super().__post_init__()

    def __repr__(self):
        return f"{self.coeff}*{self.term!r}"


@dataclass(frozen=True, repr=False)
class Join(_Node):
    left: PLTerm
    right: PLTerm
    _lin: object = field(**_meta)

    def __repr__(self):
        return f"({self.left!r} v {self.right!r})"


@dataclass(frozen=True, repr=False)
class Meet(_Node):
    left: PLTerm
    right: PLTerm
    _lin: object = field(**_meta)

    def __repr__(self):
        return f"({self.left!r} ^ {self.right!r})"


ZERO = Const(Fraction(0))
ONE = Unit()


def gen(i):
    return Generator(i)


def const(q):
    return Const(as_fraction(q))


def pos(a):
    """Positive part ``a v 0``."""
    return Join(a, ZERO)


def neg(a):
    """Negative part ``(-a) v 0``."""
    return Join(Scale(Fraction(-1), a), ZERO)


def abs_(a):
    return Join(a, Scale(Fraction(-1), a))


def join_all(terms):
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


def sum_all(terms):
    terms = list(terms)
    if not terms:
        return ZERO
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def max_generator(t):
    """Largest generator index in ``t`` (-1 if none)."""
    if isinstance(t, Generator):
        return t.index
    if isinstance(t, (Add, Join, Meet)):
        return max(max_generator(t.left), max_generator(t.right))
    if isinstance(t, Scale):
        return max_generator(t.term)
    return -1


def size(t):
    if isinstance(t, (Add, Join, Meet)):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, Scale):
        return 1 + size(t.term)
    return 1


def simplify(t):
    """Fold constants and nested scalings; pointwise equal to ``t``."""
    if isinstance(t, Scale):
        inner = simplify(t.term)
        q = t.coeff
        if isinstance(inner, Scale):
            q, inner = q * inner.coeff, inner.term
        if q == 0:
            return ZERO
        if q == 1:
            return inner
        if isinstance(inner, Const):
            return Const(q * inner.value)
        if isinstance(inner, Unit):
            return Const(q)
        return Scale(q, inner)
    if isinstance(t, Add):
        left, right = simplify(t.left), simplify(t.right)
        lc, rc = _const_value(left), _const_value(right)
        if lc is not None and rc is not None:
            return Const(lc + rc)
        if lc == 0:
            return right
        if rc == 0:
            return left
        return Add(left, right)
    if isinstance(t, (Join, Meet)):
        left, right = simplify(t.left), simplify(t.right)
        if left == right:
            return left
        lc, rc = _const_value(left), _const_value(right)
        if lc is not None and rc is not None:
            return Const(max(lc, rc) if isinstance(t, Join) else min(lc, rc))
        return type(t)(left, right)
    return t


def _const_value(t):
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Unit):
        return Fraction(1)
    return None


# -- domain and evaluation --------------------------------------------------

@dataclass(frozen=True)
class BoxDomain:
    intervals: tuple = ((Fraction(0), Fraction(1)),)

    def __post_init__(self):
        iv = tuple((as_fraction(lo), as_fraction(hi)) for lo, hi in self.intervals)
        if not iv:
            raise ValueError("a domain needs at least one interval")
        for lo, hi in iv:
            if not lo < hi:
                raise ValueError(f"degenerate interval [{lo}, {hi}]")
        object.__setattr__(self, "intervals", iv)

    @classmethod
    def unit_cube(cls, n):
        return cls(((Fraction(0), Fraction(1)),) * n)

    @property
    def dim(self):
        return len(self.intervals)

    def contains(self, x):
        return len(x) == self.dim and all(lo <= xi <= hi for (lo, hi), xi in zip(self.intervals, x))

    def center(self):
        return tuple((lo + hi) / 2 for lo, hi in self.intervals)

    def check(self, t=None, cap=DEFAULT_DIM_CAP):
        _check_cap(self.dim, cap)
        if t is not None and max_generator(t) >= self.dim:
            raise ValueError(f"term uses generator x{max_generator(t)} on a {self.dim}-dimensional box")


def evaluate(t, x, dom=None):
    """Exact value of ``t`` at the rational point ``x``."""
    if dom is not None:
        x = tuple(as_fraction(v) for v in x)
        if not dom.contains(x):
            raise ValueError(f"point {x} lies outside the domain")
    return _eval(t, x)


def _eval(t, x):
    if isinstance(t, Generator):
        return x[t.index]
    if isinstance(t, Unit):
        return Fraction(1)
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Add):
        return _eval(t.left, x) + _eval(t.right, x)
    if isinstance(t, Scale):
        return t.coeff * _eval(t.term, x)
    if isinstance(t, Join):
        return max(_eval(t.left, x), _eval(t.right, x))
    if isinstance(t, Meet):
        return min(_eval(t.left, x), _eval(t.right, x))
    raise TypeError(f"not a term: {t!r}")


def affine_of(t, n):
    """The affine form of a lattice-free term, or None if ``t`` uses join/meet."""
    return _affine(t, n)


def _affine(t, n):
    lin = t._lin
    if lin is None:
        return None
    coeffs, c = lin
    return AffineForm(tuple(coeffs.get(i, Fraction(0)) for i in range(n)), c)


# -- max-min normal forms ---------------------------------------------------

@dataclass(frozen=True)
class MaxMinNF:
    """``max over clauses of (min over the clause's forms)``."""

    clauses: tuple  # of frozenset of AffineForm

    def __call__(self, x):
        return max(min(a(x) for a in c) for c in self.clauses)

    def forms(self):
        return sorted({a for c in self.clauses for a in c}, key=repr)


def _absorb(clauses):
    """Drop duplicate clauses and clauses that contain another clause."""
    clauses = sorted(set(map(_tighten, clauses)), key=len)
    kept = []
    for c in clauses:
        if not any(k <= c for k in kept):
            kept.append(c)
    return tuple(kept)


def _tighten(clause):
    # parallel forms in a min: only the smallest constant matters
    best = {}
    for a in clause:
        cur = best.get(a.coeffs)
        if cur is None or a.const < cur.const:
            best[a.coeffs] = a
    return frozenset(best.values())


def _negate(clauses):
    # -(max_i min_j a_ij) = max over transversals T of min_i (-a_{i,T(i)})
    partial = [frozenset()]
    for c in clauses:
        nxt = [p | {-a} for p in partial for a in c]
        partial = list(_absorb(nxt))
    return _absorb(partial)


def normalize(t, dom=None):
    """Max-min normal form of ``t``, pointwise equal to it on the whole space."""
    n = dom.dim if dom is not None else max_generator(t) + 1 or 1
    if dom is not None:
        dom.check(t, cap=None)
    return MaxMinNF(_nf(simplify(t), max(n, 1)))


def _nf(t, n):
    a = _affine(t, n)
    if a is not None:
        return (frozenset([a]),)
    if isinstance(t, Add):
        left, right = _nf(t.left, n), _nf(t.right, n)
        return _absorb([frozenset(a + b for a in c1 for b in c2) for c1 in left for c2 in right])
    if isinstance(t, Scale):
        inner = _nf(t.term, n)
        q = t.coeff
        if q < 0:
            inner, q = _negate(inner), -q
        return _absorb([frozenset(a.scale(q) for a in c) for c in inner])
    if isinstance(t, Join):
        return _absorb(_nf(t.left, n) + _nf(t.right, n))
    if isinstance(t, Meet):
        left, right = _nf(t.left, n), _nf(t.right, n)
        return _absorb([c1 | c2 for c1 in left for c2 in right])
    raise TypeError(f"not a term: {t!r}")


# -- region decomposition ---------------------------------------------------

def _lookup(table, cell):
    """Piece of the nearest ancestor of ``cell`` recorded in ``table``."""
    c, path = cell, []
    while c not in table:
        path.append(c)
        c = c.parent
    piece = table[c]
    for x in path:
        table[x] = piece
    return piece


class _Refinement:
    """One refinement of the box shared by all subterms.

    Each distinct subterm object is decomposed once, so terms that reuse
    subterms (staircases over nested joins) cost time linear in their DAG
    size.  Tables map cells to affine pieces; a cell split later inherits
    its ancestor's piece.
    """

    def __init__(self, dom):
        self.n = dom.dim
        self.root = Cell(dom.intervals)
        self.leaves = [self.root]
        self.memo = {}

    def table(self, t):
        hit = self.memo.get(id(t))
        if hit is not None:
            return hit[1]
        a = _affine(t, self.n)
        if a is not None:
            tab = {self.root: a}
        elif isinstance(t, Scale):
            tab = {c: p.scale(t.coeff) for c, p in self.table(t.term).items()}
        else:
            left, right = self.table(t.left), self.table(t.right)
            tab, leaves = {}, []
            is_join = isinstance(t, Join)
            for leaf in self.leaves:
                p, q = _lookup(left, leaf), _lookup(right, leaf)
                if isinstance(t, Add):
                    tab[leaf] = p + q
                    leaves.append(leaf)
                    continue
                d = p - q
                s = leaf.sign_of(d)
                if s == 0:
                    plus, minus = leaf.split(d)
                    tab[plus], tab[minus] = (p, q) if is_join else (q, p)
                    leaves += [plus, minus]
                else:
                    tab[leaf] = p if (s > 0) == is_join else q
                    leaves.append(leaf)
            self.leaves = leaves
        self.memo[id(t)] = (t, tab)
        return tab


class Dominated(NamedTuple):
    n: int
    minimal: bool

    @property
    def dominated(self):
        return True


class NotDominated(NamedTuple):
    witness: tuple

    @property
    def dominated(self):
        return False


class Workspace:
    """Decision procedures on one box sharing a refinement across calls.

    Repeated questions about terms built from common subterms (a partition
    and its checks, say) then decompose each subterm once.  The module-level
    functions below each use a fresh workspace.
    """

    def __init__(self, dom, cap=DEFAULT_DIM_CAP, ceiling=DEFAULT_DOUBLING_CEILING):
        dom.check(None, cap)
        self.dom, self.cap, self.ceiling = dom, cap, ceiling
        self._ref = _Refinement(dom)

    def regions(self, t):
        """Open cells of the box on whose closures ``t`` is affine, with the pieces."""
        self.dom.check(t, self.cap)
        tab = self._ref.table(t)
        return [(c, _lookup(tab, c)) for c in self._ref.leaves]

    def joint_regions(self, a, b):
        self.dom.check(a, self.cap)
        self.dom.check(b, self.cap)
        ta, tb = self._ref.table(a), self._ref.table(b)
        return [(c, _lookup(ta, c), _lookup(tb, c)) for c in self._ref.leaves]

    def find_negative(self, t):
        """A point where ``t < 0``, or None if ``t >= 0`` on the whole box."""
        for cell, p in self.regions(t):
            if p.is_constant():
                if p.const < 0:
                    return cell.interior_point()
                continue
            x = cell.find(extra_strict=[-p])
            if x is not None:
                return x
        return None

    def leq(self, a, b):
        return self.find_negative(b - a) is None

    def counterexample(self, a, b):
        return self.find_negative(b - a)

    def upper_bound(self, a):
        return max(cell.range_of(p)[1] for cell, p in self.regions(a))

    def lower_bound(self, a):
        return min(cell.range_of(p)[0] for cell, p in self.regions(a))

    def norm(self, a):
        best = Fraction(0)
        for cell, p in self.regions(a):
            lo, hi = cell.range_of(p)
            best = max(best, hi, -lo)
        return best

    def dominates(self, a, b, minimal=True):
        joint = self.joint_regions(a, b)
        # least witness over the cells, so the answer does not depend on cell order
        found = [x for cell, p, q in joint
                 if (x := cell.find(extra_closed=[-q], extra_strict=[p])) is not None]
        if found:
            return NotDominated(min(found))

        def ok(n):
            for cell, p, q in joint:
                d = q.scale(n) - p
                if d.is_constant():
                    if d.const < 0:
                        return False
                elif cell.range_of(d)[0] < 0:
                    return False
            return True

        hi = 1
        while not ok(hi):
            hi *= 2
            if hi > self.ceiling:
                raise DominanceCeilingError(f"no multiplier up to {self.ceiling}")
        if not minimal or hi == 1:
            return Dominated(hi, hi == 1)
        lo = hi // 2  # ok(lo) is False
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        return Dominated(hi, True)


def regions(t, dom, cap=DEFAULT_DIM_CAP):
    return Workspace(dom, cap).regions(t)


def find_negative(t, dom, cap=DEFAULT_DIM_CAP):
    """A point where ``t < 0``, or None if ``t >= 0`` on the whole box."""
    return Workspace(dom, cap).find_negative(t)


def leq(a, b, dom, cap=DEFAULT_DIM_CAP):
    """Decide ``a(x) <= b(x)`` for every x in the box."""
    return Workspace(dom, cap).leq(a, b)


def counterexample(a, b, dom, cap=DEFAULT_DIM_CAP):
    """A point with ``a(x) > b(x)``, or None when ``a <= b``."""
    return Workspace(dom, cap).counterexample(a, b)


def upper_bound(a, dom, cap=DEFAULT_DIM_CAP):
    """``inf {q : a <= q 1}``, i.e. the exact maximum of ``a`` over the box."""
    return Workspace(dom, cap).upper_bound(a)


def lower_bound(a, dom, cap=DEFAULT_DIM_CAP):
    """Exact minimum of ``a`` over the box."""
    return Workspace(dom, cap).lower_bound(a)


def norm(a, dom, cap=DEFAULT_DIM_CAP):
    """Unit norm ``inf {q : |a| <= q 1}`` (the sup of ``|a|`` over the box)."""
    return Workspace(dom, cap).norm(a)


def dominates(a, b, dom, *, minimal=True, ceiling=DEFAULT_DOUBLING_CEILING,
              cap=DEFAULT_DIM_CAP):
    """Decide ``a ≼ b``: whether ``a <= n b`` for some positive integer n.

    Returns ``NotDominated(x)`` with ``b(x) <= 0 < a(x)`` when no multiplier
    can work, otherwise ``Dominated(n, minimal)``.  The multiplier is found
    by doubling and, if ``minimal``, refined to the least one by bisection.
    """
    return Workspace(dom, cap, ceiling).dominates(a, b, minimal)


def leq_by_arrangement(a, b, dom, cap=DEFAULT_DIM_CAP):
    """``a <= b`` decided from the sign arrangement of the normal-form forms of ``b - a``.

    Slower and exposed mainly as an independent cross-check of ``leq``.
    """
    dom.check(a, cap)
    dom.check(b, cap)
    nf = normalize(b - a, dom)
    forms = nf.forms()
    for _, x in cell_samples(forms, dom.intervals, cap):
        if nf(x) < 0:
            return False
    return True


def breakpoints_1d(t, dom):
    """Candidate breakpoints of a 1D term: pairwise crossings of its normal-form forms."""
    if dom.dim != 1:
        raise ValueError("breakpoint enumeration is one-dimensional")
    (lo, hi), = dom.intervals
    forms = normalize(t, dom).forms()
    pts = {lo, hi}
    for f, g in combinations(forms, 2):
        d = f - g
        c = d.coeffs[0]
        if c:
            x = -d.const / c
            if lo < x < hi:
                pts.add(x)
    return sorted(pts)
