"""
Finite f-algebras ``Q^m`` with pointwise order and product, and bilinear forms on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from .constructions import (BoundsLedger, RangeError, is_partition, joint_partition,
                            level_partition, staircase)
from .lp import as_fraction


class FinVec:
    """A rational vector; ``*`` is the pointwise product or a scalar scaling."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(as_fraction(e) for e in entries)
        if not self.entries:
            raise ValueError("a FinVec needs at least one entry")

    @classmethod
    def const(cls, m, q):
        return cls([as_fraction(q)] * m)

    @classmethod
    def basis(cls, m, i):
        return cls([int(j == i) for j in range(m)])

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, FinVec) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "FinVec([" + ", ".join(str(e) for e in self.entries) + "])"

    def _zip(self, other, op):
        if isinstance(other, FinVec):
            if len(other) != len(self):
                raise ValueError("length mismatch")
            return FinVec([op(a, b) for a, b in zip(self.entries, other.entries)])
        q = as_fraction(other)
        return FinVec([op(a, q) for a in self.entries])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._zip(other, lambda a, b: b - a)

    def __neg__(self):
        return FinVec([-a for a in self.entries])

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __or__(self, other):
        return self._zip(other, max)

    def __and__(self, other):
        return self._zip(other, min)

    def pos(self):
        return self | 0

    def neg(self):
        return (-self) | 0

    def __abs__(self):
        return self | -self

    def __le__(self, other):
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def norm(self):
        return max(abs(a) for a in self.entries)

    def support(self):
        return {i for i, a in enumerate(self.entries) if a}


class FinSpace:
    """``Q^m`` as an Archimedean f-algebra with unit ``(1, ..., 1)``."""

    has_product = True

    def __init__(self, m):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m

    def unit(self):
        return FinVec.const(self.m, 1)

    def const(self, q):
        return FinVec.const(self.m, q)

    def zero(self):
        return FinVec.const(self.m, 0)

    def leq(self, a, b):
        return a <= b

    def norm(self, a):
        return a.norm()

    def pos(self, a):
        return a.pos()

    def dominates(self, a, b):
        # a ≼ b iff a vanishes wherever b does (finite support)
        return all(x <= 0 for x, y in zip(a, b) if y <= 0)

    def product(self, a, b):
        return a * b

    def __repr__(self):
        return f"FinSpace({self.m})"


@dataclass(frozen=True)
class BilinearMap:
    """``A(f, g) = sum_ij f_i M_ij g_j`` with values in Q."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.matrix)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def diagonal(cls, diag):
        m = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(m)] for i in range(m)])

    @property
    def m(self):
        return len(self.matrix)

    def __call__(self, f, g):
        return sum((f[i] * self.matrix[i][j] * g[j]
                    for i in range(self.m) for j in range(self.m)
                    if self.matrix[i][j]), Fraction(0))


def positivity_counterexample(A):
    """Coordinate vectors ``(e_i, e_j)`` with ``A(e_i, e_j) < 0``, or None."""
    for i, row in enumerate(A.matrix):
        for j, x in enumerate(row):
            if x < 0:
                return FinVec.basis(A.m, i), FinVec.basis(A.m, j)
    return None


def is_positive_bilinear(A):
    return positivity_counterexample(A) is None


def orthosymmetry_counterexample(A):
    """Disjoint ``(e_i, e_j)`` with ``A(e_i, e_j) != 0``, or None when A is orthosymmetric."""
    for i, row in enumerate(A.matrix):
        for j, x in enumerate(row):
            if i != j and x:
                return FinVec.basis(A.m, i), FinVec.basis(A.m, j)
    return None


def is_orthosymmetric(A):
    return orthosymmetry_counterexample(A) is None


def almost_f_axioms(mult, m, cases=200, seed=0):
    """Check ``a, b >= 0 => a b >= 0`` and ``a ^ b = 0 => a b = 0`` for ``mult`` on Q^m.

    Coordinate vectors are checked exhaustively, then random pairs.
    """
    zero = FinVec.const(m, 0)
    basis = [FinVec.basis(m, i) for i in range(m)]
    for a in basis:
        for b in basis:
            ab = mult(a, b)
            if not zero <= ab:
                return False
            if (a & b) == zero and ab != zero:
                return False
    rng = random.Random(seed)
    for _ in range(cases):
        f = FinVec([Fraction(rng.randint(-16, 16), rng.randint(1, 16)) for _ in range(m)])
        g = FinVec([Fraction(rng.randint(-16, 16), rng.randint(1, 16)) for _ in range(m)])
        for a, b in ((f.pos(), g.pos()), (f.pos(), f.neg()), (g.pos(), f.pos())):
            ab = mult(a, b)
            if not zero <= ab:
                return False
            if (a & b) == zero and ab != zero:
                return False
    return True


def partition_product(u, v, space):
    """``{u_i v_j}``, again a partition of unity."""
    for p in (u, v):
        if not is_partition(p, space):
            raise ValueError("input is not a partition of unity")
    return joint_partition(u, v, space)


def reduce_to_unital(f, g):
    """``e = |f| + |g|``, a unit for the Riesz subspace generated by f and g.

    Returns ``(support, e)``; ``|f| <= e`` and ``|g| <= e`` are checked.
    """
    e = abs(f) + abs(g)
    if not (abs(f) <= e and abs(g) <= e):
        raise AssertionError("|f| + |g| does not dominate |f| and |g|")
    return sorted(f.support() | g.support()), e


class PreconditionError(ValueError):
    pass


def main_theorem_ledger(A, f, g, k, method="slice"):
    """Exact inequality ledger of the commutativity argument for ``A(f, g)`` at ``eps = 1/k``.

    Builds the slice partitions of f and g, their joint partition ``w`` with
    levels ``alpha_(i,j) = i/k`` and ``beta_(i,j) = j/k``, and the staircase
    elements ``f' g' h'``.  ``method="band"`` uses the cover-based level
    partition instead, whose staircases differ from f and g.
    """
    m = A.m
    space = FinSpace(m)
    zero, one = space.zero(), space.unit()
    if len(f) != m or len(g) != m:
        raise PreconditionError("vector length differs from the bilinear map size")
    if not (zero <= f <= one and zero <= g <= one):
        raise RangeError("f and g must lie between 0 and 1")
    if not is_positive_bilinear(A):
        raise PreconditionError("A is not positive")
    if not is_orthosymmetric(A):
        raise PreconditionError("A is not orthosymmetric")
    if k < 1:
        raise PreconditionError("k must be a positive integer")

    eps = Fraction(1, k)
    v = level_partition(f, k, space, method, check=False)
    vp = level_partition(g, k, space, method, check=False)
    w = joint_partition(v, vp, space)
    alpha = [Fraction(i, k) for i, _ in w.labels]
    beta = [Fraction(j, k) for _, j in w.labels]
    fp = staircase(alpha, w, space)
    gp = staircase(beta, w, space)
    hp = staircase([a * b for a, b in zip(alpha, beta)], w, space)
    a11 = A(one, one)

    led = BoundsLedger()
    led.add("|f - f'|", (f - fp).norm(), eps)
    led.add("|g - g'|", (g - gp).norm(), eps)
    led.add("|A(f,g) - A(f',g')|", abs(A(f, g) - A(fp, gp)), 2 * eps * a11)
    led.add("|A(f',g') - A(1,h')|", abs(A(fp, gp) - A(one, hp)), 2 * eps * a11)
    led.add("|A(g',f') - A(1,h')|", abs(A(gp, fp) - A(one, hp)), 2 * eps * a11)
    led.add("|A(f',g') - A(g',f')|", abs(A(fp, gp) - A(gp, fp)), 4 * eps * a11)
    led.add("|A(f,g) - A(g,f)|", abs(A(f, g) - A(g, f)), 8 * eps * a11)
    led.add("|h' - f'g'|", (hp - fp * gp).norm(), 2 * eps)
    led.extra.update(eps=eps, A11=a11, v=v, v_prime=vp, w=w, alpha=alpha, beta=beta,
                     f_prime=fp, g_prime=gp, h_prime=hp,
                     Afg=A(f, g), Agf=A(g, f), A1fg=A(one, f * g))
    return led


def disjoint_pairs(m):
    """All ``(f, g)`` of 0/1 vectors with disjoint supports (3^m pairs)."""
    for pattern in cartesian(range(3), repeat=m):
        yield (FinVec([int(p == 1) for p in pattern]), FinVec([int(p == 2) for p in pattern]))
