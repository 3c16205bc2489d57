"""
Explicit constructions that work in any of the Riesz-space models.

A model is a small "space" object exposing ``unit()``, ``const(q)``,
``leq(a, b)``, ``norm(a)`` and, when the model is an f-algebra,
``product(a, b)``.  Elements themselves support ``+ - | &`` and scalar ``*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Protocol

from . import pl, spectrum
from .lp import DEFAULT_DIM_CAP, as_fraction


class RieszSpace(Protocol):
    has_product: bool

    def unit(self): ...
    def const(self, q): ...
    def leq(self, a, b) -> bool: ...
    def norm(self, a) -> Fraction: ...
    def product(self, a, b): ...


class ProductUnavailable(TypeError):
    pass


class RangeError(ValueError):
    pass


class PLSpace:
    """The PL functions on ``dom``; no product.

    Decisions go through one shared workspace, so checks on elements that
    reuse subterms stay cheap.
    """

    has_product = False

    def __init__(self, dom, cap=DEFAULT_DIM_CAP):
        self.dom = dom
        self.cap = cap
        self.work = pl.Workspace(dom, cap)

    def unit(self):
        return pl.ONE

    def const(self, q):
        return pl.const(q)

    def zero(self):
        return pl.ZERO

    def leq(self, a, b):
        return self.work.leq(a, b)

    def norm(self, a):
        return self.work.norm(a)

    def pos(self, a):
        return pl.pos(a)

    def dominates(self, a, b):
        return self.work.dominates(a, b, minimal=False).dominated

    def product(self, a, b):
        raise ProductUnavailable("the piecewise-linear model has no product")

    def __repr__(self):
        return f"PLSpace({self.dom.intervals})"


# -- ledgers and partitions ---------------------------------------------------

@dataclass(frozen=True)
class LedgerEntry:
    label: str
    left: Fraction
    right: Fraction

    @property
    def holds(self):
        return self.left <= self.right


@dataclass
class BoundsLedger:
    entries: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, label, left, right):
        self.entries.append(LedgerEntry(label, as_fraction(left), as_fraction(right)))

    @property
    def holds(self):
        return all(e.holds for e in self.entries)

    def __getitem__(self, label):
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def failures(self):
        return [e for e in self.entries if not e.holds]


@dataclass(frozen=True)
class Partition:
    """Elements summing to the unit, each between 0 and 1.

    ``labels`` optionally records where each element came from, e.g. the
    ``(i, j)`` pair of a joint partition.
    """

    elements: tuple
    labels: Optional[tuple] = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def _total(elements, space):
    out = elements[0]
    for e in elements[1:]:
        out = out + e
    return out


def is_partition(p, space):
    one, zero = space.unit(), space.const(0)
    s = _total(list(p), space)
    if not (space.leq(s, one) and space.leq(one, s)):
        return False
    return all(space.leq(zero, e) and space.leq(e, one) for e in p)


def check_range(f, space):
    if not (space.leq(space.const(0), f) and space.leq(f, space.unit())):
        raise RangeError("element is not between 0 and 1")


# -- slicing -----------------------------------------------------------------

def slice_levels(f, k, space):
    """``u_n = k ((f - n/k)+ ^ 1/k)`` for ``n = 0 .. k-1``; each runs from 0 to 1."""
    out = []
    for n in range(k):
        shifted = f - space.const(Fraction(n, k))
        out.append(k * ((shifted | space.const(0)) & space.const(Fraction(1, k))))
    return out


def slice_partition(f, k, space, check=True):
    """Tent partition ``v_0 .. v_k`` of the unit concentrated around the levels ``n/k`` of f.

    ``v_n`` vanishes unless ``|f - n/k| < 1/k``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if check:
        check_range(f, space)
    u = slice_levels(f, k, space)
    v = [space.unit() - u[0]]
    v += [u[n - 1] - u[n] for n in range(1, k)]
    v.append(u[k - 1])
    return Partition(tuple(v), tuple(range(k + 1)))


def verify_slice_partition(v, f, k, space):
    """Ledger of the slice partition's properties (all must hold)."""
    led = BoundsLedger()
    one, zero = space.unit(), space.const(0)
    s = _total(list(v), space)
    led.add("norm(sum v - 1)", space.norm(s - one), 0)
    for n, e in enumerate(v):
        led.add(f"v_{n} >= 0", int(not space.leq(zero, e)), 0)
        led.add(f"v_{n} <= 1", int(not space.leq(e, one)), 0)
    # with all v_m >= 0, v_n ^ (v_{n+2} + ... + v_k) = 0 iff each of those meets vanishes
    tail = None
    for n in range(len(v) - 3, -1, -1):
        tail = v[n + 2] if tail is None else tail + v[n + 2]
        led.add(f"v_{n} ^ (v_{n + 2} + ... + v_{len(v) - 1})", space.norm(v[n] & tail), 0)
    eps = Fraction(1, k)
    for n, e in enumerate(v):
        if space.has_product:
            led.add(f"|f v_{n} - {n}/{k} v_{n}|",
                    space.norm(space.product(f, e) - Fraction(n, k) * e), eps)
        else:
            window = (f - space.const(Fraction(n - 1, k))) & (space.const(Fraction(n + 1, k)) - f)
            led.add(f"v_{n} ≼ window_{n}", int(not space.dominates(e, space.pos(window))), 0)
    return led


def joint_partition(v, w, space):
    """``w_ij = v_i w_j`` reindexed row-major as ``i * len(w) + j``."""
    if not space.has_product:
        raise ProductUnavailable(f"{space!r} has no product")
    elems, labels = [], []
    for i, a in enumerate(v):
        for j, b in enumerate(w):
            elems.append(space.product(a, b))
            labels.append((i, j))
    return Partition(tuple(elems), tuple(labels))


def staircase(coeffs, partition, space):
    """``sum c_n p_n``."""
    out = space.const(0)
    for c, p in zip(coeffs, partition):
        if c:
            out = out + as_fraction(c) * p
    return out


# -- covers -------------------------------------------------------------------

class CoverError(ValueError):
    pass


def partition_from_cover(reps, delta, space):
    """Partition ``p_i`` with ``p_i <= (2/delta) b_i`` from positive ``b_i`` whose join is >= delta.

    ``q_i = (b_i - delta/2)+``, ``r_i = ((2/delta)(q_1 v ... v q_i)) ^ 1``,
    ``p_i = r_i - r_{i-1}``; the sum telescopes to ``r_K = 1``.
    """
    delta = as_fraction(delta)
    if delta <= 0:
        raise CoverError("delta must be positive")
    zero, one = space.const(0), space.unit()
    half = space.const(delta / 2)
    scale = 2 / delta
    prev = zero
    acc = None
    out = []
    for b in reps:
        q = (b - half) | zero
        acc = q if acc is None else acc | q
        r = (scale * acc) & one
        out.append(r - prev)
        prev = r
    return Partition(tuple(out), tuple(range(len(out))))


def cover_to_partition(opens, delta=None, cap=DEFAULT_DIM_CAP):
    """Partition of unity ``p_i ≼ b_i`` subordinate to a finite cover of basic opens.

    ``delta`` must be a positive lower bound of the join of the
    representatives; when omitted the exact minimum is used.
    """
    opens = list(opens)
    if not opens:
        raise CoverError("empty cover")
    dom = opens[0].dom
    bound = spectrum.cover_bound(opens, cap)
    if bound <= 0:
        raise CoverError("the opens do not cover the spectrum")
    if delta is None:
        delta = bound
    delta = as_fraction(delta)
    if not 0 < delta <= bound:
        raise CoverError(f"delta={delta} is not a positive lower bound (exact minimum {bound})")
    return partition_from_cover([u.rep for u in opens], delta, PLSpace(dom, cap))


# -- density ------------------------------------------------------------------

def band_partition(f, k, space, check=True):
    """Partition ``p_0 .. p_k`` subordinate to the bands ``|f - n/k| < 1/k``.

    Every value of f lies within ``1/(2k)`` of some level, so the band
    representatives have join at least ``1/(2k)``, which is the delta used.
    Unlike the slice partition, the staircase it yields is not f itself.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if check:
        check_range(f, space)
    zero = space.const(0)
    reps = [((f - space.const(Fraction(n - 1, k))) & (space.const(Fraction(n + 1, k)) - f)) | zero
            for n in range(k + 1)]
    return partition_from_cover(reps, Fraction(1, 2 * k), space)


PARTITION_METHODS = {"slice": slice_partition, "band": band_partition}


def level_partition(f, k, space, method="slice", check=True):
    try:
        build = PARTITION_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown partition method {method!r}") from None
    return build(f, k, space, check=check)


def freudenthal_approx(f, N, space, check=True, method="slice"):
    """Approximant ``sum (n/N) v_n`` from a level partition of f, with its exact error."""
    v = level_partition(f, N, space, method, check)
    a = staircase([Fraction(n, N) for n in range(N + 1)], v, space)
    return a, space.norm(f - a)


def cover_approx(f, N, dom, cap=DEFAULT_DIM_CAP):
    """Approximant built from the cover ``{f in ((k-1)/N, (k+1)/N)}`` as in the density argument.

    Returns ``(a, error, partition)``; the partition element ``p_k`` is
    dominated by the k-th interval open.
    """
    space = PLSpace(dom, cap)
    check_range(f, space)
    opens = [spectrum.interval_open(f, Fraction(k - 1, N), Fraction(k + 1, N), dom)
             for k in range(N + 1)]
    p = cover_to_partition(opens, cap=cap)
    a = staircase([Fraction(k, N) for k in range(N + 1)], p, space)
    return a, space.norm(f - a), p
