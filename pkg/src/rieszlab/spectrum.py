"""
The lattice of basic opens ``D(a)`` of the spectrum of the PL Riesz space.

An open is stored through the positive element ``a+`` that defines it.  The
order is ``D(a) <= D(b)`` iff ``a+ ≼ b+``; equality is mutual ``≼`` and no
canonical representative is ever computed.
"""

from dataclasses import dataclass

from . import pl
from .lp import DEFAULT_DIM_CAP, as_fraction
from .pl import ONE, ZERO, BoxDomain, Join, Meet, PLTerm, pos


@dataclass(frozen=True)
class SpecOpen:
    rep: PLTerm
    dom: BoxDomain

    def __str__(self):
        return f"D[{self.rep}]"


def d_of(a, dom):
    return SpecOpen(pos(a), dom)


def top(dom):
    return SpecOpen(ONE, dom)


def bottom(dom):
    return SpecOpen(ZERO, dom)


def _same(u, v):
    if u.dom != v.dom:
        raise ValueError("opens live on different domains")


def open_leq(u, v, cap=DEFAULT_DIM_CAP, ceiling=pl.DEFAULT_DOUBLING_CEILING):
    _same(u, v)
    r = pl.dominates(u.rep, v.rep, u.dom, minimal=False, ceiling=ceiling, cap=cap)
    return r.dominated


def open_eq(u, v, **kw):
    return open_leq(u, v, **kw) and open_leq(v, u, **kw)


def open_meet(u, v):
    _same(u, v)
    return SpecOpen(Meet(u.rep, v.rep), u.dom)


def open_join(u, v):
    _same(u, v)
    return SpecOpen(Join(u.rep, v.rep), u.dom)


def join_all(opens):
    opens = list(opens)
    out = opens[0]
    for u in opens[1:]:
        out = open_join(out, u)
    return out


def open_is_zero(u, cap=DEFAULT_DIM_CAP):
    """``D(a) = 0`` iff ``a <= 0``."""
    return pl.leq(u.rep, ZERO, u.dom, cap)


def interval_open(a, p, q, dom):
    """``D((a - p) ^ (q - a))``: the open where a lies strictly between p and q."""
    p, q = as_fraction(p), as_fraction(q)
    if not p < q:
        raise ValueError(f"need p < q, got p={p}, q={q}")
    return d_of(Meet(a - p * ONE, q * ONE - a), dom)


def is_top(u, cap=DEFAULT_DIM_CAP, ceiling=pl.DEFAULT_DOUBLING_CEILING):
    """True iff the representative is bounded below by a positive rational."""
    return pl.dominates(ONE, u.rep, u.dom, minimal=False, ceiling=ceiling, cap=cap).dominated


def is_cover(opens, cap=DEFAULT_DIM_CAP):
    return is_top(join_all(opens), cap)


def cover_bound(opens, cap=DEFAULT_DIM_CAP):
    """Exact minimum of the join of the representatives; positive iff the opens cover."""
    u = join_all(opens)
    return pl.lower_bound(u.rep, u.dom, cap)


def shrink(u, s):
    """``D(a - s)`` for rational ``s > 0``, a finite stage of ``D(a) = V D(a - s)``."""
    s = as_fraction(s)
    if s <= 0:
        raise ValueError("shrink needs s > 0")
    return d_of(u.rep - s * ONE, u.dom)


class NormalityError(ValueError):
    pass


def normality_witness(b1, b2, cap=DEFAULT_DIM_CAP):
    """Disjoint ``c1, c2`` with ``c1 v b1 = c2 v b2 = top``, given ``b1 v b2 = top``."""
    _same(b1, b2)
    if not is_top(open_join(b1, b2), cap):
        raise NormalityError("b1 v b2 is not the top open")
    c1 = d_of(b2.rep - b1.rep, b1.dom)
    c2 = d_of(b1.rep - b2.rep, b1.dom)
    return c1, c2
