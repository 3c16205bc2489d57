"""
Uniform bound for ``[(f ^ g) h - n f (g ^ h)]+`` with ``n = m^2``, realised on finite models.

The real-number argument splits each input constructively into overlapping
cases ``x >= 1/m`` or ``x <= 2/m``; a finite cover with per-cell witnesses
is then glued into a global bound through a partition of unity.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .constructions import BoundsLedger, Partition, RangeError, is_partition
from .finite import FinSpace, FinVec
from .lp import as_fraction


@dataclass(frozen=True)
class DichotomyBranch:
    kind: str  # "at_least" or "at_most"
    bound: Fraction

    def holds_for(self, x):
        return x >= self.bound if self.kind == "at_least" else x <= self.bound


def dichotomy(x, m):
    """``x >= 1/m`` or ``x <= 2/m``; the first is reported whenever it holds."""
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise RangeError(f"{x} is outside [0, 1]")
    if m < 1:
        raise ValueError("m must be a positive integer")
    if x >= Fraction(1, m):
        return DichotomyBranch("at_least", Fraction(1, m))
    return DichotomyBranch("at_most", Fraction(2, m))


def dini_expr(f, g, h, n):
    """``[(f ^ g) h - n f (g ^ h)]+`` on rationals or FinVecs."""
    if isinstance(f, FinVec):
        return ((f & g) * h - n * f * (g & h)) | 0
    return max(Fraction(0), min(f, g) * h - n * f * min(g, h))


class PointwiseDini(NamedTuple):
    n: int
    value: Fraction
    case: str


def dini_pointwise(f, g, h, m):
    """Value of the expression at ``n = m^2`` together with the case that bounds it by 2/m."""
    f, g, h = (as_fraction(v) for v in (f, g, h))
    branches = [dichotomy(v, m) for v in (f, g, h)]
    n = m * m
    value = dini_expr(f, g, h, n)
    small = [name for name, b in zip("fgh", branches) if b.kind == "at_most"]
    if small:
        # (f^g)h is at most the small input, all inputs being <= 1
        case = f"{small[0]} <= 2/m"
        assert min(f, g) * h <= Fraction(2, m)
    else:
        case = "all >= 1/m"
        assert n * f * min(g, h) >= 1 >= min(f, g) * h
    assert value <= Fraction(2, m)
    return PointwiseDini(n, value, case)


@dataclass(frozen=True)
class CellWitness:
    cell: int
    n: int
    bound: Fraction


class WitnessError(ValueError):
    pass


def _sup_on_support(e, u):
    return max((x for x, w in zip(e, u) if w > 0), default=Fraction(0))


def combine_witnesses(witnesses, partition, sequence):
    """Glue per-cell witnesses into one ``n`` and a global bound.

    ``sequence(n)`` gives the n-th element as a FinVec.  Witness ``i`` claims
    ``sequence(n_i) <= bound_i`` on the support of ``partition[i]``.  The
    combined ``n`` is the largest ``n_i``; every cell is re-checked there and
    the global claim ``sequence(n) = sum u_i sequence(n) <= max bound_i`` is
    verified by evaluation.
    """
    witnesses = list(witnesses)
    if len(witnesses) != len(partition) or sorted(w.cell for w in witnesses) != list(range(len(partition))):
        raise WitnessError("witnesses do not align with the partition cells")
    m = len(partition[0])
    if not is_partition(partition, FinSpace(m)):
        raise WitnessError("not a partition of unity")
    for w in witnesses:
        if _sup_on_support(sequence(w.n), partition[w.cell]) > w.bound:
            raise WitnessError(f"witness for cell {w.cell} fails at n={w.n}")
    n = max(w.n for w in witnesses)
    e = sequence(n)
    for w in witnesses:
        if _sup_on_support(e, partition[w.cell]) > w.bound:
            raise WitnessError(f"cell {w.cell} fails at the combined n={n}")
    bound = max(w.bound for w in witnesses)
    glued = FinVec.const(m, 0)
    for u in partition:
        glued = glued + u * e
    if glued != e or e.norm() > bound:
        raise WitnessError("global bound fails")
    return n, bound


def dini_uniform(f, g, h, m):
    """Ledger for ``|[(f ^ g) h - n f (g ^ h)]+| <= 2/m`` at ``n = m^2`` on Q^m'."""
    k = len(f)
    zero, one = FinVec.const(k, 0), FinVec.const(k, 1)
    for v in (f, g, h):
        if len(v) != k:
            raise ValueError("length mismatch")
        if not (zero <= v <= one):
            raise RangeError("entries must lie in [0, 1]")
    n = m * m
    bound = Fraction(2, m)
    e = dini_expr(f, g, h, n)
    cover = Partition(tuple(FinVec.basis(k, i) for i in range(k)), tuple(range(k)))
    witnesses = []
    for i in range(k):
        pt = dini_pointwise(f[i], g[i], h[i], m)
        witnesses.append(CellWitness(i, pt.n, bound))
    n_comb, glob = combine_witnesses(witnesses, cover, lambda j: dini_expr(f, g, h, j))
    led = BoundsLedger()
    led.add("|[(f^g)h - n f(g^h)]+|", e.norm(), bound)
    led.add("combined bound", e.norm(), glob)
    led.extra.update(n=n, value=e, witnesses=witnesses, combined_n=n_comb, global_bound=glob)
    return led
