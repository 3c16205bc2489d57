"""
Positive bilinear maps on Q^m that vanish on disjoint pairs
===========================================================

For a diagonal map the product formula ``A(f, g) = A(1, f g)`` is exact.  The
ledger below follows the approximation argument step by step and prints
each inequality with both of its sides.
"""

from fractions import Fraction

from rieszlab.dini import dini_uniform
from rieszlab.finite import BilinearMap, FinVec, main_theorem_ledger, orthosymmetry_counterexample

A = BilinearMap.diagonal([Fraction(1, 2), Fraction(1, 3), Fraction(1)])
f = FinVec([Fraction(1, 5), Fraction(2, 3), Fraction(1)])
g = FinVec([Fraction(3, 4), Fraction(1, 9), Fraction(1, 2)])

led = main_theorem_ledger(A, f, g, 8)
for e in led.entries:
    print(f"{e.label:24s} {str(e.left):>10s} <= {str(e.right):<8s} {e.holds}")
print("A(f,g) =", led.extra["Afg"], " A(g,f) =", led.extra["Agf"], " A(1,fg) =", led.extra["A1fg"])

###############################################################################
# An off-diagonal entry is caught by a pair with disjoint supports

B = BilinearMap([[1, Fraction(1, 2)], [0, 1]])
print("disjoint pair with B(u, v) != 0:", orthosymmetry_counterexample(B))

###############################################################################
# One multiplier for all coordinates
# ----------------------------------

r = dini_uniform(FinVec([Fraction(1, 2), 1]), FinVec([Fraction(1, 3), 0]), FinVec([1, 1]), 4)
print("n =", r.extra["n"], " value", r.extra["value"], " holds:", r.holds)
