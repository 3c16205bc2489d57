"""
Step approximation through level-set partitions
===============================================

A function with values in [0, 1] is cut into N slices of height 1/N.  The
slices are disjoint pieces whose weighted sum rebuilds the function, and a
softer "band" variant gives an approximation whose error stays within 1/N.
"""

from fractions import Fraction

from rieszlab import pl
from rieszlab.constructions import PLSpace, freudenthal_approx, level_partition
from rieszlab.finite import FinSpace, FinVec
from rieszlab.pl import BoxDomain, const, gen

dom = BoxDomain.unit_cube(1)
space = PLSpace(dom)
f = pl.Meet(pl.Join(2 * gen(0) - const(Fraction(1, 3)), const(0)), const(1))

###############################################################################
# Errors for both methods as N doubles

for N in (2, 4, 8, 16):
    _, slice_err = freudenthal_approx(f, N, space)
    _, band_err = freudenthal_approx(f, N, space, method="band")
    print(f"N={N:2d}  slice error {slice_err}  band error {band_err}  bound {Fraction(1, N)}")

###############################################################################
# The same in the finite model Q^m
# --------------------------------

v = FinVec([Fraction(1, 7), Fraction(1, 2), Fraction(5, 6), Fraction(1)])
fin = FinSpace(len(v))
for piece in level_partition(v, 4, fin, "band"):
    print(list(map(str, piece)))
print("band error at N=4:", freudenthal_approx(v, 4, fin, method="band")[1])
