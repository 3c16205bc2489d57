"""
Deciding order between piecewise-linear functions
=================================================

Terms are built from coordinates, constants, sums, scalings, max and min.
Every question below is answered exactly, with no sampling.
"""

from fractions import Fraction

from rieszlab import pl
from rieszlab.pl import ONE, BoxDomain, const, gen
from rieszlab.sexpr import format_term, parse_term

###############################################################################
# A tent on the unit interval, written both ways
# ----------------------------------------------

x = gen(0)
tent = pl.Meet(x, ONE - x)
same = parse_term("(meet (gen 0) (+ (unit) (scale (rat -1 1) (gen 0))))")
print(format_term(tent))
print("parsed text equals built term:", same == tent)

dom = BoxDomain.unit_cube(1)
print("tent <= 1/2:", pl.leq(tent, const(Fraction(1, 2)), dom))

###############################################################################
# When the answer is no, a rational point proves it

x0 = pl.counterexample(const(Fraction(2, 5)), tent, dom)
print("2/5 <= tent fails at x =", x0[0], "where tent =", pl.evaluate(tent, x0))

###############################################################################
# Norms relative to the unit
# --------------------------
# ``norm`` is the least constant c with |f| <= c; in two variables too.

sq = BoxDomain.unit_cube(2)
f = pl.Join(gen(0) - gen(1), const(Fraction(-3, 4)))
print("norm:", pl.norm(f, sq), " range:", pl.lower_bound(f, sq), "to", pl.upper_bound(f, sq))

###############################################################################
# Dominance: how many copies of b are needed to cover a?

capped = pl.Meet(x, const(Fraction(1, 4)))
print(pl.dominates(tent, capped, dom))
print(pl.dominates(capped, tent, dom))
