"""Exact-arithmetic toolkit for piecewise-linear Riesz spaces, their spectra and finite f-algebras."""

__version__ = "0.1.0"

from .lp import AffineForm, LinearSystem, affine_extrema, cell_samples, fm_feasible
from .pl import (ONE, ZERO, BoxDomain, PLTerm, counterexample, dominates, evaluate,
                 gen, const, leq, norm, normalize, pos, upper_bound)
from .sexpr import format_term, parse_term

__all__ = ["AffineForm", "LinearSystem", "affine_extrema", "cell_samples", "fm_feasible",
           "ONE", "ZERO", "BoxDomain", "PLTerm", "counterexample", "dominates", "evaluate",
           "gen", "const", "leq", "norm", "normalize", "pos", "upper_bound",
           "format_term", "parse_term"]
