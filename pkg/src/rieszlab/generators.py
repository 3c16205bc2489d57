"""Seeded random terms, vectors, bilinear maps and cover inputs."""

import random
from fractions import Fraction

from . import pl
from .finite import BilinearMap, FinVec
from .pl import Add, Const, Generator, Join, Meet, Scale, Unit

DEFAULT_DEPTH = 6
DEFAULT_MAX_INT = 16


def make_rng(seed):
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_rational(rng, max_int=DEFAULT_MAX_INT, signed=True):
    p = rng.randint(-max_int if signed else 0, max_int)
    return Fraction(p, rng.randint(1, max_int))


def unit_rational(rng, max_int=DEFAULT_MAX_INT):
    q = rng.randint(1, max_int)
    return Fraction(rng.randint(0, q), q)


def random_term(rng, n, depth=DEFAULT_DEPTH, max_int=DEFAULT_MAX_INT, leaf_prob=Fraction(1, 3)):
    """Random term over ``n`` generators of depth at most ``depth``."""
    if depth <= 0 or rng.random() < leaf_prob:
        r = rng.randrange(4)
        if r < 2:
            return Generator(rng.randrange(n))
        if r == 2:
            return Unit()
        return Const(random_rational(rng, max_int))
    op = rng.randrange(4)
    if op == 0:
        return Scale(random_rational(rng, max_int) or Fraction(1),
                     random_term(rng, n, depth - 1, max_int, leaf_prob))
    cls = (Add, Join, Meet)[op - 1]
    return cls(random_term(rng, n, depth - 1, max_int, leaf_prob),
               random_term(rng, n, depth - 1, max_int, leaf_prob))


def clamp01(t):
    """``(t v 0) ^ 1``."""
    return Meet(Join(t, pl.ZERO), pl.ONE)


def random_unit_term(rng, n, dom=None, **kw):
    """A random term clamped into [0, 1].

    With ``dom`` the term's exact range over the box is first mapped onto
    ``[-1/8, 9/8]``, so the clamp trims only the ends instead of usually
    flattening the term to a constant.
    """
    t = random_term(rng, n, **kw)
    if dom is not None:
        lo, hi = pl.lower_bound(t, dom), pl.upper_bound(t, dom)
        if lo < hi:
            t = (Fraction(5, 4) / (hi - lo)) * (t - Const(lo)) - Const(Fraction(1, 8))
    return clamp01(t)


def random_vector(rng, m, max_int=DEFAULT_MAX_INT):
    return FinVec([unit_rational(rng, max_int) for _ in range(m)])


def random_diagonal_map(rng, m, max_int=DEFAULT_MAX_INT):
    return BilinearMap.diagonal([unit_rational(rng, max_int) for _ in range(m)])


def random_asymmetric_map(rng, m, max_int=DEFAULT_MAX_INT):
    """Nonnegative matrix with ``M_ij != M_ji`` for at least one off-diagonal pair."""
    rows = [[unit_rational(rng, max_int) for _ in range(m)] for _ in range(m)]
    i, j = rng.sample(range(m), 2)
    rows[i][j] = rows[j][i] + Fraction(1, rng.randint(1, max_int))
    return BilinearMap(rows)


def random_cover(rng, dom, k=None, **kw):
    """``k`` interval opens of a random term whose union covers the spectrum.

    The term's exact range ``[lo, hi]`` is cut into ``k`` overlapping open
    intervals, so every point lies strictly inside one of them.
    """
    from .spectrum import interval_open
    k = k or rng.randint(2, 5)
    t = random_term(rng, dom.dim, **kw)
    lo, hi = pl.lower_bound(t, dom), pl.upper_bound(t, dom)
    cuts = sorted({lo, hi} | {lo + (hi - lo) * unit_rational(rng) for _ in range(k - 1)})
    while len(cuts) < k + 1:
        cuts.append(cuts[-1] + 1)
    margin = Fraction(1, rng.randint(2, 16))
    opens = [interval_open(t, cuts[i] - margin, cuts[i + 1] + margin, dom) for i in range(k)]
    rng.shuffle(opens)
    return opens


def random_cover_pair(rng, dom, **kw):
    """``D(t - p), D(q - t)`` with ``p < q``: two opens whose join is the top."""
    from .spectrum import d_of
    t = random_term(rng, dom.dim, **kw)
    p = random_rational(rng)
    q = p + Fraction(rng.randint(1, 16), rng.randint(1, 16))
    return d_of(t - Const(p), dom), d_of(Const(q) - t, dom)


def generate_random(kind, seed, **params):
    """Dispatch on ``kind`` in {term, vector, bilinear, partitioninput}."""
    rng = make_rng(seed)
    if kind == "term":
        n = params.pop("n", 1)
        if params.pop("unit_range", False):
            return random_unit_term(rng, n, **params)
        return random_term(rng, n, **params)
    if kind == "vector":
        return random_vector(rng, params.get("m", 4))
    if kind == "bilinear":
        if params.get("diagonal", True):
            return random_diagonal_map(rng, params.get("m", 4))
        return random_asymmetric_map(rng, params.get("m", 4))
    if kind == "partitioninput":
        return random_cover(rng, params["dom"], params.get("k"))
    raise ValueError(f"unknown kind {kind!r}")
