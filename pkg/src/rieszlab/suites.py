"""
Seeded check suites and their JSON reports.

Every rational in a report is written as a ``"p/q"`` string and terms as
s-expressions, so reports round-trip exactly and diff cleanly.
"""

from __future__ import annotations

import datetime
import json
import os
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Optional

from . import __version__, pl
from . import spectrum as sp
from .constructions import PLSpace, cover_to_partition, freudenthal_approx
from .dini import dini_pointwise, dini_uniform
from .finite import (BilinearMap, FinSpace, FinVec, main_theorem_ledger,
                     orthosymmetry_counterexample)
from .generators import (random_cover, random_cover_pair, random_diagonal_map,
                         random_asymmetric_map, random_term, random_unit_term,
                         random_vector, unit_rational)
from .lp import DEFAULT_DIM_CAP
from .oracles import breakpoint_leq_1d, grid_refutation
from .pl import ONE, ZERO, BoxDomain, abs_, pos
from .sexpr import format_term

SUITES = ("relations", "dominance", "partitions", "density", "ledger", "dini",
          "normality", "lp-oracle")


class UnknownSuite(ValueError):
    pass


def seed_from_env(default=0):
    value = os.environ.get("RIESZLAB_SEED")
    return int(value) if value else default


@dataclass
class RunConfig:
    dimension_cap: int = DEFAULT_DIM_CAP
    box: Optional[tuple] = None
    dim: Optional[int] = None  # None alternates 1 and 2 where a suite allows it
    seed: int = 0
    cases: int = 100
    doubling_ceiling: int = pl.DEFAULT_DOUBLING_CEILING
    output_path: Optional[str] = None
    depth: int = 6
    k: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None

    def __post_init__(self):
        if self.dimension_cap < 1:
            raise ValueError("dimension_cap must be at least 1")
        if self.cases < 1:
            raise ValueError("cases must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def domain(self, i):
        if self.box is not None:
            return BoxDomain(self.box)
        return BoxDomain.unit_cube(self.dim or 1 + i % 2)


def jsonable(obj):
    """Convert results to JSON-ready data; rationals become ``"p/q"``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, pl.PLTerm):
        return format_term(obj)
    if isinstance(obj, FinVec):
        return [jsonable(e) for e in obj]
    if isinstance(obj, BilinearMap):
        return [[jsonable(e) for e in row] for row in obj.matrix]
    if isinstance(obj, sp.SpecOpen):
        return format_term(obj.rep)
    if isinstance(obj, BoxDomain):
        return [[jsonable(lo), jsonable(hi)] for lo, hi in obj.intervals]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass
class Check:
    name: str
    inputs: dict
    results: dict
    passed: bool


@dataclass
class Report:
    suite: str
    config: RunConfig
    checks: list = field(default_factory=list)
    tool_version: str = __version__
    timestamp: str = ""

    def add(self, name, inputs, results, passed):
        self.checks.append(Check(name, inputs, results, bool(passed)))

    @property
    def failed(self):
        return sum(not c.passed for c in self.checks)

    @property
    def ok(self):
        return self.failed == 0

    def summary(self):
        return {"total": len(self.checks), "passed": len(self.checks) - self.failed,
                "failed": self.failed}

    def to_dict(self):
        cfg = asdict(self.config)
        return jsonable({
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "suite": self.suite,
            "config": cfg,
            "checks": [{"name": c.name, "inputs": c.inputs, "results": c.results,
                        "passed": c.passed} for c in self.checks],
            "summary": self.summary(),
        })

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=False)

    def write(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json())
            fh.write("\n")


# -- suites ---------------------------------------------------------------

def _relations(cfg, rng, rep):
    kw = dict(cap=cfg.dimension_cap, ceiling=cfg.doubling_ceiling)
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        a = random_term(rng, dom.dim, depth=cfg.depth)
        b = random_term(rng, dom.dim, depth=cfg.depth)
        da, db = sp.d_of(a, dom), sp.d_of(b, dom)
        nonpos = pl.Meet(a, ZERO)
        r = {
            "1: D(a ^ 0) = 0": sp.open_is_zero(sp.d_of(nonpos, dom), cfg.dimension_cap)
            and sp.open_eq(sp.d_of(nonpos, dom), sp.bottom(dom), **kw),
            "1: a <= 0 iff D(a) = 0": pl.leq(a, ZERO, dom, cfg.dimension_cap)
            == sp.open_is_zero(da, cfg.dimension_cap),
            "2: D(1) = 1": sp.open_eq(sp.d_of(ONE, dom), sp.top(dom), **kw),
            "3: D(a) ^ D(-a) = 0": sp.open_eq(sp.open_meet(da, sp.d_of(-a, dom)), sp.bottom(dom), **kw),
            "4: D(a + b) <= D(a) v D(b)": sp.open_leq(sp.d_of(a + b, dom), sp.open_join(da, db), **kw),
            "5: D(a v b) = D(a) v D(b)": sp.open_eq(sp.d_of(pl.Join(a, b), dom), sp.open_join(da, db), **kw),
        }
        rep.add(f"relations[{i}]", {"domain": dom, "a": a, "b": b}, r, all(r.values()))


def _dominance(cfg, rng, rep):
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        a = pos(random_term(rng, dom.dim, depth=cfg.depth))
        b = pos(random_term(rng, dom.dim, depth=cfg.depth))
        res = pl.dominates(a, b, dom, ceiling=cfg.doubling_ceiling, cap=cfg.dimension_cap)
        if res.dominated:
            n = res.n
            ok = pl.leq(a, n * b, dom, cfg.dimension_cap)
            if n >= 2:
                ok = ok and not pl.leq(a, (n - 1) * b, dom, cfg.dimension_cap)
            out = {"dominated": True, "n": n}
        else:
            x = res.witness
            ok = dom.contains(x) and pl.evaluate(b, x) == 0 < pl.evaluate(a, x)
            out = {"dominated": False, "witness": list(x)}
        rep.add(f"dominance[{i}]", {"domain": dom, "a": a, "b": b}, out, ok)


def _lp_oracle(cfg, rng, rep):
    bump_scale = Fraction(1, 64)
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        a = random_term(rng, dom.dim, depth=cfg.depth)
        c = random_term(rng, dom.dim, depth=cfg.depth)
        kind = i % 3
        if kind == 0:
            b = c
        elif kind == 1:
            b = pl.Join(a, c)
        else:
            # a dip of width 1/16 around a random point: often invisible on coarse grids
            centre = pl.const(unit_rational(rng))
            dip = pos(pl.const(Fraction(1, 16)) - abs_(pl.gen(0) - centre))
            b = pl.Join(a, c) - bump_scale * dip
        decision = pl.leq(a, b, dom, cfg.dimension_cap)
        grid = grid_refutation(a, b, dom)
        ok = not (decision and grid is not None)
        out = {"leq": decision, "grid_refutes": grid is not None}
        if not decision:
            x = pl.counterexample(a, b, dom, cfg.dimension_cap)
            ok = ok and pl.evaluate(a, x) > pl.evaluate(b, x)
            out["counterexample"] = list(x)
        if dom.dim == 1:
            bp = breakpoint_leq_1d(a, b, dom)
            out["breakpoint_oracle"] = bp
            ok = ok and bp == decision
        rep.add(f"lp-oracle[{i}]", {"domain": dom, "a": a, "b": b}, out, ok)


def _partitions(cfg, rng, rep):
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        opens = random_cover(rng, dom, depth=cfg.depth)
        delta = sp.cover_bound(opens, cfg.dimension_cap)
        p = cover_to_partition(opens, delta, cfg.dimension_cap)
        space = PLSpace(dom, cfg.dimension_cap)
        total = pl.sum_all(list(p))
        sums = space.leq(total, ONE) and space.leq(ONE, total)
        nonneg = all(space.leq(ZERO, e) for e in p)
        dominated = [pl.dominates(e, u.rep, dom, minimal=False, ceiling=cfg.doubling_ceiling,
                                  cap=cfg.dimension_cap).dominated for e, u in zip(p, opens)]
        rep.add(f"partitions[{i}]", {"domain": dom, "opens": opens},
                {"delta": delta, "sum_is_unit": sums, "nonnegative": nonneg,
                 "p_i dominated by b_i": dominated},
                sums and nonneg and all(dominated))


DENSITY_LEVELS = (2, 4, 8, 16)


def density_levels(top=None):
    """Doubling levels ``2, 4, ...`` up to ``top`` (default 16)."""
    top = top or DENSITY_LEVELS[-1]
    out, N = [], 2
    while N <= top:
        out.append(N)
        N *= 2
    return tuple(out) or (top,)


def _density_check(rep, name, inputs, f, space, levels):
    errs = [freudenthal_approx(f, N, space)[1] for N in levels]
    band = [freudenthal_approx(f, N, space, method="band")[1] for N in levels]
    within = all(e <= Fraction(1, N) for e, N in zip(errs + band, levels * 2))
    monotone = all(x >= y for x, y in zip(errs, errs[1:]))
    rep.add(name, inputs,
            {"errors": dict(zip(map(str, levels), errs)),
             "band_errors": dict(zip(map(str, levels), band)),
             "within_1/N": within, "monotone": monotone},
            within and monotone)


def _density(cfg, rng, rep):
    levels = density_levels(cfg.n)
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        f = random_unit_term(rng, dom.dim, dom, depth=cfg.depth)
        _density_check(rep, f"density-pl[{i}]", {"domain": dom, "f": f}, f,
                       PLSpace(dom, cfg.dimension_cap), levels)
        fv = random_vector(rng, cfg.m or 8)
        _density_check(rep, f"density-fin[{i}]", {"f": fv}, fv, FinSpace(len(fv)), levels)


def _ledger(cfg, rng, rep):
    flagged = 0
    for i in range(cfg.cases):
        m = cfg.m or rng.randint(1, 8)
        k = cfg.k or rng.randint(2, 32)
        A = random_diagonal_map(rng, m)
        f, g = random_vector(rng, m), random_vector(rng, m)
        one = FinVec.const(m, 1)
        identities = {"A(f,g) = A(1,fg)": A(f, g) == A(one, f * g),
                      "A(f,g) = A(g,f)": A(f, g) == A(g, f)}
        for method in ("slice", "band"):
            led = main_theorem_ledger(A, f, g, k, method=method)
            results = {e.label: {"left": e.left, "right": e.right, "holds": e.holds}
                       for e in led.entries}
            results.update(identities)
            rep.add(f"ledger-{method}[{i}]", {"A": A, "f": f, "g": g, "k": k}, results,
                    led.holds and all(identities.values()))

        mm = max(m, 2)
        B = random_asymmetric_map(rng, mm)
        cex = orthosymmetry_counterexample(B)
        valid = cex is not None and (cex[0] & cex[1]) == FinVec.const(mm, 0) and B(*cex) != 0
        flagged += valid
        rep.add(f"ledger-negative[{i}]", {"A": B},
                {"counterexample": list(cex) if cex else None, "asymmetric": B(*cex) != B(cex[1], cex[0]) if cex else None},
                valid)
    rate = Fraction(flagged, cfg.cases)
    rep.add("ledger-negative-rate", {"cases": cfg.cases}, {"rate": rate}, rate >= Fraction(95, 100))


DINI_LEVELS = (2, 4, 10)


def _dini(cfg, rng, rep):
    levels = (cfg.m,) if cfg.m else DINI_LEVELS
    grid = [Fraction(j, 8) for j in range(9)]
    for m in levels:
        worst, violations = Fraction(0), 0
        for f, g, h in cartesian(grid, repeat=3):
            r = dini_pointwise(f, g, h, m)
            worst = max(worst, r.value)
            violations += r.value > Fraction(2, m)
        rep.add(f"dini-grid[m={m}]", {"m": m, "grid": "k/8"},
                {"n": m * m, "max_value": worst, "violations": violations}, violations == 0)
    size = 8
    for i in range(cfg.cases):
        m = levels[i % len(levels)]
        f, g, h = (random_vector(rng, size) for _ in range(3))
        led = dini_uniform(f, g, h, m)
        e = led.entries[0]
        rep.add(f"dini-uniform[{i}]", {"m": m, "f": f, "g": g, "h": h},
                {"n": led.extra["n"], "norm": e.left, "bound": e.right,
                 "combined_n": led.extra["combined_n"]}, led.holds)


def _normality(cfg, rng, rep):
    kw = dict(cap=cfg.dimension_cap, ceiling=cfg.doubling_ceiling)
    for i in range(cfg.cases):
        dom = cfg.domain(i)
        b1, b2 = random_cover_pair(rng, dom, depth=cfg.depth)
        if i % 2:
            b1, b2 = b2, b1
        c1, c2 = sp.normality_witness(b1, b2, cfg.dimension_cap)
        r = {"c1 ^ c2 = 0": sp.open_eq(sp.open_meet(c1, c2), sp.bottom(dom), **kw),
             "c1 v b1 = 1": sp.is_top(sp.open_join(c1, b1), **kw),
             "c2 v b2 = 1": sp.is_top(sp.open_join(c2, b2), **kw)}
        rep.add(f"normality[{i}]", {"domain": dom, "b1": b1, "b2": b2}, r, all(r.values()))


_RUNNERS = {
    "relations": _relations,
    "dominance": _dominance,
    "partitions": _partitions,
    "density": _density,
    "ledger": _ledger,
    "dini": _dini,
    "normality": _normality,
    "lp-oracle": _lp_oracle,
}


def run_suite(config, name, timestamp=True):
    """Run one suite deterministically from ``config.seed``; write the report if asked."""
    if name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rng = random.Random(f"{name}:{config.seed}")
    rep = Report(name, config)
    if timestamp:
        rep.timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    _RUNNERS[name](config, rng, rep)
    if config.output_path:
        rep.write(config.output_path)
    return rep
