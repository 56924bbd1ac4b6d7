"""Exact rational linear feasibility by Fourier-Motzkin elimination, with
certificate extraction.

Systems are lists of constraints  sum c_i x_i  (rel)  rhs  with rel in
{"<=", "<", "="}.  Elimination keeps, for every derived inequality, its
nonnegative-combination provenance over the input rows, so infeasibility
yields an explicit Farkas certificate and feasibility yields a point by
back-substitution.  Dimensions here are tiny (r <= 5), where FM is exact
and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class FMResult:
    feasible: bool
    point: list | None = None  # rational point when feasible
    farkas: list | None = None  # multipliers over input rows when infeasible


def _norm(con, nvars):
    coeffs, rel, rhs = con
    coeffs = [Fraction(c) for c in coeffs]
    assert len(coeffs) == nvars and rel in ("<=", "<", "=")
    return coeffs, rel, Fraction(rhs)


def solve(constraints, nvars) -> FMResult:
    """Decide { x in Q^nvars : constraints }, returning a point or a Farkas
    combination (multipliers m >= 0 with sum m_i * row_i = (0 rel c), c
    violating the relation)."""
    rows = []
    for k, con in enumerate(constraints):
        coeffs, rel, rhs = _norm(con, nvars)
        prov = [Fraction(1) if i == k else Fraction(0)
                for i in range(len(constraints))]
        if rel == "=":
            rows.append((coeffs, "<=", rhs, prov, 1))
            rows.append(([-c for c in coeffs], "<=", -rhs,
                         [-p for p in prov], -1))
        else:
            rows.append((coeffs, rel, rhs, prov, 1))

    levels = []  # per eliminated variable: rows at that level
    cur = rows
    for v in range(nvars):
        levels.append(cur)
        lower, upper, rest = [], [], []
        for coeffs, rel, rhs, prov, sg in cur:
            c = coeffs[v]
            if c > 0:
                upper.append((coeffs, rel, rhs, prov, sg))
            elif c < 0:
                lower.append((coeffs, rel, rhs, prov, sg))
            else:
                rest.append((coeffs, rel, rhs, prov, sg))
        new = list(rest)
        for lc, lrel, lrhs, lprov, _ in lower:
            for uc, urel, urhs, uprov, _ in upper:
                a = uc[v]
                b = -lc[v]
                # b*upper + a*lower eliminates v
                coeffs = [b * uc[i] + a * lc[i] for i in range(nvars)]
                rhs = b * urhs + a * lrhs
                rel = "<" if "<" in (lrel, urel) else "<="
                prov = [b * up + a * lp for up, lp in zip(uprov, lprov)]
                new.append((coeffs, rel, rhs, prov, 1))
        cur = new

    # ground facts: all coefficients zero
    for coeffs, rel, rhs, prov, _ in cur:
        assert all(c == 0 for c in coeffs)
        bad = rhs < 0 if rel == "<=" else rhs <= 0
        if bad:
            return FMResult(False, farkas=prov)

    # back-substitute a feasible point
    point = [Fraction(0)] * nvars
    for v in range(nvars - 1, -1, -1):
        lo, hi, lo_strict, hi_strict = None, None, False, False
        for coeffs, rel, rhs, prov, _ in levels[v]:
            c = coeffs[v]
            if c == 0:
                continue
            rest = rhs - sum(coeffs[i] * point[i]
                             for i in range(v + 1, nvars))
            bound = rest / c
            if c > 0:
                if hi is None or bound < hi or (bound == hi and rel == "<"):
                    hi, hi_strict = bound, rel == "<"
            else:
                if lo is None or bound > lo or (bound == lo and rel == "<"):
                    lo, lo_strict = bound, rel == "<"
        if lo is None and hi is None:
            point[v] = Fraction(0)
        elif lo is None:
            point[v] = hi - 1 if hi_strict else hi
        elif hi is None:
            point[v] = lo + 1 if lo_strict else lo
        else:
            point[v] = (lo + hi) / 2 if (lo_strict or hi_strict) else lo
    return FMResult(True, point=point)


def cone_membership(target, generators, lines=()):
    """Is target in cone(generators) + span(lines)?  Returns (noneg
    lambdas, line coefficients) or None.  All vectors are rational tuples.
    """
    gens = [list(map(Fraction, g)) for g in generators]
    lns = [list(map(Fraction, l)) for l in lines]
    tgt = list(map(Fraction, target))
    dim = len(tgt)
    k, l = len(gens), len(lns)
    nvars = k + 2 * l  # lambdas >= 0, lines split into +/- parts
    cons = []
    for d in range(dim):
        coeffs = [gens[i][d] for i in range(k)]
        for j in range(l):
            coeffs += [lns[j][d], -lns[j][d]]
        cons.append((coeffs, "=", tgt[d]))
    for i in range(nvars):
        coeffs = [Fraction(0)] * nvars
        coeffs[i] = Fraction(-1)
        cons.append((coeffs, "<=", 0))
    res = solve(cons, nvars)
    if not res.feasible:
        return None
    lambdas = res.point[:k]
    mus = [res.point[k + 2 * j] - res.point[k + 2 * j + 1] for j in range(l)]
    return lambdas, mus


def separating_functional(target, generators, orthogonal_to=()):
    """A rational vector y with y.g <= 0 for all generators, y.e = 0 for the
    orthogonal set, and y.target > 0 -- a Farkas witness that target is not
    in cone(generators) + span(orthogonal_to).  None if no such y exists."""
    gens = [list(map(Fraction, g)) for g in generators]
    orth = [list(map(Fraction, o)) for o in orthogonal_to]
    tgt = list(map(Fraction, target))
    dim = len(tgt)
    cons = []
    for g in gens:
        cons.append((g, "<=", 0))
    for o in orth:
        cons.append((o, "=", 0))
    cons.append(([-t for t in tgt], "<", 0))
    res = solve(cons, dim)
    return res.point if res.feasible else None
