"""Bernstein-Sato linkage: generators b_c of the ideal associated with a
multi-variable b-function family, the good-root test, exact reduction
lemmas over rational LP, a case-split certification driver, and
rational-singularity verdicts.

The certification works branch by branch on a symbolic state: specialized
coordinates are stored as affine values in integer parameters (k1, k2, ...)
with box domains, so a branch like "z_3 = -k, k >= 1" is a single node.
Every rule application carries an explicit certificate (LP multipliers,
Farkas functionals, or interval bounds) that the independent checker
re-verifies arithmetically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .affine import Affine, Box, aff_from_json, aff_to_json
from .brackets import BFunctionFamily, expand
from .fmlp import cone_membership, separating_functional, solve


def _binom_value(z, m):
    v = Fraction(1)
    for t in range(m):
        v *= Fraction(z) - t
    return v / Fraction(
        __import__("math").factorial(m)
    )


@dataclass
class GeneratorBc:
    c: tuple
    factors: dict  # (gamma, const) -> multiplicity; const is Fraction/int
    binomial_factors: tuple  # ((variable index i, order -c_i), ...)

    def value_at(self, z):
        val = Fraction(1)
        for (g, const), cnt in self.factors.items():
            lin = sum(Fraction(gi) * Fraction(zi) for gi, zi in zip(g, z)) + const
            val *= lin ** cnt
        for i, order in self.binomial_factors:
            val *= _binom_value(z[i - 1], order)
        return val


def generator_bc(family: BFunctionFamily, c) -> GeneratorBc:
    """b_c = b_{c+}(s + c-) * prod_{c_i<0} binom(s_i, -c_i), e.c = 1."""
    c = tuple(int(x) for x in c)
    assert len(c) == family.r and sum(c) == 1
    cplus = tuple(max(x, 0) for x in c)
    cminus = tuple(x - p for x, p in zip(c, cplus))
    factors = {}
    for (g, const), cnt in expand(family, cplus).items():
        shift = sum(gi * mi for gi, mi in zip(g, cminus))
        key = (g, const + shift)
        factors[key] = factors.get(key, 0) + cnt
    binoms = tuple((i + 1, -c[i]) for i in range(len(c)) if c[i] < 0)
    return GeneratorBc(c, factors, binoms)


def is_good(z, r) -> bool:
    """good: z = -e or e.z < -r."""
    z = [Fraction(x) for x in z]
    if all(x == -1 for x in z):
        return True
    return sum(z) < -Fraction(r)


@dataclass
class Membership:
    kind: str  # "member" | "nonmember" | "unknown"
    witness_c: tuple | None = None  # generator not vanishing at z
    proof: dict | None = None  # r<=2 exact interval-cover data


def _cover_check(intervals, tail_from, start):
    """Do the integer intervals (lo, hi|None) plus the tail {t >= tail_from}
    cover every integer t >= start?  Returns (covered, first gap)."""
    t = start
    guard = 0
    while True:
        if tail_from is not None and t >= tail_from:
            return True, None
        best = None
        for lo, hi in intervals:
            if lo <= t and (hi is None or t <= hi):
                if hi is None:
                    return True, None
                best = hi if best is None else max(best, hi)
        if best is None:
            return False, t
        t = best + 1
        guard += 1
        if guard > 10000:
            return False, t


def _interval_ge(a, b, c):
    """Integer solutions t of a*t >= b on direction c in {+1,-1}... helper
    returning (lo, hi|None) for {t : a*t + b >= 0}, or None if empty/all."""
    # a*t + b >= 0
    if a == 0:
        return ("all",) if b >= 0 else ("none",)
    bound = Fraction(-b, a)
    if a > 0:
        import math
        return ("ge", math.ceil(bound))
    import math
    return ("le", math.floor(bound))


def _conj_to_interval(conds):
    """Intersect conditions of the forms ('ge', v) / ('le', v) / ('all',) /
    ('none',) into a single integer interval (lo, hi|None) or None."""
    lo, hi = None, None
    for c in conds:
        if c[0] == "none":
            return None
        if c[0] == "all":
            continue
        if c[0] == "ge":
            lo = c[1] if lo is None else max(lo, c[1])
        else:
            hi = c[1] if hi is None else min(hi, c[1])
    lo = lo if lo is not None else -(10 ** 9)
    if hi is not None and lo > hi:
        return None
    return (lo, hi)


def membership_in_ztilde(family: BFunctionFamily, z, box_bound=8) -> Membership:
    """Does every generator b_c vanish at z?

    r <= 2 is decided exactly: c = (1+t, -t) is a line in one integer
    parameter and each bracket's vanishing condition is a t-interval, so
    universal vanishing is a finite interval-cover check.  For r > 2 a box
    |c_i| <= box_bound is scanned; absence of a counterexample there is
    reported as unknown, never as membership.
    """
    r = family.r
    z = tuple(Fraction(x) for x in z)
    if r == 1:
        gen = generator_bc(family, (1,))
        if gen.value_at(z) == 0:
            return Membership("member", proof={"c": (1,)})
        return Membership("nonmember", witness_c=(1,))
    if r == 2:
        proof = {}
        for direction in ("pos", "neg"):
            intervals = []
            tail_from = None
            if direction == "pos":
                # c = (1+t, -t), t >= 0: c+ = (1+t, 0), c- = (0, -t)
                for (g, o), cnt in family.offsets.items():
                    if not cnt:
                        continue
                    w = -(g[0] * z[0] + g[1] * z[1]) - o
                    if w.denominator != 1:
                        continue
                    w = int(w)
                    # sigma(t) = -g2*t <= w ; sigma(t) >= w - g1*(1+t) + 1
                    conds = [
                        _interval_ge(g[1], w, +1),              # g2*t + w >= 0
                        _interval_ge(g[0] - g[1], g[0] - 1 - w, +1),
                        _interval_ge(g[0], g[0] - 1, +1),       # depth >= 1
                    ]
                    iv = _conj_to_interval(conds)
                    if iv:
                        intervals.append((max(iv[0], 0), iv[1]))
                if z[1].denominator == 1 and z[1] >= 0:
                    tail_from = int(z[1]) + 1
                covered, gap = _cover_check(intervals, tail_from, 0)
                if not covered:
                    t = gap
                    return Membership("nonmember", witness_c=(1 + t, -t))
                proof["pos"] = {"intervals": intervals, "tail": tail_from}
            else:
                # c = (1-u, u), u >= 1: c+ = (0, u), c- = (1-u, 0)
                for (g, o), cnt in family.offsets.items():
                    if not cnt:
                        continue
                    w = -(g[0] * z[0] + g[1] * z[1]) - o
                    if w.denominator != 1:
                        continue
                    w = int(w)
                    # 0 <= w - g1*(1-u) <= g2*u - 1
                    conds = [
                        _interval_ge(g[0], w - g[0], +1),       # g1*u + (w-g1) >= 0
                        _interval_ge(g[1] - g[0], g[1] - 1 - w + g[0], +1),
                        _interval_ge(g[1], g[1] - 1, +1),       # depth >= 1
                    ]
                    iv = _conj_to_interval(conds)
                    if iv:
                        intervals.append((max(iv[0], 1), iv[1]))
                if z[0].denominator == 1 and z[0] >= 0:
                    tail_from = int(z[0]) + 2
                covered, gap = _cover_check(intervals, tail_from, 1)
                if not covered:
                    u = gap
                    return Membership("nonmember", witness_c=(1 - u, u))
                proof["neg"] = {"intervals": intervals, "tail": tail_from}
        return Membership("member", proof=proof)

    # r > 2: box scan
    rng = range(-box_bound, box_bound + 1)
    for c in itertools.product(rng, repeat=r):
        if sum(c) != 1:
            continue
        if generator_bc(family, c).value_at(z) != 0:
            return Membership("nonmember", witness_c=tuple(c))
    return Membership("unknown")


# -- symbolic branch state ----------------------------------------------------

@dataclass(frozen=True)
class SymTerm:
    gamma: tuple  # over active variables
    a: Affine
    b: Affine  # b - a concrete
    mult: int = 1

    def signature(self):
        import json
        return json.dumps([list(self.gamma), aff_to_json(self.a),
                           aff_to_json(self.b), self.mult], sort_keys=True)


def _is_unit(gamma):
    return sum(1 for c in gamma if c) == 1 and max(gamma) == 1


@dataclass
class SymState:
    vars: tuple  # original 1-based variable indices still active
    terms: tuple  # SymTerm over the active variables
    fixed: tuple  # ((orig var, Affine value, clean_flag), ...) in fixing order
    box: Box
    flags: dict  # orig var -> frozenset of {"not_neg_int", "not_nat"}
    r_global: int

    @property
    def clean(self):
        return all(cl for _, _, cl in self.fixed)

    def k_total(self):
        """K = -(sum of fixed values)."""
        s = Affine.of(0)
        for _, v, _ in self.fixed:
            s = s + v
        return -s

    def specialize(self, pos, value: Affine, clean_flag):
        var = self.vars[pos]
        new_terms = []
        scalars = []
        for t in self.terms:
            gi = t.gamma[pos]
            g2 = t.gamma[:pos] + t.gamma[pos + 1:]
            if gi == 0:
                new_terms.append(SymTerm(g2, t.a, t.b, t.mult))
            elif any(g2):
                new_terms.append(SymTerm(g2, t.a + value * gi, t.b + value * gi,
                                         t.mult))
            else:
                scalars.append((t.a + value * gi, t.b + value * gi, t.mult))
        flags = {v: f for v, f in self.flags.items() if v != var}
        st = SymState(self.vars[:pos] + self.vars[pos + 1:], tuple(new_terms),
                      self.fixed + ((var, value, clean_flag),), self.box,
                      flags, self.r_global)
        return st, scalars

    def with_flag(self, var, flag):
        flags = dict(self.flags)
        flags[var] = frozenset(flags.get(var, frozenset()) | {flag})
        return SymState(self.vars, self.terms, self.fixed, self.box, flags,
                        self.r_global)

    def with_box(self, box):
        return SymState(self.vars, self.terms, self.fixed, box, self.flags,
                        self.r_global)


def sym_state_from_family(family: BFunctionFamily) -> SymState:
    terms = tuple(
        SymTerm(t.gamma, Affine.of(t.a), Affine.of(t.b), t.mult)
        for t in family.terms()
    )
    return SymState(tuple(range(1, family.r + 1)), terms, (), Box(), {},
                    family.r)


def check_form_assumption(family: BFunctionFamily) -> bool:
    """Every non-unit-vector bracket satisfies e.gamma <= a (required by the
    multiplicity-one-at-minus-e argument)."""
    for t in family.terms():
        if not _is_unit(t.gamma):
            if sum(t.gamma) > t.a:
                return False
    return True


# -- reduction lemmas ---------------------------------------------------------

@dataclass
class ReducACert:
    tuple_sigs: tuple  # signatures of the distinct terms in the tuple
    u: tuple  # rational multipliers, same order


def _gamma_sets(state: SymState):
    gamma_terms = [t for t in state.terms if not _is_unit(t.gamma)]
    per_var = {
        i: [t for t in gamma_terms if t.gamma[i] > 0]
        for i in range(len(state.vars))
    }
    return gamma_terms, per_var


def _reduc_a_tuple_cert(state: SymState, terms):
    """u >= 0 with sum u*gamma = e and (conservatively)
    sum u*(a+1) - sum(fixed) > r_global; None if infeasible."""
    rcur = len(state.vars)
    k = len(terms)
    mins = []
    for t in terms:
        mn = state.box.min_of(t.a)
        if mn is None:
            return None
        mins.append(mn + 1)
    min_k = state.box.min_of(state.k_total())
    if min_k is None:
        return None
    rhs = Fraction(state.r_global) - min_k
    cons = []
    for d in range(rcur):
        cons.append(([Fraction(t.gamma[d]) for t in terms], "=", 1))
    for i in range(k):
        coeffs = [Fraction(0)] * k
        coeffs[i] = Fraction(-1)
        cons.append((coeffs, "<=", 0))
    cons.append(([-Fraction(w) for w in mins], "<", -rhs))
    res = solve(cons, k)
    if not res.feasible:
        return None
    return ReducACert(tuple(t.signature() for t in terms), tuple(res.point))


def reduc_a(state: SymState, positions):
    """Lemma (a) for the index set I given by active positions: a
    certificate for every tuple in the product of the Gamma_i, plus the
    concrete unit split offsets per position.  Returns (certs, splits) or
    None (with the failing tuple recorded as None.certs ... callers get
    (None, failing_terms))."""
    _, per_var = _gamma_sets(state)
    splits = {}
    for i in positions:
        offsets = set()
        for t in state.terms:
            if _is_unit(t.gamma) and t.gamma[i] == 1:
                if not (t.a.is_const() and t.b.is_const()):
                    return None, ("symbolic-unit-interval", state.vars[i])
                a, b = int(t.a.const), int(t.b.const)
                offsets.update(range(a + 1, b + 1))
        splits[i] = sorted(offsets)
    certs = []
    pools = [per_var[i] for i in positions]
    if any(pools) and all(pools):
        for combo in itertools.product(*pools):
            distinct = []
            for t in combo:
                if t not in distinct:
                    distinct.append(t)
            cert = _reduc_a_tuple_cert(state, distinct)
            if cert is None:
                return None, ("no-certificate", tuple(t.signature() for t in distinct))
            certs.append(cert)
    elif any(pools):
        # some Gamma_i empty: vacuously certified (no tuples)
        certs = []
    return (certs, splits), None


@dataclass
class ReducBData:
    j_set: tuple  # active positions in J
    j_plus: tuple
    j_minus: tuple
    farkas: tuple  # separating functional proving e not in E_J
    memberships: dict  # position -> (lambdas, mus, sign)


def reduc_b(state: SymState):
    """Lemma (b): maximal J with e outside cone(Gamma) + span(e^J), then the
    partition of the complement.  None when e is already in the cone."""
    rcur = len(state.vars)
    gamma_terms, _ = _gamma_sets(state)
    gammas = sorted({t.gamma for t in gamma_terms})
    e = (1,) * rcur

    def unit(i):
        return tuple(1 if d == i else 0 for d in range(rcur))

    if cone_membership(e, gammas) is not None:
        return None
    j_set = []
    for i in range(rcur):
        lines = [unit(j) for j in j_set] + [unit(i)]
        if cone_membership(e, gammas, lines) is None:
            j_set.append(i)
    lines = [unit(j) for j in j_set]
    farkas = separating_functional(e, gammas, lines)
    assert farkas is not None
    jc = [i for i in range(rcur) if i not in j_set]
    j_plus, j_minus, members = [], [], {}
    for i in jc:
        mp = cone_membership(e, gammas + [unit(i)], lines)
        mm = cone_membership(e, gammas + [tuple(-x for x in unit(i))], lines)
        # e outside E_J makes the two memberships exclusive (convexity)
        if mp is not None and mm is not None:
            raise AssertionError("J_plus and J_minus overlap; e in E_J?")
        if mp is not None:
            j_plus.append(i)
            members[i] = (mp[0], mp[1], +1)
        elif mm is not None:
            j_minus.append(i)
            members[i] = (mm[0], mm[1], -1)
        else:
            raise AssertionError("J not maximal: complement index in neither cone")
    return ReducBData(tuple(j_set), tuple(j_plus), tuple(j_minus),
                      tuple(farkas), members)


# -- case-split certification -------------------------------------------------

@dataclass
class CertNode:
    rule: str
    data: dict = field(default_factory=dict)
    branches: list = field(default_factory=list)  # (assumption dict, CertNode)


@dataclass
class CertifyOutcome:
    kind: str  # "certificate" | "refuted" | "inconclusive"
    certificate: CertNode | None = None
    witness: tuple | None = None
    reason: str = ""


def _leaf_empty_generator(state: SymState):
    """A generator that provably cannot vanish under the branch assumptions:
    for some active i, either no bracket involves s_i at all (b_{e^i} = 1),
    or every bracket involving s_i is a plain unit bracket with nonnegative
    lower endpoint while z_i is known not to be a negative integer."""
    for pos, var in enumerate(state.vars):
        touching = [t for t in state.terms if t.gamma[pos] > 0]
        if not touching:
            return CertNode("leaf_empty_generator",
                            {"var": var, "mode": "no-terms"})
        if "not_neg_int" not in state.flags.get(var, frozenset()):
            continue
        ok = True
        for t in touching:
            if t.gamma != tuple(1 if d == pos else 0
                                for d in range(len(state.vars))):
                ok = False
                break
            mn = state.box.min_of(t.a)
            if mn is None or mn < 0:
                ok = False
                break
        if ok:
            return CertNode("leaf_empty_generator",
                            {"var": var, "mode": "units-positive",
                             "terms": [t.signature() for t in touching]})
    return None


def _leaf_last_var(state: SymState):
    """r' = 1: every root of the single generator must be good."""
    if len(state.vars) != 1:
        return None
    if not state.terms:
        return CertNode("leaf_empty_generator",
                        {"var": state.vars[0], "mode": "no-terms"})
    k_total = state.k_total()
    r = state.r_global
    bounds = []
    for t in state.terms:
        g = t.gamma[0]
        expr = k_total + (t.a + 1) / g
        mu = state.box.min_of(expr)
        if mu is None or mu < r:
            return None
        if mu == r:
            lo = state.box.min_of((t.a + 1) / g)
            if not (state.clean and lo is not None and lo >= 1):
                return None
        bounds.append((t.signature(), str(mu)))
    return CertNode("leaf_last_var", {"bounds": bounds})


def _assumption_json(var, kind, value, symbol=None):
    out = {"var": var, "kind": kind, "value": aff_to_json(Affine.of(value))}
    if symbol:
        out["symbol"] = symbol
    return out


class _Refuted(Exception):
    def __init__(self, z):
        self.z = z


def _leaf_all_fixed(state: SymState):
    """Every variable specialized.  A clean branch (all values negative
    integers) is automatically good: the r fixed values are each <= -1, so
    e.z <= -r with equality only at z = -e.  A dirty branch needs the
    strict total bound."""
    if state.vars:
        return None
    s_total = Affine.of(0)
    for _, v, _ in state.fixed:
        s_total = s_total + v
    if state.clean:
        return CertNode("leaf_all_fixed", {"mode": "clean"})
    mx = state.box.max_of(s_total)
    if mx is not None and mx < -state.r_global:
        return CertNode("leaf_all_fixed", {"mode": "strict", "max": str(mx)})
    return None


def _certify(state: SymState, depth, depth_bound, counter):
    if depth > depth_bound:
        return None
    leaf = _leaf_all_fixed(state)
    if leaf is not None:
        return leaf
    leaf = _leaf_empty_generator(state)
    if leaf is not None:
        return leaf
    leaf = _leaf_last_var(state)
    if leaf is not None:
        return leaf
    rcur = len(state.vars)

    # reduc (a): try index sets small-first; commit to the first that closes
    for size in range(1, rcur + 1):
        for positions in itertools.combinations(range(rcur), size):
            got, _fail = reduc_a(state, positions)
            if got is None:
                continue
            certs, splits = got
            if not any(splits[i] for i in positions) and not certs:
                continue  # nothing to say
            node = CertNode("reduc_a", {
                "I": [state.vars[i] for i in positions],
                "certs": [{"tuple": list(c.tuple_sigs),
                           "u": [str(x) for x in c.u]} for c in certs],
            })
            ok = True
            for i in positions:
                for o in splits[i]:
                    sub, scalars = state.specialize(i, Affine.of(-o), o >= 1)
                    child = _certify(sub, depth + 1, depth_bound, counter)
                    if child is None:
                        ok = False
                        break
                    assume = _assumption_json(state.vars[i], "neg_int", -o)
                    assume["scalars"] = [
                        (aff_to_json(a), aff_to_json(b), m) for a, b, m in scalars]
                    node.branches.append((assume, child))
                if not ok:
                    break
            if ok:
                return node

    # reduc (b)
    rb = reduc_b(state)
    if rb is not None:
        node = CertNode("reduc_b", {
            "J": [state.vars[i] for i in rb.j_set],
            "Jplus": [state.vars[i] for i in rb.j_plus],
            "Jminus": [state.vars[i] for i in rb.j_minus],
            "farkas": [str(x) for x in rb.farkas],
            "memberships": {
                str(state.vars[i]): {
                    "lambdas": [str(x) for x in lm],
                    "mus": [str(x) for x in mu],
                    "sign": sg,
                } for i, (lm, mu, sg) in rb.memberships.items()
            },
        })
        ordered = [(i, "neg") for i in rb.j_plus] + [(i, "nat") for i in rb.j_minus]
        prior = []
        ok = True
        for i, sign in ordered:
            counter[0] += 1
            sym = f"k{counter[0]}"
            st = state
            negs = []
            for pv, psign in prior:
                flag = "not_neg_int" if psign == "neg" else "not_nat"
                st = st.with_flag(pv, flag)
                negs.append({"var": pv, "flag": flag})
            pos = st.vars.index(state.vars[i])
            if sign == "neg":
                box = st.box.with_symbol(sym, 1)
                st = st.with_box(box)
                sub, scalars = st.specialize(pos, -Affine.sym(sym), True)
                assume = _assumption_json(state.vars[i], "neg_int_sym",
                                          -Affine.sym(sym), sym)
            else:
                box = st.box.with_symbol(sym, 0)
                st = st.with_box(box)
                sub, scalars = st.specialize(pos, Affine.sym(sym), False)
                assume = _assumption_json(state.vars[i], "nat_sym",
                                          Affine.sym(sym), sym)
            assume["negations"] = negs
            assume["scalars"] = [
                (aff_to_json(a), aff_to_json(b), m) for a, b, m in scalars]
            child = _certify(sub, depth + 1, depth_bound, counter)
            if child is None:
                ok = False
                break
            node.branches.append((assume, child))
            prior.append((state.vars[i], sign))
        if ok:
            return node
    return None


def _refutation_candidates(family: BFunctionFamily, bound):
    """Intersections of pairs of independent linear forms gamma.z = -v with
    integer v in a box; deterministic order."""
    gammas = sorted({g for (g, _o) in family.offsets})
    for i in range(family.r):
        gammas.append(tuple(1 if d == i else 0 for d in range(family.r)))
    gammas = sorted(set(gammas))
    cands = []
    for g1, g2 in itertools.combinations(gammas, 2):
        det = g1[0] * g2[1] - g1[1] * g2[0]
        if det == 0:
            continue
        for v1 in range(-bound, bound + 1):
            for v2 in range(-bound, bound + 1):
                z1 = Fraction(-v1 * g2[1] + v2 * g1[1], det)
                z2 = Fraction(-v2 * g1[0] + v1 * g2[0], det)
                cands.append((abs(v1) + abs(v2), (z1, z2)))
    cands.sort(key=lambda t: (t[0], t[1]))
    seen = set()
    for _, z in cands:
        if z not in seen:
            seen.add(z)
            yield z


def certify_all_good(family: BFunctionFamily, depth_bound=16,
                     refute_bound=30) -> CertifyOutcome:
    """Prove every element of Z(B~) is good, or exhibit a bad member.

    Alternates the reduction lemmas with integer case splits; a sound
    certificate tree is returned on success.  On failure at r = 2 the
    exact membership test scans candidate intersection points for an
    explicit bad element of Z(B~).
    """
    state = sym_state_from_family(family)
    counter = [0]
    node = _certify(state, 0, depth_bound, counter)
    if node is not None:
        return CertifyOutcome("certificate", certificate=node)
    if family.r == 2:
        for z in _refutation_candidates(family, refute_bound):
            if is_good(z, family.r):
                continue
            if membership_in_ztilde(family, z).kind == "member":
                return CertifyOutcome("refuted", witness=tuple(z))
    return CertifyOutcome("inconclusive",
                          reason="case analysis exhausted without closing")


# -- independent certificate verification -------------------------------------

class CertificateError(Exception):
    pass


def _reconstruct_child(state: SymState, assume):
    var = assume["var"]
    if var not in state.vars:
        raise CertificateError(f"assumption on inactive variable {var}")
    st = state
    for neg in assume.get("negations", []):
        if neg["var"] not in st.vars:
            raise CertificateError("negation flag on inactive variable")
        st = st.with_flag(neg["var"], neg["flag"])
    kind = assume["kind"]
    value = aff_from_json(assume["value"])
    if kind == "neg_int":
        if not value.is_const() or value.const >= 0:
            raise CertificateError("neg_int assumption with nonnegative value")
        clean = True
    elif kind == "neg_int_sym":
        sym = assume["symbol"]
        st = st.with_box(st.box.with_symbol(sym, 1))
        clean = True
    elif kind == "nat_sym":
        sym = assume["symbol"]
        st = st.with_box(st.box.with_symbol(sym, 0))
        clean = False
    else:
        raise CertificateError(f"unknown assumption kind {kind}")
    pos = st.vars.index(var)
    sub, _scalars = st.specialize(pos, value, clean)
    return sub


def _check_node(state: SymState, node) -> None:
    rule = node["rule"] if isinstance(node, dict) else node.rule
    data = node["data"] if isinstance(node, dict) else node.data
    branches = node["branches"] if isinstance(node, dict) else node.branches
    rcur = len(state.vars)
    e = (1,) * rcur

    if rule == "leaf_all_fixed":
        if state.vars:
            raise CertificateError("leaf_all_fixed with active variables")
        if data["mode"] == "clean":
            if not state.clean:
                raise CertificateError("clean leaf on a dirty branch")
        else:
            s_total = Affine.of(0)
            for _, v, _ in state.fixed:
                s_total = s_total + v
            mx = state.box.max_of(s_total)
            if mx is None or mx >= -state.r_global:
                raise CertificateError("strict total bound fails")
        return

    if rule == "leaf_empty_generator":
        var = data["var"]
        if var not in state.vars:
            raise CertificateError("empty-generator leaf on inactive variable")
        pos = state.vars.index(var)
        touching = [t for t in state.terms if t.gamma[pos] > 0]
        if data["mode"] == "no-terms":
            if touching:
                raise CertificateError("generator is not empty")
            return
        if data["mode"] == "units-positive":
            if "not_neg_int" not in state.flags.get(var, frozenset()):
                raise CertificateError("missing not_neg_int flag")
            unit = tuple(1 if d == pos else 0 for d in range(rcur))
            for t in touching:
                if t.gamma != unit:
                    raise CertificateError("non-unit bracket touches the variable")
                mn = state.box.min_of(t.a)
                if mn is None or mn < 0:
                    raise CertificateError("unit bracket with negative endpoint")
            return
        raise CertificateError(f"unknown leaf mode {data['mode']}")

    if rule == "leaf_last_var":
        if rcur != 1:
            raise CertificateError("last-var leaf with several variables")
        if not state.terms:
            raise CertificateError("last-var leaf should be an empty generator")
        k_total = state.k_total()
        r = state.r_global
        for t in state.terms:
            g = t.gamma[0]
            mu = state.box.min_of(k_total + (t.a + 1) / g)
            if mu is None or mu < r:
                raise CertificateError("root can be worse than -r")
            if mu == r:
                lo = state.box.min_of((t.a + 1) / g)
                if not (state.clean and lo is not None and lo >= 1):
                    raise CertificateError("equality case without clean all-ones")
        return

    if rule == "reduc_a":
        ivars = data["I"]
        positions = []
        for v in ivars:
            if v not in state.vars:
                raise CertificateError("reduc_a on inactive variable")
            positions.append(state.vars.index(v))
        _, per_var = _gamma_sets(state)
        pools = [per_var[i] for i in positions]
        stored = {}
        for c in data["certs"]:
            key = tuple(sorted(c["tuple"]))
            stored[key] = (list(c["tuple"]), [Fraction(x) for x in c["u"]])
        min_k = state.box.min_of(state.k_total())
        if min_k is None:
            raise CertificateError("unbounded K in reduc_a")
        if all(pools):
            for combo in itertools.product(*pools):
                distinct = []
                for t in combo:
                    if t not in distinct:
                        distinct.append(t)
                key = tuple(sorted(t.signature() for t in distinct))
                if key not in stored:
                    raise CertificateError("missing LP certificate for a tuple")
                sig_order, u = stored[key]
                by_sig = {t.signature(): t for t in distinct}
                distinct = [by_sig[s] for s in sig_order]
                if len(u) != len(distinct) or any(x < 0 for x in u):
                    raise CertificateError("bad multipliers")
                for d in range(rcur):
                    if sum(ux * t.gamma[d] for ux, t in zip(u, distinct)) != 1:
                        raise CertificateError("multipliers do not combine to e")
                total = Fraction(0)
                for ux, t in zip(u, distinct):
                    mn = state.box.min_of(t.a)
                    if mn is None:
                        raise CertificateError("unbounded bracket endpoint")
                    total += ux * (mn + 1)
                if not total + min_k > state.r_global:
                    raise CertificateError("certificate bound not above r")
        # branch coverage: every unit offset of every I-variable
        expected = []
        for i, v in zip(positions, ivars):
            offsets = set()
            for t in state.terms:
                if _is_unit(t.gamma) and t.gamma[i] == 1:
                    if not (t.a.is_const() and t.b.is_const()):
                        raise CertificateError("symbolic unit interval in reduc_a")
                    offsets.update(range(int(t.a.const) + 1, int(t.b.const) + 1))
            expected.extend((v, -o) for o in sorted(offsets))
        got = [(a["var"], int(aff_from_json(a["value"]).const))
               for a, _ in branches]
        if got != expected:
            raise CertificateError("reduc_a branches do not cover the unit roots")
        for assume, child in branches:
            _check_node(_reconstruct_child(state, assume), child)
        return

    if rule == "reduc_b":
        gamma_terms, _ = _gamma_sets(state)
        gammas = sorted({t.gamma for t in gamma_terms})
        jvars = data["J"]
        jpos = []
        for v in jvars:
            if v not in state.vars:
                raise CertificateError("reduc_b J contains inactive variable")
            jpos.append(state.vars.index(v))
        y = [Fraction(x) for x in data["farkas"]]
        if len(y) != rcur:
            raise CertificateError("farkas length mismatch")
        for g in gammas:
            if sum(a * b for a, b in zip(y, g)) > 0:
                raise CertificateError("farkas does not separate a gamma")
        for p in jpos:
            if y[p] != 0:
                raise CertificateError("farkas not orthogonal to J")
        if sum(y) <= 0:
            raise CertificateError("farkas does not separate e")
        jplus, jminus = data["Jplus"], data["Jminus"]
        comp = [v for v in state.vars if v not in jvars]
        if sorted(jplus + jminus) != sorted(comp) or set(jplus) & set(jminus):
            raise CertificateError("J_plus/J_minus is not a partition")
        for v in comp:
            ms = data["memberships"][str(v)]
            lambdas = [Fraction(x) for x in ms["lambdas"]]
            mus = [Fraction(x) for x in ms["mus"]]
            sign = ms["sign"]
            if (sign > 0) != (v in jplus):
                raise CertificateError("membership sign inconsistent")
            if any(x < 0 for x in lambdas):
                raise CertificateError("negative cone multiplier")
            p = state.vars.index(v)
            gens = list(gammas) + [tuple((1 if d == p else 0) * sign
                                         for d in range(rcur))]
            if len(lambdas) != len(gens) or len(mus) != len(jpos):
                raise CertificateError("membership certificate shape")
            for d in range(rcur):
                total = sum(l * g[d] for l, g in zip(lambdas, gens))
                total += sum(m for m, jp in zip(mus, jpos) if jp == d)
                if total != 1:
                    raise CertificateError("membership does not combine to e")
        expected = [(v, "neg_int_sym") for v in jplus] + \
                   [(v, "nat_sym") for v in jminus]
        got = [(a["var"], a["kind"]) for a, _ in branches]
        if got != expected:
            raise CertificateError("reduc_b branches out of order")
        prior = []
        for assume, child in branches:
            want = [{"var": pv, "flag": pf} for pv, pf in prior]
            if assume.get("negations", []) != want:
                raise CertificateError("negation flags inconsistent")
            _check_node(_reconstruct_child(state, assume), child)
            prior.append((assume["var"],
                          "not_neg_int" if assume["kind"] == "neg_int_sym"
                          else "not_nat"))
        return

    raise CertificateError(f"unknown rule {rule}")


def verify_certificate(family: BFunctionFamily, cert) -> tuple:
    """Re-verify a goodness certificate against the family from scratch.
    Returns (ok, message)."""
    try:
        _check_node(sym_state_from_family(family), cert)
        return True, "certificate verified"
    except CertificateError as exc:
        return False, str(exc)


def cert_to_json(node: CertNode):
    return {
        "rule": node.rule,
        "data": node.data,
        "branches": [[assume, cert_to_json(child)]
                     for assume, child in node.branches],
    }


def cert_from_json(d):
    return {
        "rule": d["rule"],
        "data": d["data"],
        "branches": [(assume, cert_from_json(child))
                     for assume, child in d["branches"]],
    }


# -- rational singularities verdict -------------------------------------------

@dataclass
class Verdict:
    kind: str  # "rational_singularities" | "not_certified" | "not_applicable"
    reason: str = ""
    certificate: CertNode | None = None
    witness: tuple | None = None
    family: BFunctionFamily | None = None
    largest_root: Fraction | None = None
    largest_root_mult: int | None = None
    reducedness: object = None


def single_variable_roots(family: BFunctionFamily):
    """Roots of the expanded one-variable b-function at m = (1), with
    multiplicities, sorted descending."""
    assert family.r == 1
    roots = {}
    for (g, const), cnt in expand(family, (1,)).items():
        root = Fraction(-const, g[0])
        roots[root] = roots.get(root, 0) + cnt
    return sorted(roots.items(), reverse=True)


def rational_singularities_verdict(q, alpha, selected=None, depth_bound=16,
                                   refute_bound=30) -> Verdict:
    """Decision pipeline for rational singularities of the zero set of the
    selected fundamental semi-invariants.

    r = 1 (hypersurface): decided directly from the single-variable
    b-function (largest root -1 with multiplicity one).  r >= 2: the zero
    set must be a reduced set-theoretic complete intersection; then the
    good-root certification route applies, with the bracket-form condition
    e.gamma <= a required for the multiplicity-one argument at -e.
    """
    from .brackets import compute_bfunction
    from .orbits import components, is_set_theoretic_ci, make_spec, \
        reducedness_report

    spec = make_spec(q, alpha, selected)
    fam = compute_bfunction(q, spec.alpha, spec.selected_simples)
    r = len(spec.selected)

    if r == 1:
        roots = single_variable_roots(fam)
        if not roots:
            return Verdict("not_applicable", reason="constant b-function",
                           family=fam)
        top, mult = roots[0]
        v = Verdict("rational_singularities" if (top == -1 and mult == 1)
                    else "not_certified",
                    family=fam, largest_root=top, largest_root_mult=mult)
        if v.kind == "not_certified":
            v.reason = f"largest root {top} (multiplicity {mult}) is not -1 simple"
        return v

    # the bracket form condition is cheap and already blocks certification,
    # so it is checked before the expensive orbit geometry
    if not check_form_assumption(fam):
        v = Verdict("not_certified", family=fam,
                    reason="bracket form condition e.gamma <= a fails")
        if fam.r == 2:
            for z in _refutation_candidates(fam, refute_bound):
                if is_good(z, fam.r):
                    continue
                if membership_in_ztilde(fam, z).kind == "member":
                    v.witness = tuple(z)
                    break
        return v

    comps = components(spec)
    if not is_set_theoretic_ci(spec, comps):
        return Verdict("not_applicable", family=fam,
                       reason="zero set is not a set-theoretic complete intersection")
    red = reducedness_report(spec, comps)
    if red.verdict != "reduced":
        return Verdict("not_applicable", family=fam, reducedness=red,
                       reason=f"reducedness verdict: {red.verdict} ({red.reason})")

    out = certify_all_good(fam, depth_bound=depth_bound,
                           refute_bound=refute_bound)
    if out.kind == "certificate":
        return Verdict("rational_singularities", family=fam, reducedness=red,
                       certificate=out.certificate)
    if out.kind == "refuted":
        return Verdict("not_certified", family=fam, reducedness=red,
                       witness=out.witness,
                       reason="explicit bad element of Z(B~)")
    return Verdict("not_certified", family=fam, reducedness=red,
                   reason=out.reason)
