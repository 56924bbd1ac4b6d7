"""Symbolic bracket algebra and the multi-variable b-function of selected
semi-invariants, computed by iterating the Coxeter reflection formula.

A bracket [s]^gamma_{a,b} stands for prod_{i=a+1}^{b} prod_{j=0}^{d-1}
(gamma.s + i + j) with inner depth d = gamma.m for the multiplicity tuple m
supplied at expansion time.  Families are stored as integer multiplicities
on single offsets (gamma, i), i in a+1..b, which makes the telescoping
cancellations of the reflection recursion exact multiset arithmetic; the
(gamma, a, b, mult) bracket form is recovered by maximal-run grouping.

The recursion driver: state (alpha, beta^1..beta^r) with beta^j the
dimension vectors of the Auslander-Reiten translates of the selected
perpendicular simples.  One step emits, at every vertex x supported by a
live slot, the offsets between c(alpha)_x and alpha_x keyed by the vector
of live beta-coordinates at x, then replaces alpha by c(alpha) and each
live beta^j by c(beta^j).  A slot whose translate leaves N^n (its object
became projective) contributes its classical determinantal factors in its
final step and then drops out; the run ends when every slot is dead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import (Quiver, coxeter, coxeter_apply, euler_form,
                     reflect_dim, require_dynkin)


class TerminalRuleInapplicable(Exception):
    """The recursion reached a state it cannot handle soundly."""


class PreconditionFailed(Exception):
    """A reflection step cannot be applied to the given state."""


class _Blocked(Exception):
    """Internal: the Coxeter step would need a negative endpoint at a
    supported vertex; the driver switches to the terminal rule."""


@dataclass(frozen=True)
class BracketTerm:
    gamma: tuple  # length-r nonnegative integers
    a: int
    b: int  # a <= b; empty product when a == b or gamma == 0
    mult: int = 1


@dataclass
class BFunctionFamily:
    """Multiset of bracket factors over r semi-invariant variables.

    ``offsets`` maps (gamma, i) to an integer multiplicity; the bracket
    [s]^gamma_{a,b} contributes +1 at offsets i = a+1..b.
    """

    r: int
    offsets: dict
    meta: dict = field(default_factory=dict)

    def terms(self):
        """Canonical bracket presentation: maximal runs of equal multiplicity,
        peeled layer by layer; deterministic."""
        by_gamma = {}
        for (g, i), m in sorted(self.offsets.items()):
            if m:
                by_gamma.setdefault(g, {})[i] = m
        out = []
        for g in sorted(by_gamma):
            counts = dict(by_gamma[g])
            if any(m < 0 for m in counts.values()):
                raise ValueError("family has negative offset multiplicities")
            while counts:
                run_start = None
                prev = None
                emitted = []
                for i in sorted(counts):
                    if run_start is None:
                        run_start = prev = i
                    elif i == prev + 1:
                        prev = i
                    else:
                        emitted.append((run_start, prev))
                        run_start = prev = i
                emitted.append((run_start, prev))
                for lo, hi in emitted:
                    mult = min(counts[i] for i in range(lo, hi + 1))
                    out.append(BracketTerm(g, lo - 1, hi, mult))
                    for i in range(lo, hi + 1):
                        counts[i] -= mult
                        if not counts[i]:
                            del counts[i]
        return out

    def term_multiset(self):
        return sorted((t.gamma, t.a, t.b, t.mult) for t in self.terms())

    def copy(self):
        return BFunctionFamily(self.r, dict(self.offsets), dict(self.meta))


def family_from_terms(r, terms, meta=None) -> BFunctionFamily:
    offs = {}
    for t in terms:
        g = tuple(t.gamma)
        assert len(g) == r and all(c >= 0 for c in g)
        assert t.a <= t.b
        if not any(g):
            continue
        for i in range(t.a + 1, t.b + 1):
            offs[(g, i)] = offs.get((g, i), 0) + t.mult
    return BFunctionFamily(r, offs, meta or {})


def expand(family: BFunctionFamily, m):
    """Multiset of linear forms (gamma, const) at multiplicity tuple m."""
    assert len(m) == family.r and all(x >= 0 for x in m)
    forms = {}
    for (g, i), cnt in family.offsets.items():
        if cnt == 0:
            continue
        d = sum(gi * mi for gi, mi in zip(g, m))
        for j in range(d):
            key = (g, i + j)
            forms[key] = forms.get(key, 0) + cnt
    return {k: v for k, v in forms.items() if v}


def evaluate(family: BFunctionFamily, m, z):
    """Exact rational value of b_m at the point z."""
    val = Fraction(1)
    for (g, c), cnt in expand(family, m).items():
        lin = sum(Fraction(gi) * Fraction(zi) for gi, zi in zip(g, z)) + c
        val *= lin ** cnt
    return val


def bracket_identity_check(d, a, b, mults=((1,), (2,), (3,))) -> bool:
    """[s]^d_{a,b} * [s]^d_{0,a} == [s]^d_{0,b} as multisets of linear forms,
    checked by expansion at several multiplicity tuples."""
    if isinstance(d, int):
        d = (d,)
    r = len(d)
    assert 0 <= a <= b
    left = family_from_terms(r, [BracketTerm(tuple(d), a, b), BracketTerm(tuple(d), 0, a)])
    right = family_from_terms(r, [BracketTerm(tuple(d), 0, b)])
    for m in mults:
        mm = tuple(m) if len(m) == r else tuple(list(m) * r)[:r]
        if expand(left, mm) != expand(right, mm):
            return False
    return True


def specialize(family: BFunctionFamily, i, value):
    """Evaluate s_i = value (integer).  Returns (family over r-1 variables,
    scalar constraints).  A term with gamma_i > 0 keeps its other
    coordinates and shifts its offsets by gamma_i * value; a term whose
    gamma becomes zero turns into the scalar factors (gamma_i*value + o)
    which are recorded, not discarded."""
    assert 1 <= i <= family.r
    offs = {}
    scalars = []
    for (g, o), cnt in family.offsets.items():
        if cnt == 0:
            continue
        gi = g[i - 1]
        g2 = g[: i - 1] + g[i:]
        if gi == 0:
            offs[(g2, o)] = offs.get((g2, o), 0) + cnt
            continue
        if any(g2):
            key = (g2, o + gi * value)
            offs[key] = offs.get(key, 0) + cnt
        else:
            scalars.append((gi * value + o, cnt))
    meta = dict(family.meta)
    meta.setdefault("specialized", []).append((i, value))
    fam = BFunctionFamily(family.r - 1, offs, meta)
    return fam, sorted(scalars)


def render_term(t: BracketTerm) -> str:
    g = "".join(str(c) for c in t.gamma)
    rng = f"{t.b}" if t.a == 0 else f"{t.a},{t.b}"
    body = f"[s]^{{{g}}}_{{{rng}}}"
    return body if t.mult == 1 else f"({body})^{t.mult}"

def render_family(family: BFunctionFamily) -> str:
    ts = family.terms()
    return " * ".join(render_term(t) for t in ts) if ts else "1"


# -- the reflection recursion -------------------------------------------------

@dataclass
class ReflectionState:
    quiver: Quiver
    alpha: tuple
    betas: list  # per slot: dimension vector, or None once the slot is dead
    offsets: dict
    steps: int = 0

    def live(self):
        return [j for j, b in enumerate(self.betas) if b is not None]


def _inverse_coxeter(q: Quiver):
    from .exactmat import Mat, inverse
    cox = coxeter(q).coxeter_matrix
    inv = inverse(Mat(q.n, q.n, [list(r) for r in cox]))
    return tuple(tuple(int(x) for x in row) for row in inv.rows)


def reflection_step(state: ReflectionState, direction=+1) -> ReflectionState:
    """One application of the Coxeter reflection formula.

    Forward (direction +1): emits, at each vertex x supported by a live
    slot, the bracket offsets between c(alpha)_x and alpha_x keyed by the
    vector of live beta-coordinates at x (negative-direction ranges subtract
    and cancel by telescoping); then advances alpha and the live translates,
    dropping slots whose translate leaves N^n (projectives).

    Backward (direction -1): the same identity read toward c^{-1}(alpha);
    the emitted gammas use the advanced translates, and a slot dies before
    contributing when its inverse translate leaves N^n (injectives).

    Raises PreconditionFailed when no slot is live, and _Blocked when a
    supported vertex would need a negative bracket endpoint.
    """
    live = state.live()
    if not live:
        raise PreconditionFailed("all slots are dead")
    q = state.quiver
    r = len(state.betas)
    cox = coxeter(q).coxeter_matrix if direction > 0 else _inverse_coxeter(q)
    alpha2 = coxeter_apply(cox, state.alpha)
    betas2 = []
    for b in state.betas:
        if b is None:
            betas2.append(None)
            continue
        nb = coxeter_apply(cox, b)
        betas2.append(nb if all(c >= 0 for c in nb) else None)
    # forward: gammas from the current translates; backward: from the next
    gamma_src = state.betas if direction > 0 else betas2
    offs = dict(state.offsets)
    for x in range(q.n):
        gamma = tuple(
            (gamma_src[j][x] if gamma_src[j] is not None and
             state.betas[j] is not None else 0)
            for j in range(r)
        )
        if not any(gamma):
            continue
        lo, hi = alpha2[x], state.alpha[x]
        sign = 1
        if lo > hi:
            lo, hi = hi, lo
            sign = -1
        if lo < 0:
            raise _Blocked(
                f"negative bracket endpoint at vertex {x + 1}: "
                f"alpha={state.alpha}, next alpha={alpha2}"
            )
        for i in range(lo + 1, hi + 1):
            key = (gamma, i)
            offs[key] = offs.get(key, 0) + sign
            if not offs[key]:
                del offs[key]
    return ReflectionState(q, alpha2, betas2, offs, state.steps + 1)


def _terminal_cleanup(state: ReflectionState) -> ReflectionState:
    """The Coxeter chain is blocked but slots survive.

    A surviving slot whose object is the simple at a vertex x contributes the
    classical determinantal factor [s]^{e^j}_{0, alpha_x} (its semi-invariant
    is the determinant of a generic alpha_x by alpha_x concatenation of arrow
    blocks).  A surviving non-simple slot is walked down to a simple with
    sink reflections, which transform alpha and the live slots but contribute
    no brackets.
    """
    q = state.quiver
    alpha = list(state.alpha)
    betas = list(state.betas)
    offs = dict(state.offsets)
    r = len(betas)
    guard = 0
    while any(b is not None for b in betas):
        for j in range(r):
            b = betas[j]
            if b is None or sum(b) != 1:
                continue
            x = b.index(1)
            if alpha[x] < 0:
                raise TerminalRuleInapplicable(
                    f"classical factor with negative size at vertex {x + 1}")
            if euler_form(q, tuple(alpha), b) != 0:
                raise TerminalRuleInapplicable(
                    "classical factor is not a square determinant")
            gamma = tuple(1 if t == j else 0 for t in range(r))
            for i in range(1, alpha[x] + 1):
                offs[(gamma, i)] = offs.get((gamma, i), 0) + 1
            betas[j] = None
        if not any(b is not None for b in betas):
            break
        # legal reflection: the generic representation must have no simple
        # summand at the reflected vertex (the new coordinate stays >= 0)
        legal = [x for x in q.sinks() + q.sources()
                 if reflect_dim(q, x, tuple(alpha))[x - 1] >= 0
                 and all(b is None or reflect_dim(q, x, b)[x - 1] >= 0
                         for b in betas)]
        if not legal:
            raise TerminalRuleInapplicable("no legal reflection available")
        # prefer the reflection that shrinks the surviving slots fastest
        def live_height(x):
            return sum(sum(reflect_dim(q, x, b)) for b in betas if b is not None)
        x = min(legal, key=lambda v: (live_height(v), v))
        alpha = list(reflect_dim(q, x, tuple(alpha)))
        for j in range(r):
            if betas[j] is not None:
                nb = reflect_dim(q, x, betas[j])
                if any(c < 0 for c in nb):
                    raise TerminalRuleInapplicable(
                        "sink reflection made a surviving slot negative")
                betas[j] = nb
        q = q.reflect(x)
        guard += 1
        if guard > 64 * q.n:
            raise TerminalRuleInapplicable("terminal reflections did not converge")
    return ReflectionState(q, tuple(alpha), betas, offs, state.steps)


def compute_bfunction(q: Quiver, alpha, simples) -> BFunctionFamily:
    """Multi-variable b-function of the semi-invariants attached to the given
    perpendicular simples on Rep(Q, alpha).

    Iterates reflection_step until every slot has died; termination is
    guaranteed on Dynkin quivers because each Coxeter orbit of a positive
    root leaves N^n within one Coxeter period.  If the chain blocks first
    (a supported vertex would need a negative endpoint), surviving slots are
    resolved by the terminal rule in ``_terminal_cleanup``.
    """
    require_dynkin(q)
    alpha = tuple(int(a) for a in alpha)
    simples = [tuple(s) for s in simples]
    # a slot whose matrix d^V_S is 0 x 0 is the constant semi-invariant 1;
    # it contributes no factors and drops out immediately
    betas = [
        s if sum(a * b for a, b in zip(alpha, s)) else None
        for s in simples
    ]
    bound = 8 * q.n * 32
    last_error = None
    for direction in (+1, -1):
        state = ReflectionState(q, alpha, list(betas), {})
        try:
            while state.live():
                try:
                    state = reflection_step(state, direction)
                except _Blocked:
                    state = _terminal_cleanup(state)
                    break
                if state.steps > bound:
                    raise TerminalRuleInapplicable(
                        "reflection recursion did not terminate")
            fam = BFunctionFamily(
                len(simples), state.offsets,
                {"quiver": q, "alpha": alpha, "simples": tuple(simples),
                 "steps": state.steps, "direction": direction})
            for (g, i), m in fam.offsets.items():
                if m < 0:
                    raise TerminalRuleInapplicable(
                        f"negative multiplicity survives at {(g, i)}")
                if i < 1:
                    raise TerminalRuleInapplicable(
                        f"nonpositive bracket constant at {(g, i)}")
            return fam
        except TerminalRuleInapplicable as exc:
            last_error = exc
    raise last_error
