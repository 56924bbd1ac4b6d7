"""Quivers, dimension vectors, Euler form, Coxeter transformation, type classification.

Vertices are 1..n. Dimension vectors are plain integer tuples of length n;
negative entries are allowed at the type level so Coxeter images can be
inspected for membership in N^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmat import Mat, inverse


class QuiverError(ValueError):
    pass


class NonDynkinError(QuiverError):
    """Raised when an operation requires a Dynkin quiver."""


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph without loops or oriented cycles."""

    n: int
    arrows: tuple  # tuple of (tail, head), 1-indexed

    def __post_init__(self):
        if self.n < 1:
            raise QuiverError("need at least one vertex")
        object.__setattr__(self, "arrows", tuple((int(t), int(h)) for t, h in self.arrows))
        for t, h in self.arrows:
            if not (1 <= t <= self.n and 1 <= h <= self.n):
                raise QuiverError(f"arrow ({t},{h}) references invalid vertex")
            if t == h:
                raise QuiverError(f"loop at vertex {t}")
        if self._has_cycle():
            raise QuiverError("quiver has an oriented cycle")

    def _has_cycle(self):
        indeg = [0] * (self.n + 1)
        out = {x: [] for x in range(1, self.n + 1)}
        for t, h in self.arrows:
            out[t].append(h)
            indeg[h] += 1
        stack = [x for x in range(1, self.n + 1) if indeg[x] == 0]
        seen = 0
        while stack:
            x = stack.pop()
            seen += 1
            for y in out[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    stack.append(y)
        return seen != self.n

    # -- basic structure ---------------------------------------------------

    def arrows_into(self, x):
        return [a for a in self.arrows if a[1] == x]

    def arrows_out_of(self, x):
        return [a for a in self.arrows if a[0] == x]

    def sinks(self):
        outs = {t for t, _ in self.arrows}
        return [x for x in range(1, self.n + 1) if x not in outs]

    def sources(self):
        ins = {h for _, h in self.arrows}
        return [x for x in range(1, self.n + 1) if x not in ins]

    def neighbors(self, x):
        """Neighbor multiset in the underlying graph."""
        out = []
        for t, h in self.arrows:
            if t == x:
                out.append(h)
            elif h == x:
                out.append(t)
        return out

    def reflect(self, x):
        """Reverse all arrows at x (valid new quiver when x is a sink or source)."""
        arr = tuple((h, t) if t == x or h == x else (t, h) for t, h in self.arrows)
        return Quiver(self.n, arr)

    def topological_order(self):
        indeg = [0] * (self.n + 1)
        out = {v: [] for v in range(1, self.n + 1)}
        for t, h in self.arrows:
            out[t].append(h)
            indeg[h] += 1
        order = []
        avail = sorted(x for x in range(1, self.n + 1) if indeg[x] == 0)
        while avail:
            x = avail.pop(0)
            order.append(x)
            for y in sorted(out[x]):
                indeg[y] -= 1
                if indeg[y] == 0:
                    avail.append(y)
            avail.sort()
        return order

    def admissible_sink_sequence(self):
        """Vertex order x1, x2, ... where x1 is a sink of Q, x2 of sigma_x1 Q, etc.

        This is the reverse topological order; cycling through it repeats the
        pattern (every vertex reflected once returns the orientation).
        """
        return list(reversed(self.topological_order()))

    def projective_dim(self, x):
        """Dimension vector of the indecomposable projective at x (path counts)."""
        counts = [0] * (self.n + 1)
        counts[x] = 1
        for v in self.topological_order():
            if counts[v]:
                for t, h in self.arrows:
                    if t == v:
                        counts[h] += counts[v]
        return tuple(counts[1:])


# -- dimension vector helpers ----------------------------------------------

def dv_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def dv_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def dv_scale(k, a):
    return tuple(k * x for x in a)


def dv_is_nonneg(a):
    return all(x >= 0 for x in a)


def simple_root(n, x):
    return tuple(1 if i == x else 0 for i in range(1, n + 1))


def reflect_dim(q: Quiver, x, v):
    """Simple reflection s_x on dimension vectors (underlying graph only)."""
    s = sum(v[y - 1] for y in q.neighbors(x))
    w = list(v)
    w[x - 1] = -v[x - 1] + s
    return tuple(w)


# -- Euler form and Coxeter transformation ----------------------------------

def euler_form(q: Quiver, a, b) -> int:
    """<a,b> = sum a_x b_x - sum over arrows a_{ta} b_{ha}."""
    if len(a) != q.n or len(b) != q.n:
        raise QuiverError("dimension vector length mismatch")
    val = sum(int(a[i]) * int(b[i]) for i in range(q.n))
    val -= sum(int(a[t - 1]) * int(b[h - 1]) for t, h in q.arrows)
    return val


def euler_matrix(q: Quiver):
    e = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        e[i][i] = 1
    for t, h in q.arrows:
        e[t - 1][h - 1] -= 1
    return tuple(tuple(r) for r in e)


def tits_form(q: Quiver, a) -> int:
    return euler_form(q, a, a)


@dataclass(frozen=True)
class EulerData:
    euler_matrix: tuple
    coxeter_matrix: tuple


def coxeter(q: Quiver) -> EulerData:
    """Exact integer Euler matrix E and Coxeter matrix c = -E^{-1} E^t."""
    e = euler_matrix(q)
    em = Mat(q.n, q.n, [list(r) for r in e])
    einv = inverse(em)  # acyclic => E unimodular, inverse is integral
    c = einv.mul(em.transpose())
    crows = []
    for i in range(q.n):
        row = []
        for j in range(q.n):
            v = -c.rows[i][j]
            assert v.denominator == 1
            row.append(int(v))
        crows.append(tuple(row))
    return EulerData(euler_matrix=e, coxeter_matrix=tuple(crows))


def coxeter_apply(cox, v):
    return tuple(sum(cox[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


# -- classification of the underlying graph ---------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str  # "dynkin" | "extended" | "wild"
    letter: str | None = None  # "A" | "D" | "E"
    rank: int | None = None

    @property
    def is_dynkin(self):
        return self.kind == "dynkin"


WILD = Classification("wild")


def _branch_lengths(adj, center):
    """Arm lengths of a tree from a branching vertex (center has degree >= 3)."""
    lengths = []
    for start in adj[center]:
        ln = 1
        prev, cur = center, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None  # second branch point on this arm
            prev, cur = cur, nxt[0]
            ln += 1
        lengths.append(ln)
    return sorted(lengths)


def classify(q: Quiver) -> Classification:
    """Classify the underlying undirected graph of a connected quiver.

    Returns Dynkin(A/D/E, rank), ExtendedDynkin(A/D/E, rank) or Wild.
    Disconnected quivers are reported as wild (the analysis pipeline always
    works with connected quivers).
    """
    n = q.n
    edges = [(min(t, h), max(t, h)) for t, h in q.arrows]
    adj = {x: [] for x in range(1, n + 1)}
    for t, h in edges:
        adj[t].append(h)
        adj[h].append(t)
    # connectivity
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        return WILD

    m = len(edges)
    if len(set(edges)) != m:
        # parallel edges: only the double edge on two vertices is tame
        if n == 2 and m == 2 and len(set(edges)) == 1:
            return Classification("extended", "A", 1)
        return WILD

    degs = sorted(len(adj[x]) for x in range(1, n + 1))
    if m == n:
        # single cycle on n vertices: A~_{n-1}
        if degs == [2] * n:
            return Classification("extended", "A", n - 1)
        return WILD
    if m != n - 1:
        return WILD

    # tree cases
    maxdeg = degs[-1]
    if maxdeg <= 2:
        return Classification("dynkin", "A", n)
    branch = [x for x in range(1, n + 1) if len(adj[x]) >= 3]
    if maxdeg >= 4:
        if maxdeg == 4 and len(branch) == 1 and n == 5 and degs == [1, 1, 1, 1, 4]:
            return Classification("extended", "D", 4)
        return WILD
    if len(branch) == 1:
        arms = _branch_lengths(adj, branch[0])
        if arms is None or len(arms) != 3:
            return WILD
        a, b, c = arms
        if (a, b) == (1, 1):
            return Classification("dynkin", "D", c + 3)
        if (a, b, c) == (1, 2, 2):
            return Classification("dynkin", "E", 6)
        if (a, b, c) == (1, 2, 3):
            return Classification("dynkin", "E", 7)
        if (a, b, c) == (1, 2, 4):
            return Classification("dynkin", "E", 8)
        if (a, b, c) == (2, 2, 2):
            return Classification("extended", "E", 6)
        if (a, b, c) == (1, 3, 3):
            return Classification("extended", "E", 7)
        if (a, b, c) == (1, 2, 5):
            return Classification("extended", "E", 8)
        return WILD
    if len(branch) == 2:
        # D~_n: a path with two extra leaves at each end
        b1, b2 = branch
        if len(adj[b1]) != 3 or len(adj[b2]) != 3:
            return WILD
        leaves1 = [y for y in adj[b1] if len(adj[y]) == 1]
        leaves2 = [y for y in adj[b2] if len(adj[y]) == 1]
        if len(leaves1) >= 2 and len(leaves2) >= 2:
            return Classification("extended", "D", n - 1)
        return WILD
    return WILD


def require_dynkin(q: Quiver) -> Classification:
    cls = classify(q)
    if not cls.is_dynkin:
        raise NonDynkinError(f"quiver is not of Dynkin type (got {cls.kind})")
    return cls


# -- text file format --------------------------------------------------------

def parse_quiver_file(text: str) -> Quiver:
    """Parse the quiver text format: 'vertices n' then 'arrow t h' lines."""
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices" and len(parts) == 2:
            if n is not None:
                raise QuiverError(f"line {lineno}: duplicate vertices line")
            n = int(parts[1])
        elif parts[0] == "arrow" and len(parts) == 3:
            if n is None:
                raise QuiverError(f"line {lineno}: arrow before vertices line")
            arrows.append((int(parts[1]), int(parts[2])))
        else:
            raise QuiverError(f"line {lineno}: cannot parse {raw!r}")
    if n is None:
        raise QuiverError("missing 'vertices n' line")
    return Quiver(n, tuple(arrows))


def format_quiver_file(q: Quiver) -> str:
    lines = [f"vertices {q.n}"]
    lines += [f"arrow {t} {h}" for t, h in q.arrows]
    return "\n".join(lines) + "\n"
