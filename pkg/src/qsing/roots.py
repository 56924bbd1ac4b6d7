"""Positive roots of Dynkin quivers, explicit indecomposable representations,
and Hom/Ext dimensions.

Two routes to Hom dimensions coexist on purpose:

* ``hom_dim`` computes the nullity of the explicit matrix of
  d^V_W : (+)_x Hom(V(x),W(x)) -> (+)_a Hom(V(ta),W(ha))
  over Q, from concrete rational matrices.  This is the ground truth.
* ``hom_table`` computes all pairwise Hom dimensions between indecomposables
  by walking an admissible sink sequence and reflecting dimension vectors,
  which is exact integer arithmetic and fast enough for E8.  The two routes
  are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmat import Mat, left_nullspace, nullspace, rank
from .quiver import (
    NonDynkinError,
    Quiver,
    euler_form,
    reflect_dim,
    require_dynkin,
    simple_root,
    tits_form,
)


class NotARootError(ValueError):
    pass


def positive_roots(q: Quiver):
    """All positive roots of the underlying Dynkin diagram.

    Closure of the simple roots under simple reflections; sorted by height
    then lexicographically, which fixes the root indexing used everywhere.
    """
    require_dynkin(q)
    simples = [simple_root(q.n, x) for x in range(1, q.n + 1)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for x in range(1, q.n + 1):
                w = reflect_dim(q, x, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    roots = sorted((v for v in seen if all(c >= 0 for c in v) and any(v)),
                   key=lambda v: (sum(v), v))
    assert all(tits_form(q, r) == 1 for r in roots)
    return roots


def is_positive_root(q: Quiver, v) -> bool:
    return all(c >= 0 for c in v) and any(v) and tits_form(q, v) == 1


@dataclass
class Representation:
    """Explicit rational matrices V(a) indexed by arrow position."""

    quiver: Quiver
    dims: tuple
    maps: dict  # arrow index in quiver.arrows -> Mat of shape dims[ha] x dims[ta]

    def check_shapes(self):
        for idx, (t, h) in enumerate(self.quiver.arrows):
            m = self.maps[idx]
            assert m.nrows == self.dims[h - 1] and m.ncols == self.dims[t - 1]


def simple_rep(q: Quiver, x) -> Representation:
    dims = simple_root(q.n, x)
    maps = {i: Mat(dims[h - 1], dims[t - 1]) for i, (t, h) in enumerate(q.arrows)}
    return Representation(q, dims, maps)


def _coreflect(q_src: Quiver, x, rep: Representation) -> Representation:
    """C^-_x at a source x of rep.quiver (= q_src); result lives over the
    reflected quiver.  Callers pass the target quiver to avoid rebuilding."""
    q = rep.quiver
    out_arrows = [(i, a) for i, a in enumerate(q.arrows) if a[0] == x]
    # stack V(x) -> (+)_{a: ta=x} V(ha)
    tot = sum(rep.dims[a[1] - 1] for _, a in out_arrows)
    dx = rep.dims[x - 1]
    psi = Mat(tot, dx)
    off = 0
    for i, (t, h) in out_arrows:
        m = rep.maps[i]
        for r in range(m.nrows):
            psi.rows[off + r] = list(m.rows[r])
        off += m.nrows
    proj_rows = left_nullspace(psi)  # rows spanning a cokernel projection
    newdim = len(proj_rows)
    proj = Mat(newdim, tot, proj_rows)

    new_dims = list(rep.dims)
    new_dims[x - 1] = newdim
    new_dims = tuple(new_dims)
    new_maps = {}
    qr = q_src
    off = 0
    offsets = {}
    for i, (t, h) in out_arrows:
        offsets[i] = off
        off += rep.dims[h - 1]
    for i, (t, h) in enumerate(qr.arrows):
        if h == x:
            # reversed arrow: map V(t) -> coker, t was a head of an old arrow at x
            old_i = i  # arrow positions are preserved by Quiver.reflect
            o = offsets[old_i]
            cols = rep.dims[t - 1]
            m = Mat(newdim, cols)
            for r in range(newdim):
                m.rows[r] = proj.rows[r][o:o + cols]
            new_maps[i] = m
        else:
            new_maps[i] = rep.maps[i].copy()
    return Representation(qr, new_dims, new_maps)


def realize(q: Quiver, root) -> Representation:
    """Explicit indecomposable with dimension vector ``root``.

    Built with Bernstein-Gelfand-Ponomarev reflection functors along the
    admissible sink sequence: walk the root down to a simple, then apply the
    inverse reflections to the simple representation.
    """
    require_dynkin(q)
    root = tuple(root)
    if not is_positive_root(q, root):
        raise NotARootError(f"{root} is not a positive root")
    seq = q.admissible_sink_sequence()
    # r_t = s_{x_t}(r_{t-1}); find first t with r_t not >= 0, then
    # r_{t-1} = e_{x_t}.
    quivers = [q]
    vecs = [root]
    t = 0
    cur = root
    while True:
        x = seq[t % q.n]
        nxt = reflect_dim(q, x, cur)
        if any(c < 0 for c in nxt):
            break
        quivers.append(quivers[-1].reflect(x))
        vecs.append(nxt)
        cur = nxt
        t += 1
        assert t < 64 * q.n, "reflection walk failed to terminate"
    # cur == e_x at step t
    x = seq[t % q.n]
    assert cur == simple_root(q.n, x)
    rep = simple_rep(quivers[t], x)
    for s in range(t - 1, -1, -1):
        xs = seq[s % q.n]
        # xs is a source of quivers[s+1]; reflect back to quivers[s]
        rep = _coreflect(quivers[s], xs, rep)
    assert rep.dims == root
    return rep


def hom_matrix_dvw(v: Representation, w: Representation) -> Mat:
    """Matrix of d^V_W, basis ordered vertices ascending then column-major
    inside each Hom(V(x),W(x)) block."""
    if v.quiver.arrows != w.quiver.arrows or v.quiver.n != w.quiver.n:
        raise ValueError("representations over different quivers")
    q = v.quiver
    col_off = []
    off = 0
    for x in range(q.n):
        col_off.append(off)
        off += v.dims[x] * w.dims[x]
    ncols = off
    row_off = []
    off = 0
    for t, h in q.arrows:
        row_off.append(off)
        off += v.dims[t - 1] * w.dims[h - 1]
    nrows = off
    m = Mat(nrows, ncols)
    for ai, (t, h) in enumerate(q.arrows):
        va = v.maps[ai]
        wa = w.maps[ai]
        ro = row_off[ai]
        dvt, dwh = v.dims[t - 1], w.dims[h - 1]
        # output entry (jt, it) at row ro + jt*dwh + it equals
        #   sum_k phi_h[it][k] * va[k][jt]  -  sum_k wa[it][k] * phi_t[k][jt]
        co_h = col_off[h - 1]
        dwhh = w.dims[h - 1]
        for jt in range(dvt):
            for it in range(dwh):
                r = ro + jt * dwh + it
                for k in range(va.nrows):  # va: dims[h'] rows? va maps V(t)->V(h): rows=dims V(h)
                    if va.rows[k][jt]:
                        # phi_h has shape w.dims[h] x v.dims[h]; column-major index
                        m.rows[r][co_h + k * dwhh + it] += va.rows[k][jt]
                co_t = col_off[t - 1]
                dwt = w.dims[t - 1]
                for k in range(dwt):
                    if wa.rows[it][k]:
                        m.rows[r][co_t + jt * dwt + k] -= wa.rows[it][k]
    return m


def hom_dim(v: Representation, w: Representation) -> int:
    m = hom_matrix_dvw(v, w)
    return m.ncols - rank(m)


def ext_dim(v: Representation, w: Representation) -> int:
    e = hom_dim(v, w) - euler_form(v.quiver, v.dims, w.dims)
    assert e >= 0
    return e


def hom_dim_roots(q: Quiver, dm, dn) -> int:
    """dim Hom between the indecomposables with dimension vectors dm, dn,
    by reflection-functor recursion on dimension vectors (exact integers).

    At a sink x: Hom(S_x, N) = dim N(x) and Hom(M, S_x) = 0 for an
    indecomposable M != S_x, while C^+_x preserves Hom spaces between
    indecomposables that are not S_x.
    """
    seq = q.admissible_sink_sequence()
    n = q.n
    dm, dn = tuple(dm), tuple(dn)
    t = 0
    while True:
        x = seq[t % n]
        ex = simple_root(n, x)
        if dm == ex:
            return dn[x - 1]
        if dn == ex:
            return 0
        dm = reflect_dim(q, x, dm)
        dn = reflect_dim(q, x, dn)
        t += 1
        assert t < 64 * n, "hom recursion failed to terminate"


@dataclass
class HomTable:
    """Pairwise hom/ext dimensions over all positive roots, plus index maps."""

    quiver: Quiver
    roots: list
    index: dict  # root tuple -> position
    hom: list  # hom[i][j] = dim Hom(X_i, X_j)
    ext: list

    def hom_root(self, a, b):
        return self.hom[self.index[tuple(a)]][self.index[tuple(b)]]

    def ext_root(self, a, b):
        return self.ext[self.index[tuple(a)]][self.index[tuple(b)]]


@lru_cache(maxsize=None)
def hom_table(q: Quiver) -> HomTable:
    require_dynkin(q)
    roots = positive_roots(q)
    idx = {r: i for i, r in enumerate(roots)}
    k = len(roots)
    hom = [[0] * k for _ in range(k)]
    ext = [[0] * k for _ in range(k)]
    for i, ri in enumerate(roots):
        for j, rj in enumerate(roots):
            h = hom_dim_roots(q, ri, rj)
            e = h - euler_form(q, ri, rj)
            assert e >= 0
            hom[i][j] = h
            ext[i][j] = e
        assert hom[i][i] == 1 and ext[i][i] == 0
    return HomTable(q, roots, idx, hom, ext)
