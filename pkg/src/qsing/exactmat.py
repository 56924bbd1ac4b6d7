"""Exact linear algebra over the rationals.

Matrices are lists of row lists with Fraction (or int) entries, carried
together with an explicit shape so that 0 x n and n x 0 matrices behave.
Everything here is exact; no floating point.
"""

from __future__ import annotations

from fractions import Fraction


class Mat:
    """Dense rational matrix with explicit shape (rows may be empty)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[Fraction(0)] * ncols for _ in range(nrows)]
        else:
            rows = [[Fraction(x) for x in r] for r in rows]
            assert len(rows) == nrows and all(len(r) == ncols for r in rows)
        self.rows = rows

    @staticmethod
    def identity(n):
        m = Mat(n, n)
        for i in range(n):
            m.rows[i][i] = Fraction(1)
        return m

    @staticmethod
    def from_rows(rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return Mat(nrows, ncols, rows)

    def copy(self):
        return Mat(self.nrows, self.ncols, [r[:] for r in self.rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.rows[i][j] = Fraction(v)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols}, {self.rows})"

    def mul(self, other):
        assert self.ncols == other.nrows
        out = Mat(self.nrows, other.ncols)
        for i in range(self.nrows):
            ri = self.rows[i]
            oi = out.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if a:
                    rk = other.rows[k]
                    for j in range(other.ncols):
                        if rk[j]:
                            oi[j] += a * rk[j]
        return out

    def matvec(self, v):
        assert self.ncols == len(v)
        return [sum((self.rows[i][j] * v[j] for j in range(self.ncols)), Fraction(0))
                for i in range(self.nrows)]

    def transpose(self):
        out = Mat(self.ncols, self.nrows)
        for i in range(self.nrows):
            for j in range(self.ncols):
                out.rows[j][i] = self.rows[i][j]
        return out


def _echelon(rows, ncols):
    """In-place row echelon form; returns list of pivot column indices."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / Fraction(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: Mat) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = [r[:] for r in m.rows]
    return len(_echelon(rows, m.ncols))


def nullspace(m: Mat):
    """Basis (list of column vectors) of the right kernel of m."""
    if m.ncols == 0:
        return []
    rows = [r[:] for r in m.rows]
    pivots = _echelon(rows, m.ncols) if m.nrows else []
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def left_nullspace(m: Mat):
    """Basis of row vectors y with y*m = 0."""
    return nullspace(m.transpose())


def det(m: Mat) -> Fraction:
    assert m.nrows == m.ncols
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows = [r[:] for r in m.rows]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d * sign


def inverse(m: Mat) -> Mat:
    assert m.nrows == m.ncols
    n = m.nrows
    aug = [m.rows[i][:] + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
           for i in range(n)]
    pivots = _echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return Mat(n, n, [row[n:] for row in aug])


def solve(m: Mat, b):
    """One solution of m x = b, or None."""
    rows = [m.rows[i][:] + [Fraction(b[i])] for i in range(m.nrows)]
    pivots = _echelon(rows, m.ncols + 1) if rows else []
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.ncols]
    return x
