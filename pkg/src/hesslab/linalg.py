"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction (or int, which Fraction
arithmetic absorbs).  Everything here is plain Gaussian elimination;
no pivoting heuristics are needed because the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_fractions(m) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns (rref_matrix, pivot_columns)."""
    a = _as_fractions(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, cols: int | None = None) -> list[Vector]:
    """Basis of the right nullspace.  `cols` is required if m has no rows."""
    if m:
        cols = len(m[0])
    elif cols is None:
        raise ValueError("cols required for an empty matrix")
    else:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(m, b) -> Vector | None:
    """One solution x of m @ x = b, or None if inconsistent."""
    if not m:
        return None
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    red, pivots = rref(aug)
    cols = len(m[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def in_span(vectors: list[Vector], v: Vector) -> bool:
    """Whether v lies in the span of the given vectors (exact)."""
    if not vectors:
        return all(x == 0 for x in v)
    cols = [[vec[i] for vec in vectors] for i in range(len(v))]
    return solve(cols, list(v)) is not None


def invert(m) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


class RowSpace:
    """Incrementally tracked row space, for rank-stabilization loops."""

    def __init__(self, cols: int):
        self.cols = cols
        self._rows: Matrix = []   # kept in echelon form
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, row) -> bool:
        """Insert a row; returns True if the rank grew."""
        v = [Fraction(x) for x in row]
        for r, pc in zip(self._rows, self._pivots):
            if v[pc] != 0:
                f = v[pc] / r[pc]
                v = [x - f * y for x, y in zip(v, r)]
        pc = next((c for c in range(self.cols) if v[c] != 0), None)
        if pc is None:
            return False
        # keep pivot columns sorted so elimination above stays valid
        pos = next((i for i, p in enumerate(self._pivots) if p > pc),
                   len(self._pivots))
        self._rows.insert(pos, v)
        self._pivots.insert(pos, pc)
        return True
