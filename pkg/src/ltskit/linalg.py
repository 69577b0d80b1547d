"""Exact dense linear algebra over the scalar field.

Vectors are lists of Scalar, matrices are lists of rows.  Everything is
fraction-free in spirit but implemented directly with exact division since
Scalar division is cheap enough at the sizes we meet (<= a few hundred
columns).
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Scalar, ZERO, ONE

Vec = list[Scalar]
Mat = list[list[Scalar]]


def zeros(n: int) -> Vec:
    return [ZERO] * n


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vec:
    return [a + b for a, b in zip(u, v)]


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vec:
    return [a - b for a, b in zip(u, v)]


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vec:
    return [c * a for a in v]


def vec_is_zero(v: Sequence[Scalar]) -> bool:
    return all(a.is_zero() for a in v)


def mat_vec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vec:
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in m]


def row_echelon(m: Mat) -> tuple[Mat, list[int]]:
    """In-place row echelon form; returns (m, pivot column list)."""
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        for i in range(r, n_rows):
            if not m[i][c].is_zero():
                break
        else:
            continue
        m[r], m[i] = m[i], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    _, pivots = row_echelon([list(r) for r in rows])
    return len(pivots)


def kernel(rows: Sequence[Sequence[Scalar]]) -> list[Vec]:
    """Basis of the right kernel of the matrix with the given rows."""
    if not rows:
        return []
    n_cols = len(rows[0])
    m, pivots = row_echelon([list(r) for r in rows])
    piv_set = set(pivots)
    basis: list[Vec] = []
    for free in range(n_cols):
        if free in piv_set:
            continue
        v = zeros(n_cols)
        v[free] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][free]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> Vec | None:
    """One solution x of rows.x = target, or None when inconsistent."""
    if not rows:
        return [] if vec_is_zero(target) else None
    n_cols = len(rows[0])
    aug = [list(r) + [t] for r, t in zip(rows, target)]
    m, pivots = row_echelon(aug)
    if pivots and pivots[-1] == n_cols:
        return None
    x = zeros(n_cols)
    for r, pc in enumerate(pivots):
        x[pc] = m[r][n_cols]
    return x


class Span:
    """Row space with exact membership tests, built incrementally."""

    def __init__(self, vectors: Sequence[Sequence[Scalar]] = ()):
        self._rows: Mat = []
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def add(self, v: Sequence[Scalar]) -> bool:
        """Reduce v against the span; add the remainder.  True if dim grew."""
        w = self._reduce(list(v))
        for c, x in enumerate(w):
            if not x.is_zero():
                break
        else:
            return False
        inv = x.inv()
        w = [y * inv for y in w]
        # keep rows fully reduced against each other
        for i, row in enumerate(self._rows):
            if not row[c].is_zero():
                f = row[c]
                self._rows[i] = [a - f * b for a, b in zip(row, w)]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < c:
            pos += 1
        self._rows.insert(pos, w)
        self._pivots.insert(pos, c)
        return True

    def _reduce(self, v: Vec) -> Vec:
        for row, pc in zip(self._rows, self._pivots):
            if not v[pc].is_zero():
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[Scalar]) -> bool:
        return vec_is_zero(self._reduce(list(v)))

    def coords(self, v: Sequence[Scalar]) -> Vec | None:
        """Coefficients of v in the stored reduced basis, or None."""
        coeffs = []
        w = list(v)
        for row, pc in zip(self._rows, self._pivots):
            f = w[pc]
            coeffs.append(f)
            if not f.is_zero():
                w = [a - f * b for a, b in zip(w, row)]
        return coeffs if vec_is_zero(w) else None

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self) -> Mat:
        return [list(r) for r in self._rows]

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Span") -> bool:
        return all(other.contains(r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return self.dim == other.dim and self <= other
