"""Symmetric bilinear forms on R^4 preserved by a set of matrices."""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .matrix import N, Mat4
from .scalar import get_tolerance, is_exact

# upper-triangular index pairs, the 10 coordinates of a symmetric form
_PAIRS = [(i, j) for i in range(N) for j in range(i, N)]


@dataclass(frozen=True)
class SymmetricForm:
    matrix: Mat4
    signature: tuple  # (positive, negative, zero)

    @classmethod
    def from_matrix(cls, m: Mat4):
        if not m == m.T:
            raise ValueError("matrix is not symmetric")
        return cls(m, signature(m))

    def preserved_by(self, g: Mat4):
        return g.T @ self.matrix @ g == self.matrix


def signature(m: Mat4):
    """Inertia ``(p, n, z)`` of a symmetric matrix.

    Exact matrices are diagonalised by symmetric row/column operations
    (Sylvester's law of inertia); float matrices use eigenvalue signs.
    """
    if m.backend == "float" or not all(is_exact(v) for r in m.rows for v in r):
        ev = np.linalg.eigvalsh(m.to_numpy())
        tol = get_tolerance() * max(1.0, float(np.max(np.abs(ev))))
        p = int(np.sum(ev > tol))
        n = int(np.sum(ev < -tol))
        return (p, n, N - p - n)
    diag = _congruence_diagonal([list(r) for r in m.rows])
    p = sum(1 for d in diag if d > 0)
    n = sum(1 for d in diag if d < 0)
    return (p, n, N - p - n)


def _congruence_diagonal(a):
    n = len(a)
    out = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if off is None:
                out.extend([0] * (n - k))
                return out
            i, j = off
            # row_i += row_j, col_i += col_j makes a[i][i] = 2 a[i][j] != 0
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] += r[j]
            piv = i
        a[k], a[piv] = a[piv], a[k]
        for r in a:
            r[k], r[piv] = r[piv], r[k]
        d = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for r in a:
                    r[i] -= f * r[k]
        out.append(d)
    return out


def _form_from_vector(vec):
    rows = [[0] * N for _ in range(N)]
    for (i, j), v in zip(_PAIRS, vec):
        rows[i][j] = v
        rows[j][i] = v
    return Mat4(rows)


def invariant_form_space(generators):
    """Basis of ``{F symmetric : G^T F G = F for every generator G}``."""
    equations = []
    for g in generators:
        for r in range(N):
            for s in range(r, N):
                # entry (r, s) of G^T F G - F as a linear function of F's 10 coordinates
                row = []
                for i, j in _PAIRS:
                    coef = g[i, r] * g[j, s]
                    if i != j:
                        coef += g[j, r] * g[i, s]
                    if (i, j) == (r, s):
                        coef -= 1
                    row.append(coef)
                equations.append(row)
    if not equations:
        unit = [[1 if i == k else 0 for i in range(len(_PAIRS))] for k in range(len(_PAIRS))]
        return [SymmetricForm.from_matrix(_form_from_vector(v)) for v in unit]
    return [_oriented(_form_from_vector(v)) for v in linalg.nullspace(equations, len(_PAIRS))]


def _oriented(m: Mat4):
    # invariant forms are only defined up to scale; report p >= n
    form = SymmetricForm.from_matrix(m)
    p, n, _ = form.signature
    if n > p:
        form = SymmetricForm.from_matrix(m * -1)
    return form


def invariant_symmetric_form(generators):
    """An invariant symmetric form of the group generated by ``generators``.

    Returns ``None`` when only ``F = 0`` is invariant, the unique form (up
    to scale, oriented so that ``p >= n``) when the solution space is a
    line, and the full basis as a list otherwise.
    """
    basis = invariant_form_space(generators)
    if not basis:
        return None
    if len(basis) == 1:
        return basis[0]
    return basis
