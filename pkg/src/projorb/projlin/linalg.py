"""Backend-agnostic row reduction on small dense matrices (lists of rows)."""

from .scalar import get_tolerance, is_exact


def _pivot_eps(rows):
    """Absolute pivot threshold for float matrices, scaled by the largest entry."""
    scale = max((abs(v) for row in rows for v in row), default=0.0)
    return get_tolerance() * max(1.0, float(scale))


def row_reduce(rows):
    """Reduced row echelon form.

    Returns ``(rref, pivots)`` where ``pivots`` lists the pivot column of
    each nonzero row.  Exact entries are reduced exactly; floats use
    partial pivoting and treat entries below the scaled tolerance as zero.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    exact = all(is_exact(v) for r in m for v in r)
    eps = 0 if exact else _pivot_eps(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        if exact:
            p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        else:
            p = max(range(r, nrows), key=lambda i: abs(m[i][c]))
            if abs(m[p][c]) <= eps:
                p = None
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        if not exact:
            for i in range(nrows):
                if i != r:
                    m[i][c] = 0.0
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        raise ValueError("nullspace of an empty system needs ncols")
    ncols = len(rows[0]) if ncols is None else ncols
    rref, pivots = row_reduce(rows)
    exact = all(is_exact(v) for r in rows for v in r)
    one, zero = (1, 0) if exact else (1.0, 0.0)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rref[i][free]
        basis.append(v)
    return basis


def det(rows):
    """Determinant by elimination (exact for fractions)."""
    m = [list(r) for r in rows]
    n = len(m)
    exact = all(is_exact(v) for r in m for v in r)
    result = 1 if exact else 1.0
    for c in range(n):
        if exact:
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
        else:
            p = max(range(c, n), key=lambda i: abs(m[i][c]))
            if m[p][c] == 0:
                p = None
        if p is None:
            return 0 if exact else 0.0
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result
