"""4x4 matrices over either scalar backend, viewed as projective transformations."""

import math
from fractions import Fraction

import numpy as np

from . import linalg
from .scalar import FLOAT, RATIONAL, backend_of, close, fmt, get_tolerance, to_scalar

N = 4


def _rational_root(q, n):
    """Exact ``n``-th root of a nonnegative fraction, or None if irrational."""
    q = Fraction(q)
    out = []
    for part in (q.numerator, q.denominator):
        r = round(part ** (1.0 / n)) if part < 2**52 else _int_root(part, n)
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**n == part:
                out.append(cand)
                break
        else:
            return None
    return Fraction(out[0], out[1])


def _int_root(k, n):
    lo, hi = 0, 1 << (k.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= k:
            lo = mid
        else:
            hi = mid - 1
    return lo


class Mat4:
    """An invertible-or-not 4x4 matrix with entries in one backend.

    Instances are immutable.  Arithmetic (``@``, ``*``, ``**``) returns new
    matrices; exact inputs stay exact.  The projective class of the matrix
    is compared with :meth:`proj_equal`.
    """

    __slots__ = ("_rows", "_backend", "_det")

    def __init__(self, rows, backend=None):
        rows = [list(r) for r in rows]
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError("Mat4 needs 4 rows of 4 entries")
        if backend is None:
            backend = backend_of(*(v for r in rows for v in r))
        self._rows = tuple(tuple(to_scalar(v, backend) for v in r) for r in rows)
        self._backend = backend
        self._det = None

    @classmethod
    def identity(cls, backend=RATIONAL):
        return cls([[1 if i == j else 0 for j in range(N)] for i in range(N)], backend)

    @classmethod
    def diag(cls, *values):
        return cls([[values[i] if i == j else 0 for j in range(N)] for i in range(N)])

    @classmethod
    def from_columns(cls, cols):
        cols = [list(c) for c in cols]
        return cls([[cols[j][i] for j in range(N)] for i in range(N)])

    @property
    def rows(self):
        return self._rows

    @property
    def backend(self):
        return self._backend

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    @property
    def T(self):
        return Mat4([[self._rows[j][i] for j in range(N)] for i in range(N)], self._backend)

    def to_float(self):
        return self if self._backend == FLOAT else Mat4(self._rows, FLOAT)

    def to_numpy(self):
        return np.array([[float(v) for v in r] for r in self._rows])

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, Mat4):
            b = other._rows
            backend = RATIONAL if self._backend == other._backend == RATIONAL else FLOAT
            return Mat4(
                [[sum(self._rows[i][k] * b[k][j] for k in range(N)) for j in range(N)]
                 for i in range(N)],
                backend,
            )
        vec = tuple(other)
        if len(vec) != N:
            raise ValueError("expected a vector of length 4")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self._rows)

    def __mul__(self, c):
        if isinstance(c, Mat4):
            return NotImplemented
        return Mat4([[v * c for v in r] for r in self._rows])

    __rmul__ = __mul__

    def __add__(self, other):
        return Mat4([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other):
        return Mat4([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self):
        return self * -1

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("matrix powers must be integers")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Mat4.identity(self._backend)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def det(self):
        if self._det is None:
            self._det = linalg.det(self._rows)
        return self._det

    # determinant of the stored representative, as a property
    det_lift = property(det)

    def is_invertible(self):
        if self._backend == RATIONAL:
            return self.det() != 0
        # det is a poor conditioning test (entries of size 300 give 300^4);
        # compare the extreme singular values instead
        sv = np.linalg.svd(self.to_numpy(), compute_uv=False)
        return sv[0] > 0 and sv[-1] > get_tolerance() * sv[0]

    def inverse(self):
        if not self.is_invertible():
            raise ValueError("not invertible")
        one, zero = (1, 0) if self._backend == RATIONAL else (1.0, 0.0)
        aug = [list(r) + [one if i == j else zero for j in range(N)]
               for i, r in enumerate(self._rows)]
        rref, pivots = linalg.row_reduce(aug)
        if pivots[:N] != list(range(N)):
            raise ValueError("not invertible")
        return Mat4([r[N:] for r in rref], self._backend)

    def trace(self):
        return sum(self._rows[i][i] for i in range(N))

    # comparisons

    def __eq__(self, other):
        if not isinstance(other, Mat4):
            return NotImplemented
        return all(close(a, b) for r, s in zip(self._rows, other._rows) for a, b in zip(r, s))

    def __hash__(self):
        if self._backend != RATIONAL:
            raise TypeError("float matrices are unhashable; use proj_key()")
        return hash(self._rows)

    def is_scalar(self):
        """True iff the matrix is ``c * I`` for some scalar ``c`` (possibly 0)."""
        c = self._rows[0][0]
        return self == Mat4.identity(self._backend) * c

    def is_identity(self):
        return self == Mat4.identity(self._backend)

    def proj_equal(self, other):
        """Equality in PGL(4): ``self = c * other`` for a nonzero ``c``."""
        flat_a = [v for r in self._rows for v in r]
        flat_b = [v for r in other._rows for v in r]
        k = max(range(N * N), key=lambda i: abs(flat_b[i]))
        if flat_b[k] == 0 or flat_a[k] == 0:
            return False
        c = flat_a[k] / flat_b[k]
        return all(close(a, c * b) for a, b in zip(flat_a, flat_b))

    def proj_normalized(self):
        """Representative with the first nonzero entry (row-major) equal to 1."""
        for r in self._rows:
            for v in r:
                if v != 0:
                    return self * (1 / v)
        raise ValueError("zero matrix has no projective class")

    def proj_key(self, digits=9):
        """Hashable key of the projective class."""
        m = self.proj_normalized()
        if self._backend == RATIONAL:
            return m._rows
        return tuple(round(v, digits) + 0.0 for r in m._rows for v in r)

    def unit_lift(self):
        """Rescale so the determinant is +1 (or -1 when that is impossible).

        Exact matrices stay exact when the fourth root of ``|det|`` is
        rational; otherwise the result is a float matrix.
        """
        d = self.det()
        if d == 0:
            raise ValueError("not invertible")
        if self._backend == RATIONAL:
            root = _rational_root(abs(d), N)
            if root is not None:
                return self * (1 / root)
        return self.to_float() * (1.0 / math.pow(abs(float(d)), 1.0 / N))

    def __repr__(self):
        body = "; ".join(" ".join(fmt(v) for v in r) for r in self._rows)
        return "Mat4[%s]" % body
