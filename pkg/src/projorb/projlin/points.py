"""Points, lines and planes of RP^3 and the cross ratio on a line."""

import math
from itertools import combinations

from . import linalg
from .matrix import N, Mat4
from .scalar import backend_of, is_exact, is_zero, to_scalar


class ProjPoint:
    """A point of RP^3 given by homogeneous coordinates.

    Equality and hashing are up to nonzero scale.  The stored vector is
    the one passed in; :meth:`normalized` gives the representative with
    first nonzero coordinate equal to 1.
    """

    __slots__ = ("coords",)

    def __init__(self, coords, backend=None):
        coords = tuple(coords)
        if len(coords) != N:
            raise ValueError("ProjPoint needs 4 homogeneous coordinates")
        if backend is None:
            backend = backend_of(*coords)
        coords = tuple(to_scalar(v, backend) for v in coords)
        if all(is_zero(v) for v in coords):
            raise ValueError("homogeneous coordinates must not all vanish")
        self.coords = coords

    @classmethod
    def basis(cls, i):
        return cls([1 if j == i else 0 for j in range(N)])

    def _lead(self):
        return next(i for i, v in enumerate(self.coords) if not is_zero(v))

    def normalized(self):
        c = self.coords[self._lead()]
        return tuple(v / c for v in self.coords)

    def scale_sign(self):
        """Sign relating the stored vector to :meth:`normalized`."""
        return 1 if self.coords[self._lead()] > 0 else -1

    def key(self, digits=9):
        n = self.normalized()
        if all(is_exact(v) for v in n):
            return n
        return tuple(round(float(v), digits) + 0.0 for v in n)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return linalg.rank([self.coords, other.coords]) == 1

    def __hash__(self):
        return hash(self.key())

    def transform(self, m: Mat4):
        return ProjPoint(m @ self.coords)

    def __repr__(self):
        return "[%s]" % ":".join(str(v) for v in self.coords)


def _cross3(u, v, w):
    """Covector vanishing on ``u, v, w``: the 3x3 minors with alternating signs."""
    rows = [u, v, w]
    out = []
    for k in range(N):
        cols = [j for j in range(N) if j != k]
        minor = linalg.det([[r[j] for j in cols] for r in rows])
        out.append(minor if k % 2 == 0 else -minor)
    return tuple(out)


class ProjSubspace:
    """A projective line or plane, spanned by 2 or 3 independent points."""

    LINE = "line"
    PLANE = "plane"

    def __init__(self, points):
        points = [p if isinstance(p, ProjPoint) else ProjPoint(p) for p in points]
        if len(points) not in (2, 3):
            raise ValueError("a line needs 2 spanning points, a plane 3")
        if linalg.rank([p.coords for p in points]) != len(points):
            raise ValueError("spanning points are not in general position")
        self.points = tuple(points)
        self.kind = self.LINE if len(points) == 2 else self.PLANE

    @classmethod
    def span(cls, *points):
        return cls(points)

    def contains(self, p: ProjPoint):
        rows = [q.coords for q in self.points] + [p.coords]
        return linalg.rank(rows) == len(self.points)

    def dual(self):
        """Covector cutting out a plane."""
        if self.kind != self.PLANE:
            raise ValueError("only planes have a single dual covector")
        return _cross3(*(p.coords for p in self.points))

    def transform(self, m: Mat4):
        return ProjSubspace([p.transform(m) for p in self.points])

    def intersect(self, other):
        """Intersection point of a line with a plane (either order)."""
        line, plane = (self, other) if self.kind == self.LINE else (other, self)
        if line.kind != self.LINE or plane.kind != self.PLANE:
            raise ValueError("intersection is implemented for a line and a plane")
        n = plane.dual()
        u, v = (p.coords for p in line.points)
        nu = sum(a * b for a, b in zip(n, u))
        nv = sum(a * b for a, b in zip(n, v))
        if is_zero(nu) and is_zero(nv):
            raise ValueError("the plane contains the line; intersection is not a point")
        return ProjPoint([nv * a - nu * b for a, b in zip(u, v)])

    def __eq__(self, other):
        if not isinstance(other, ProjSubspace) or other.kind != self.kind:
            return NotImplemented
        return all(self.contains(p) for p in other.points)

    def __repr__(self):
        return "%s<%s>" % (self.kind, ", ".join(map(repr, self.points)))


def general_position(points):
    """True iff every 4 of the given 4 or 5 points are linearly independent."""
    points = list(points)
    if len(points) not in (4, 5):
        raise ValueError("general_position takes 4 or 5 points, got %d" % len(points))
    coords = [p.coords if isinstance(p, ProjPoint) else tuple(p) for p in points]
    if not all(is_exact(v) for c in coords for v in c):
        # rescaling a representative is free; it keeps the pivot tolerance meaningful
        coords = [tuple(v / max(abs(u) for u in c) for v in c) for c in coords]
    return all(linalg.rank(list(quad)) == N for quad in combinations(coords, N))


def _line_chart(coords):
    """Coordinate pair (i, j) in which the 2x2 minors see the common line."""
    best, best_val = None, -1
    for i, j in combinations(range(N), 2):
        val = max(abs(u[i] * v[j] - u[j] * v[i]) for u, v in combinations(coords, 2))
        if val > best_val:
            best, best_val = (i, j), val
    return best


def cross_ratio(a, b, c, d):
    """Cross ratio ``(a, b; c, d)`` of four points on a projective line.

    In an affine coordinate ``t`` on the line this is
    ``((t_a - t_c)(t_b - t_d)) / ((t_a - t_d)(t_b - t_c))``.  It is
    evaluated with 2x2 brackets of homogeneous coordinates, so points at
    infinity need no special casing.  Returns ``math.inf`` when only the
    denominator vanishes.
    """
    pts = [p if isinstance(p, ProjPoint) else ProjPoint(p) for p in (a, b, c, d)]
    coords = [p.coords for p in pts]
    if linalg.rank(coords) > 2:
        raise ValueError("points are not collinear")
    distinct = []
    for p in pts:
        if not any(p == q for q in distinct):
            distinct.append(p)
    if len(distinct) < 2 or any(sum(p == q for q in pts) >= 3 for p in pts):
        raise ValueError("degenerate quadruple: three or more coincident points")

    i, j = _line_chart(coords)

    def br(u, v):
        return u[i] * v[j] - u[j] * v[i]

    pa, pb, pc, pd = coords
    num = br(pa, pc) * br(pb, pd)
    den = br(pa, pd) * br(pb, pc)
    if is_zero(den, max(abs(num), 1)):
        if is_zero(num):
            raise ValueError("degenerate quadruple: cross ratio undefined")
        return math.inf
    return num / den
