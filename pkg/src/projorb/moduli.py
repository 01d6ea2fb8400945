"""The surface ``w + x + y + z = 3 + wy, wy = zx`` and its two components.

Shifting ``w = a + 1, x = b + 1, y = c + 1`` turns the surface into
``b^2 - abc + a + c = 0``, a quadratic in ``b`` with discriminant
``a^2 c^2 - 4a - 4c``.  The component ``X`` through ``(3, 3, 3, 3)`` is
cut out by ``x > 1`` and ``z > 1``; the other one, through
``(1, 1, 1, 1)``, carries branched structures.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .projlin.scalar import FLOAT, RATIONAL, backend_of, close, is_exact, is_zero, to_scalar

X = "X"
BRANCHED = "Branched"
UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ModuliPoint:
    w: object
    x: object
    y: object
    z: object
    component: str = UNCLASSIFIED

    def __post_init__(self):
        backend = backend_of(self.w, self.x, self.y, self.z)
        for name in "wxyz":
            object.__setattr__(self, name, to_scalar(getattr(self, name), backend))

    def astuple(self):
        return (self.w, self.x, self.y, self.z)

    def same_point(self, other):
        return all(close(a, b) for a, b in zip(self.astuple(), other.astuple()))

    def tagged(self):
        return ModuliPoint(*self.astuple(), classify_component(self))


@dataclass(frozen=True)
class AbcPoint:
    a: object
    b: object
    c: object

    def residual(self):
        return self.b**2 - self.a * self.b * self.c + self.a + self.c


@dataclass(frozen=True)
class ChartPoint:
    x: object
    y: object

    def __post_init__(self):
        backend = backend_of(self.x, self.y) if not isinstance(self.x, str) else None
        object.__setattr__(self, "x", to_scalar(self.x, backend))
        object.__setattr__(self, "y", to_scalar(self.y, backend))

    def denominator(self):
        return self.x + self.y - self.x * self.y


def _point(p):
    if isinstance(p, ModuliPoint):
        return p
    w, x, y, z = (to_scalar(v) for v in p)
    return ModuliPoint(w, x, y, z)


def variety_defects(w, x, y, z):
    """Residuals of the two defining equations."""
    return (w + x + y + z - 3 - w * y, w * y - z * x)


def on_variety(w, x, y, z):
    scale = max(1, abs(w), abs(x), abs(y), abs(z)) ** 2
    return all(is_zero(d, scale) for d in variety_defects(w, x, y, z))


def chart_lift(c) -> ModuliPoint:
    """Solve the defining equations for ``w, z`` given ``x, y``.

    ``w = x(3 - x - y) / (x + y - xy)`` and ``z = y(3 - x - y) / (x + y - xy)``.
    """
    if not isinstance(c, ChartPoint):
        c = ChartPoint(*c)
    x, y = c.x, c.y
    den = c.denominator()
    if is_zero(den, max(1, abs(x * y))):
        raise ValueError("chart singular locus: x + y - xy = 0 at (%s, %s)" % (x, y))
    w = x * (3 - x - y) / den
    z = y * (3 - x - y) / den
    return ModuliPoint(w, x, y, z)


def abc_coords(p) -> AbcPoint:
    p = _point(p)
    if not on_variety(*p.astuple()):
        raise ValueError("point is not on the variety")
    return AbcPoint(p.w - 1, p.x - 1, p.y - 1)


def disc(a, c):
    """Discriminant of ``b^2 - (ac) b + (a + c)`` in ``b``."""
    return a * a * c * c - 4 * a - 4 * c


def solve_b(a, c):
    """Real roots ``b`` of ``b^2 - abc + a + c = 0``, ascending, without repetition."""
    d = disc(a, c)
    if is_exact(d) and is_exact(a) and is_exact(c):
        if d < 0:
            return []
        if d == 0:
            return [Fraction(a * c, 2)]
        r = _exact_sqrt(d)
        s = r if r is not None else math.sqrt(d)
        return sorted([(a * c - s) / 2, (a * c + s) / 2])
    if is_zero(d, max(1.0, abs(a * c)) ** 2):
        return [a * c / 2]
    if d < 0:
        return []
    s = math.sqrt(d)
    return sorted([(a * c - s) / 2, (a * c + s) / 2])


def _exact_sqrt(q):
    q = Fraction(q)
    n, m = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and m * m == q.denominator:
        return Fraction(n, m)
    return None


def _gt_one(v):
    return v > 1 and not is_zero(v - 1)


def classify_component(p) -> str:
    """``X`` iff ``x > 1`` and ``z > 1``, otherwise ``Branched``.

    Points with ``x = 1`` or ``z = 1`` exist only on the branched
    component (for instance ``(1, 1, 1, 1)``), so the strict inequality
    settles them.
    """
    p = _point(p)
    if not on_variety(*p.astuple()):
        raise ValueError("point is not on the variety")
    if _gt_one(p.x) and _gt_one(p.z):
        if not (p.w > 1 and p.y > 1):
            raise ArithmeticError("X point %r violates w > 1 and y > 1" % (p.astuple(),))
        return X
    return BRANCHED


def involution(p) -> ModuliPoint:
    """``(w, x, y, z) -> (y, z, w, x)``."""
    p = _point(p)
    if not on_variety(*p.astuple()):
        raise ValueError("point is not on the variety")
    return ModuliPoint(p.y, p.z, p.w, p.x, p.component)


def fixed_points_of_involution():
    """All real fixed points of the involution on the whole surface, tagged.

    Fixed points have ``w = y`` and ``x = z``; then ``wy = zx`` reads
    ``w^2 = x^2``.  The branch ``x = w`` leaves ``w^2 - 4w + 3 = 0`` and
    the branch ``x = -w`` leaves ``w^2 + 3 = 0``.
    """
    out = []
    for sgn in (1, -1):
        # 2w + 2x = 3 + w^2 with x = sgn * w:  w^2 - 2(1 + sgn) w + 3 = 0
        b = Fraction(-2 * (1 + sgn))
        d = b * b - 12
        if d < 0:
            continue
        r = _exact_sqrt(d)
        roots = {(-b - r) / 2, (-b + r) / 2} if r is not None else {(-b - math.sqrt(d)) / 2, (-b + math.sqrt(d)) / 2}
        for w in sorted(roots):
            x = sgn * w
            p = ModuliPoint(w, x, w, x)
            if on_variety(*p.astuple()):
                out.append(p.tagged())
    on_x = [p for p in out if p.component == X]
    if len(on_x) != 1 or on_x[0].astuple() != (3, 3, 3, 3):
        raise ArithmeticError("expected the unique fixed point (3,3,3,3) on X, got %r" % on_x)
    return out


def grid(lo, hi, steps, backend=None):
    """``steps`` evenly spaced values from ``lo`` to ``hi`` inclusive.

    Endpoints given as strings or exact numbers produce an exact grid.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    lo, hi = to_scalar(lo, RATIONAL), to_scalar(hi, RATIONAL)
    if steps == 1:
        vals = [lo]
    else:
        vals = [lo + (hi - lo) * Fraction(i, steps - 1) for i in range(steps)]
    if backend == FLOAT:
        return [float(v) for v in vals]
    return vals


def chart_grid(x_range, y_range, steps, backend=None):
    """Row-major chart points: ``x`` indexes rows, ``y`` runs within a row.

    Yields ``(ChartPoint, ModuliPoint or None)``; ``None`` marks points on
    the singular curve ``xy = x + y``.
    """
    xs = grid(*x_range, steps, backend)
    ys = grid(*y_range, steps, backend)
    for x in xs:
        for y in ys:
            c = ChartPoint(x, y)
            try:
                yield c, chart_lift(c)
            except ValueError:
                yield c, None


def sample_X(x_range, y_range, steps, backend=None):
    """Grid of chart points lifted to the surface, filtered to component ``X``."""
    out = []
    for _, p in chart_grid(x_range, y_range, steps, backend):
        if p is not None and classify_component(p) == X:
            out.append(p.tagged())
    return out
