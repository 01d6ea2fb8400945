"""Developing-map checks: axis injectivity, the commutator edge cycle and
its winding degree, the Alt(5) tessellation at (1,1,1,1), and cross-ratio
coordinates.

A projective simplex is the image of the positive cone on its vertex
vectors.  Four points in general position bound eight simplices in RP^3,
so simplices are keyed by their vertices *and* the signs of the vertex
lifts, modulo a global sign.
"""

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .holonomy import AffineParams, Representation, TraceCoords
from .projlin import Mat4, ProjPoint, ProjSubspace, cross_ratio, general_position
from .projlin import linalg
from .projlin.scalar import close, get_tolerance, is_zero

GROUP_CAP = 10_000

# words of the twelve translates around the commutator axis, in cyclic order
CYCLE_WORDS = ("", "A", "AB", "ABa", "C", "CA", "CAB", "CABa", "CC", "BAb", "BA", "B")

FIVE_POINTS = (
    ProjPoint([1, 0, 0, 0]),
    ProjPoint([0, 1, 0, 0]),
    ProjPoint([0, 0, 1, 0]),
    ProjPoint([0, 0, 0, 1]),
    ProjPoint([1, 1, -1, -1]),
)

# edges of the base tetrahedron fixed by each generator (vertex indices)
AXES = {"A": (0, 1), "B": (2, 3), "C": (0, 3)}


class SimplexImage:
    """A tetrahedron given by four signed vertex vectors."""

    __slots__ = ("vectors",)

    def __init__(self, vectors):
        self.vectors = tuple(tuple(v) for v in vectors)

    @classmethod
    def standard(cls):
        return cls(Mat4.identity().column(j) for j in range(4))

    @property
    def vertices(self):
        return tuple(ProjPoint(v) for v in self.vectors)

    def transform(self, m: Mat4):
        return SimplexImage(m @ v for v in self.vectors)

    def signed_vertices(self):
        return [(p.key(), p.scale_sign()) for p in self.vertices]

    def key(self):
        items = sorted(self.signed_vertices())
        flip = items[0][1]
        return tuple((k, s * flip) for k, s in items)

    def edge_key(self, i, j):
        (ki, si), (kj, sj) = self.signed_vertices()[i], self.signed_vertices()[j]
        return (tuple(sorted((ki, kj))), si * sj)

    def edge_keys(self):
        return {self.edge_key(i, j) for i, j in combinations(range(4), 2)}

    def non_degenerate(self):
        return general_position(self.vertices)

    def __eq__(self, other):
        return isinstance(other, SimplexImage) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class AxisReport(NamedTuple):
    A_axis: bool
    B_axis: bool


def axis_injectivity(p: AffineParams) -> AxisReport:
    """Local injectivity at the axes of ``A`` and ``B``.

    Injective at the ``A`` axis unless ``a1, a2 <= 0`` and at the ``B`` axis
    unless ``b3, b4 <= 0``.
    """
    def nonpositive(v):
        return v < 0 or is_zero(v)

    return AxisReport(
        not (nonpositive(p.a1) and nonpositive(p.a2)),
        not (nonpositive(p.b3) and nonpositive(p.b4)),
    )


@dataclass(frozen=True)
class EdgeCycleReport:
    images: tuple
    distinct_count: int
    period: int
    c_shift: bool
    degree: object = None


def cycle_matrices(r: Representation):
    return [r.word(w) for w in CYCLE_WORDS]


def commutator_cycle(r: Representation, with_degree=True) -> EdgeCycleReport:
    """The twelve translates of the base simplex around the commutator axis."""
    base = SimplexImage.standard()
    images = tuple(base.transform(m) for m in cycle_matrices(r))
    keys = [im.key() for im in images]
    n = len(images)
    period = next(k for k in range(1, n + 1)
                  if n % k == 0 and all(keys[(i + k) % n] == keys[i] for i in range(n)))
    c_shift = all(images[(i + 4) % n].key() == images[i].transform(r.C).key() for i in range(n))
    degree = edge_degree(r, images=images) if with_degree else None
    return EdgeCycleReport(images, len(set(keys)), period, c_shift, degree)


def _axis_points(images):
    common = [p for p in images[0].vertices
              if all(any(p == q for q in im.vertices) for im in images[1:])]
    if len(common) != 2:
        raise ValueError("the cycle does not share a single common edge (%d common vertices)"
                         % len(common))
    return common


def default_transverse(p, q):
    """A 2x4 matrix whose kernel is spanned by ``p`` and ``q``."""
    rows = linalg.nullspace([list(p.coords), list(q.coords)], 4)
    return [[float(v) for v in row] for row in rows]


def edge_degree(r: Representation, transverse=None, images=None) -> int:
    """Winding degree of the developed simplices around the commutator axis.

    Each simplex of the cycle is cut by a plane transverse to the axis in
    a wedge; consecutive wedges share a ray.  The signed angles of the
    wedges are summed and the total divided by a full turn.  ``transverse``
    is a 2x4 matrix killing the axis; any choice gives the same degree.
    """
    if images is None:
        base = SimplexImage.standard()
        images = [base.transform(m) for m in cycle_matrices(r)]
    for im in images:
        if not im.non_degenerate():
            raise ValueError("degenerate simplex in the edge cycle")
    p, q = _axis_points(images)
    for pt in (p, q):
        if not pt.transform(r.C) == pt:
            raise ValueError("common edge of the cycle is not fixed by C")
    if transverse is None:
        transverse = default_transverse(p, q)
    for row in transverse:
        for pt in (p, q):
            if not is_zero(sum(float(a) * float(b) for a, b in zip(row, pt.coords))):
                raise ValueError("transverse projection does not kill the axis")

    wedges = []
    for im in images:
        verts = im.vertices
        on_axis = {}
        off = []
        for v, vec in zip(verts, im.vectors):
            if v == p:
                on_axis["p"] = _ratio(vec, p.coords)
            elif v == q:
                on_axis["q"] = _ratio(vec, q.coords)
            else:
                off.append((v, vec))
        s = 1 if on_axis["p"] > 0 else -1
        if (on_axis["q"] > 0) != (on_axis["p"] > 0):
            raise ValueError("simplex contains the complementary segment of the axis")
        rays = []
        for v, vec in off:
            ray = tuple(s * sum(float(a) * float(b) for a, b in zip(row, vec)) for row in transverse)
            if math.hypot(*ray) <= get_tolerance():
                raise ValueError("degenerate transverse projection")
            rays.append((v, ray))
        wedges.append(rays)

    n = len(wedges)
    total = 0.0
    for j in range(n):
        enter = _shared(wedges[j - 1], wedges[j])
        leave = _shared(wedges[j], wedges[(j + 1) % n])
        a, b = wedges[j][enter][1], wedges[j][leave][1]
        total += math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])

    turns = abs(total) / (2 * math.pi)
    degree = round(turns)
    if degree < 1 or abs(turns - degree) > 1e-6:
        raise ArithmeticError("winding %.9f turns is not a positive integer" % turns)
    return degree


def _ratio(vec, ref):
    k = max(range(4), key=lambda i: abs(ref[i]))
    return vec[k] / ref[k]


def _shared(w1, w2):
    """Index in ``w2`` of the off-axis vertex it shares with ``w1``."""
    for i, (v2, ray2) in enumerate(w2):
        for v1, ray1 in w1:
            if v1 == v2:
                dot = ray1[0] * ray2[0] + ray1[1] * ray2[1]
                if dot <= 0:
                    raise ValueError("adjacent simplices disagree on a shared face")
                return i
    raise ValueError("consecutive simplices in the cycle do not share a face")


@dataclass(frozen=True)
class TessellationReport:
    group_order: int
    orbit_size: int
    stabilizer_size: int
    edge_adjacency: dict
    generator_cycles: dict
    permutation_group_order: int
    all_even: bool

    def matches_expected(self):
        return (self.group_order == 60 and self.orbit_size == 15 and self.stabilizer_size == 4
                and self.edge_adjacency == {"A": 3, "B": 3, "C": 6}
                and self.permutation_group_order == 60 and self.all_even
                and self.generator_cycles.get("disjoint_fixed_points", False))


def group_closure(generators, cap=GROUP_CAP):
    """All elements of the projective group generated by ``generators`` (BFS order)."""
    ident = Mat4.identity(generators[0].backend)
    seen = {ident.proj_key(): ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = (g @ s).proj_normalized()
            k = h.proj_key()
            if k not in seen:
                if len(seen) >= cap:
                    raise RuntimeError("group appears infinite (more than %d elements)" % cap)
                seen[k] = h
                order.append(h)
                queue.append(h)
    return order


def permutation_of(m: Mat4, points=FIVE_POINTS):
    """Permutation induced on ``points``, or None if they are not preserved."""
    perm = []
    for p in points:
        img = p.transform(m)
        j = next((k for k, q in enumerate(points) if q == img), None)
        if j is None:
            return None
        perm.append(j)
    return tuple(perm)


def _is_three_cycle(perm):
    moved = [i for i, j in enumerate(perm) if i != j]
    return len(moved) == 3 and all(perm[perm[perm[i]]] == i for i in moved)


def _parity(perm):
    seen, parity = set(), 0
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parity += length - 1
    return parity % 2


def alt5_analysis(r: Representation) -> TessellationReport:
    """The finite group ``<A, B>`` at ``a1 = a2 = b3 = b4 = 1`` and its tessellation."""
    if r.params.astuple() != (1, 1, 1, 1) or r.A.backend != "rational":
        raise ValueError("alt5_analysis is only defined at exact parameters (1,1,1,1)")
    group = group_closure([r.A, r.B])

    perms = [permutation_of(g) for g in group]
    pa, pb = permutation_of(r.A), permutation_of(r.B)
    cycles = {"A_three_cycle": pa is not None and _is_three_cycle(pa),
              "B_three_cycle": pb is not None and _is_three_cycle(pb)}
    if pa is not None and pb is not None:
        fixed_a = {i for i, j in enumerate(pa) if i == j}
        fixed_b = {i for i, j in enumerate(pb) if i == j}
        cycles["disjoint_fixed_points"] = (cycles["A_three_cycle"] and cycles["B_three_cycle"]
                                           and not fixed_a & fixed_b)
    else:
        cycles["disjoint_fixed_points"] = False
    valid = [p for p in perms if p is not None]
    perm_order = len(set(valid)) if len(valid) == len(perms) else 0
    all_even = bool(valid) and all(_parity(p) == 0 for p in valid)

    base = SimplexImage.standard()
    images = [base.transform(g) for g in group]
    base_key = base.key()
    orbit = {}
    for im in images:
        orbit.setdefault(im.key(), im)
    stabilizer = sum(1 for im in images if im.key() == base_key)

    adjacency = {}
    for name, (i, j) in AXES.items():
        edge = base.edge_key(i, j)
        adjacency[name] = sum(1 for im in orbit.values() if edge in im.edge_keys())

    return TessellationReport(len(group), len(orbit), stabilizer, adjacency, cycles,
                              perm_order, all_even)


BASE_PLANE = ProjSubspace.span(ProjPoint([1, 0, 0, 0]), ProjPoint([0, 1, 0, 0]),
                               ProjPoint([0, 0, 1, 0]))
B_LINE = ProjSubspace.span(ProjPoint([0, 0, 1, 0]), ProjPoint([0, 0, 0, 1]))

# plane images meeting the fixed line of B in the points named after the coordinates
CROSS_RATIO_WORDS = {"p3": "", "p4": "A", "p5": "AA", "px": "AbA", "py": "ABA", "pz": "aB", "pw": "ab"}


def cross_ratio_points(r: Representation):
    """Intersections of images of the plane ``<e1, e2, e3>`` with the line ``<e3, e4>``."""
    return {name: BASE_PLANE.transform(r.word(w)).intersect(B_LINE)
            for name, w in CROSS_RATIO_WORDS.items()}


def cross_ratio_coords(r: Representation) -> TraceCoords:
    """``(w, x, y, z)`` recovered as cross ratios on the fixed line of ``B``."""
    pts = cross_ratio_points(r)
    p3, p4, p5 = pts["p3"], pts["p4"], pts["p5"]
    return TraceCoords(
        cross_ratio(pts["pw"], p4, p5, p3),
        cross_ratio(pts["px"], p3, p5, p4),
        cross_ratio(pts["py"], p3, p5, p4),
        cross_ratio(pts["pz"], p4, p5, p3),
    )


def same_coords(t1: TraceCoords, t2: TraceCoords):
    return all(close(a, b) for a, b in zip(t1.astuple(), t2.astuple()))
