"""Holonomy representations of the orbifold group into SL(4, R).

The face pairings of the tetrahedron ``[e1, e2, e3, e4]`` are normalised
(up to conjugacy and scale) to

    A = [[1, 0, 0, a1],        B = [[-1, 1, 0, 0],
         [0, 1, 0, a2],             [-1, 0, 0, 0],
         [0, 0, 0, -1],             [b3, 0, 1, 0],
         [0, 0, 1, -1]]             [b4, 0, 0, 1]]

which satisfy ``A^3 = B^3 = I`` for every choice of ``(a1, a2, b3, b4)``.
The commutator ``C = A B A^-1 B^-1`` has order three exactly when
``(a1 + a2)(b3 + b4) = 3 + a1 a2 b3 b4``.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .projlin import Mat4
from .projlin.scalar import backend_of, close, is_zero, to_scalar


@dataclass(frozen=True)
class AffineParams:
    a1: object
    a2: object
    b3: object
    b4: object

    def __post_init__(self):
        backend = backend_of(self.a1, self.a2, self.b3, self.b4)
        for name in ("a1", "a2", "b3", "b4"):
            object.__setattr__(self, name, to_scalar(getattr(self, name), backend))

    @classmethod
    def of(cls, *values):
        return cls(*(to_scalar(v) for v in values))

    def astuple(self):
        return (self.a1, self.a2, self.b3, self.b4)

    def relation_defect(self):
        """``(a1 + a2)(b3 + b4) - 3 - a1 a2 b3 b4``; zero on the relation."""
        a1, a2, b3, b4 = self.astuple()
        return (a1 + a2) * (b3 + b4) - 3 - a1 * a2 * b3 * b4

    @property
    def on_relation(self):
        return is_zero(self.relation_defect(), scale=max(1, *(abs(v) for v in self.astuple())) ** 4)

    @property
    def degenerate(self):
        """The discarded case ``a1 = a2 = b3 = b4 = 0`` where the commutator is trivial."""
        return all(is_zero(v) for v in self.astuple())


@dataclass(frozen=True)
class TraceCoords:
    w: object
    x: object
    y: object
    z: object

    def __post_init__(self):
        backend = backend_of(self.w, self.x, self.y, self.z)
        for name in "wxyz":
            object.__setattr__(self, name, to_scalar(getattr(self, name), backend))

    def astuple(self):
        return (self.w, self.x, self.y, self.z)

    def __eq__(self, other):
        if not isinstance(other, TraceCoords):
            return NotImplemented
        return all(close(a, b) for a, b in zip(self.astuple(), other.astuple()))

    def __hash__(self):
        return hash(self.astuple())


@dataclass(frozen=True)
class Representation:
    A: Mat4
    B: Mat4
    params: AffineParams
    C: Mat4 = field(init=False, compare=False)

    def __post_init__(self):
        A, B = self.A, self.B
        object.__setattr__(self, "C", A @ B @ A.inverse() @ B.inverse())

    @property
    def on_relation(self):
        return self.params.on_relation

    def word(self, letters):
        """Evaluate a word in ``A, B, C`` and their inverses (``a``, ``b``, ``c``)."""
        gens = {"A": self.A, "B": self.B, "C": self.C}
        out = Mat4.identity(self.A.backend)
        for ch in letters:
            m = gens[ch.upper()]
            out = out @ (m if ch.isupper() else m.inverse())
        return out


class RelationReport(NamedTuple):
    A3: bool
    B3: bool
    C3: bool

    def __bool__(self):
        return self.A3 and self.B3 and self.C3


def face_pairings(p: AffineParams):
    a1, a2, b3, b4 = p.astuple()
    A = Mat4([[1, 0, 0, a1], [0, 1, 0, a2], [0, 0, 0, -1], [0, 0, 1, -1]])
    B = Mat4([[-1, 1, 0, 0], [-1, 0, 0, 0], [b3, 0, 1, 0], [b4, 0, 0, 1]])
    return A, B


def build_representation(p: AffineParams) -> Representation:
    if not isinstance(p, AffineParams):
        p = AffineParams.of(*p)
    A, B = face_pairings(p)
    return Representation(A, B, p)


def verify_relations(r: Representation) -> RelationReport:
    """Which of ``A^3, B^3, C^3`` are scalar matrices.

    For the unit-determinant lifts used here the scalar, when there is
    one, is 1; that is checked as well.
    """
    def check(m):
        cube = m @ m @ m
        if not cube.is_scalar():
            return False
        return close(cube[0, 0], 1)

    return RelationReport(check(r.A), check(r.B), check(r.C))


def trace_coords(p: AffineParams, check=True) -> TraceCoords:
    """``(w, x, y, z) = (a1 b4, a1 b3, a2 b3, a2 b4)``.

    With ``check`` the four trace identities ``w = 2 + tr AB``,
    ``x = 2 + tr A^-1 B``, ``y = 2 + tr A^-1 B^-1``, ``z = 2 + tr A B^-1``
    are verified on the actual matrices.
    """
    if not isinstance(p, AffineParams):
        p = AffineParams.of(*p)
    a1, a2, b3, b4 = p.astuple()
    t = TraceCoords(a1 * b4, a1 * b3, a2 * b3, a2 * b4)
    if check:
        traces = trace_words(build_representation(p))
        for name, val, tr in zip("wxyz", t.astuple(), traces):
            if not close(val, tr):
                raise ArithmeticError("trace identity for %s fails: %r != %r" % (name, val, tr))
    return t


def trace_words(r: Representation):
    """``2 + tr`` of ``AB, A^-1 B, A^-1 B^-1, A B^-1``, in the order w, x, y, z."""
    return tuple(2 + r.word(w).trace() for w in ("AB", "aB", "ab", "Ab"))


def scale_action(p: AffineParams, m) -> AffineParams:
    """Conjugation by ``diag(m, m, 1/m, 1/m)`` on the parameters."""
    if is_zero(m):
        raise ValueError("scaling factor must be nonzero")
    m = to_scalar(m)
    return AffineParams(m * p.a1, m * p.a2, p.b3 / m, p.b4 / m)


def scaling_matrix(m):
    """Conjugator realising :func:`scale_action` with factor ``m``.

    Conjugation by ``diag(s, s, t, t)`` multiplies ``a1, a2`` by ``s/t`` and
    ``b3, b4`` by ``t/s``, so ``diag(m, m, m^-1, m^-1)`` would scale by
    ``m^2``.  ``diag(m, m, 1, 1)`` gives exactly ``m`` for either sign.
    """
    m = to_scalar(m)
    if is_zero(m):
        raise ValueError("scaling factor must be nonzero")
    return Mat4.diag(m, m, m * 0 + 1, m * 0 + 1)


def lift_to_affine(t: TraceCoords) -> AffineParams:
    """Section of the scaling quotient with ``b3 = 1``: ``(x, y, 1, w/x)``."""
    if not isinstance(t, TraceCoords):
        t = TraceCoords(*t)
    w, x, y, z = t.astuple()
    if is_zero(x):
        raise ValueError("lift undefined on this chart (x = 0)")
    if not close(w * y, x * z):
        raise ValueError("trace coordinates violate wy = xz")
    one = 1 if backend_of(x) == "rational" else 1.0
    return AffineParams(x, y, one, w / x)


def conjugate_equivalent(r1: Representation, r2: Representation) -> bool:
    """Whether two on-relation representations differ by the scaling action."""
    p1, p2 = r1.params, r2.params
    # a1, a2 cannot both vanish on the relation
    k = max(range(2), key=lambda i: abs(p1.astuple()[i]))
    if is_zero(p1.astuple()[k]) or is_zero(p2.astuple()[k]):
        return False
    m = p2.astuple()[k] / p1.astuple()[k]
    scaled = scale_action(p1, m)
    return all(close(a, b) for a, b in zip(scaled.astuple(), p2.astuple()))
