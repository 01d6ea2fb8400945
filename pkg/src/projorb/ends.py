"""Cusp analysis at the two ends ``v1`` and ``v4``.

The peripheral group of ``v1`` is generated by ``A`` and the commutator
``C``; its torsion-free rank-two subgroup by ``AC`` and ``CA``.  At
``v4`` the roles are played by ``B^-1`` and ``C`` (``BC`` has order
three, so ``B^-1 C`` and ``C B^-1`` generate the lattice there).
"""

from dataclasses import dataclass, field

import numpy as np

from . import moduli
from .holonomy import Representation, TraceCoords, build_representation, lift_to_affine, trace_coords
from .projlin import Mat4, ProjPoint, ProjSubspace, char_poly, cubic_discriminant, real_roots, real_roots_cubic
from .projlin import linalg
from .projlin.poly import coeffs_close, deflate
from .projlin.scalar import close, is_exact, is_zero

STANDARD = "Standard"
GENERALIZED = "Generalized"
OFF_COMPONENT = "OffComponent"

V1 = "v1"
V4 = "v4"

# λ^3 - 3λ^2 + 3λ - 1
UNIPOTENT_CUBIC = (-3, 3, -1)


def _coords(t):
    return t if isinstance(t, TraceCoords) else TraceCoords(*t)


def ac_cubic(t):
    """Cubic factor ``(c2, c1, c0)`` of the characteristic polynomial of ``AC``."""
    w, x, y, z = _coords(t).astuple()
    return (-y * x - w + 2 * x + 2 * y - z, z * w - 2 * w + x + y - 2 * z, -1 + 0 * w)


def ac_char_poly_formula(t, check=True):
    """``(quartic, cubic)`` for ``AC``: quartic = ``(λ - 1)(λ^3 + c2 λ^2 + c1 λ + c0)``.

    With ``check`` the quartic is compared with the characteristic
    polynomial of the matrix ``AC`` built from :func:`lift_to_affine`.
    """
    t = _coords(t)
    c2, c1, c0 = ac_cubic(t)
    one = c0 * 0 + 1
    quartic = [one, c2 - 1, c1 - c2, c0 - c1, -c0]
    if check:
        r = build_representation(lift_to_affine(t))
        direct = char_poly(r.A @ r.C)
        if not coeffs_close(direct, quartic):
            raise ArithmeticError("formula %r disagrees with char poly %r" % (quartic, direct))
    return quartic, (c2, c1, c0)


def closed_form_discriminant(c):
    """Discriminant of the ``AC`` cubic over the ``(x, y)`` chart, in closed form."""
    if not isinstance(c, moduli.ChartPoint):
        c = moduli.ChartPoint(*c)
    x, y = c.x, c.y
    den = x * y - x - y
    if is_zero(den, max(1, abs(x * y))):
        raise ValueError("chart singular locus: xy - x - y = 0")
    num = ((y * y - 3 * y + 3) ** 2 * (x * x - 3 * x + 3) ** 2 * (x - y) ** 2
           * (x * x * y * y - 3 * x * x * y - 3 * x * y * y + 3 * x * x + 3 * x * y + 3 * y * y) ** 2)
    return num / den**6


@dataclass(frozen=True)
class PeripheralPair:
    end: str
    generators: tuple
    z2_generators: tuple


def peripheral_pair(r: Representation, end=V1) -> PeripheralPair:
    """Peripheral generators at ``end`` with the turnover relations checked."""
    A, B, C = r.A, r.B, r.C
    if end == V1:
        g, h = A, C
        turnover = A @ A @ C
        z2 = (A @ C, C @ A)
    elif end == V4:
        g, h = B, C
        turnover = B @ C
        Bi = B.inverse()
        z2 = (Bi @ C, C @ Bi)
    else:
        raise ValueError("end must be 'v1' or 'v4'")
    for name, m in (("generator", g), ("commutator", h), ("turnover product", turnover)):
        if not (m @ m @ m).is_scalar():
            raise ValueError("turnover relation fails at %s: %s cubed is not scalar" % (end, name))
    u, v = z2
    if not (u @ v) == (v @ u):
        raise ValueError("peripheral lattice generators at %s do not commute" % end)
    return PeripheralPair(end, (g, h), z2)


def end_cubic(t, end=V1):
    """Cubic factor of the peripheral char poly at ``end``, after removing ``λ - 1``."""
    t = _coords(t)
    if end == V1:
        return ac_cubic(t)
    r = build_representation(lift_to_affine(t))
    quartic = char_poly(peripheral_pair(r, V4).z2_generators[0])
    cubic, rem = deflate(quartic, 1)
    if not is_zero(rem):
        raise ArithmeticError("1 is not an eigenvalue of the v4 lattice generator")
    return tuple(cubic[1:])


@dataclass(frozen=True)
class CuspReport:
    type: str
    eigenvalues: tuple  # all four, descending
    cubic_roots: tuple  # the cubic factor's roots, descending
    discriminant: object
    end: str = V1
    flag: object = field(default=None, compare=False)


def cusp_type(t, end=V1, with_flag=False) -> CuspReport:
    """Standard (parabolic), generalised (positive real diagonalisable) or off-component."""
    t = _coords(t)
    cubic = end_cubic(t, end)
    disc = cubic_discriminant(*cubic)
    if end == V1 and not is_zero(t.x * t.y - t.x - t.y):
        closed = closed_form_discriminant((t.x, t.y))
        scale = max(1, *(abs(c) for c in cubic)) ** 4
        if not (close(closed, disc) or is_zero(closed - disc, scale)):
            raise ArithmeticError("closed-form discriminant %r != classical %r" % (closed, disc))
    roots = tuple(sorted(real_roots_cubic(*cubic), key=float, reverse=True))
    eigen = tuple(sorted(roots + (roots[0] * 0 + 1,), key=float, reverse=True))

    if all(close(a, b) for a, b in zip(cubic, UNIPOTENT_CUBIC)):
        kind = STANDARD
    elif (len(roots) == 3 and all(v > 0 and not is_zero(v) for v in roots)
          and any(not close(v, 1) for v in roots)
          and moduli.classify_component(t.astuple()) == moduli.X):
        kind = GENERALIZED
    else:
        kind = OFF_COMPONENT

    flag = None
    if with_flag:
        r = build_representation(lift_to_affine(t))
        flag = invariant_flag(peripheral_pair(r, end))
    return CuspReport(kind, eigen, roots, disc, end, flag)


def _eigenvalues(m: Mat4, cluster=1e-3):
    """Distinct real eigenvalues, exact where rational.

    Float matrices with a repeated eigenvalue produce a cluster of nearby
    (possibly complex) numerical eigenvalues; each cluster is replaced by
    its mean, which is accurate because the trace of the block is.
    """
    if m.backend == "rational":
        out = []
        for v in real_roots(char_poly(m)):
            if not any(close(v, u) for u in out):
                out.append(v)
        return out
    groups = []
    for lam in sorted(np.linalg.eigvals(m.to_numpy()), key=lambda z: (z.real, z.imag)):
        for g in groups:
            if any(abs(lam - mu) <= cluster * max(1.0, abs(mu)) for mu in g):
                g.append(lam)
                break
        else:
            groups.append([lam])
    means = [sum(g) / len(g) for g in groups]
    return [float(mu.real) for mu in means if abs(mu.imag) <= 1e-9 * max(1.0, abs(mu))]


def _kernel(rows, tol=1e-7):
    """Right kernel: exact for fractions, SVD with a relative cut-off for floats."""
    if all(is_exact(v) for r in rows for v in r):
        return linalg.nullspace(rows, 4)
    a = np.array([[float(v) for v in r] for r in rows])
    _, s, vt = np.linalg.svd(a)
    smax = max(1.0, float(s[0])) if len(s) else 1.0
    s = np.concatenate([s, np.zeros(4 - len(s))])
    return [list(vt[i]) for i in range(4) if s[i] <= tol * smax]


def common_eigenvectors(g1: Mat4, g2: Mat4):
    """Real vectors that are eigenvectors of both matrices, with g1's eigenvalue."""
    out = []
    ident = Mat4.identity(g1.backend)
    for mu in sorted(_eigenvalues(g1), key=float, reverse=True):
        for nu in _eigenvalues(g2):
            rows = [list(r) for r in (g1 - ident * mu).rows] + [list(r) for r in (g2 - ident * nu).rows]
            for vec in _kernel(rows):
                out.append((mu, vec))
    return out


def invariant_flag(pp: PeripheralPair):
    """A point and a plane through it, both invariant under the lattice generators."""
    u, v = pp.z2_generators
    if u.is_scalar() and v.is_scalar():
        e = [ProjPoint.basis(i) for i in range(4)]
        return e[0], ProjSubspace.span(e[0], e[1], e[2])
    points = common_eigenvectors(u, v)
    covectors = common_eigenvectors(u.T, v.T)
    for _, p in points:
        for _, phi in covectors:
            pairing = sum(a * b for a, b in zip(p, phi))
            if is_zero(pairing, max(abs(a) for a in p) * max(abs(b) for b in phi)):
                plane = _kernel([list(phi)], tol=1e-9)
                return ProjPoint(p), ProjSubspace([ProjPoint(b) for b in plane])
    raise ValueError("no real flag found")


def hexends_basis(r: Representation) -> Mat4:
    """Change of basis ``P`` with ``P^-1 A P`` the 3-cycle and ``P^-1 (AC) P`` diagonal.

    ``p1`` is an eigenvector of ``AC`` for a simple eigenvalue (the one
    farthest from 1 on a log scale), ``p2 = A p1``, ``p3 = A p2`` and ``p4``
    spans the common fixed line of ``A`` and ``AC``.
    """
    t = trace_coords(r.params, check=False)
    if all(close(v, 3) for v in t.astuple()):
        raise ValueError("parabolic cusp, not diagonalizable")
    if moduli.classify_component(t.astuple()) != moduli.X:
        raise ValueError("hexends_basis needs a point of component X")
    a = r.A.to_numpy()
    ac = (r.A @ r.C).to_numpy()
    ev = np.linalg.eigvals(ac)
    if np.max(np.abs(ev.imag)) > 1e-7:
        raise ArithmeticError("AC has non-real eigenvalues")
    ev = ev.real
    simple = [lam for lam in ev if sum(abs(lam - mu) <= 1e-6 * max(1.0, abs(lam)) for mu in ev) == 1]
    if not simple:
        raise ArithmeticError("AC has no simple eigenvalue")
    lam1 = max(simple, key=lambda lam: abs(np.log(abs(lam))))
    _, _, vt = np.linalg.svd(ac - lam1 * np.eye(4))
    p1 = vt[-1]
    p2 = a @ p1
    p3 = a @ p2
    _, _, vt = np.linalg.svd(np.vstack([a - np.eye(4), ac - np.eye(4)]))
    p4 = vt[-1]
    P = np.column_stack([p1, p2, p3, p4])
    if abs(np.linalg.det(P)) < 1e-9:
        raise ArithmeticError("hexends basis is singular")
    return Mat4(P.tolist())


PERMUTATION_3_CYCLE = Mat4([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def cusp_types_agree(t):
    """Both ends give the same cusp type (conjugation invariance check)."""
    return cusp_type(t, V1).type == cusp_type(t, V4).type
