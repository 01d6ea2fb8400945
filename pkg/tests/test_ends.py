import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings

from conftest import sampled_x_points, small_fraction, x_points
from projorb import ends, holonomy, moduli
from projorb.holonomy import build_representation, lift_to_affine
from projorb.projlin import Mat4, ProjPoint, char_poly, cubic_discriminant


def rep_at(t):
    t = t.astuple() if hasattr(t, "astuple") else t
    return build_representation(lift_to_affine(t))


def test_ac_formula_examples():
    assert ends.ac_cubic((3, 3, 3, 3)) == (-3, 3, -1)
    assert ends.ac_cubic((1, 1, 1, 1)) == (1, -1, -1)
    quartic, _ = ends.ac_char_poly_formula((3, 3, 3, 3))
    assert quartic == [1, -4, 6, -4, 1]


@given(x_points())
def test_ac_formula_matches_matrix(p):
    quartic, _ = ends.ac_char_poly_formula(p.astuple(), check=False)
    r = rep_at(p)
    assert char_poly(r.A @ r.C) == quartic


def test_ac_formula_symbolically():
    # on the section b3 = 1 the quartic is (l - 1) times the displayed cubic
    x, y, wx = sympy.symbols("x y wx")
    lam = sympy.Symbol("lam")
    a1, a2, b3, b4 = x, y, 1, wx
    A = sympy.Matrix([[1, 0, 0, a1], [0, 1, 0, a2], [0, 0, 0, -1], [0, 0, 1, -1]])
    B = sympy.Matrix([[-1, 1, 0, 0], [-1, 0, 0, 0], [b3, 0, 1, 0], [b4, 0, 0, 1]])
    C = A * B * A.inv() * B.inv()
    w, z = x * wx, y * wx
    cubic = lam ** 3 + (-y * x - w + 2 * x + 2 * y - z) * lam ** 2 + (z * w - 2 * w + x + y - 2 * z) * lam - 1
    diff = sympy.expand((A * C).charpoly(lam).as_expr() - (lam - 1) * cubic)
    # the identity needs the surface relation; substitute the chart value of w/x
    chart = (3 - x - y) / (x + y - x * y)
    assert sympy.simplify(diff.subs(wx, chart)) == 0


def test_closed_form_discriminant_symbolically():
    x, y = sympy.symbols("x y")
    den = x + y - x * y
    w = x * (3 - x - y) / den
    z = y * (3 - x - y) / den
    c2 = -y * x - w + 2 * x + 2 * y - z
    c1 = z * w - 2 * w + x + y - 2 * z
    c0 = -1
    classical = 18 * c2 * c1 * c0 - 4 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2 - 4 * c1 ** 3 - 27 * c0 ** 2
    closed = ((y * y - 3 * y + 3) ** 2 * (x * x - 3 * x + 3) ** 2 * (x - y) ** 2
              * (x * x * y * y - 3 * x * x * y - 3 * x * y * y + 3 * x * x + 3 * x * y + 3 * y * y) ** 2
              / (x * y - x - y) ** 6)
    assert sympy.simplify(sympy.together(classical - closed)) == 0


def test_closed_form_discriminant_examples():
    assert ends.closed_form_discriminant((3, 3)) == 0
    d = ends.closed_form_discriminant((3, 2))
    assert d > 0 and isinstance(d, Fraction)
    assert d == cubic_discriminant(*ends.ac_cubic(moduli.chart_lift((3, 2)).astuple()))
    assert ends.closed_form_discriminant((1, 1)) == 0
    with pytest.raises(ValueError):
        ends.closed_form_discriminant((2, 2))


@given(small_fraction(-5, 7, 6), small_fraction(-5, 7, 6))
def test_closed_form_matches_classical(x, y):
    assume(x * y - x - y != 0)
    d = ends.closed_form_discriminant((x, y))
    assert d >= 0
    assert d == cubic_discriminant(*ends.ac_cubic(moduli.chart_lift((x, y)).astuple()))


def test_cusp_examples():
    hyp = ends.cusp_type((3, 3, 3, 3))
    assert hyp.type == ends.STANDARD and hyp.eigenvalues == (1, 1, 1, 1)
    gen = ends.cusp_type(moduli.chart_lift((4, 3)).astuple())
    assert gen.type == ends.GENERALIZED
    assert all(v > 0 for v in gen.cubic_roots)
    assert math.prod(float(v) for v in gen.cubic_roots) == pytest.approx(1, rel=1e-12)
    assert any(abs(float(v) - 1) > 1e-6 for v in gen.cubic_roots)
    br = ends.cusp_type((1, 1, 1, 1))
    assert br.type == ends.OFF_COMPONENT and br.eigenvalues == (1, 1, -1, -1)


@settings(max_examples=30)
@given(x_points())
def test_generalized_away_from_hyperbolic_point(p):
    assume(p.astuple() != (3, 3, 3, 3))
    c = ends.cusp_type(p.astuple())
    assert c.type == ends.GENERALIZED
    assert ends.cusp_types_agree(p.astuple())
    assert math.prod(float(v) for v in c.cubic_roots) == pytest.approx(1, rel=1e-9)


def test_peripheral_pairs():
    r = build_representation(holonomy.AffineParams.of(3, 3, 1, 1))
    pp = ends.peripheral_pair(r, ends.V1)
    u, v = pp.z2_generators
    assert (u @ v).rows == (v @ u).rows
    r1 = build_representation(holonomy.AffineParams.of(1, 1, 1, 1))
    turnover = r1.A @ r1.A @ r1.C
    assert (turnover ** 3).rows == Mat4.identity().rows
    pp4 = ends.peripheral_pair(r, ends.V4)
    u, v = pp4.z2_generators
    assert (u @ v).rows == (v @ u).rows
    assert ((r.B @ r.C) ** 3).rows == Mat4.identity().rows


def test_peripheral_pair_rejects_off_relation():
    r = build_representation(holonomy.AffineParams.of(1, 1, 1, 2))
    with pytest.raises(ValueError):
        ends.peripheral_pair(r, ends.V1)


def _check_flag(pp, flag):
    p, plane = flag
    assert plane.contains(p)
    for g in pp.z2_generators:
        assert p.transform(g) == p
        assert plane.transform(g) == plane


@pytest.mark.parametrize("t", [(3, 3, 3, 3), (3.0, 3.0, 3.0, 3.0), (3.2, 4.0, 3.0, 2.4),
                               moduli.chart_lift((4, 3)).astuple(),
                               moduli.chart_lift((Fraction(5, 2), 6)).astuple()])
@pytest.mark.parametrize("end", [ends.V1, ends.V4])
def test_invariant_flags(t, end):
    pp = ends.peripheral_pair(rep_at(t), end)
    _check_flag(pp, ends.invariant_flag(pp))


def test_invariant_flag_trivial_generators():
    ident = Mat4.identity()
    pp = ends.PeripheralPair("v1", (ident, ident), (ident, ident))
    p, plane = ends.invariant_flag(pp)
    assert p == ProjPoint.basis(0)
    assert plane.contains(ProjPoint.basis(2)) and not plane.contains(ProjPoint.basis(3))


def _check_hexends(t, tol):
    r = rep_at(t)
    P = ends.hexends_basis(r)
    Pinv = np.linalg.inv(P.to_numpy())
    d = Pinv @ (r.A @ r.C).to_numpy() @ P.to_numpy()
    a = Pinv @ r.A.to_numpy() @ P.to_numpy()
    off = d - np.diag(np.diag(d))
    assert np.max(np.abs(off)) <= tol
    assert np.max(np.abs(a - ends.PERMUTATION_3_CYCLE.to_numpy())) <= tol
    assert d[3, 3] == pytest.approx(1, abs=tol)
    return np.diag(d)


def test_hexends_at_chart_point():
    diag = _check_hexends(moduli.chart_lift((4, 3)).astuple(), 1e-9)
    assert np.prod(diag) == pytest.approx(1)


def test_hexends_on_samples_and_float_backend():
    for p in sampled_x_points(10, seed=11):
        _check_hexends(p.astuple(), 1e-8)
        _check_hexends(tuple(float(v) for v in p.astuple()), 1e-8)


def test_hexends_errors():
    with pytest.raises(ValueError, match="parabolic cusp"):
        ends.hexends_basis(rep_at((3, 3, 3, 3)))
    with pytest.raises(ValueError):
        ends.hexends_basis(rep_at((1, 1, 1, 1)))
