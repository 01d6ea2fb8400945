"""Characteristic polynomials and real roots of low-degree polynomials.

Polynomials are coefficient lists in descending degree, monic where it
matters: ``[1, c2, c1, c0]`` is ``l^3 + c2 l^2 + c1 l + c0``.
"""

import math
from fractions import Fraction

import numpy as np

from .matrix import N, Mat4
from .scalar import close, get_tolerance, is_exact, is_zero


def char_poly(m: Mat4):
    """Coefficients of ``det(l I - M)``, leading coefficient first.

    Computed by the Faddeev-LeVerrier recursion, which only divides by
    small integers and so stays exact on rational matrices.
    """
    if not m.is_invertible():
        raise ValueError("not invertible")
    exact = is_exact(m[0, 0])
    coeffs = [Fraction(1) if exact else 1.0]
    ident = Mat4.identity(m.backend)
    mk = Mat4([[0] * N] * N, m.backend)
    ck = coeffs[0]
    for k in range(1, N + 1):
        mk = m @ (mk + ident * ck)
        ck = -(mk.trace()) / k
        coeffs.append(ck)
    return coeffs


def evaluate(coeffs, t):
    acc = 0
    for c in coeffs:
        acc = acc * t + c
    return acc


def deflate(coeffs, root):
    """Synthetic division by ``(l - root)``; returns (quotient, remainder)."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * root)
    return out[:-1], out[-1]


def cubic_discriminant(c2, c1, c0):
    """Classical discriminant of the monic cubic ``l^3 + c2 l^2 + c1 l + c0``.

    ``18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`` with ``a = 1``.
    """
    return 18 * c2 * c1 * c0 - 4 * c2**3 * c0 + c2**2 * c1**2 - 4 * c1**3 - 27 * c0**2


def _trig_roots(c2, c1, c0):
    # depressed cubic t^3 + p t + q with l = t - c2/3
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0
    if p >= 0:
        # only reachable for a (numerically) triple root
        return [-shift] * 3
    r = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * r)
    arg = max(-1.0, min(1.0, arg))
    phi = math.acos(arg) / 3.0
    return [r * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]


def _cardano_root(c2, c1, c0):
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0
    s = math.sqrt(max(0.0, q * q / 4.0 + p**3 / 27.0))
    u = np.cbrt(-q / 2.0 + s)
    v = np.cbrt(-q / 2.0 - s)
    return float(u + v) - shift


def _polish(coeffs, r, steps=2):
    deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
    for _ in range(steps):
        d = evaluate(deriv, r)
        if d == 0:
            break
        nr = r - evaluate(coeffs, r) / d
        if abs(evaluate(coeffs, nr)) > abs(evaluate(coeffs, r)):
            break
        r = nr
    return r


def _rational_candidates(approx):
    seen = []
    for limit in (1, 10, 100, 1000, 10**6):
        q = Fraction(approx).limit_denominator(limit)
        if q not in seen:
            seen.append(q)
    return seen


def _exact_quadratic(b, c):
    """Rational roots of ``l^2 + b l + c`` if it splits over Q, else None."""
    d = b * b - 4 * c
    if d < 0:
        return None
    num, den = d.numerator, d.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    s = Fraction(rn, rd)
    return [(-b - s) / 2, (-b + s) / 2]


def real_roots_cubic(c2, c1, c0):
    """Real roots of ``l^3 + c2 l^2 + c1 l + c0`` with multiplicity, ascending.

    For exact coefficients the number of real roots is decided by the
    exact sign of the discriminant.  Float coefficients carry rounding
    from upstream, so a discriminant within the global tolerance
    (relative to the coefficient scale) counts as zero and the repeated
    root comes from its closed formula.  With a positive discriminant the
    three roots come from the trigonometric formula, otherwise Cardano's
    formula gives the single real root.

    Exact coefficients produce exact roots when they are rational, and
    floats otherwise.
    """
    exact = all(is_exact(c) for c in (c2, c1, c0))
    fc2, fc1, fc0 = (Fraction(c) for c in (c2, c1, c0))
    disc = cubic_discriminant(fc2, fc1, fc0)
    coeffs = [1.0, float(c2), float(c1), float(c0)]

    if exact:
        if disc >= 0:
            approx = sorted(_polish(coeffs, r) for r in _trig_roots(*coeffs[1:]))
        else:
            approx = [_polish(coeffs, _cardano_root(*coeffs[1:]))]
        found = _exact_cubic_roots([Fraction(1), fc2, fc1, fc0], disc, approx)
        if found is not None:
            return found
        return approx

    scale = max(1.0, *(abs(c) for c in coeffs[1:])) ** 4
    if is_zero(float(disc), scale):
        return _repeated_roots(*coeffs[1:])
    if disc > 0:
        return sorted(_polish(coeffs, r) for r in _trig_roots(*coeffs[1:]))
    return [_polish(coeffs, _cardano_root(*coeffs[1:]))]


def _repeated_roots(c2, c1, c0):
    """Roots of a cubic with zero discriminant: a double and a single root."""
    p = c2 * c2 - 3 * c1
    if is_zero(p, max(1.0, c2 * c2)):
        r = -c2 / 3
        return [r, r, r]
    double = (9 * c0 - c2 * c1) / (2 * p)
    single = -c2 - 2 * double
    return sorted([double, double, single])


def _exact_cubic_roots(coeffs, disc, approx):
    c2, c1, c0 = coeffs[1:]
    if disc == 0:
        # repeated roots of a rational cubic are rational
        if c2 * c2 == 3 * c1:
            r = -c2 / 3
            return [r, r, r]
        double = (9 * c0 - c2 * c1) / (2 * (c2 * c2 - 3 * c1))
        single = -c2 - 2 * double
        return sorted([double, double, single])
    for a in approx:
        for q in _rational_candidates(a):
            quot, rem = deflate(coeffs, q)
            if rem == 0:
                rest = _exact_quadratic(quot[1], quot[2])
                if rest is not None:
                    return sorted([q] + rest)
                if disc < 0:
                    return [q]
                others = [x for x in approx]
                others.remove(min(others, key=lambda x: abs(x - float(q))))
                return sorted([q] + others, key=float)
    return None


def real_roots(coeffs):
    """Real roots (ascending, with multiplicity) of a monic polynomial of degree <= 4.

    Rational roots of exact polynomials are split off exactly before the
    remaining factor is handled by the cubic/quadratic formulas.
    """
    coeffs = list(coeffs)
    if coeffs[0] != 1:
        raise ValueError("polynomial must be monic")
    exact = all(is_exact(c) for c in coeffs)
    roots = []
    while len(coeffs) > 4:
        if exact:
            approx = np.roots([float(c) for c in coeffs])
            hit = None
            for a in sorted(approx, key=lambda z: abs(z.imag)):
                for q in _rational_candidates(float(a.real)):
                    if deflate(coeffs, q)[1] == 0:
                        hit = q
                        break
                if hit is not None:
                    break
            if hit is not None:
                roots.append(hit)
                coeffs = deflate(coeffs, hit)[0]
                continue
        approx = np.roots([float(c) for c in coeffs])
        scale = max(1.0, max(abs(z) for z in approx))
        found = sorted(float(z.real) for z in approx if abs(z.imag) <= 1e-7 * scale)
        return sorted(roots + found, key=float)
    if len(coeffs) == 4:
        roots += real_roots_cubic(*coeffs[1:])
    elif len(coeffs) == 3:
        roots += _quadratic_roots(coeffs[1], coeffs[2])
    elif len(coeffs) == 2:
        roots.append(-coeffs[1])
    return sorted(roots, key=float)


def _quadratic_roots(b, c):
    if is_exact(b) and is_exact(c):
        split = _exact_quadratic(Fraction(b), Fraction(c))
        if split is not None:
            return split
    d = float(b) ** 2 - 4 * float(c)
    if d < 0 and not is_zero(d, float(b) ** 2):
        return []
    s = math.sqrt(max(d, 0.0))
    return [(-float(b) - s) / 2, (-float(b) + s) / 2]


def cubic_residual_ok(c2, c1, c0, r):
    """Residual check ``|p(r)| <= eps * (1 + |c2| + |c1| + |c0|)``."""
    bound = get_tolerance() * (1 + abs(c2) + abs(c1) + abs(c0))
    return abs(evaluate([1, c2, c1, c0], r)) <= bound


def coeffs_close(p, q):
    return len(p) == len(q) and all(close(a, b) for a, b in zip(p, q))
