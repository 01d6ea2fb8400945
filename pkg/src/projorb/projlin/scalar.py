"""Dual-backend scalars.

Every number in the package is either a :class:`fractions.Fraction`
(exact backend) or a Python ``float`` (floating backend).  Integers are
promoted to fractions.  Comparisons against zero go through
:func:`is_zero` so that the same code path works for both backends.
"""

import math
from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)

_DEFAULT_EPS = 1e-9
_eps = _DEFAULT_EPS


def get_tolerance():
    return _eps


def set_tolerance(eps):
    """Set the global float tolerance.  Meant to be called once at startup."""
    global _eps
    eps = float(eps)
    if not eps > 0:
        raise ValueError("tolerance must be positive, got %r" % eps)
    _eps = eps


@contextmanager
def tolerance(eps):
    old = _eps
    set_tolerance(eps)
    try:
        yield
    finally:
        set_tolerance(old)


def is_exact(v):
    return isinstance(v, Rational)


def backend_of(*values):
    """``RATIONAL`` if every value is exact, otherwise ``FLOAT``."""
    return RATIONAL if all(is_exact(v) for v in values) else FLOAT


def to_scalar(v, backend=None):
    """Coerce ``v`` into the requested backend.

    Strings are parsed: ``"p/q"`` and integers become fractions, anything
    with a decimal point or exponent becomes a float, unless ``backend``
    forces otherwise.
    """
    if isinstance(v, str):
        s = v.strip()
        if backend is None:
            backend = FLOAT if any(ch in s for ch in ".eE") and "/" not in s else RATIONAL
        return Fraction(s) if backend == RATIONAL else float(Fraction(s))
    if backend is None:
        backend = RATIONAL if is_exact(v) else FLOAT
    if backend == RATIONAL:
        if isinstance(v, float):
            if not math.isfinite(v):
                raise ValueError("cannot represent %r exactly" % v)
            return Fraction(v)
        return Fraction(v)
    if backend == FLOAT:
        return float(v)
    raise ValueError("unknown backend %r" % backend)


def is_zero(v, scale=1.0):
    """Exact test for fractions; ``|v| <= eps * max(1, scale)`` for floats."""
    if is_exact(v):
        return v == 0
    return abs(v) <= _eps * max(1.0, abs(scale))


def close(a, b):
    """Equality in the sense of the active backend.

    Floats compare as ``|a - b| <= eps * max(1, |a|, |b|)``.
    """
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= _eps * max(1.0, abs(a), abs(b))


def sign(v):
    """Sign of ``v`` with the float tolerance collapsing tiny values to 0."""
    if is_zero(v):
        return 0
    return 1 if v > 0 else -1


def fmt(v):
    """Stable text for a scalar: ``p/q`` for fractions, 12 significant digits for floats."""
    if is_exact(v):
        return str(Fraction(v))
    if v == 0:
        v = 0.0
    return format(float(v), ".12g")
