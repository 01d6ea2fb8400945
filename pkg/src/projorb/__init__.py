"""Moduli of real projective structures on a one-tetrahedron hyperbolic 3-orbifold.

The orbifold fundamental group is ``<a, b | a^3 = b^3 = [a, b]^3 = 1>``;
structures modelled on one ideal tetrahedron correspond to points
``(w, x, y, z)`` on the surface ``w + x + y + z = 3 + wy``, ``wy = zx``.
"""

__version__ = "0.1.0"
