"""
Geometric phase of a three-state loop
=====================================

Carrying a state around the loop i -> j -> k -> i multiplies it by the
Bargmann invariant B = g_ij g_jk g_ki.  The argument of B is the
Pancharatnam phase of the loop, and on the Bloch sphere it is half the
oriented solid angle of the geodesic triangle, with a sign flip:

    u_ij u_jk u_ki = B / |B| = exp(-i Omega / 2)

The script checks this on the octant triple (z, x, y) and then shrinks
a triangle continuously to show the phase tracking the enclosed area.

Run with `python demos/geometric_phase_triangle.py`.
"""

import cmath
import math

from qpc import (
    QubitState,
    StateFamily,
    from_bloch,
    gram,
    solid_angle,
    to_bloch,
    triangle_report,
)

SQ2 = 2.0 ** -0.5

# The golden example: states along +z, +x, +y.  The geodesic triangle
# is one octant of the sphere, area pi/2.
octant = StateFamily(
    (QubitState(1.0, 0.0), QubitState(SQ2, SQ2), QubitState(SQ2, 1j * SQ2)),
    labels=("z", "x", "y"),
)
rep = triangle_report(gram(octant), 0, 1, 2)

print("octant triple (z, x, y):")
print(f"  bargmann invariant  {rep.bargmann:.6f}")
print(f"  amplitude factor    {rep.amplitude_factor:.6f}")
print(f"  triangular defect   {rep.defect:.6f}")
print(f"  pancharatnam phase  {rep.pancharatnam:.6f}  (pi/4 = {math.pi / 4:.6f})")
print(f"  solid angle         {rep.solid_angle:.6f}  (-pi/2 = {-math.pi / 2:.6f})")

# Same holonomy straight from the Bloch vectors, no amplitudes involved.
ns = [to_bloch(s).vector for s in octant.states]
omega = solid_angle(*ns)
print(f"\nsolid angle from Bloch vectors alone: {omega:.6f}")
print(f"exp(-i Omega / 2) = {cmath.exp(-0.5j * omega):.6f} vs defect {rep.defect:.6f}")

# Now pull the third vertex from +y toward +x along the equator.  The
# enclosed area shrinks to zero and the geometric phase follows it.
print("\nshrinking the triangle, third vertex at azimuth a:")
print(f"  {'azimuth':>10} {'solid angle':>14} {'pancharatnam':>14}")
for frac in (1.0, 0.75, 0.5, 0.25, 0.05):
    azim = frac * math.pi / 2.0
    third = from_bloch((math.cos(azim), math.sin(azim), 0.0))
    fam = StateFamily((octant[0], octant[1], third))
    r = triangle_report(gram(fam), 0, 1, 2)
    print(f"  {azim:10.4f} {r.solid_angle:14.6f} {r.pancharatnam:14.6f}")

# The two routes always agree: -2 * pancharatnam equals the solid angle
# whatever the triangle, because both are arguments of the same complex
# number read off in different coordinates.
