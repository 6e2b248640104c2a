"""Three-point loop invariants of a qubit state family.

For an ordered triple (i, j, k) the Bargmann invariant

    B_ijk = g_ij g_jk g_ki

is invariant under rephasing of the individual states, so it is a
function of the rays alone.  Its modulus is the product of the three
overlap moduli; its normalized value

    kappa_ijk = u_ij u_jk u_ki = B_ijk / |B_ijk|

is the triangular defect of the phase level, and its argument

    gamma_ijk = arg B_ijk  in (-pi, pi]

is the geometric (Pancharatnam) phase of the loop i -> j -> k -> i.

On the Bloch sphere the same invariant is a trace of three projectors,

    B_ijk = (1 + n_i.n_j + n_j.n_k + n_k.n_i + i n_i.(n_j x n_k)) / 4,

and the defect is the exponential of the oriented solid angle Omega of
the geodesic triangle (n_i, n_j, n_k):

    kappa_ijk = exp(-i Omega / 2),

with the sign convention fixed so that this identity holds, so the
octant triple (z, x, y) has Omega = -pi/2 and geometric phase +pi/4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .comparisons import DEFAULT_ZERO_TOL, GramMatrix, PhaseMatrix
from .states import BlochVector

DEFECT_CONSISTENCY_TOL = 1e-12  # the two defect computations must agree
DEGENERACY_TOL = 1e-9           # antipodal pair cutoff for solid angles


@dataclass(frozen=True)
class TriangleReport:
    """All three-point invariants of one ordered triple.

    Fields satisfy bargmann = amplitude_factor * defect,
    pancharatnam = arg(defect) in (-pi, pi], and
    solid_angle = -2 * pancharatnam in [-2 pi, 2 pi), where the lower
    endpoint occurs only for real negative invariants (pancharatnam pi).
    """

    triple: tuple[int, int, int]
    bargmann: complex
    defect: complex
    pancharatnam: float
    solid_angle: float
    amplitude_factor: float


def _check_triple(n: int, i: int, j: int, k: int) -> None:
    for v in (i, j, k):
        if not 0 <= v < n:
            raise ValueError(f"index {v} out of range for {n} states")
    if len({i, j, k}) != 3:
        raise ValueError(f"triple ({i}, {j}, {k}) has repeated indices")


def bargmann(g: GramMatrix, i: int, j: int, k: int) -> complex:
    """Third-order Bargmann invariant g_ij g_jk g_ki."""
    _check_triple(g.n, i, j, k)
    e = g.entries
    return complex(e[i, j] * e[j, k] * e[k, i])


def defect(u: PhaseMatrix, i: int, j: int, k: int) -> complex:
    """Triangular defect u_ij u_jk u_ki of the phase level.

    Requires all three pairs to lie in the support graph.
    """
    _check_triple(u.n, i, j, k)
    for a, b in ((i, j), (j, k), (k, i)):
        if not u.has(a, b):
            raise ValueError(
                f"triangle not in support: no phase for pair ({min(a, b)}, {max(a, b)})"
            )
    return u.entry(i, j) * u.entry(j, k) * u.entry(k, i)


def _principal(angle: float) -> float:
    # atan2 can return -pi on a signed-zero imaginary part; fold it to +pi.
    return math.pi if angle == -math.pi else angle


def triangle_report(
    g: GramMatrix, i: int, j: int, k: int, zero_tol: float = DEFAULT_ZERO_TOL
) -> TriangleReport:
    """Amplitude/phase split of the Bargmann invariant of one triple.

    The defect is computed twice, from the three normalized overlaps and
    by normalizing the Bargmann invariant itself; the two paths must
    agree to 1e-12 or the report is refused.  Triples with a vanishing
    overlap carry no phase information and are rejected.
    """
    _check_triple(g.n, i, j, k)
    e = g.entries
    moduli = {}
    for a, b in ((i, j), (j, k), (k, i)):
        m = abs(e[a, b])
        if m <= zero_tol:
            raise ValueError(
                "Bargmann invariant is zero; phase undefined "
                f"(overlap of pair ({min(a, b)}, {max(a, b)}) vanishes)"
            )
        moduli[(a, b)] = m
    b_inv = complex(e[i, j] * e[j, k] * e[k, i])
    amplitude = moduli[(i, j)] * moduli[(j, k)] * moduli[(k, i)]
    kappa_phases = (
        (e[i, j] / moduli[(i, j)])
        * (e[j, k] / moduli[(j, k)])
        * (e[k, i] / moduli[(k, i)])
    )
    kappa_norm = b_inv / abs(b_inv)
    if abs(kappa_phases - kappa_norm) > DEFECT_CONSISTENCY_TOL:
        raise ArithmeticError(
            "defect and normalized Bargmann invariant disagree: "
            f"|delta| = {abs(kappa_phases - kappa_norm)!r}"
        )
    gamma = _principal(cmath.phase(kappa_phases))
    return TriangleReport(
        triple=(i, j, k),
        bargmann=b_inv,
        defect=kappa_phases,
        pancharatnam=gamma,
        solid_angle=-2.0 * gamma,
        amplitude_factor=amplitude,
    )


def _as_unit3(n) -> np.ndarray:
    if isinstance(n, BlochVector):
        return n.vector
    arr = np.asarray(n, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


def bargmann_bloch(ni, nj, nk) -> complex:
    """Bargmann invariant from Bloch vectors alone.

    Evaluates (1 + sum of pairwise dots + i triple product) / 4, the
    trace of the three corresponding rank-1 projectors.
    """
    a, b, c = _as_unit3(ni), _as_unit3(nj), _as_unit3(nk)
    dots = float(a @ b + b @ c + c @ a)
    triple = float(a @ np.cross(b, c))
    return complex(0.25 * (1.0 + dots), 0.25 * triple)


def solid_angle(ni, nj, nk) -> float:
    """Oriented solid angle of a geodesic triangle on the unit sphere.

    Returns a value in [-2 pi, 2 pi), with the sign convention matched
    to the defect: exp(-i Omega / 2) = u_ij u_jk u_ki.  Degenerate
    triangles (a repeated vertex, or vertices on a common great circle
    with the short arcs enclosing nothing) give 0; a great-circle triple
    that bounds a hemisphere gives -2 pi.  Pairs that are antipodal
    within 1e-9 leave the geodesic ill-defined and are rejected.
    """
    a, b, c = _as_unit3(ni), _as_unit3(nj), _as_unit3(nk)
    for u, v, name in ((a, b, "first/second"), (b, c, "second/third"), (c, a, "third/first")):
        if 1.0 + float(u @ v) <= DEGENERACY_TOL:
            raise ValueError(
                f"geodesic triangle degenerate: {name} vertices are antipodal"
            )
    dots = float(a @ b + b @ c + c @ a)
    triple = float(a @ np.cross(b, c))
    return -2.0 * math.atan2(triple, 1.0 + dots)


def all_triangles(g: GramMatrix, zero_tol: float = DEFAULT_ZERO_TOL) -> list:
    """Reports for every triple i < j < k with full phase support.

    Triples with a vanishing overlap are skipped; the rest are listed in
    lexicographic order of their canonical orientation.
    """
    reports = []
    n = g.n
    for i in range(n):
        for j in range(i + 1, n):
            if abs(g.entries[i, j]) <= zero_tol:
                continue
            for k in range(j + 1, n):
                if (
                    abs(g.entries[j, k]) <= zero_tol
                    or abs(g.entries[k, i]) <= zero_tol
                ):
                    continue
                reports.append(triangle_report(g, i, j, k, zero_tol))
    return reports
