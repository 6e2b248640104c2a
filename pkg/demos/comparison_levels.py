"""
Three levels of pairwise comparison
===================================

A family of qubit states can be compared pairwise at three depths:
the complex overlap amplitudes, the transition probabilities they
square to, and the bare unit phases left after the moduli are divided
out.  This script builds a small family and walks down the hierarchy.

Run with `python demos/comparison_levels.py`.
"""

import numpy as np

from qpc import (
    QubitState,
    StateFamily,
    check_matching,
    gram,
    orthogonality_graph,
    phases,
    probabilities,
)

SQ2 = 2.0 ** -0.5

# Four states: the two poles of the Bloch sphere and the two
# equatorial states along +x and -x.  Poles are orthogonal to each
# other, and so are the equatorial pair.
family = StateFamily(
    (
        QubitState(1.0, 0.0),
        QubitState(0.0, 1.0),
        QubitState(SQ2, SQ2),
        QubitState(SQ2, -SQ2),
    ),
    labels=("north", "south", "plus", "minus"),
)

# Level one: the full overlap matrix <psi_i, psi_j>.  Everything else
# in the package is computed from it.
g = gram(family)
print("overlap amplitudes g_ij:")
print(np.array_str(g.entries, precision=4, suppress_small=True))

# Level two: squaring the moduli forgets the phases and leaves the
# transition probabilities of projective measurements.
p = probabilities(g)
print("\ntransition probabilities |g_ij|^2:")
print(np.array_str(p.entries, precision=4, suppress_small=True))

# Level three: dividing the moduli out leaves unit phases, but only
# where the overlap is nonzero.  Orthogonal pairs carry no phase; the
# support graph records which pairs still do.
u = phases(g)
print("\nphases on support pairs:")
for i, j in sorted(u.support.edges):
    print(f"  ({i}, {j})  u = {u.entry(i, j):.4f}  angle = {u.angle(i, j):+.4f}")

# The pairs that dropped out of the support form the orthogonality
# graph.  For distinct qubit rays each state has at most one antipode,
# so this graph can never do better than pair states up.
og = orthogonality_graph(g)
print("\northogonal pairs:", sorted(og.edges))
print("graph is a matching:", check_matching(og))
