"""Pairwise comparison data for a family of qubit states.

A family of N states is compared pairwise on three levels:

    gram           g_ij = <psi_i, psi_j>      complex amplitudes
    probabilities  p_ij = |g_ij|^2            transition probabilities
    phases         u_ij = g_ij / |g_ij|       unit phases, where defined

The phase level is partial: u_ij exists only where the overlap does not
vanish, and the pairs that carry a phase form the support graph.  The
complementary graph records orthogonal pairs.  For families of pairwise
distinct rays the orthogonality graph is always a matching: no qubit ray
has two distinct orthogonal rays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .states import StateFamily

DEFAULT_ZERO_TOL = 1e-10  # |g_ij| at or below this counts as orthogonal

TOL_STRUCT = 1e-12  # structural tolerances of the matrix types


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian matrix of pairwise overlaps with unit diagonal."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        herm = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
        if herm > TOL_STRUCT:
            raise ValueError(f"matrix is not Hermitian: max |g - g*| = {herm!r}")
        diag = np.max(np.abs(np.diagonal(a) - 1.0))
        if diag > TOL_STRUCT:
            raise ValueError(f"diagonal is not 1: max |g_ii - 1| = {diag!r}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def entry(self, i: int, j: int) -> complex:
        return complex(self.entries[i, j])


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Symmetric matrix of transition probabilities in [0, 1]."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        sym = np.max(np.abs(a - a.T)) if a.size else 0.0
        if sym > TOL_STRUCT:
            raise ValueError(f"matrix is not symmetric: max |p - p^T| = {sym!r}")
        diag = np.max(np.abs(np.diagonal(a) - 1.0))
        if diag > TOL_STRUCT:
            raise ValueError(f"diagonal is not 1: max |p_ii - 1| = {diag!r}")
        if np.min(a) < -TOL_STRUCT or np.max(a) > 1.0 + TOL_STRUCT:
            raise ValueError("probabilities must lie in [0, 1]")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SupportGraph:
    """Undirected simple graph on vertices 0 .. n-1."""

    n: int
    edges: frozenset

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n = {self.n}")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n = {self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def complement(self) -> "SupportGraph":
        missing = {
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if (i, j) not in self.edges
        }
        return SupportGraph(self.n, frozenset(missing))

    def connected_components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, in order
        of their smallest vertex.  Isolated vertices form singletons."""
        adj = {v: [] for v in range(self.n)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


@dataclass(frozen=True)
class PhaseMatrix:
    """Partial matrix of unit overlap phases on a support graph.

    Entries exist on the diagonal (u_ii = 1) and on support edges, where
    they are unimodular and reciprocal: u_ji = conj(u_ij) = 1 / u_ij.
    Absent pairs carry no phase at all; storage off the support is zeroed
    and never read, and access goes through entry()/has().
    """

    n: int
    entries: np.ndarray
    support: SupportGraph

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=complex)
        if a.shape != (self.n, self.n):
            raise ValueError(f"expected shape ({self.n}, {self.n}), got {a.shape}")
        if self.support.n != self.n:
            raise ValueError("support graph size does not match the matrix")
        diag = np.max(np.abs(np.diagonal(a) - 1.0))
        if diag > TOL_STRUCT:
            raise ValueError(f"diagonal phases must be 1: max deviation {diag!r}")
        for i, j in sorted(self.support.edges):
            if abs(abs(a[i, j]) - 1.0) > TOL_STRUCT:
                raise ValueError(
                    f"phase for pair ({i}, {j}) is not unimodular: |u| = {abs(a[i, j])!r}"
                )
            if abs(a[j, i] - a[i, j].conjugate()) > TOL_STRUCT:
                raise ValueError(f"phases for pair ({i}, {j}) are not reciprocal")
        mask = np.ones((self.n, self.n), dtype=bool)
        np.fill_diagonal(mask, False)
        for i, j in self.support.edges:
            mask[i, j] = mask[j, i] = False
        if mask.any() and np.max(np.abs(a[mask])) != 0.0:
            raise ValueError("entries off the support graph must be zeroed")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_edges(cls, n: int, values: dict) -> "PhaseMatrix":
        """Build from {(i, j): u_ij} on i < j; reciprocals are filled in."""
        a = np.zeros((n, n), dtype=complex)
        np.fill_diagonal(a, 1.0)
        edges = set()
        for (i, j), u in values.items():
            if i == j:
                raise ValueError(f"pair ({i}, {j}) is not an edge")
            a[i, j] = u
            a[j, i] = complex(u).conjugate()
            edges.add((min(i, j), max(i, j)))
        return cls(n, a, SupportGraph(n, frozenset(edges)))

    def has(self, i: int, j: int) -> bool:
        return i == j or self.support.has_edge(i, j)

    def entry(self, i: int, j: int) -> complex:
        if i == j:
            return complex(self.entries[i, i])
        if not self.support.has_edge(i, j):
            raise ValueError(f"no phase available for pair ({i}, {j})")
        return complex(self.entries[i, j])

    def angle(self, i: int, j: int) -> float:
        """Phase angle arg(u_ij) in (-pi, pi]."""
        u = self.entry(i, j)
        a = float(np.angle(u))
        return a if a != -np.pi else np.pi


def gram(family: StateFamily) -> GramMatrix:
    """Overlap matrix g_ij = <psi_i, psi_j> of a family."""
    v = family.vectors
    m = v.conj() @ v.T
    # Off-diagonal entries are exact conjugates already; averaging with the
    # adjoint only clears roundoff imaginary parts from the diagonal.
    return GramMatrix((m + m.conj().T) / 2.0)


def probabilities(g: GramMatrix) -> ProbabilityMatrix:
    """Transition probabilities p_ij = |g_ij|^2."""
    return ProbabilityMatrix(np.abs(g.entries) ** 2)


def phases(g: GramMatrix, zero_tol: float = DEFAULT_ZERO_TOL) -> PhaseMatrix:
    """Unit phases u_ij = g_ij / |g_ij| where |g_ij| exceeds zero_tol.

    Pairs with overlap modulus at or below zero_tol carry no phase and
    are left off the support graph.
    """
    n = g.n
    a = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(a, 1.0)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            m = abs(g.entries[i, j])
            if m > zero_tol:
                a[i, j] = g.entries[i, j] / m
                a[j, i] = g.entries[j, i] / m
                edges.add((i, j))
    return PhaseMatrix(n, a, SupportGraph(n, frozenset(edges)))


def orthogonality_graph(g: GramMatrix, zero_tol: float = DEFAULT_ZERO_TOL) -> SupportGraph:
    """Graph of pairs with vanishing overlap, |g_ij| <= zero_tol."""
    n = g.n
    edges = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(g.entries[i, j]) <= zero_tol
    }
    return SupportGraph(n, frozenset(edges))


def check_matching(graph: SupportGraph) -> bool:
    """Whether every vertex has degree at most one."""
    return all(graph.degree(v) <= 1 for v in range(graph.n))
