"""Independent recomputation paths used to cross-check the main code.

Everything here is evaluated by naive expansion: inner products written
out component by component, projector products multiplied as explicit
2x2 arrays, Pauli algebra checked entry by entry.  This module imports
only the state types; it deliberately shares no helper with the
comparison and invariant code it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import QubitState, StateFamily


@dataclass(frozen=True)
class OracleReport:
    """Result of one verification property over a batch of cases."""

    name: str
    cases_run: int
    max_discrepancy: float
    tolerance: float

    def __post_init__(self) -> None:
        # plain Python scalars, whatever numeric type the check produced
        object.__setattr__(self, "cases_run", int(self.cases_run))
        object.__setattr__(self, "max_discrepancy", float(self.max_discrepancy))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return self.max_discrepancy <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name:<42} cases={self.cases_run:<6} "
            f"max_discrepancy={self.max_discrepancy:.3e} "
            f"tol={self.tolerance:.1e} {status}"
        )


def oracle_bargmann_direct(family: StateFamily, i: int, j: int, k: int) -> complex:
    """Bargmann invariant by componentwise expansion of the overlaps."""
    a, b, c = family[i], family[j], family[k]
    ab = a.c0.conjugate() * b.c0 + a.c1.conjugate() * b.c1
    bc = b.c0.conjugate() * c.c0 + b.c1.conjugate() * c.c1
    ca = c.c0.conjugate() * a.c0 + c.c1.conjugate() * a.c1
    return ab * bc * ca


def oracle_trace_product(family: StateFamily, i: int, j: int, k: int) -> complex:
    """Bargmann invariant as the trace of three explicit projectors."""

    def proj(s: QubitState) -> np.ndarray:
        v = np.array([s.c0, s.c1], dtype=complex)
        return np.outer(v, v.conj())

    return complex(np.trace(proj(family[i]) @ proj(family[j]) @ proj(family[k])))


def oracle_pauli_traces() -> OracleReport:
    """Check the Pauli trace identities by explicit matrix arithmetic.

    Verifies tr(s_a s_b) = 2 delta_ab and tr(s_a s_b s_c) = 2i eps_abc
    for all index combinations, 36 identities in total.
    """
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    sigma = (sx, sy, sz)

    def eps(a: int, b: int, c: int) -> int:
        return (a - b) * (b - c) * (c - a) // 2

    worst = 0.0
    cases = 0
    for a in range(3):
        for b in range(3):
            expected = 2.0 if a == b else 0.0
            worst = max(worst, abs(np.trace(sigma[a] @ sigma[b]) - expected))
            cases += 1
    for a in range(3):
        for b in range(3):
            for c in range(3):
                expected = 2.0j * eps(a, b, c)
                got = np.trace(sigma[a] @ sigma[b] @ sigma[c])
                worst = max(worst, abs(got - expected))
                cases += 1
    return OracleReport(
        name="pauli_trace_identities",
        cases_run=cases,
        max_discrepancy=float(worst),
        tolerance=1e-15,
    )
