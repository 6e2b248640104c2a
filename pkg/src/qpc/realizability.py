"""Realizability of prescribed comparison data by qubit states.

A complex matrix is the overlap matrix of some family of qubit states
exactly when it is Hermitian with unit diagonal, positive semidefinite,
and of rank at most two.  check_gram judges the four conditions and
factor_states reconstructs a witness family from the top two eigenpairs.

For phase-level data the full matrix is not available, only unit phases
on the support graph.  Coherent prescriptions (every support triangle
multiplies to 1) are realized exactly by rephasing copies of a single
base state.  General prescriptions are attacked by a seeded multi-start
local search over gauge-fixed Bloch angles; a successful search returns
a certificate family, while an unsuccessful one is inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import least_squares

from .comparisons import PhaseMatrix, SupportGraph, GramMatrix
from .states import QubitState, StateFamily

PSD_TOL = 1e-10        # eigenvalue floor, relative to max(1, largest eigenvalue)
RANK_TOL = 1e-10       # eigenvalues below this fraction of the largest are noise
HERMITIAN_TOL = 1e-10  # verdict tolerance for Hermiticity
UNIT_DIAG_TOL = 1e-10  # verdict tolerance for the diagonal
REALIZE_TOL = 1e-7     # per-edge phase mismatch accepted as realized
COHERENCE_TOL = 1e-9   # triangle defect distance from 1 treated as coherent
POTENTIAL_TOL = 1e-6   # edge holonomy mismatch tolerated when rephasing a tree

REALIZABLE = "realizable"
NOT_REALIZABLE = "not_realizable"
SEARCH_FAILED = "search_failed"


@dataclass(frozen=True)
class GramVerdict:
    """Outcome of the four Gram-matrix conditions.

    eigenvalues are sorted in descending order; rank_estimate counts
    those above RANK_TOL times the largest; worst_violation is the
    largest deviation across the failed conditions (0 when all hold).
    """

    hermitian_ok: bool
    unit_diag_ok: bool
    psd_ok: bool
    rank_ok: bool
    eigenvalues: tuple[float, ...]
    rank_estimate: int
    worst_violation: float

    @property
    def all_ok(self) -> bool:
        return self.hermitian_ok and self.unit_diag_ok and self.psd_ok and self.rank_ok

    def failed_conditions(self) -> list[str]:
        names = []
        if not self.hermitian_ok:
            names.append("hermitian")
        if not self.unit_diag_ok:
            names.append("unit diagonal")
        if not self.psd_ok:
            names.append("positive semidefinite")
        if not self.rank_ok:
            names.append(f"rank at most 2 (estimated rank {self.rank_estimate})")
        return names


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the multi-start phase-realization search."""

    restarts: int = 32
    max_iters: int = 500
    seed: int = 0
    soft_floor: float = 1e-6
    realize_tol: float = REALIZE_TOL

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be positive, got {self.restarts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if self.soft_floor <= 0.0 or self.realize_tol <= 0.0:
            raise ValueError("soft_floor and realize_tol must be positive")


@dataclass(frozen=True)
class RealizabilityResult:
    """Verdict of a realization attempt.

    residual is the largest per-edge chordal distance between the
    certificate's phases and the prescription; for a negative or
    inconclusive verdict it refers to the best candidate found.
    """

    status: str
    certificate: StateFamily | None
    residual: float
    diagnostics: str

    def __post_init__(self) -> None:
        if self.status not in (REALIZABLE, NOT_REALIZABLE, SEARCH_FAILED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == REALIZABLE and self.certificate is None:
            raise ValueError("a realizable verdict requires a certificate")


def check_gram(g) -> GramVerdict:
    """Judge whether a square complex matrix is a qubit Gram matrix.

    Accepts a GramMatrix or a raw array; raw input may violate any of
    the conditions, that is what the verdict is for.  Eigenvalues are
    taken from the Hermitian part, which coincides with the input
    whenever hermitian_ok holds.
    """
    a = g.entries if isinstance(g, GramMatrix) else np.asarray(g, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    herm_dev = float(np.max(np.abs(a - a.conj().T))) if n else 0.0
    diag_dev = float(np.max(np.abs(np.diagonal(a) - 1.0))) if n else 0.0
    h = (a + a.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(h)[::-1]
    lam_max = float(eigs[0])
    lam_min = float(eigs[-1])
    psd_ok = lam_min >= -PSD_TOL * max(1.0, lam_max)
    rank_estimate = int(np.sum(eigs > RANK_TOL * max(lam_max, 0.0)))
    rank_excess = float(eigs[2]) if n >= 3 and eigs[2] > 0.0 else 0.0
    violations = [
        herm_dev if herm_dev > HERMITIAN_TOL else 0.0,
        diag_dev if diag_dev > UNIT_DIAG_TOL else 0.0,
        -lam_min if not psd_ok else 0.0,
        rank_excess if rank_estimate > 2 else 0.0,
    ]
    return GramVerdict(
        hermitian_ok=herm_dev <= HERMITIAN_TOL,
        unit_diag_ok=diag_dev <= UNIT_DIAG_TOL,
        psd_ok=psd_ok,
        rank_ok=rank_estimate <= 2,
        eigenvalues=tuple(float(x) for x in eigs),
        rank_estimate=rank_estimate,
        worst_violation=max(violations),
    )


def factor_states(g: GramMatrix) -> StateFamily:
    """Reconstruct a state family whose Gram matrix is g.

    Splits the top two eigenpairs: state i gets the amplitudes
    (sqrt(l1) conj(q1[i]), sqrt(l2) conj(q2[i])), renormalized
    defensively.  The family reproduces g up to the discarded
    eigenvalue mass, which the verdict bounds.
    """
    verdict = check_gram(g)
    if not verdict.all_ok:
        raise ValueError(
            "matrix is not a qubit Gram matrix: failed "
            f"{', '.join(verdict.failed_conditions())}; "
            f"worst violation {verdict.worst_violation!r}"
        )
    a = g.entries
    n = g.n
    h = (a + a.conj().T) / 2.0
    w, q = np.linalg.eigh(h)
    l1 = max(float(w[-1]), 0.0)
    u1 = q[:, -1]
    if n >= 2:
        l2 = max(float(w[-2]), 0.0)
        u2 = q[:, -2]
    else:
        l2 = 0.0
        u2 = np.zeros(n, dtype=complex)
    vecs = np.column_stack(
        [math.sqrt(l1) * u1.conj(), math.sqrt(l2) * u2.conj()]
    )
    norms = np.linalg.norm(vecs, axis=1)
    if np.min(norms) < 0.5:
        raise ArithmeticError("factorization produced a near-zero state")
    vecs = vecs / norms[:, None]
    return StateFamily(tuple(QubitState(v[0], v[1]) for v in vecs))


def _support_triangles(u: PhaseMatrix):
    for i, j, k in combinations(range(u.n), 3):
        if u.has(i, j) and u.has(j, k) and u.has(k, i):
            yield i, j, k


def _worst_triangle(u: PhaseMatrix):
    """Triple maximizing |u_ij u_jk u_ki - 1|, or None without triangles."""
    worst = None
    for i, j, k in _support_triangles(u):
        dev = abs(u.entry(i, j) * u.entry(j, k) * u.entry(k, i) - 1.0)
        if worst is None or dev > worst[1]:
            worst = ((i, j, k), dev)
    return worst


def is_coherent(u: PhaseMatrix, tol: float) -> bool:
    """Whether every support triangle multiplies to 1 within tol.

    Matrices without support triangles are vacuously coherent; for
    those, cycle consistency is only settled once a rephasing potential
    is attempted.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    worst = _worst_triangle(u)
    return worst is None or worst[1] <= tol


def realize_coherent(u: PhaseMatrix, tol: float = COHERENCE_TOL) -> StateFamily:
    """Realize a coherent phase prescription on a single ray.

    Phases of a rank-1 family split as u_ij = lam_i / lam_j.  The
    potential lam is propagated over a spanning tree of the support
    graph and then checked on every support edge, which also catches
    incoherent cycles that contain no triangle.  The states returned
    are conj(lam_i) times a fixed base state.
    """
    comps = u.support.connected_components()
    if len(comps) > 1:
        raise ValueError(
            f"support graph disconnected: components {comps}; "
            "realize each component separately"
        )
    worst = _worst_triangle(u)
    if worst is not None and worst[1] > tol:
        (i, j, k), dev = worst
        raise ValueError(
            f"phase matrix is not coherent: triangle ({i}, {j}, {k}) "
            f"has |defect - 1| = {dev!r}"
        )
    n = u.n
    lam = np.ones(n, dtype=complex)
    seen = [False] * n
    seen[0] = True
    queue = [0]
    adj = {v: [] for v in range(n)}
    for i, j in u.support.edges:
        adj[i].append(j)
        adj[j].append(i)
    while queue:
        i = queue.pop(0)
        for j in sorted(adj[i]):
            if not seen[j]:
                seen[j] = True
                lam[j] = lam[i] * u.entry(j, i)
                queue.append(j)
    lam = lam / np.abs(lam)
    worst_edge = (None, 0.0)
    for i, j in sorted(u.support.edges):
        dev = abs(lam[i] * lam[j].conjugate() - u.entry(i, j))
        if dev > worst_edge[1]:
            worst_edge = ((i, j), dev)
    if worst_edge[1] > POTENTIAL_TOL:
        (i, j), dev = worst_edge
        raise ValueError(
            "phases admit no consistent rephasing potential: the cycle "
            f"closed by edge ({i}, {j}) has holonomy deviation {dev!r}"
        )
    return StateFamily(tuple(QubitState(lam[i].conjugate(), 0.0) for i in range(n)))


# ---------------------------------------------------------------------------
# Multi-start local search over gauge-fixed Bloch angles.
#
# Each state is cos(t/2) e^{i p} |0> + sin(t/2) e^{i (p + a)} |1> with polar
# angle t, azimuth a, and gauge phase p.  State 0 is pinned to the north pole
# with zero phase and state 1 to zero azimuth, which removes the global
# unitary and the one redundant global rephasing.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _AngleLayout:
    """Packing of the free angles into one flat parameter vector."""

    n: int

    @property
    def n_theta(self) -> int:
        return self.n - 1

    @property
    def n_azim(self) -> int:
        return max(self.n - 2, 0)

    @property
    def size(self) -> int:
        return self.n_theta + self.n_azim + (self.n - 1)

    def unpack(self, x: np.ndarray):
        theta = np.zeros(self.n)
        azim = np.zeros(self.n)
        gauge = np.zeros(self.n)
        theta[1:] = x[: self.n_theta]
        azim[2:] = x[self.n_theta : self.n_theta + self.n_azim]
        gauge[1:] = x[self.n_theta + self.n_azim :]
        return theta, azim, gauge

    def pack(self, theta: np.ndarray, azim: np.ndarray, gauge: np.ndarray) -> np.ndarray:
        return np.concatenate([theta[1:], azim[2:], gauge[1:]])


def _angles_to_vectors(theta: np.ndarray, azim: np.ndarray, gauge: np.ndarray) -> np.ndarray:
    a = np.cos(theta / 2.0) * np.exp(1j * gauge)
    b = np.sin(theta / 2.0) * np.exp(1j * (gauge + azim))
    return np.column_stack([a, b])


def _residuals(x, layout, idx_i, idx_j, targets, soft_floor):
    """Stacked real residual vector of the smooth per-edge terms.

    Each support edge contributes g_ij / max(|g_ij|, soft_floor) - u_ij,
    split into real and imaginary parts; the floor keeps the residual
    smooth through near-orthogonal configurations while still
    penalizing them.  Returns (residuals, jacobian) in the free angles.
    """
    theta, azim, gauge = layout.unpack(np.asarray(x, dtype=float))
    n = layout.n
    half = theta / 2.0
    ea = np.exp(1j * gauge)
    eb = np.exp(1j * (gauge + azim))
    a = np.cos(half) * ea
    b = np.sin(half) * eb
    da_dt = -0.5 * np.sin(half) * ea
    db_dt = 0.5 * np.cos(half) * eb

    g_e = a[idx_i].conj() * a[idx_j] + b[idx_i].conj() * b[idx_j]
    h_e = b[idx_i].conj() * b[idx_j]
    m = np.abs(g_e)
    v = g_e / np.maximum(m, soft_floor)
    err = v - targets

    # Wirtinger factors of v(g): dv = A dg + B conj(dg), per floor branch.
    m_safe = np.maximum(m, 1e-300)
    a_fac = np.where(m > soft_floor, 1.0 / (2.0 * m_safe), 1.0 / soft_floor)
    b_fac = np.where(m > soft_floor, -(v**2) / (2.0 * m_safe), 0.0)

    gt_i = da_dt[idx_i].conj() * a[idx_j] + db_dt[idx_i].conj() * b[idx_j]
    gt_j = a[idx_i].conj() * da_dt[idx_j] + b[idx_i].conj() * db_dt[idx_j]

    n_e = len(idx_i)
    rows = np.arange(n_e)
    dgdp = np.zeros((n_e, layout.size), dtype=complex)
    o_azim = layout.n_theta
    o_gauge = layout.n_theta + layout.n_azim
    mask_i = idx_i >= 1
    dgdp[rows[mask_i], idx_i[mask_i] - 1] += gt_i[mask_i]
    dgdp[rows, idx_j - 1] += gt_j
    mask_ia = idx_i >= 2
    mask_ja = idx_j >= 2
    dgdp[rows[mask_ia], o_azim + idx_i[mask_ia] - 2] += -1j * h_e[mask_ia]
    dgdp[rows[mask_ja], o_azim + idx_j[mask_ja] - 2] += 1j * h_e[mask_ja]
    dgdp[rows[mask_i], o_gauge + idx_i[mask_i] - 1] += -1j * g_e[mask_i]
    dgdp[rows, o_gauge + idx_j - 1] += 1j * g_e

    dvdp = a_fac[:, None] * dgdp + b_fac[:, None] * dgdp.conj()
    residuals = np.concatenate([err.real, err.imag])
    jacobian = np.vstack([dvdp.real, dvdp.imag])
    return residuals, jacobian


def _vectors_to_angles(vecs: np.ndarray):
    a = vecs[:, 0]
    b = vecs[:, 1]
    theta = 2.0 * np.arctan2(np.abs(b), np.abs(a))
    gauge = np.where(np.abs(a) > 1e-12, np.angle(a), 0.0)
    azim = np.where(np.abs(b) > 1e-12, np.angle(b) - gauge, 0.0)
    return theta, azim, gauge


def _gauge_fix(vecs: np.ndarray) -> np.ndarray:
    """Rotate a candidate family so state 0 is the north pole with zero
    phase and state 1 has zero azimuth; overlaps are unchanged."""
    v = vecs.copy()
    a0, b0 = v[0]
    rot = np.array([[a0.conjugate(), b0.conjugate()], [-b0, a0]])
    v = v @ rot.T
    if v.shape[0] >= 2:
        a1, b1 = v[1]
        if abs(a1) > 1e-12 and abs(b1) > 1e-12:
            beta = np.angle(a1) - np.angle(b1)
            v[:, 1] *= np.exp(1j * beta)
    return v


def _spectral_guess(u: PhaseMatrix, layout: _AngleLayout) -> np.ndarray:
    """Starting point from the top two eigenpairs of the phase matrix.

    Treats the prescription itself as if it were a Gram matrix; for
    realizable data this lands near a feasible family.
    """
    w, q = np.linalg.eigh(u.entries)
    l1 = max(float(w[-1]), 0.0)
    v1 = q[:, -1]
    if u.n >= 2:
        l2 = max(float(w[-2]), 0.0)
        v2 = q[:, -2]
    else:
        l2, v2 = 0.0, np.zeros(u.n, dtype=complex)
    vecs = np.column_stack(
        [math.sqrt(l1) * v1.conj(), math.sqrt(l2) * v2.conj()]
    )
    norms = np.linalg.norm(vecs, axis=1)
    for i in range(u.n):
        if norms[i] < 1e-9:
            vecs[i] = (1.0, 0.0)
        else:
            vecs[i] = vecs[i] / norms[i]
    theta, azim, gauge = _vectors_to_angles(_gauge_fix(vecs))
    return layout.pack(theta, azim, gauge)


def _random_guess(rng: np.random.Generator, layout: _AngleLayout) -> np.ndarray:
    n = layout.n
    theta = np.arccos(rng.uniform(-1.0, 1.0, n))
    azim = rng.uniform(0.0, 2.0 * np.pi, n)
    gauge = rng.uniform(0.0, 2.0 * np.pi, n)
    return layout.pack(theta, azim, gauge)


def _phase_residual(vecs: np.ndarray, u: PhaseMatrix) -> float:
    """Largest chordal distance between realized and prescribed phases."""
    g = vecs.conj() @ vecs.T
    worst = 0.0
    for i, j in u.support.edges:
        m = abs(g[i, j])
        d = 2.0 if m == 0.0 else abs(g[i, j] / m - u.entries[i, j])
        worst = max(worst, d)
    return worst


def _restrict(u: PhaseMatrix, comp: list[int]) -> PhaseMatrix:
    idx = {v: p for p, v in enumerate(comp)}
    values = {}
    for i, j in u.support.edges:
        if i in idx:
            values[(idx[i], idx[j])] = u.entries[i, j]
    if not values and len(comp) > 1:
        raise AssertionError("component of size > 1 without edges")
    a = np.zeros((len(comp), len(comp)), dtype=complex)
    np.fill_diagonal(a, 1.0)
    edges = set()
    for (i, j), val in values.items():
        a[i, j] = val
        a[j, i] = complex(val).conjugate()
        edges.add((min(i, j), max(i, j)))
    return PhaseMatrix(len(comp), a, SupportGraph(len(comp), frozenset(edges)))


def _search_component(u: PhaseMatrix, cfg: SearchConfig, rng: np.random.Generator):
    """Best family found for one connected component.

    Restart 0 starts from the spectral guess, later restarts from
    seeded random angles; the best candidate by final residual wins,
    ties going to the earlier restart.  Returns (vectors, residual,
    restarts_used).
    """
    if u.n == 1:
        return np.array([[1.0 + 0.0j, 0.0 + 0.0j]]), 0.0, 0
    layout = _AngleLayout(u.n)
    edges = sorted(u.support.edges)
    idx_i = np.array([e[0] for e in edges])
    idx_j = np.array([e[1] for e in edges])
    targets = np.array([u.entries[i, j] for i, j in edges])
    best_vecs = None
    best_res = np.inf
    used = 0
    fun_args = (layout, idx_i, idx_j, targets, cfg.soft_floor)
    method = "lm" if 2 * len(edges) >= layout.size else "trf"
    for r in range(cfg.restarts):
        x0 = _spectral_guess(u, layout) if r == 0 else _random_guess(rng, layout)
        res = least_squares(
            lambda x: _residuals(x, *fun_args)[0],
            x0,
            jac=lambda x: _residuals(x, *fun_args)[1],
            method=method,
            max_nfev=cfg.max_iters,
            ftol=1e-15,
            xtol=1e-15,
            gtol=1e-15,
        )
        vecs = _angles_to_vectors(*layout.unpack(res.x))
        cand = _phase_residual(vecs, u)
        used = r + 1
        if cand < best_res:
            best_res = cand
            best_vecs = vecs
        if best_res <= cfg.realize_tol:
            break
    return best_vecs, best_res, used


def realize_phases(u: PhaseMatrix, cfg: SearchConfig = SearchConfig()) -> RealizabilityResult:
    """Search for a state family reproducing prescribed overlap phases.

    Coherent prescriptions short-circuit to the exact single-ray
    construction.  Otherwise each connected component of the support
    graph is searched independently (overlaps between components are
    unconstrained) and the per-component certificates are concatenated.
    A residual at or below cfg.realize_tol certifies realizability; an
    exhausted search is inconclusive, never a proof of impossibility.
    """
    comps = u.support.connected_components()
    notes = []
    if len(comps) > 1:
        notes.append(
            f"{len(comps)} support components realized independently; "
            "cross-component overlaps are unconstrained"
        )
    if is_coherent(u, COHERENCE_TOL):
        try:
            vecs = np.zeros((u.n, 2), dtype=complex)
            for comp in comps:
                sub = realize_coherent(_restrict(u, comp))
                vecs[comp] = sub.vectors
            residual = _phase_residual(vecs, u)
            if residual <= cfg.realize_tol:
                fam = StateFamily(tuple(QubitState(v[0], v[1]) for v in vecs))
                notes.append(
                    "coherent phase data; realized by rephasing a single base state"
                )
                return RealizabilityResult(REALIZABLE, fam, residual, "; ".join(notes))
        except ValueError:
            # No consistent potential (a cycle without triangles can hide
            # incoherence); fall back to the numerical search.
            pass
    vecs = np.zeros((u.n, 2), dtype=complex)
    vecs[:, 0] = 1.0
    total_restarts = 0
    for ci, comp in enumerate(comps):
        if len(comp) == 1:
            continue
        sub = _restrict(u, comp)
        rng = np.random.default_rng([cfg.seed, ci])
        sub_vecs, _, used = _search_component(sub, cfg, rng)
        vecs[comp] = sub_vecs
        total_restarts += used
    residual = _phase_residual(vecs, u)
    norms = np.linalg.norm(vecs, axis=1)
    vecs = vecs / norms[:, None]
    fam = StateFamily(tuple(QubitState(v[0], v[1]) for v in vecs))
    if residual <= cfg.realize_tol:
        notes.append(f"local search succeeded after {total_restarts} restart(s)")
        return RealizabilityResult(REALIZABLE, fam, residual, "; ".join(notes))
    notes.append(
        f"local search exhausted its restarts; best residual {residual:.3e}; "
        "an unsuccessful search is not a proof that the phases are unrealizable"
    )
    return RealizabilityResult(SEARCH_FAILED, None, residual, "; ".join(notes))
