"""Tests for Gram-matrix judging, factorization, and phase realization."""

import cmath
import math

import numpy as np
import pytest

from qpc import (
    GramMatrix,
    PhaseMatrix,
    QubitState,
    RealizabilityResult,
    SearchConfig,
    StateFamily,
    check_gram,
    factor_states,
    gram,
    is_coherent,
    phases,
    probabilities,
    random_family,
    realize_coherent,
    realize_phases,
)
from qpc.realizability import (
    NOT_REALIZABLE,
    REALIZABLE,
    SEARCH_FAILED,
    _AngleLayout,
    _residuals,
)
from tests.conftest import family_with_support


def potential_phases(angles) -> PhaseMatrix:
    """Complete coherent prescription u_ij = exp(i (a_i - a_j))."""
    n = len(angles)
    values = {
        (i, j): cmath.exp(1j * (angles[i] - angles[j]))
        for i in range(n)
        for j in range(i + 1, n)
    }
    return PhaseMatrix.from_edges(n, values)


def holonomy_square() -> PhaseMatrix:
    # chordless 4-cycle: no triangles, but the loop product is i, so no
    # rephasing potential exists
    return PhaseMatrix.from_edges(
        4, {(0, 1): 1.0, (1, 2): 1.0, (2, 3): 1.0, (0, 3): 1j}
    )


class TestCheckGram:
    def test_family_gram_passes(self, octant_family):
        v = check_gram(gram(octant_family))
        assert v.all_ok
        assert v.failed_conditions() == []
        assert v.worst_violation == 0.0
        assert v.rank_estimate <= 2
        assert list(v.eigenvalues) == sorted(v.eigenvalues, reverse=True)

    def test_identity_three_fails_on_rank_only(self):
        v = check_gram(np.eye(3, dtype=complex))
        assert v.hermitian_ok and v.unit_diag_ok and v.psd_ok
        assert not v.rank_ok
        assert v.rank_estimate == 3
        assert v.failed_conditions() == ["rank at most 2 (estimated rank 3)"]
        assert v.worst_violation == pytest.approx(1.0, abs=1e-12)

    def test_indefinite_matrix_fails_psd(self):
        v = check_gram(np.array([[1.0, 1.2], [1.2, 1.0]]))
        assert v.hermitian_ok and v.unit_diag_ok
        assert not v.psd_ok
        assert v.worst_violation == pytest.approx(0.2, abs=1e-12)
        assert "positive semidefinite" in v.failed_conditions()

    def test_identity_two_passes_at_rank_two(self):
        v = check_gram(np.eye(2, dtype=complex))
        assert v.all_ok
        assert v.rank_estimate == 2

    def test_non_hermitian_input(self):
        v = check_gram(np.array([[1.0, 1j], [1j, 1.0]]))
        assert not v.hermitian_ok
        assert "hermitian" in v.failed_conditions()

    def test_hermitian_tolerance_boundary(self):
        base = np.array([[1.0, 0.5], [0.5, 1.0]], dtype=complex)
        above = base.copy()
        above[0, 1] += 1e-9
        assert not check_gram(above).hermitian_ok
        below = base.copy()
        below[0, 1] += 1e-11
        assert check_gram(below).hermitian_ok

    def test_bad_diagonal(self):
        v = check_gram(np.array([[1.0, 0.0], [0.0, 0.9]]))
        assert not v.unit_diag_ok

    def test_accepts_nested_lists(self):
        assert check_gram([[1.0, 0.0], [0.0, 1.0]]).all_ok

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            check_gram(np.zeros((2, 3)))

    def test_random_family_grams_pass(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            n = int(rng.integers(2, 9))
            assert check_gram(gram(random_family(n, rng))).all_ok


class TestFactorStates:
    def test_octant_round_trip(self, octant_family):
        g = gram(octant_family)
        g2 = gram(factor_states(g))
        assert np.max(np.abs(g2.entries - g.entries)) < 1e-12

    def test_random_round_trips(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            n = int(rng.integers(2, 11))
            g = gram(random_family(n, rng))
            fam = factor_states(g)
            assert len(fam) == n
            assert np.max(np.abs(gram(fam).entries - g.entries)) < 1e-12

    def test_probabilities_round_trip(self):
        g = gram(random_family(6, seed=19))
        p0 = probabilities(g)
        p1 = probabilities(gram(factor_states(g)))
        assert np.max(np.abs(p1.entries - p0.entries)) < 1e-12

    def test_single_state(self):
        fam = factor_states(GramMatrix(np.eye(1, dtype=complex)))
        assert len(fam) == 1

    def test_identity_two_gives_orthonormal_pair(self):
        fam = factor_states(GramMatrix(np.eye(2, dtype=complex)))
        g = gram(fam)
        assert np.max(np.abs(g.entries - np.eye(2))) < 1e-12

    def test_all_ones_collapses_to_one_ray(self):
        n = 5
        fam = factor_states(GramMatrix(np.ones((n, n), dtype=complex)))
        g = gram(fam)
        assert np.min(np.abs(g.entries)) > 1.0 - 1e-12
        assert check_gram(g).rank_estimate == 1

    def test_rejects_rank_three(self):
        with pytest.raises(ValueError, match="rank"):
            factor_states(GramMatrix(np.eye(3, dtype=complex)))


class TestCoherence:
    def test_octant_phases_are_incoherent(self, octant_family):
        u = phases(gram(octant_family))
        # triangle defect exp(i pi / 4) sits far from 1
        assert not is_coherent(u, 1e-9)
        assert is_coherent(u, 1.0)

    def test_potential_phases_are_coherent(self):
        u = potential_phases([0.0, 0.3, 1.1, -0.7])
        assert is_coherent(u, 1e-12)

    def test_triangle_free_support_is_vacuously_coherent(self):
        assert is_coherent(holonomy_square(), 1e-12)

    def test_two_states_always_coherent(self):
        u = PhaseMatrix.from_edges(2, {(0, 1): cmath.exp(2.2j)})
        assert is_coherent(u, 1e-12)

    def test_rejects_non_positive_tol(self):
        u = potential_phases([0.0, 0.5])
        with pytest.raises(ValueError, match="positive"):
            is_coherent(u, 0.0)


class TestRealizeCoherent:
    def test_reproduces_potential_phases(self):
        u = potential_phases([0.0, 0.3, 1.1, -0.7, 2.4])
        fam = realize_coherent(u)
        got = phases(gram(fam))
        for i, j in sorted(u.support.edges):
            assert got.entry(i, j) == pytest.approx(u.entry(i, j), abs=1e-12)

    def test_certificate_states_share_one_ray(self):
        u = potential_phases([0.0, 0.9, -1.2])
        fam = realize_coherent(u)
        p = probabilities(gram(fam))
        assert np.max(np.abs(p.entries - 1.0)) < 1e-12
        assert check_gram(gram(fam)).rank_estimate == 1

    def test_trivial_phases_give_copies_of_the_base_state(self):
        u = potential_phases([0.0, 0.0, 0.0, 0.0])
        fam = realize_coherent(u)
        assert all(s == QubitState(1.0, 0.0) for s in fam.states)

    def test_explicit_potential_round_trip(self):
        lam = (1.0, cmath.exp(1j * math.pi / 3.0), cmath.exp(1j * math.pi / 2.0))
        values = {
            (i, j): lam[i] / lam[j] for i in range(3) for j in range(i + 1, 3)
        }
        fam = realize_coherent(PhaseMatrix.from_edges(3, values))
        got = phases(gram(fam))
        for (i, j), want in values.items():
            assert got.entry(i, j) == pytest.approx(want, abs=1e-12)

    def test_single_edge_any_angle(self):
        u = PhaseMatrix.from_edges(2, {(0, 1): cmath.exp(-2.7j)})
        fam = realize_coherent(u)
        got = phases(gram(fam))
        assert got.entry(0, 1) == pytest.approx(cmath.exp(-2.7j), abs=1e-12)

    def test_partial_support_tree(self):
        # path 0-1-2-3 with assorted phases is always coherent
        u = PhaseMatrix.from_edges(
            4,
            {
                (0, 1): cmath.exp(0.4j),
                (1, 2): cmath.exp(-1.1j),
                (2, 3): cmath.exp(2.9j),
            },
        )
        fam = realize_coherent(u)
        got = phases(gram(fam))
        for i, j in sorted(u.support.edges):
            assert got.entry(i, j) == pytest.approx(u.entry(i, j), abs=1e-12)

    def test_rejects_incoherent_triangle(self, octant_family):
        with pytest.raises(ValueError, match="not coherent"):
            realize_coherent(phases(gram(octant_family)))

    def test_rejects_disconnected_support(self):
        u = PhaseMatrix.from_edges(4, {(0, 1): 1.0, (2, 3): 1.0})
        with pytest.raises(ValueError, match="disconnected"):
            realize_coherent(u)

    def test_rejects_cycle_without_potential(self):
        with pytest.raises(ValueError, match="no consistent rephasing potential"):
            realize_coherent(holonomy_square())


class TestRealizePhases:
    def test_recovers_witnessed_phases(self):
        rng = np.random.default_rng(101)
        for n in (3, 4, 5, 6):
            _, g = family_with_support(rng, n)
            u = phases(g)
            res = realize_phases(u)
            assert res.status == REALIZABLE
            assert res.residual <= 1e-7
            got = phases(gram(res.certificate))
            for i, j in sorted(u.support.edges):
                assert abs(got.entry(i, j) - u.entry(i, j)) <= 1e-7

    def test_coherent_short_circuit(self):
        u = potential_phases([0.0, 0.4, -0.9, 1.7])
        res = realize_phases(u)
        assert res.status == REALIZABLE
        assert res.residual < 1e-12
        assert "single base state" in res.diagnostics

    def test_holonomy_square_needs_rank_two(self):
        # coherence is vacuous here, yet no potential exists; the search
        # must still find a two-dimensional realization
        res = realize_phases(holonomy_square())
        assert res.status == REALIZABLE
        assert res.residual <= 1e-7
        assert "single base state" not in res.diagnostics

    def test_deterministic_for_fixed_config(self):
        _, g = family_with_support(np.random.default_rng(7), 5)
        u = phases(g)
        r1 = realize_phases(u, SearchConfig(seed=5))
        r2 = realize_phases(u, SearchConfig(seed=5))
        assert r1.status == r2.status == REALIZABLE
        assert r1.residual == r2.residual
        assert np.array_equal(r1.certificate.vectors, r2.certificate.vectors)

    def test_disconnected_components_realized_independently(self):
        u = PhaseMatrix.from_edges(
            5, {(0, 1): cmath.exp(0.8j), (2, 3): 1j, (3, 4): cmath.exp(-0.3j)}
        )
        res = realize_phases(u)
        assert res.status == REALIZABLE
        assert "components realized independently" in res.diagnostics
        got = phases(gram(res.certificate))
        for i, j in sorted(u.support.edges):
            assert abs(got.entry(i, j) - u.entry(i, j)) <= 1e-7

    def test_isolated_vertex_gets_base_state(self):
        u = PhaseMatrix.from_edges(3, {(0, 1): cmath.exp(1.1j)})
        res = realize_phases(u)
        assert res.status == REALIZABLE
        assert res.certificate.states[2] == QubitState(1.0, 0.0)

    def test_quarter_turn_triangle_defect_is_realizable(self):
        # defect exp(i pi / 4) matches the octant family, so a
        # certificate certainly exists
        u = PhaseMatrix.from_edges(
            3, {(0, 1): 1.0, (1, 2): cmath.exp(0.25j * math.pi), (0, 2): 1.0}
        )
        res = realize_phases(u)
        assert res.status == REALIZABLE
        assert res.residual <= 1e-7

    def test_certificates_are_sound(self):
        # every certificate must itself be a valid family whose phases
        # reproduce the prescription on the support
        rng = np.random.default_rng(77)
        cases = [
            potential_phases([0.0, 1.3, -0.6]),
            holonomy_square(),
            phases(family_with_support(rng, 5)[1]),
        ]
        for u in cases:
            res = realize_phases(u)
            assert res.status == REALIZABLE
            g = gram(res.certificate)
            assert check_gram(g).all_ok
            got = phases(g)
            for i, j in sorted(u.support.edges):
                assert abs(got.entry(i, j) - u.entry(i, j)) <= 1e-7


class TestSearchInternals:
    def test_jacobian_matches_finite_differences(self):
        rng = np.random.default_rng(3)
        n = 5
        layout = _AngleLayout(n)
        edges = [(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4)]
        idx_i = np.array([e[0] for e in edges])
        idx_j = np.array([e[1] for e in edges])
        targets = np.exp(1j * rng.uniform(-np.pi, np.pi, len(edges)))
        x = rng.uniform(0.2, 2.5, layout.size)
        _, jac = _residuals(x, layout, idx_i, idx_j, targets, 1e-6)
        step = 1e-6
        fd = np.zeros_like(jac)
        for p in range(layout.size):
            hi, lo = x.copy(), x.copy()
            hi[p] += step
            lo[p] -= step
            rh, _ = _residuals(hi, layout, idx_i, idx_j, targets, 1e-6)
            rl, _ = _residuals(lo, layout, idx_i, idx_j, targets, 1e-6)
            fd[:, p] = (rh - rl) / (2.0 * step)
        assert np.max(np.abs(jac - fd)) < 1e-5

    def test_config_validation(self):
        with pytest.raises(ValueError, match="restarts"):
            SearchConfig(restarts=0)
        with pytest.raises(ValueError, match="max_iters"):
            SearchConfig(max_iters=0)
        with pytest.raises(ValueError, match="positive"):
            SearchConfig(soft_floor=0.0)

    def test_result_validation(self):
        with pytest.raises(ValueError, match="unknown status"):
            RealizabilityResult("maybe", None, 0.0, "")
        with pytest.raises(ValueError, match="requires a certificate"):
            RealizabilityResult(REALIZABLE, None, 0.0, "")
        ok = RealizabilityResult(SEARCH_FAILED, None, 0.5, "best effort")
        assert ok.status == SEARCH_FAILED
        assert NOT_REALIZABLE == "not_realizable"
