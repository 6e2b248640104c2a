"""Acceptance suite: one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as
they print; each test also asserts its criterion so a failure is never
silent.  Random instances are drawn from fixed seeds, so every run
checks the same cases.
"""

import cmath
import math
import time
from itertools import combinations

import numpy as np

from qpc import (
    PhaseMatrix,
    QubitState,
    StateFamily,
    bargmann,
    bargmann_bloch,
    check_gram,
    check_matching,
    defect,
    factor_states,
    gram,
    orthogonality_graph,
    oracle_pauli_traces,
    phases,
    probabilities,
    random_family,
    rays_equal,
    realize_phases,
    solid_angle,
    to_bloch,
    triangle_report,
)
from tests.conftest import family_with_support

SQ2 = 2.0 ** -0.5
GOLDEN_B = 0.25 + 0.25j
GOLDEN_KAPPA = cmath.exp(0.25j * math.pi)


def _report(num: int, desc: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {num:2d}: {desc} ({detail})")


def octant() -> StateFamily:
    return StateFamily(
        (QubitState(1.0, 0.0), QubitState(SQ2, SQ2), QubitState(SQ2, 1j * SQ2))
    )


def test_criterion_01_defect_agrees_with_normalized_invariant():
    rng = np.random.default_rng(1001)
    worst = 0.0
    start = time.perf_counter()
    for _ in range(500):
        n = int(rng.integers(3, 9))
        _, g = family_with_support(rng, n)
        u = phases(g)
        for i, j, k in combinations(range(n), 3):
            b = bargmann(g, i, j, k)
            d = abs(defect(u, i, j, k) - b / abs(b))
            worst = max(worst, d)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 5.0
    _report(
        1,
        "phase-level defect matches the normalized invariant on 500 families",
        ok,
        f"max |delta| = {worst:.3e}, elapsed {elapsed:.2f}s",
    )
    assert worst <= 1e-12
    assert elapsed < 5.0


def test_criterion_02_probabilities_match_bloch_geometry():
    rng = np.random.default_rng(1002)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(2, 9))
        fam = random_family(n, rng)
        p = probabilities(gram(fam)).entries
        bloch = np.array([to_bloch(s).vector for s in fam.states])
        expected = (1.0 + bloch @ bloch.T) / 2.0
        worst = max(worst, float(np.max(np.abs(p - expected))))
    ok = worst <= 1e-12
    _report(
        2,
        "transition probabilities equal (1 + n.n)/2 on 500 families",
        ok,
        f"max |delta| = {worst:.3e}",
    )
    assert ok


def test_criterion_03_invariant_from_bloch_vectors_alone():
    rng = np.random.default_rng(1003)
    worst = 0.0
    for _ in range(1000):
        fam = random_family(3, rng)
        ns = [to_bloch(s) for s in fam.states]
        delta = abs(bargmann_bloch(*ns) - bargmann(gram(fam), 0, 1, 2))
        worst = max(worst, delta)
    ok = worst <= 1e-12
    _report(
        3,
        "projector-trace form from Bloch vectors matches overlaps, 1000 triples",
        ok,
        f"max |delta| = {worst:.3e}",
    )
    assert ok


def test_criterion_04_solid_angle_exponential():
    rng = np.random.default_rng(1004)
    worst = 0.0
    for _ in range(1000):
        fam, g = family_with_support(rng, 3)
        ns = [to_bloch(s).vector for s in fam.states]
        omega = solid_angle(*ns)
        kappa = defect(phases(g), 0, 1, 2)
        worst = max(worst, abs(cmath.exp(-0.5j * omega) - kappa))
    rep = triangle_report(gram(octant()), 0, 1, 2)
    golden = max(
        abs(rep.bargmann - GOLDEN_B),
        abs(rep.defect - GOLDEN_KAPPA),
        abs(rep.pancharatnam - math.pi / 4.0),
        abs(rep.solid_angle - (-math.pi / 2.0)),
        abs(rep.amplitude_factor - SQ2 / 2.0),
        abs(solid_angle(*(to_bloch(s).vector for s in octant().states)) + math.pi / 2.0),
    )
    ok = worst <= 1e-9 and golden <= 1e-12
    _report(
        4,
        "exp(-i Omega / 2) equals the defect, 1000 triples plus the octant values",
        ok,
        f"max |delta| = {worst:.3e}, octant deviation {golden:.3e}",
    )
    assert worst <= 1e-9
    assert golden <= 1e-12


def test_criterion_05_gram_judgement_and_factorization():
    id3 = check_gram(np.eye(3, dtype=complex))
    id3_right = (
        not id3.all_ok
        and not id3.rank_ok
        and id3.hermitian_ok
        and id3.unit_diag_ok
        and id3.psd_ok
    )
    rng = np.random.default_rng(1005)
    worst = 0.0
    all_pass = True
    for _ in range(200):
        n = int(rng.integers(2, 11))
        g = gram(random_family(n, rng))
        verdict = check_gram(g)
        all_pass = all_pass and verdict.all_ok
        rebuilt = gram(factor_states(g))
        worst = max(worst, float(np.max(np.abs(rebuilt.entries - g.entries))))
    ok = id3_right and all_pass and worst <= 1e-9
    _report(
        5,
        "identity(3) rejected on rank alone; 200 family matrices judged and refactored",
        ok,
        f"identity verdict {'ok' if id3_right else 'wrong'}, max round-trip {worst:.3e}",
    )
    assert id3_right
    assert all_pass
    assert worst <= 1e-9


def _random_connected_support(rng: np.random.Generator, n: int) -> set:
    edges = set()
    order = list(rng.permutation(n))
    for pos in range(1, n):
        a = order[pos]
        b = order[int(rng.integers(0, pos))]
        edges.add((min(a, b), max(a, b)))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < 0.3:
                edges.add((i, j))
    return edges


def test_criterion_06_coherent_prescriptions_realize_on_one_ray():
    rng = np.random.default_rng(1006)
    worst = 0.0
    ray_dev = 0.0
    statuses_ok = True
    for case in range(100):
        n = int(rng.integers(2, 13))
        angles = rng.uniform(-math.pi, math.pi, n)
        if case % 3 == 0:
            support = {(i, j) for i in range(n) for j in range(i + 1, n)}
        else:
            support = _random_connected_support(rng, n)
        values = {
            (i, j): cmath.exp(1j * (angles[i] - angles[j])) for i, j in support
        }
        u = PhaseMatrix.from_edges(n, values)
        res = realize_phases(u)
        statuses_ok = statuses_ok and res.status == "realizable"
        worst = max(worst, res.residual)
        p = probabilities(gram(res.certificate)).entries
        ray_dev = max(ray_dev, float(np.max(np.abs(p - 1.0))))
    ok = statuses_ok and worst <= 1e-12 and ray_dev <= 1e-9
    _report(
        6,
        "100 coherent prescriptions up to 12 states realized exactly on one ray",
        ok,
        f"max residual {worst:.3e}, max ray spread {ray_dev:.3e}",
    )
    assert statuses_ok
    assert worst <= 1e-12
    assert ray_dev <= 1e-9


def test_criterion_07_witnessed_phases_recovered_by_search():
    rng = np.random.default_rng(1007)
    worst = 0.0
    statuses_ok = True
    for _ in range(50):
        n = int(rng.integers(3, 7))
        _, g = family_with_support(rng, n)
        res = realize_phases(phases(g))
        statuses_ok = statuses_ok and res.status == "realizable"
        worst = max(worst, res.residual)
    ok = statuses_ok and worst <= 1e-7
    _report(
        7,
        "50 witnessed phase prescriptions recovered within the restart budget",
        ok,
        f"max residual {worst:.3e}",
    )
    assert statuses_ok
    assert worst <= 1e-7


def test_criterion_08_rephasing_moves_nothing_but_the_phases():
    rng = np.random.default_rng(1008)
    worst_b = 0.0
    worst_u = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 7))
        fam, g = family_with_support(rng, n)
        thetas = rng.uniform(-math.pi, math.pi, n)
        moved = StateFamily(
            tuple(s.rephased(t) for s, t in zip(fam.states, thetas))
        )
        g2 = gram(moved)
        for i, j, k in combinations(range(n), 3):
            worst_b = max(worst_b, abs(bargmann(g2, i, j, k) - bargmann(g, i, j, k)))
        u, u2 = phases(g), phases(g2)
        w = np.exp(1j * thetas)
        for i, j in sorted(u.support.edges):
            want = w[i].conjugate() * u.entry(i, j) * w[j]
            worst_u = max(worst_u, abs(u2.entry(i, j) - want))
    ok = worst_b <= 1e-12 and worst_u <= 1e-12
    _report(
        8,
        "invariants unchanged and phases covariant under rephasing, 200 families",
        ok,
        f"max invariant drift {worst_b:.3e}, max covariance defect {worst_u:.3e}",
    )
    assert worst_b <= 1e-12
    assert worst_u <= 1e-12


def test_criterion_09_orthogonality_is_a_matching_on_distinct_rays():
    rng = np.random.default_rng(1009)
    all_matching = True
    checked = 0
    while checked < 200:
        n = int(rng.integers(2, 9))
        fam = random_family(n, rng)
        if any(
            rays_equal(fam[i], fam[j], 1e-9)
            for i in range(n)
            for j in range(i + 1, n)
        ):
            continue
        checked += 1
        all_matching = all_matching and check_matching(
            orthogonality_graph(gram(fam))
        )
    four = StateFamily(
        (
            QubitState(1.0, 0.0),
            QubitState(0.0, 1.0),
            QubitState(SQ2, SQ2),
            QubitState(SQ2, -SQ2),
        )
    )
    edges = orthogonality_graph(gram(four)).edges
    edges_right = edges == frozenset({(0, 1), (2, 3)})
    ok = all_matching and edges_right
    _report(
        9,
        "orthogonality graphs of 200 distinct-ray families are matchings",
        ok,
        f"matchings {'all' if all_matching else 'NOT all'}, "
        f"two-pair family edges {sorted(edges)}",
    )
    assert all_matching
    assert edges_right


def test_criterion_10_pauli_trace_identities():
    report = oracle_pauli_traces()
    ok = report.cases_run == 36 and report.max_discrepancy <= 1e-15
    _report(
        10,
        "all 36 Pauli trace identities by explicit matrix arithmetic",
        ok,
        f"max discrepancy {report.max_discrepancy:.3e} over {report.cases_run} cases",
    )
    assert report.cases_run == 36
    assert report.max_discrepancy <= 1e-15
