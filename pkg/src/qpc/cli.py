"""Command line interface.

Subcommands:

    gen       write a seeded random state family
    analyze   full comparison report of a family file
    check     judge a gram matrix file against the four conditions
    realize   reconstruct states from a gram or phase matrix file
    verify    run the registered self-check properties

Exit codes: 0 success or a positive verdict, 1 a negative verdict,
2 usage or parse errors, 3 an inconclusive search.  The environment
variable QPC_SEED supplies a default seed when --seed is absent.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import comparisons, invariants, realizability, states, verification
from .files import (
    FileFormatError,
    dump_doc,
    family_doc,
    family_from_json,
    family_to_json,
    load_text,
    matrix_doc,
    matrix_from_json,
    matrix_to_json,
    save_text,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

DUPLICATE_RAY_TOL = 1e-9
BRANCH_CUT_MARGIN = 1e-6


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _fmt_c(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zero-tol", type=float, default=comparisons.DEFAULT_ZERO_TOL,
                        help="overlap modulus at or below this counts as orthogonal")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (falls back to QPC_SEED, then 0)")
    common.add_argument("--out", default=None, help="write the main output to this path")
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="report style: human text or a JSON document")

    parser = argparse.ArgumentParser(
        prog="qpc",
        description="Pairwise comparison geometry of qubit state families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[common],
                           help="write a seeded random state family")
    p_gen.add_argument("--n", type=_positive_int, required=True,
                       help="number of states to draw")
    p_gen.set_defaults(func=cmd_gen)

    p_analyze = sub.add_parser("analyze", parents=[common],
                               help="full comparison report of a family file")
    p_analyze.add_argument("family", help="path to a family file")
    p_analyze.add_argument("--emit-gram", default=None, metavar="PATH",
                           help="also write the gram matrix file")
    p_analyze.add_argument("--emit-probability", default=None, metavar="PATH",
                           help="also write the probability matrix file")
    p_analyze.add_argument("--emit-phase", default=None, metavar="PATH",
                           help="also write the phase matrix file")
    p_analyze.set_defaults(func=cmd_analyze)

    p_check = sub.add_parser("check", parents=[common],
                             help="judge a gram matrix file")
    p_check.add_argument("matrix", help="path to a gram matrix file")
    p_check.set_defaults(func=cmd_check)

    p_realize = sub.add_parser("realize", parents=[common],
                               help="reconstruct states from a matrix file")
    p_realize.add_argument("matrix", help="path to a gram or phase matrix file")
    p_realize.add_argument("--restarts", type=_positive_int, default=32)
    p_realize.add_argument("--max-iters", type=_positive_int, default=500)
    p_realize.add_argument("--soft-floor", type=float, default=1e-6)
    p_realize.add_argument("--realize-tol", type=float,
                           default=realizability.REALIZE_TOL)
    p_realize.set_defaults(func=cmd_realize)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the registered self-check properties")
    p_verify.add_argument("--cases", type=_positive_int, default=100,
                          help="random instances per property")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QPC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise FileFormatError(f"QPC_SEED must be an integer, got {env!r}")
    return 0


def _emit(args, text: str) -> None:
    if args.out:
        save_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    family = states.random_family(args.n, _resolve_seed(args))
    _emit(args, family_to_json(family))
    return EXIT_OK


def _analysis(family, zero_tol: float):
    g = comparisons.gram(family)
    p = comparisons.probabilities(g)
    u = comparisons.phases(g, zero_tol)
    og = comparisons.orthogonality_graph(g, zero_tol)
    matching = comparisons.check_matching(og)
    triangles = invariants.all_triangles(g, zero_tol)
    warnings = []
    n = len(family)
    for i in range(n):
        for j in range(i + 1, n):
            if states.rays_equal(family[i], family[j], DUPLICATE_RAY_TOL):
                warnings.append(
                    f"states {i} and {j} represent the same ray; the "
                    "orthogonality matching criterion assumes distinct rays"
                )
    for rep in triangles:
        if abs(rep.pancharatnam) > math.pi - BRANCH_CUT_MARGIN:
            i, j, k = rep.triple
            warnings.append(
                f"triangle ({i}, {j}, {k}) is near the phase branch cut; "
                "its solid angle is reported on the principal branch"
            )
    return g, p, u, og, matching, triangles, warnings


def _analysis_doc(family, load_warnings, zero_tol: float) -> dict:
    g, p, u, og, matching, triangles, warnings = _analysis(family, zero_tol)
    return {
        "version": 1,
        "n": len(family),
        "labels": list(family.labels) if family.labels is not None else None,
        "zero_tol": zero_tol,
        "gram": matrix_doc("gram", g.entries),
        "probability": matrix_doc("probability", p.entries),
        "phase": matrix_doc("phase", u),
        "orthogonality": {
            "edges": [[i, j] for i, j in sorted(og.edges)],
            "matching": matching,
        },
        "triangles": [
            {
                "triple": list(rep.triple),
                "bargmann": {"re": rep.bargmann.real, "im": rep.bargmann.imag},
                "defect": {"re": rep.defect.real, "im": rep.defect.imag},
                "pancharatnam": rep.pancharatnam,
                "solid_angle": rep.solid_angle,
                "amplitude_factor": rep.amplitude_factor,
            }
            for rep in triangles
        ],
        "warnings": list(load_warnings) + warnings,
    }


def _analysis_text(family, load_warnings, zero_tol: float) -> str:
    g, p, u, og, matching, triangles, warnings = _analysis(family, zero_tol)
    n = len(family)
    lines = [f"family of {n} state(s)"]
    if family.labels is not None:
        lines.append("labels: " + ", ".join(family.labels))
    lines.append("gram matrix:")
    for i in range(n):
        lines.append("  " + "  ".join(_fmt_c(g.entries[i, j]) for j in range(n)))
    lines.append("probability matrix:")
    for i in range(n):
        lines.append("  " + "  ".join(_fmt(p.entries[i, j]) for j in range(n)))
    lines.append("phases on support pairs:")
    if u.support.edges:
        for i, j in sorted(u.support.edges):
            lines.append(
                f"  ({i}, {j}): {_fmt_c(u.entries[i, j])}  angle {_fmt(u.angle(i, j))}"
            )
    else:
        lines.append("  none")
    ortho = sorted(og.edges)
    lines.append(
        "orthogonal pairs: "
        + (", ".join(f"({i}, {j})" for i, j in ortho) if ortho else "none")
    )
    lines.append(f"orthogonality graph is a matching: {'yes' if matching else 'no'}")
    lines.append("triangles:")
    if triangles:
        for rep in triangles:
            i, j, k = rep.triple
            lines.append(
                f"  ({i}, {j}, {k}): bargmann {_fmt_c(rep.bargmann)}  "
                f"defect {_fmt_c(rep.defect)}  "
                f"pancharatnam {_fmt(rep.pancharatnam)}  "
                f"solid_angle {_fmt(rep.solid_angle)}  "
                f"amplitude {_fmt(rep.amplitude_factor)}"
            )
    else:
        lines.append("  none")
    for w in list(load_warnings) + warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    family, load_warnings = family_from_json(load_text(args.family))
    if args.emit_gram or args.emit_probability or args.emit_phase:
        g = comparisons.gram(family)
        if args.emit_gram:
            save_text(args.emit_gram, matrix_to_json("gram", g.entries))
        if args.emit_probability:
            save_text(
                args.emit_probability,
                matrix_to_json("probability", comparisons.probabilities(g).entries),
            )
        if args.emit_phase:
            save_text(
                args.emit_phase,
                matrix_to_json("phase", comparisons.phases(g, args.zero_tol)),
            )
    if args.format == "structured":
        _emit(args, dump_doc(_analysis_doc(family, load_warnings, args.zero_tol)))
    else:
        _emit(args, _analysis_text(family, load_warnings, args.zero_tol))
    return EXIT_OK


def _verdict_doc(verdict) -> dict:
    return {
        "hermitian_ok": verdict.hermitian_ok,
        "unit_diag_ok": verdict.unit_diag_ok,
        "psd_ok": verdict.psd_ok,
        "rank_ok": verdict.rank_ok,
        "rank_estimate": verdict.rank_estimate,
        "eigenvalues": list(verdict.eigenvalues),
        "worst_violation": verdict.worst_violation,
        "realizable": verdict.all_ok,
    }


def _verdict_text(verdict) -> str:
    rows = [
        ("hermitian", verdict.hermitian_ok),
        ("unit diagonal", verdict.unit_diag_ok),
        ("positive semidefinite", verdict.psd_ok),
        ("rank at most 2", verdict.rank_ok),
    ]
    lines = [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in rows]
    lines.append(f"rank estimate: {verdict.rank_estimate}")
    lines.append("eigenvalues: " + "  ".join(_fmt(x) for x in verdict.eigenvalues))
    lines.append(f"worst violation: {_fmt(verdict.worst_violation)}")
    lines.append(
        "verdict: realizable by qubit states"
        if verdict.all_ok
        else "verdict: not realizable by qubit states"
    )
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    kind, payload = matrix_from_json(load_text(args.matrix))
    if kind != "gram":
        raise FileFormatError(f"check requires a gram matrix file, got kind {kind!r}")
    verdict = realizability.check_gram(payload)
    if args.format == "structured":
        _emit(args, dump_doc(_verdict_doc(verdict)))
    else:
        _emit(args, _verdict_text(verdict))
    return EXIT_OK if verdict.all_ok else EXIT_NEGATIVE


def _result_doc(status: str, residual: float, diagnostics: str, certificate) -> dict:
    return {
        "status": status,
        "residual": residual,
        "diagnostics": diagnostics,
        "certificate": family_doc(certificate) if certificate is not None else None,
    }


def _result_text(status: str, residual: float, diagnostics: str, certificate) -> str:
    lines = [f"status: {status}", f"residual: {_fmt(residual)}"]
    if diagnostics:
        lines.append(f"diagnostics: {diagnostics}")
    if certificate is not None:
        lines.append("certificate states:")
        for s in certificate.states:
            lines.append(f"  {_fmt_c(s.c0)}  {_fmt_c(s.c1)}")
    return "\n".join(lines) + "\n"


def cmd_realize(args) -> int:
    kind, payload = matrix_from_json(load_text(args.matrix))
    if kind == "probability":
        raise FileFormatError(
            "realize requires a gram or phase matrix file, got kind 'probability'"
        )
    if kind == "gram":
        verdict = realizability.check_gram(payload)
        if not verdict.all_ok:
            text = (
                dump_doc(_verdict_doc(verdict))
                if args.format == "structured"
                else _verdict_text(verdict)
            )
            _emit(args, text)
            return EXIT_NEGATIVE
        # The verdict allows slack below the strict type tolerance; fold the
        # matrix onto its Hermitian, unit-diagonal part before factoring.
        h = (payload + payload.conj().T) / 2.0
        np.fill_diagonal(h, 1.0)
        family = realizability.factor_states(comparisons.GramMatrix(h))
        rebuilt = comparisons.gram(family)
        residual = float(np.max(np.abs(rebuilt.entries - payload)))
        doc_args = (realizability.REALIZABLE, residual, "factored from eigenpairs", family)
    else:
        cfg = realizability.SearchConfig(
            restarts=args.restarts,
            max_iters=args.max_iters,
            seed=_resolve_seed(args),
            soft_floor=args.soft_floor,
            realize_tol=args.realize_tol,
        )
        result = realizability.realize_phases(payload, cfg)
        doc_args = (result.status, result.residual, result.diagnostics, result.certificate)
    status, residual, diagnostics, certificate = doc_args
    if args.format == "structured":
        text = dump_doc(_result_doc(status, residual, diagnostics, certificate))
    else:
        text = _result_text(status, residual, diagnostics, certificate)
    if args.out and certificate is not None:
        save_text(args.out, family_to_json(certificate))
        sys.stdout.write(text)
    else:
        _emit(args, text)
    if status == realizability.REALIZABLE:
        return EXIT_OK
    if status == realizability.SEARCH_FAILED:
        return EXIT_INCONCLUSIVE
    return EXIT_NEGATIVE


def cmd_verify(args) -> int:
    reports = verification.run_all(args.cases, _resolve_seed(args))
    if args.format == "structured":
        doc = {
            "cases": args.cases,
            "reports": [
                {
                    "name": r.name,
                    "cases_run": r.cases_run,
                    "max_discrepancy": r.max_discrepancy,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                }
                for r in reports
            ],
            "all_passed": all(r.passed for r in reports),
        }
        _emit(args, dump_doc(doc))
    else:
        lines = [r.line() for r in reports]
        failed = sum(1 for r in reports if not r.passed)
        lines.append(
            f"{len(reports)} properties, {len(reports) - failed} passed, {failed} failed"
        )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NEGATIVE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return args.func(args)
    except FileFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    raise SystemExit(main())
