"""Command-line front end.

Subcommands::

    wstategen multiport --n 3 --out tritter.json
    wstategen path-w --n 3 [--input-port 0] [--format json|csv|table]
    wstategen polar-w --n 3 [--format json|csv|table]
    wstategen design --target target.json --out unitary.json
    wstategen evolve --matrix m.json --input state.json [--postselect one-per-port]

Exit codes: 0 success, 2 invalid input, 3 numerical or capacity failure.
JSON output is lossless; csv and table round to 12 significant digits,
and the table format annotates values that are (within 1e-12) a small
exact fraction p/q with q <= 64, so 0.111111111111 reads as 1/9.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import CapacityError
from .evolve import evolve as evolve_state
from .fock import FockState, SuperposedState
from .postselect import CoincidencePattern, postselect
from .schemes import SchemeReport, run_path_w, run_polarization_w

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

RATIONAL_MAX_DENOMINATOR = 64
RATIONAL_TOL = 1e-12


def fmt12(x: float) -> str:
    return f"{x:.12g}"


def rational_note(x: float) -> str:
    """' (= p/q)' when x is within 1e-12 of a fraction with denominator <= 64, else ''."""
    frac = Fraction(x).limit_denominator(RATIONAL_MAX_DENOMINATOR)
    if frac.denominator > 1 and abs(x - float(frac)) <= RATIONAL_TOL:
        return f" (= {frac})"
    return ""


def _dump_json(obj: dict, stream) -> None:
    json.dump(obj, stream, indent=2)
    stream.write("\n")


def _report_rows(report: SchemeReport) -> list[tuple[str, float]]:
    rows = [
        ("successProbability", report.success_probability),
        ("fidelityToTarget", report.fidelity_to_target),
    ]
    if report.post_selection is not None:
        rows.append(("keptTerms", float(report.post_selection.kept_terms)))
        rows.append(("droppedProbability", report.post_selection.dropped_probability))
    return rows


def _print_path_w(report: SchemeReport, fmt: str, stream) -> None:
    if fmt == "json":
        _dump_json(report.to_json_obj(), stream)
    elif fmt == "csv":
        stream.write("port,probability\n")
        for port, prob in enumerate(report.port_probabilities):
            stream.write(f"{port},{fmt12(prob)}\n")
    else:
        stream.write(f"path-W scheme, n={report.n}, input through DFT multiport\n")
        for port, prob in enumerate(report.port_probabilities):
            stream.write(f"  port {port}: probability {fmt12(prob)}{rational_note(prob)}\n")
        stream.write(f"  success probability: {fmt12(report.success_probability)}"
                     f"{rational_note(report.success_probability)}\n")
        stream.write(f"  fidelity to uniform-phase W: {fmt12(report.fidelity_to_target)}\n")
        stream.write(f"  probability distribution uniform: {report.probability_uniform}\n")


def _print_polar_w(report: SchemeReport, fmt: str, stream) -> None:
    if fmt == "json":
        _dump_json(report.to_json_obj(), stream)
    elif fmt == "csv":
        stream.write("metric,value\n")
        for name, value in _report_rows(report):
            stream.write(f"{name},{fmt12(value)}\n")
    else:
        stream.write(f"polarization-W scheme, n={report.n} ({report.reference_note})\n")
        for name, value in _report_rows(report):
            stream.write(f"  {name}: {fmt12(value)}{rational_note(value)}\n")


def _print_superposed(state: SuperposedState, fmt: str, stream, heading: str) -> None:
    if fmt == "csv":
        stream.write("state,re,im,probability\n")
        for s, amp in state:
            stream.write(
                f"{s},{fmt12(amp.real)},{fmt12(amp.imag)},{fmt12(abs(amp) ** 2)}\n"
            )
    else:
        stream.write(f"{heading} ({len(state)} terms):\n")
        for s, amp in state:
            prob = abs(amp) ** 2
            stream.write(
                f"  {s}: amp {fmt12(amp.real)}{amp.imag:+.12g}i"
                f"  p={fmt12(prob)}{rational_note(prob)}\n"
            )


def cmd_multiport(args, stream) -> int:
    if args.n < 2:
        print("error: n must be >= 2", file=sys.stderr)
        return EXIT_INVALID
    u = linalg.dft_multiport(args.n)
    try:
        linalg.write_matrix(args.out, u)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stream.write(f"wrote {args.n}x{args.n} DFT multiport to {args.out}\n")
    return EXIT_OK


def cmd_path_w(args, stream) -> int:
    try:
        report = run_path_w(args.n, args.input_port)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _print_path_w(report, args.format, stream)
    return EXIT_OK


def cmd_polar_w(args, stream) -> int:
    try:
        report = run_polarization_w(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"error: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _print_polar_w(report, args.format, stream)
    return EXIT_OK


def cmd_design(args, stream) -> int:
    try:
        with open(args.target) as f:
            raw = json.load(f)
        target = np.array([complex(re, im) for re, im in raw])
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read target vector from {args.target}: {exc}",
              file=sys.stderr)
        return EXIT_INVALID
    try:
        target = linalg.check_normalized_column(target)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    u = linalg.complete_unitary_from_column(target)

    column_ok = bool(np.max(np.abs(u[:, 0] - target)) <= 1e-10)
    unitary_ok = linalg.verify_unitary(u, 1e-10)
    stream.write(f"column match: {'PASS' if column_ok else 'FAIL'}\n")
    stream.write(f"unitarity: {'PASS' if unitary_ok else 'FAIL'}\n")
    if not (column_ok and unitary_ok):
        print("error: completed unitary failed verification", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        linalg.write_matrix(args.out, u)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stream.write(f"wrote completed unitary to {args.out}\n")
    return EXIT_OK


def cmd_evolve(args, stream) -> int:
    try:
        u = linalg.read_matrix(args.matrix)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read matrix from {args.matrix}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not linalg.verify_unitary(u, 1e-10):
        print("error: matrix not unitary within 1e-10", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        with open(args.input) as f:
            input_state = FockState.from_json_obj(json.load(f))
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input state from {args.input}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        out = evolve_state(u, input_state)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"error: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    result = None
    if args.postselect is not None:
        result = postselect(out, CoincidencePattern.one_per_port())

    if args.format == "json":
        obj = {"output": out.to_json_obj()}
        if result is not None:
            obj["postSelection"] = result.to_json_obj()
        _dump_json(obj, stream)
    else:
        _print_superposed(out, args.format, stream, "output state")
        if result is not None:
            stream.write(
                f"post-selection one-per-port: probability "
                f"{fmt12(result.probability)}{rational_note(result.probability)}"
                f", kept {result.kept_terms} terms\n"
            )
            if result.kept_terms:
                _print_superposed(result.conditional, args.format, stream,
                                  "conditional state")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wstategen",
        description="Exact simulation of W-state generation with multiport fiber couplers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiport", help="write an n-port DFT coupler matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_multiport)

    p = sub.add_parser("path-w", help="run the single-photon path W scheme")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input-port", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    p.set_defaults(func=cmd_path_w)

    p = sub.add_parser("polar-w", help="run the multiphoton polarization W scheme")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    p.set_defaults(func=cmd_polar_w)

    p = sub.add_parser("design", help="complete a unitary from a target first column")
    p.add_argument("--target", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("evolve", help="evolve a Fock state through a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--postselect", choices=["one-per-port"], default=None)
    p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    p.set_defaults(func=cmd_evolve)

    return parser


def main(argv: list[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    return args.func(args, stream if stream is not None else sys.stdout)


def entry_point() -> None:
    sys.exit(main())
