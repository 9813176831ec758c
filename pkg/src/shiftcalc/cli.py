"""Command-line front end.

Every subcommand prints exactly one JSON run report to stdout (schema
"shiftcalc/v1": command, input digests, tolerances, verdict) and reserves
stderr for human-readable notes.  Reports are byte-identical across runs for
identical inputs, flags and seeds; wall-clock timing is therefore only shown
on stderr under --verbose.

Exit codes: 0 verified / found / inconclusive, 1 refuted / not found,
2 distinguished by an invariant, 64 usage error, 65 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import jsonio
from .aligned import (
    build_from_se,
    verify_aligned,
    verify_concrete_shift,
    alignment_residuals,
)
from .corr import from_matrix, tensor, two_arrow_residual
from .errors import ShiftcalcError
from .exact import IntMatrix
from .homotopy import homotopy_shift_equivalence_from_se, verify_homotopy
from .invariants import compare, compute_invariants
from .selftest import run_selftest
from .witnesses import SEWitness, failing_equation, search_se

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_DISTINGUISHED = 2
EXIT_USAGE = 64
EXIT_DATA = 65

DEFAULT_TOL_ENV = "SHIFTCALC_TOL"


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


class _Run:
    """Collects the run report and handles emission."""

    def __init__(self, command: str, tol: float, verbose: bool):
        self.command = command
        self.tol = tol
        self.verbose = verbose
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()

    def track(self, path: str) -> str:
        self.inputs[path] = _digest(path)
        return path

    def note(self, message: str):
        print(message, file=sys.stderr)

    def emit(self, verdict: dict, exit_code: int) -> int:
        report = {
            "schema": jsonio.SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "tolerances": {"tol": self.tol},
            "verdict": verdict,
        }
        sys.stdout.write(jsonio.dump_json(report))
        if self.verbose:
            elapsed = (time.perf_counter() - self.started) * 1000.0
            print(f"[{self.command}] finished in {elapsed:.1f} ms", file=sys.stderr)
        return exit_code


def _load_matrix(run: _Run, path: str) -> IntMatrix:
    run.track(path)
    return jsonio.nonnegative_matrix_from_file(path)


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_verify_se(run: _Run, args) -> int:
    w = SEWitness(
        _load_matrix(run, args.a),
        _load_matrix(run, args.b),
        _load_matrix(run, args.r),
        _load_matrix(run, args.s),
        args.lag,
    )
    failure = failing_equation(w)
    verdict = {"verified": failure is None, "failing_equation": failure}
    if failure is not None:
        run.note(f"refuted: first failing equation is {failure}")
        return run.emit(verdict, EXIT_REFUTED)
    return run.emit(verdict, EXIT_OK)


def _cmd_search_se(run: _Run, args) -> int:
    a = _load_matrix(run, args.a)
    b = _load_matrix(run, args.b)
    found = search_se(a, b, args.lag, args.bound)
    if found is None:
        return run.emit({"found": False, "witness": None}, EXIT_REFUTED)
    return run.emit({"found": True, "witness": jsonio.witness_to_json(found)}, EXIT_OK)


def _cmd_invariants(run: _Run, args) -> int:
    inv = compute_invariants(_load_matrix(run, args.a))
    verdict = {
        "nonzero_char_poly": list(inv.nonzero_char_poly.coeffs),
        "bowen_franks": list(inv.bowen_franks),
        "eventual_rank": inv.eventual_rank,
        "det_away_from_zero": inv.det_away_from_zero,
    }
    return run.emit(verdict, EXIT_OK)


def _cmd_compare(run: _Run, args) -> int:
    verdict = compare(_load_matrix(run, args.a), _load_matrix(run, args.b))
    doc = {
        "distinguished": verdict.distinguished,
        "separating": list(verdict.separating),
        "primary": verdict.primary,
    }
    if verdict.distinguished:
        run.note(f"distinguished by {verdict.primary}")
        return run.emit(doc, EXIT_DISTINGUISHED)
    return run.emit(doc, EXIT_OK)


def _cmd_corr_tensor(run: _Run, args) -> int:
    r = _load_matrix(run, args.r)
    s = _load_matrix(run, args.s)
    t = tensor(from_matrix(r), from_matrix(s))
    verdict = {
        "dims": [list(row) for row in t.dims.entries],
        "basis_size": t.total_dim,
        "left_index": list(t.left_index),
        "right_index": list(t.right_index),
    }
    return run.emit(verdict, EXIT_OK)


def _cmd_corr_check_two_arrow(run: _Run, args) -> int:
    f = jsonio.arrow_from_json(jsonio.load_json(run.track(args.f)))
    g = jsonio.arrow_from_json(jsonio.load_json(run.track(args.g)))
    psi = jsonio.block_unitary_from_json(jsonio.load_json(run.track(args.psi)), f.f, g.f)
    residual = float(two_arrow_residual(psi, f, g))
    ok = residual <= run.tol
    verdict = {"two_arrow": ok, "residual": residual}
    return run.emit(verdict, EXIT_OK if ok else EXIT_REFUTED)


def _cmd_aligned_verify(run: _Run, args) -> int:
    shift = jsonio.shift_from_json(jsonio.load_json(run.track(args.data)))
    concrete = verify_concrete_shift(shift, run.tol)
    if not concrete:
        run.note("not a concrete shift: some structure map is not unitary")
        return run.emit({"concrete": False, "aligned": None}, EXIT_REFUTED)
    aligned = verify_aligned(shift, run.tol)
    rx, ry = alignment_residuals(shift)
    verdict = {
        "concrete": True,
        "aligned": aligned,
        "residuals": {"x": float(rx), "y": float(ry)},
    }
    return run.emit(verdict, EXIT_OK if aligned else EXIT_REFUTED)


def _cmd_aligned_from_se(run: _Run, args) -> int:
    witness = jsonio.witness_from_json(jsonio.load_json(run.track(args.witness)))
    overrides = {}
    shift = build_from_se(witness)
    for name, path in (
        ("phi_m", args.phi_m),
        ("phi_n", args.phi_n),
        ("psi_x", args.psi_x),
        ("psi_y", args.psi_y),
    ):
        if path is not None:
            overrides[name] = jsonio.load_json(run.track(path))
    if overrides:
        kwargs = {}
        if "phi_m" in overrides:
            kwargs["phi_m"] = jsonio.block_unitary_from_json(
                overrides["phi_m"], shift.m_arrow.phi.source, shift.m_arrow.phi.target
            )
        if "phi_n" in overrides:
            kwargs["phi_n"] = jsonio.block_unitary_from_json(
                overrides["phi_n"], shift.n_arrow.phi.source, shift.n_arrow.phi.target
            )
        if "psi_x" in overrides:
            kwargs["psi_x"] = jsonio.block_unitary_from_json(
                overrides["psi_x"], shift.psi_x.source, shift.psi_x.target
            )
        if "psi_y" in overrides:
            kwargs["psi_y"] = jsonio.block_unitary_from_json(
                overrides["psi_y"], shift.psi_y.source, shift.psi_y.target
            )
        shift = build_from_se(witness, **kwargs)
    bundle = jsonio.shift_to_json(shift)
    concrete = verify_concrete_shift(shift, run.tol)
    aligned = verify_aligned(shift, run.tol) if concrete else None
    verdict = {"concrete": concrete, "aligned": aligned}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dump_json(bundle))
        verdict["out"] = args.out
    else:
        verdict["shift"] = bundle
    return run.emit(verdict, EXIT_OK if concrete else EXIT_REFUTED)


def _cmd_homotopy_from_se(run: _Run, args) -> int:
    witness = jsonio.witness_from_json(jsonio.load_json(run.track(args.witness)))
    shift, hom_x, hom_y = homotopy_shift_equivalence_from_se(witness, steps=args.steps)
    ok_x = verify_homotopy(hom_x, run.tol)
    ok_y = verify_homotopy(hom_y, run.tol)
    bundle = {
        "schema": jsonio.SCHEMA,
        "witness": jsonio.witness_to_json(witness),
        "steps": args.steps,
        "shift": jsonio.shift_to_json(shift),
        "homotopy_x": jsonio.homotopy_to_json(hom_x),
        "homotopy_y": jsonio.homotopy_to_json(hom_y),
    }
    verdict = {"verified_x": ok_x, "verified_y": ok_y, "steps": args.steps}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dump_json(bundle))
        verdict["out"] = args.out
    else:
        verdict["bundle"] = bundle
    return run.emit(verdict, EXIT_OK if ok_x and ok_y else EXIT_REFUTED)


def _cmd_selftest(run: _Run, args) -> int:
    results = run_selftest()
    for name, ok in results:
        run.note(f"{'PASS' if ok else 'FAIL'} {name}")
    verdict = {
        "checks": [{"name": name, "ok": ok} for name, ok in results],
        "passed": sum(1 for _, ok in results if ok),
        "failed": sum(1 for _, ok in results if not ok),
    }
    all_ok = all(ok for _, ok in results)
    return run.emit(verdict, EXIT_OK if all_ok else EXIT_REFUTED)


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="shiftcalc", description=__doc__)
    parser.add_argument("--verbose", action="store_true", help="human-readable notes and timing on stderr")
    parser.add_argument("--tol", type=float, default=None, help="numerical tolerance (default from SHIFTCALC_TOL or 1e-9)")
    parser.add_argument("--jobs", type=int, default=1, help="worker count; results are identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-se", help="check the four witness equations exactly")
    for flag in ("--a", "--b", "--r", "--s"):
        p.add_argument(flag, required=True)
    p.add_argument("--lag", type=int, required=True)
    p.set_defaults(fn=_cmd_verify_se)

    p = sub.add_parser("search-se", help="bounded search for a witness")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--lag", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=_cmd_search_se)

    p = sub.add_parser("invariants", help="invariant battery of one matrix")
    p.add_argument("--a", required=True)
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("compare", help="compare invariant batteries of two matrices")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("corr", help="correspondence calculus")
    corr_sub = p.add_subparsers(dest="corr_command", required=True)
    q = corr_sub.add_parser("tensor", help="tensor product of two edge correspondences")
    q.add_argument("--r", required=True)
    q.add_argument("--s", required=True)
    q.set_defaults(fn=_cmd_corr_tensor)
    q = corr_sub.add_parser("check-2arrow", help="check the intertwining square of psi")
    q.add_argument("--psi", required=True)
    q.add_argument("--f", required=True)
    q.add_argument("--g", required=True)
    q.set_defaults(fn=_cmd_corr_check_two_arrow)

    p = sub.add_parser("aligned", help="concrete and aligned shifts")
    al_sub = p.add_subparsers(dest="aligned_command", required=True)
    q = al_sub.add_parser("verify", help="verify a shift bundle")
    q.add_argument("--data", required=True)
    q.set_defaults(fn=_cmd_aligned_verify)
    q = al_sub.add_parser("from-se", help="build a shift bundle from a witness")
    q.add_argument("--witness", required=True)
    q.add_argument("--phi-m", dest="phi_m")
    q.add_argument("--phi-n", dest="phi_n")
    q.add_argument("--psi-x", dest="psi_x")
    q.add_argument("--psi-y", dest="psi_y")
    q.add_argument("--out")
    q.set_defaults(fn=_cmd_aligned_from_se)

    p = sub.add_parser("homotopy", help="homotopies of arrows")
    h_sub = p.add_subparsers(dest="homotopy_command", required=True)
    q = h_sub.add_parser("from-se", help="homotopy shift equivalence from a witness")
    q.add_argument("--witness", required=True)
    q.add_argument("--steps", type=int, default=16)
    q.add_argument("--out")
    q.set_defaults(fn=_cmd_homotopy_from_se)

    p = sub.add_parser("selftest", help="run the bundled verification battery")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def _command_name(args) -> str:
    name = args.command
    for attr in ("corr_command", "aligned_command", "homotopy_command"):
        extra = getattr(args, attr, None)
        if extra:
            name = f"{name} {extra}"
    return name


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None:
        tol = args.tol
    else:
        try:
            tol = float(os.environ.get(DEFAULT_TOL_ENV, "1e-9"))
        except ValueError:
            print(f"shiftcalc: invalid {DEFAULT_TOL_ENV}", file=sys.stderr)
            return EXIT_USAGE
    if args.jobs < 1:
        print("shiftcalc: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    run = _Run(_command_name(args), tol, args.verbose)
    try:
        return args.fn(run, args)
    except FileNotFoundError as exc:
        print(f"shiftcalc: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ShiftcalcError as exc:
        print(f"shiftcalc: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
