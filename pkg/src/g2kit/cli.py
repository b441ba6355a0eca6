"""Command line front end.

Subcommands:

- ``verify``   run an identity suite and report residuals as JSON
- ``analyze``  full torsion/curvature report for an invariant structure
- ``flow``     integrate the volume-increasing flow, writing a CSV trace
- ``examples`` write the builtin algebra and initial-form JSON files

Exit codes: 0 success, 1 check failure, 2 usage error, 3 non-definite
input, 4 structure constants violating the Jacobi identity, 5 flow left
the definite cone.  The env var G2KIT_TOL overrides the default float
tolerance (1e-9) used for pass/fail decisions.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .definite import NonDefiniteError, metric_from, ricci_eigenvalues
from .flow import FlowLostDefiniteness, fernandez_reference, monitor_residuals, run_flow
from .forms import DIM, Form
from .g2 import PHI, two_form_rank
from .liealg import (
    LieAlgebra7,
    builtin_algebra,
    builtin_names,
    closed_structure_report,
    natural_equation_residual,
    ricci_torsion_formula,
    scalar_curvature,
    torsion_forms,
)
from .scalars import scalar_to_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONDEFINITE = 3
EXIT_JACOBI = 4
EXIT_LOST_DEFINITENESS = 5


def cli_tolerance() -> float:
    return float(os.environ.get("G2KIT_TOL", "1e-9"))


def _jsonable(v):
    if isinstance(v, Fraction):
        return scalar_to_json(v)
    if isinstance(v, Form):
        return form_literal(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def form_literal(a: Form) -> str:
    if not a.terms:
        return "0"
    bits = []
    for mask in sorted(a.terms):
        c = a.terms[mask]
        idx = "".join(str(i + 1) for i in range(DIM) if mask >> i & 1)
        name = f"w{idx}" if idx else "1"
        bits.append(f"{scalar_to_json(c) if isinstance(c, Fraction) else c}*{name}")
    return " + ".join(bits)


def _emit(payload: dict):
    print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))


def _load_algebra(args) -> LieAlgebra7:
    if getattr(args, "algebra", None):
        L = LieAlgebra7.from_file(args.algebra)
    elif getattr(args, "example", None):
        L = builtin_algebra(args.example)
    else:
        L = builtin_algebra("abelian")
    if L.jacobi_residual() > cli_tolerance():
        print(
            f"error: structure constants of {L.name!r} violate the Jacobi identity",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_JACOBI)
    return L


def _load_form(args) -> Form:
    if getattr(args, "form", None):
        with open(args.form) as fh:
            return Form.from_json(json.load(fh))
    return PHI


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(args) -> int:
    suite = args.suite
    if suite not in verify_mod.SUITES:
        print(f"error: unknown suite {suite!r}", file=sys.stderr)
        return EXIT_USAGE
    records = verify_mod.SUITES[suite](args.trials, args.seed)
    ok = verify_mod.all_pass(records)
    _emit(
        {
            "suite": suite,
            "trials": args.trials,
            "seed": args.seed,
            "checks": [
                {
                    "name": r["name"],
                    "residual": scalar_to_json(r["residual"])
                    if isinstance(r["residual"], Fraction)
                    else r["residual"],
                    "tolerance": r["tol"],
                    "pass": r["pass"],
                }
                for r in records
            ],
            "pass": ok,
        }
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(args) -> int:
    L = _load_algebra(args)
    sigma = _load_form(args)
    try:
        st = metric_from(sigma)
    except NonDefiniteError:
        print("error: the 3-form is not definite", file=sys.stderr)
        return EXIT_NONDEFINITE
    t = torsion_forms(L, st)
    norms = t.norms()
    ric = ricci_torsion_formula(L, st)
    spectrum = ricci_eigenvalues(ric, st.metric)
    report = {
        "algebra": L.name,
        "definiteness_margin": st.margin,
        "volume": float(st.s) * st.orientation,
        "torsion": {
            "tau0": t.tau0,
            "tau1": t.tau1,
            "tau2": t.tau2,
            "tau3": t.tau3,
        },
        "torsion_norms": norms,
        "one_flat": t.one_flat(cli_tolerance()),
        "scalar_curvature": scalar_curvature(t),
        "ricci_spectrum": spectrum,
    }
    closed = L.d_form(sigma).max_abs() <= cli_tolerance()
    report["closed"] = closed
    if closed:
        crep = closed_structure_report(L, st)
        report["pinch_ratio"] = crep["pinch_ratio"]
        report["einstein_residual"] = crep["einstein_residual"]
        report["erp_residual"] = crep["erp_residual"]
        report["tau2_rank"] = two_form_rank(t.tau2)
        report["natural_equation"] = {
            str(lam): natural_equation_residual(L, st, Fraction(lam))
            for lam in (0, Fraction(1, 6), Fraction(1, 2), 1)
        }
    _emit(report)
    return EXIT_OK


def cmd_flow(args) -> int:
    L = _load_algebra(args)
    sigma = _load_form(args)
    code = EXIT_OK
    try:
        trace = run_flow(
            L,
            sigma,
            args.t_end,
            args.dt,
            mode=args.mode,
            record_every=args.record_every,
        )
    except FlowLostDefiniteness as exc:
        trace = exc.partial_trace
        code = EXIT_LOST_DEFINITENESS
    except NonDefiniteError:
        print("error: the initial 3-form is not definite", file=sys.stderr)
        return EXIT_NONDEFINITE
    if args.output:
        trace.write_csv(args.output)
    summary = {
        "algebra": L.name,
        "mode": args.mode,
        "t_end": args.t_end,
        "dt": args.dt,
        "steps_recorded": len(trace.steps),
        "terminal_status": "lost_definiteness" if code else "completed",
        "final": {
            "t": trace.final.t,
            "vol": trace.final.vol,
            "tau2_sq": trace.final.tau2_sq,
            "scal": trace.final.scal,
            "margin": trace.final.margin,
            "closed_residual": trace.final.closed_residual,
        },
        "monitor_residuals": monitor_residuals(trace),
    }
    if args.example == "fernandez" and args.mode == "closed" and code == EXIT_OK:
        ref = fernandez_reference(trace.final.t)
        summary["reference_sup_error"] = (
            trace.final.sigma + ref["sigma"].scale(-1.0)
        ).max_abs()
    _emit(summary)
    return code


def cmd_examples(args) -> int:
    if args.name not in builtin_names():
        print(
            f"error: unknown example {args.name!r}; choose from {sorted(builtin_names())}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    L = builtin_algebra(args.name)
    outdir = args.output or "."
    os.makedirs(outdir, exist_ok=True)
    apath = os.path.join(outdir, f"{args.name}.algebra.json")
    fpath = os.path.join(outdir, f"{args.name}.form.json")
    with open(apath, "w") as fh:
        json.dump(L.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(fpath, "w") as fh:
        json.dump(PHI.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit({"algebra_file": apath, "form_file": fpath})
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2kit",
        description="Invariant geometry of definite 3-forms in seven dimensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=sorted(verify_mod.SUITES),
    )
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("analyze", help="torsion and curvature report")
    p.add_argument("--algebra", help="algebra JSON file")
    p.add_argument("--example", choices=sorted(builtin_names()))
    p.add_argument("--form", help="3-form JSON file (default: the model form)")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("flow", help="integrate the volume-increasing flow")
    p.add_argument("--algebra", help="algebra JSON file")
    p.add_argument("--example", choices=sorted(builtin_names()))
    p.add_argument("--form", help="initial 3-form JSON file")
    p.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--mode", choices=("closed", "general"), default="closed")
    p.add_argument("--record-every", dest="record_every", type=int, default=10)
    p.add_argument("--output", help="CSV trace path")
    p.set_defaults(fn=cmd_flow)

    p = sub.add_parser("examples", help="write builtin example input files")
    p.add_argument("--name", required=True)
    p.add_argument("--output", help="output directory (default: current)")
    p.set_defaults(fn=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        raise exc
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
