"""Command-line front end.

``su2ym run`` reads a job document (JSON: signature, current, options), runs
the solver and prints a human-readable or JSON report. ``su2ym atlas`` sweeps
the classification table rows and prints the solution-count atlas.

Exit codes: 0 success, 2 invalid input, 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import verify
from .atlas import atlas_entries, render_atlas
from .classify import (
    ClassifyError,
    enumerate_canonical,
    reduced_system,
    solve_all,
)
from .cubic import CubicError
from .hsvd import HsvdError
from .linalg import LinalgError, Signature

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class InputError(Exception):
    pass


def _fmt(v: float) -> str:
    s = f"{float(v):.12g}"
    return "0" if s == "-0" else s


def _load_job(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    try:
        p = int(doc["signature"]["p"])
        q = int(doc["signature"]["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("missing or malformed 'signature': need integer p and q") from exc
    if p < 1 or q < 1:
        raise InputError(f"signature requires p >= 1 and q >= 1, got ({p}, {q})")
    try:
        J = np.array(doc["current"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("missing or malformed 'current': need an n x 3 numeric array") from exc
    if J.ndim != 2 or J.shape != (p + q, 3):
        raise InputError(f"current must be {p + q} x 3 for signature ({p}, {q}), got {J.shape}")
    if not np.all(np.isfinite(J)):
        raise InputError("current entries must be finite")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputError("'options' must be an object")
    return Signature(p, q), J, options


def _strength_rows(strength):
    return [
        {"mu": mu + 1, "nu": nu + 1, "c": c + 1, "value": val}
        for (mu, nu, c, val) in strength.nonzero_components()
    ]


def _family_samples(fam, J, sig, count):
    samples = []
    for k in range(1, count + 1):
        t = float(k)
        A = fam.generator(t)
        rep = verify.residual(A, J, sig)
        samples.append({"a1": t, "A": A.tolist(), "residual_max": rep.max_abs})
    return samples


def _run_oracle(key, sig, seed, starts):
    rs = reduced_system(key, sig)
    if rs is None:
        return {"applicable": False}
    canon_report = enumerate_canonical(key, sig)
    vecs = [
        rs.extract(e.potential.A, sig)
        for e in canon_report.exact
        if e.potential.row in rs.rows
    ]
    oracle = verify.oracle_solve(rs.kind, rs.jvals, seed=seed, n_starts=starts)
    match = verify.cross_check(vecs, oracle)
    return {
        "applicable": True,
        "kind": rs.kind,
        "reduced_j": list(rs.jvals),
        "matched": match.matched,
        "count": match.count,
        "oracle_roots": len(oracle.roots),
        "seed": seed,
        "starts": oracle.starts_used,
    }


def _report_doc(report, J, sig, args):
    key = report.key
    doc = {
        "signature": {"p": sig.p, "q": sig.q},
        "class": {
            "d_J": key.dJ,
            "x_J": key.xJ,
            "y_J": key.yJ,
            "subcase": key.subcase,
            "hyperbolic_singular_values": list(key.jvals),
        },
        "frame": report.frame,
        "count": report.count_label,
        "warnings": list(key.warnings),
        "notes": list(report.notes),
        "solutions": [],
        "families": [],
    }
    for entry in report.exact:
        pot, strength = entry.potential, entry.strength
        rep = verify.residual(pot.A, J, sig) if report.frame == "original" else None
        item = {
            "row": pot.row,
            "branch": pot.branch,
            "params": {"d_A": pot.params[0], "x_A": pot.params[1], "y_A": pot.params[2]},
            "A": pot.A.tolist(),
            "f2": strength.f2_scalar,
            "strength_components": _strength_rows(strength),
            "residual_max": entry.residual_max,
        }
        if rep is not None:
            item["per_equation_residuals"] = rep.per_equation.tolist()
        doc["solutions"].append(item)
    for fam in report.families:
        item = {
            "row": fam.row,
            "parameter": fam.parameter,
            "domain": fam.domain,
            "description": fam.description,
            "params": {"d_A": fam.params[0], "x_A": fam.params[1], "y_A": fam.params[2]},
            "f2": fam.f2_scalar,
        }
        if args.sample_families > 0:
            item["samples"] = _family_samples(fam, J, sig, args.sample_families)
        doc["families"].append(item)
    return doc


def _matrix_lines(A, indent="    "):
    return [indent + "  ".join(f"{_fmt(v):>16s}" for v in row) for row in A]


def _print_text(doc, out):
    cls = doc["class"]
    print(f"signature: ({doc['signature']['p']}, {doc['signature']['q']})", file=out)
    print(
        f"class: d_J={cls['d_J']} x_J={cls['x_J']} y_J={cls['y_J']}"
        + (f"  subcase: {cls['subcase']}" if cls["subcase"] else ""),
        file=out,
    )
    jv = cls["hyperbolic_singular_values"]
    print(
        "hyperbolic singular values: "
        + (" ".join(_fmt(v) for v in jv) if jv else "(none)"),
        file=out,
    )
    for w in doc["warnings"]:
        print(f"warning: {w}", file=out)
    count = doc["count"]
    if count == "0":
        print("solutions: no solution", file=out)
    elif count == "inf":
        print("solutions: infinitely many (one-parameter families present)", file=out)
    else:
        print(f"solutions: {count}", file=out)
    for i, sol in enumerate(doc["solutions"], start=1):
        par = sol["params"]
        print(
            f"solution {i} [row {sol['row']}"
            + (f", branch {sol['branch']}" if sol["branch"] else "")
            + f"] d_A={par['d_A']} x_A={par['x_A']} y_A={par['y_A']}",
            file=out,
        )
        print(f"  potential ({doc['frame']} frame):", file=out)
        for line in _matrix_lines(sol["A"]):
            print(line, file=out)
        comps = sol["strength_components"]
        if comps:
            text = ", ".join(
                f"F[{c['mu']},{c['nu']}]_{c['c']}={_fmt(c['value'])}" for c in comps
            )
            print(f"  strength: {text}", file=out)
        else:
            print("  strength: F = 0", file=out)
        print(f"  F^2 = {_fmt(sol['f2'])}", file=out)
        print(f"  residual max = {_fmt(sol['residual_max'])}", file=out)
    for fam in doc["families"]:
        print(
            f"family [row {fam['row']}]: {fam['description']}; "
            f"{fam['parameter']} in {fam['domain']}, F^2 = {_fmt(fam['f2'])}",
            file=out,
        )
        for s in fam.get("samples", []):
            print(f"  sample {fam['parameter']}={_fmt(s['a1'])}:", file=out)
            for line in _matrix_lines(s["A"]):
                print(line, file=out)
            print(f"    residual max = {_fmt(s['residual_max'])}", file=out)
    if "oracle" in doc:
        o = doc["oracle"]
        if not o["applicable"]:
            print("oracle: not applicable to this class (residuals certify solutions)", file=out)
        else:
            verdict = "match" if o["matched"] else "MISMATCH"
            print(
                f"oracle: {verdict}, {o['count']} of {o['oracle_roots']} roots matched "
                f"({o['kind']} system, seed {o['seed']}, {o['starts']} starts)",
                file=out,
            )
    for note in doc["notes"]:
        print(f"note: {note}", file=out)


def _cmd_run(args) -> int:
    try:
        sig, J, options = _load_job(args.input)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    tol_rank = args.tol_rank if args.tol_rank is not None else float(options.get("tol_rank", 1e-9))
    frame = args.frame or options.get("frame", "original")
    if frame not in ("original", "canonical"):
        print(f"error: unknown frame {frame!r}", file=sys.stderr)
        return EXIT_INVALID
    try:
        report, Q, P = solve_all(J, sig, tol_rank=tol_rank, frame=frame)
        doc = _report_doc(report, J, sig, args)
        if args.oracle or options.get("oracle", False):
            doc["oracle"] = _run_oracle(report.key, sig, args.seed, args.starts)
    except (ClassifyError, HsvdError, LinalgError, CubicError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        print()
    else:
        _print_text(doc, sys.stdout)
    return EXIT_OK


def _parse_pq(text: str) -> tuple[int, int]:
    try:
        p_str, q_str = text.split(",")
        p, q = int(p_str), int(q_str)
    except ValueError as exc:
        raise InputError(f"--pq expects 'p,q' with integers, got {text!r}") from exc
    if p < 1 or q < 1:
        raise InputError(f"--pq requires p >= 1 and q >= 1, got ({p}, {q})")
    return p, q


def _cmd_atlas(args) -> int:
    try:
        pq_list = [_parse_pq(t) for t in args.pq] if args.pq is not None else None
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        text = render_atlas(atlas_entries(pq_list))
    except (ClassifyError, HsvdError, LinalgError, CubicError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2ym",
        description=(
            "classify and enumerate constant solutions of the SU(2) Yang-Mills "
            "equations for a constant current in pseudo-Euclidean space"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve one job document")
    run.add_argument("input", nargs="?", default="-", help="job JSON path, or '-' for stdin")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--frame", choices=("original", "canonical"), default=None)
    run.add_argument("--oracle", action="store_true", help="cross-check against the root-finding oracle")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--starts", type=int, default=128, help="oracle start count (>= 64)")
    run.add_argument("--tol-rank", type=float, default=None, dest="tol_rank")
    run.add_argument("--tol-cond", type=float, default=None, dest="tol_cond",
                     help="reserved: sub-case predicate tolerance")
    run.add_argument("--sample-families", type=int, default=0, dest="sample_families",
                     metavar="N", help="sample N members of each one-parameter family")
    run.set_defaults(func=_cmd_run)

    atl = sub.add_parser("atlas", help="sweep the classification table rows")
    atl.add_argument("--pq", action="append", default=None, metavar="P,Q",
                     help="signature to sweep (repeatable); default: per-row minima")
    atl.add_argument("--out", default=None, help="write the atlas to a file instead of stdout")
    atl.set_defaults(func=_cmd_atlas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())
