"""Command-line interface: hull reports, verification sweeps, reference-value
reproduction, matrix export, and minimum-weight witness printing.

Exit status: 0 on success, 1 when a verification check or value comparison
fails, 2 on usage errors (bad field order, order out of range, bad lambdas).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import oracle, prm
from .errors import OutOfRangeError, PrmHullError
from .field import field_make, prime_power_decomposition
from .gfmatrix import GfMatrix, format_matrix, row_basis, stack, write_matrix

DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9)
DEFAULT_MS = (2, 3, 4)


@dataclass(frozen=True)
class SweepConfig:
    """Everything cmd_verify needs: fields, m values, order policy, cap, output."""

    qs: tuple
    ms: tuple
    vs: Optional[tuple]  # None means every valid order 1..m(q-1)
    cap: int
    out: Optional[str]
    machine_readable: bool
    cross_check: str = "auto"
    modulus: Optional[tuple] = None


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def _parse_int_list(text, flag):
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise OutOfRangeError(f"{flag} expects comma-separated integers, got {text!r}")
    if not values:
        raise OutOfRangeError(f"{flag} expects at least one integer")
    return values


def _parse_modulus(text):
    if text is None:
        return None
    return _parse_int_list(text, "--modulus")


def _check_triple(q, m, v, modulus=None):
    """Validate a (q, m, v) instance; raises the usage-level errors."""
    p, k = prime_power_decomposition(q)
    if modulus is not None:
        field_make(p, k, modulus)
    if m < 1:
        raise OutOfRangeError(f"m must be at least 1, got {m}")
    prm._check_range(q, m, v)


def _add_instance_args(sub):
    sub.add_argument("q", type=int, help="field order, a prime power")
    sub.add_argument("m", type=int, help="projective dimension")
    sub.add_argument("v", type=int, help="code order, 1 <= v <= m(q-1)")
    sub.add_argument(
        "--modulus",
        help="irreducible modulus coefficients over GF(p), lowest degree first, "
        "comma-separated (default: smallest irreducible)",
    )


# ---------------------------------------------------------------------------
# info
# ---------------------------------------------------------------------------


def cmd_info(q, m, v, modulus=None, machine_readable=False, out=None):
    _check_triple(q, m, v, modulus)
    out = sys.stdout if out is None else out
    report = prm.build_report(q, m, v)
    if machine_readable:
        record = {
            "q": report.q,
            "m": report.m,
            "v": report.v,
            "n": report.n,
            "k": report.k,
            "d": report.d,
            "ell": report.ell,
            "dual": str(report.dual),
            "classification": [f for f in prm.FLAG_ORDER if f in report.classification],
            "hull_dim": report.hull_dim,
            "covering": report.covering,
            "hull_min_distance": report.hull_min_distance,
            "hull_lower_bound": report.hull_lower_bound,
        }
        out.write(json.dumps(record) + "\n")
    else:
        out.write(report.to_text())
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _format_record(rec):
    verdict = "pass" if rec.passed else "FAIL"
    return (
        f"q={rec.q} m={rec.m} v={rec.v} {rec.check}: "
        f"formula={rec.formula} oracle={rec.oracle} {verdict}"
    )


def _iter_reports(config):
    if config.vs is None:
        yield from oracle.run_sweep(
            qs=config.qs,
            ms=config.ms,
            cap=config.cap,
            cross_check=config.cross_check,
            modulus=config.modulus,
        )
        return
    for q in config.qs:
        for m in config.ms:
            cache = {}
            for v in config.vs:
                yield oracle.verify_instance(
                    q,
                    m,
                    v,
                    cap=config.cap,
                    cross_check=config.cross_check,
                    _cache=cache,
                    modulus=config.modulus,
                )


def cmd_verify(config, out=None):
    out = sys.stdout if out is None else out
    for q in config.qs:
        prime_power_decomposition(q)
    if config.modulus is not None and len(set(config.qs)) != 1:
        raise OutOfRangeError("--modulus needs a single field order")
    if config.vs is not None:
        for q in config.qs:
            for m in config.ms:
                for v in config.vs:
                    _check_triple(q, m, v, config.modulus)
    stream = open(config.out, "w") if config.out else out
    instances = 0
    checks = 0
    failures = 0
    try:
        for report in _iter_reports(config):
            instances += 1
            for rec in report.checks:
                checks += 1
                if not rec.passed:
                    failures += 1
                if config.machine_readable:
                    stream.write(json.dumps(rec.as_dict()) + "\n")
                else:
                    stream.write(_format_record(rec) + "\n")
            stream.flush()
    finally:
        if config.out:
            stream.close()
    out.write(f"instances: {instances}  checks: {checks}  failures: {failures}\n")
    return 0 if failures == 0 and instances > 0 else 1


# ---------------------------------------------------------------------------
# reproduce-examples
# ---------------------------------------------------------------------------

REFERENCE_VALUES = (
    (11, 3, 14, "hull_dim", 555),
    (11, 3, 17, "hull_dim", 474),
    (8, 4, 13, "hull_dim", 1682),
    (7, 4, 13, "hull_dim", 961),
    (5, 3, 9, "hull_min_distance", 75),
)


def cmd_reproduce_examples(machine_readable=False, out=None):
    out = sys.stdout if out is None else out
    rows = []
    for q, m, v, quantity, expected in REFERENCE_VALUES:
        if quantity == "hull_dim":
            computed = prm.hull_dim_formula(q, m, v).value
        else:
            computed = prm.hull_min_distance(q, m, v)
        rows.append((q, m, v, quantity, expected, computed))
    all_match = all(expected == computed for *_, expected, computed in rows)
    if machine_readable:
        for q, m, v, quantity, expected, computed in rows:
            record = {
                "q": q,
                "m": m,
                "v": v,
                "quantity": quantity,
                "expected": expected,
                "computed": computed,
                "verdict": "pass" if expected == computed else "FAIL",
            }
            out.write(json.dumps(record) + "\n")
    else:
        out.write(
            f"{'instance':<12} {'quantity':<18} {'expected':>8} {'computed':>8} match\n"
        )
        for q, m, v, quantity, expected, computed in rows:
            flag = "yes" if expected == computed else "NO"
            out.write(
                f"{f'({q},{m},{v})':<12} {quantity:<18} {expected:>8} {computed:>8} {flag}\n"
            )
    return 0 if all_match else 1


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def _export_matrix(q, m, v, what, modulus=None):
    code = prm.build_code(q, m, v, modulus=modulus)
    if what == "generator":
        return code.generator
    if what == "dual":
        fld = code.field
        ones = GfMatrix(fld, np.ones((1, code.n), dtype=np.int16))
        ell = prm.dual_order(q, m, v)
        if ell == 0:
            return ones
        gen_ell = prm.build_code(q, m, ell, modulus=modulus).generator
        if v % (q - 1) == 0:
            return row_basis(stack(ones, gen_ell))
        return gen_ell
    return oracle.hull_exact(code, cross_check="auto", cap=0).hull_basis


def cmd_export(q, m, v, what, path=None, modulus=None, out=None):
    out = sys.stdout if out is None else out
    _check_triple(q, m, v, modulus)
    mat = _export_matrix(q, m, v, what, modulus=modulus)
    if path is None:
        out.write(format_matrix(mat))
    else:
        write_matrix(mat, path)
    return 0


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def cmd_witness(q, m, v, lambdas=None, modulus=None, machine_readable=False, out=None):
    out = sys.stdout if out is None else out
    _check_triple(q, m, v, modulus)
    wit = prm.min_weight_witness(q, m, v, lambdas=lambdas, modulus=modulus)
    d = prm.prm_min_distance(q, m, v)
    lam = [int(x) for x in wit.lambdas]
    if machine_readable:
        record = {
            "q": q,
            "m": m,
            "v": v,
            "r": wit.r,
            "s": wit.s,
            "lambdas": lam,
            "witness": wit.factored,
            "terms": len(wit.polynomial),
            "weight": wit.weight,
            "distance": d,
            "verdict": "pass" if wit.weight == d else "FAIL",
        }
        out.write(json.dumps(record) + "\n")
    else:
        out.write(f"q: {q}\nm: {m}\nv: {v}\n")
        out.write(f"r: {wit.r}\ns: {wit.s}\n")
        out.write(f"lambdas: {','.join(str(x) for x in lam)}\n")
        out.write(f"witness: {wit.factored}\n")
        out.write(f"terms: {len(wit.polynomial)}\n")
        out.write(f"weight: {wit.weight}\n")
        out.write(f"distance: {d}\n")
        out.write(f"match: {'yes' if wit.weight == d else 'NO'}\n")
    return 0 if wit.weight == d else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="prmhull",
        description="Projective Reed-Muller hulls: reports, verification, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="print the closed-form report for one instance")
    _add_instance_args(p_info)
    p_info.add_argument("--machine-readable", action="store_true")

    p_verify = sub.add_parser("verify", help="run oracle checks over a sweep of instances")
    p_verify.add_argument("--q", help=f"comma-separated field orders (default {','.join(map(str, DEFAULT_QS))})")
    p_verify.add_argument("--p", type=int, help="field characteristic; with --k selects the single order p^k")
    p_verify.add_argument("--k", type=int, default=1, help="extension degree for --p (default 1)")
    p_verify.add_argument("--modulus", help="modulus coefficients for a single-field sweep")
    p_verify.add_argument("--m", help=f"comma-separated m values (default {','.join(map(str, DEFAULT_MS))})")
    p_verify.add_argument("--v", help="comma-separated orders (default: every 1 <= v <= m(q-1))")
    p_verify.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP,
                          help="enumerate weights only when q^dim <= cap")
    p_verify.add_argument("--out", help="stream check records to this path")
    p_verify.add_argument("--machine-readable", action="store_true",
                          help="emit one JSON record per check")

    p_repro = sub.add_parser("reproduce-examples",
                             help="recompute the five reference values and compare")
    p_repro.add_argument("--machine-readable", action="store_true")

    p_export = sub.add_parser("export", help="write a basis in the matrix file format")
    _add_instance_args(p_export)
    p_export.add_argument("what", choices=("generator", "hull", "dual"))
    p_export.add_argument("--out", help="output path (default: stdout)")

    p_wit = sub.add_parser("witness", help="print a minimum-weight witness polynomial")
    _add_instance_args(p_wit)
    p_wit.add_argument("--lambdas", help="comma-separated distinct nonzero scalars")
    p_wit.add_argument("--machine-readable", action="store_true")

    return parser


def _dispatch(args):
    if args.command == "info":
        return cmd_info(
            args.q, args.m, args.v,
            modulus=_parse_modulus(args.modulus),
            machine_readable=args.machine_readable,
        )
    if args.command == "verify":
        if args.p is not None and args.q is not None:
            raise OutOfRangeError("give either --q or --p/--k, not both")
        if args.p is not None:
            qs = (args.p ** args.k,)
        elif args.q is not None:
            qs = _parse_int_list(args.q, "--q")
        else:
            qs = DEFAULT_QS
        config = SweepConfig(
            qs=qs,
            ms=_parse_int_list(args.m, "--m") if args.m is not None else DEFAULT_MS,
            vs=_parse_int_list(args.v, "--v") if args.v is not None else None,
            cap=args.cap,
            out=args.out,
            machine_readable=args.machine_readable,
            modulus=_parse_modulus(args.modulus),
        )
        return cmd_verify(config)
    if args.command == "reproduce-examples":
        return cmd_reproduce_examples(machine_readable=args.machine_readable)
    if args.command == "export":
        return cmd_export(
            args.q, args.m, args.v, args.what,
            path=args.out,
            modulus=_parse_modulus(args.modulus),
        )
    return cmd_witness(
        args.q, args.m, args.v,
        lambdas=_parse_int_list(args.lambdas, "--lambdas") if args.lambdas else None,
        modulus=_parse_modulus(args.modulus),
        machine_readable=args.machine_readable,
    )


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except PrmHullError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
