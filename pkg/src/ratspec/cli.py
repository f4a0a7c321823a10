"""Command-line surface: report, verify, generate, drazin.

Triples travel as JSON documents with every entry a rational string
("p/q" or "p"); floats are rejected so exactness survives serialization.
The machine-readable report dict is the source of truth; the printed tables
are rendered from it and never re-derive a verdict.

Exit codes: 0 = pass, 1 = verification failure, 2 = input/parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from ratspec import drazin, genlab, intertwine
from ratspec.intertwine import OperatorTriple
from ratspec.invariants import profile
from ratspec.ratmat import Mat, Poly, rat

ENTRY_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class ParseError(ValueError):
    """Malformed triple document, with a field-level diagnostic."""


# ---------------------------------------------------------------------------
# document I/O

def _parse_entry(s: Any, where: str) -> Fraction:
    if not isinstance(s, str) or not ENTRY_RE.fullmatch(s):
        raise ParseError(f"{where}: {s!r} is not a rational string p or p/q")
    return Fraction(s)


def _parse_matrix(obj: Any, name: str, rows: int, cols: int) -> Mat:
    if not isinstance(obj, list) or len(obj) != rows:
        raise ParseError(f"{name}: expected {rows} rows")
    flat = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{name}[{i}]: expected {cols} entries")
        for j, s in enumerate(row):
            flat.append(_parse_entry(s, f"{name}[{i}][{j}]"))
    return Mat(rows, cols, flat)


def parse_triple_document(text: str) -> tuple[OperatorTriple, dict]:
    """Parse a JSON triple document; returns (triple, metadata)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("dim_x", "dim_y", "A", "B", "C"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    dim_x, dim_y = doc["dim_x"], doc["dim_y"]
    if not isinstance(dim_x, int) or not isinstance(dim_y, int) \
            or dim_x < 0 or dim_y < 0:
        raise ParseError("dim_x and dim_y must be nonnegative integers")
    A = _parse_matrix(doc["A"], "A", dim_y, dim_x)
    B = _parse_matrix(doc["B"], "B", dim_x, dim_y)
    C = _parse_matrix(doc["C"], "C", dim_x, dim_y)
    metadata = doc.get("metadata", {})
    return OperatorTriple(A, B, C), metadata


def _matrix_doc(M: Mat) -> list[list[str]]:
    return [[str(x) for x in M.row(i)] for i in range(M.rows)]


def triple_document(t: OperatorTriple, metadata: dict | None = None) -> dict:
    doc = {
        "dim_x": t.dim_x,
        "dim_y": t.dim_y,
        "A": _matrix_doc(t.A),
        "B": _matrix_doc(t.B),
        "C": _matrix_doc(t.C),
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def write_triple_document(t: OperatorTriple, path: str,
                          metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(triple_document(t, metadata), fh, indent=1)
        fh.write("\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# machine-readable reports

def _rat_str(x: Fraction) -> str:
    return str(x)


def build_report(t: OperatorTriple, lambdas: list[Fraction] | None,
                 n_max: int | None) -> dict:
    """Invariant tables for AC-lam and BA-lam at each probe, plus verdicts."""
    cond = intertwine.check_condition(t)
    report: dict[str, Any] = {
        "dim_x": t.dim_x,
        "dim_y": t.dim_y,
        "condition": {
            "holds": cond.holds,
            "residuals_zero": [m.is_zero() for m in cond.residuals],
        },
        "probes": [],
        "skipped_lambdas": [],
    }
    if not cond.holds:
        return report
    probes = lambdas if lambdas else intertwine.default_probes(t)
    for lam in probes:
        lam = rat(lam)
        if lam == 0:
            report["skipped_lambdas"].append(
                {"lambda": "0", "note": "the theorem excludes 0"})
            continue
        seq = intertwine.verify_sequence_equalities(t, lam, n_max)
        theo = intertwine.verify_theorem(t, [lam]).rows[0]
        prof_ac = profile(t.ac.shifted(lam))
        prof_ba = profile(t.ba.shifted(lam))
        report["probes"].append({
            "lambda": _rat_str(lam),
            "rows": [{"n": r.n, "c": [r.c_ac, r.c_ba], "cp": [r.cp_ac, r.cp_ba],
                      "k": [r.k_ac, r.k_ba], "hold": r.equal} for r in seq.rows],
            "totals": {"ac": list(seq.totals_ac), "ba": list(seq.totals_ba)},
            "asc": [seq.asc_ac, seq.asc_ba],
            "dsc": [seq.dsc_ac, seq.dsc_ba],
            "dis": [prof_ac.dis, prof_ba.dis],
            "essential_degrees": [prof_ac.asc_e, prof_ac.dsc_e, prof_ac.dis_e],
            "hyper_range_dim": [prof_ac.hyper_range.dim, prof_ba.hyper_range.dim],
            "hyper_kernel_dim": [prof_ac.hyper_kernel.dim, prof_ba.hyper_kernel.dim],
            "sequences_hold": seq.all_equal,
            "sigma_memberships": {
                "ac": list(theo.in_sigma_ac),
                "ba": list(theo.in_sigma_ba),
                "hold": theo.equal,
            },
        })
    return report


def _default_q_set(seed: int) -> list[Poly]:
    rng = random.Random(seed)
    qs = [Poly([0, 1]), Poly([0, 0, 1]), Poly([0, 0, 0, 1])]
    qs.append(Poly([Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                    for _ in range(3)] + [Fraction(1)]))
    return qs


def run_verification(t: OperatorTriple, lambdas: list[Fraction] | None = None,
                     n_max: int | None = None, seed: int = 0) -> dict:
    """The full verifier battery; the exit-status contract reads its verdicts.

    Checks: intertwining condition, inclusion lemma over the default Q set,
    well-definedness and two-way injectivity of the three quotient maps,
    sequence equalities, pointwise regularity-spectrum agreement, nonzero
    charpoly match, shift operators for n <= 4, Drazin transfer and the
    transfer proof identities.
    """
    checks: list[dict[str, Any]] = []

    def add(name: str, passed: bool, detail: str = "") -> None:
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    cond = intertwine.check_condition(t)
    add("condition", cond.holds,
        "" if cond.holds else "intertwining condition violated")
    if cond.holds:
        probes = lambdas if lambdas else intertwine.default_probes(t)
        probes = [rat(x) for x in probes]
        nonzero = [x for x in probes if x != 0]
        top = n_max if n_max is not None else max(t.dim_x, t.dim_y)

        qs_ok = all(intertwine.inclusion_lemma(t, q).all_hold
                    for q in _default_q_set(seed))
        add("inclusion_lemma", qs_ok)

        maps_ok = True
        for lam in nonzero:
            for n in range(top + 1):
                for builder in (intertwine.gamma_map, intertwine.psi_map,
                                intertwine.phi_map):
                    qm = builder(t, n, lam)
                    if not qm.well_defined:
                        maps_ok = False
                        continue
                    inj_rank = qm.injective_by_rank()
                    inj_pre = qm.injective_by_preimage()
                    if inj_rank != inj_pre or not inj_rank:
                        maps_ok = False
        add("quotient_maps", maps_ok)

        seq_ok = all(intertwine.verify_sequence_equalities(t, lam, top).all_equal
                     for lam in nonzero)
        add("sequence_equalities", seq_ok)

        theo = intertwine.verify_theorem(t, probes)
        add("theorem_memberships", theo.all_equal,
            f"skipped {len(theo.skipped)} zero probe(s)" if theo.skipped else "")

        add("charpoly_match", intertwine.nonzero_charpoly_match(t))

        shift_ok = True
        for n in range(1, 5):
            try:
                intertwine.shift_polys(t, n)
            except ArithmeticError:
                shift_ok = False
        add("shift_polys", shift_ok)

        tr = drazin.transfer(t)
        add("drazin_transfer", tr.verified and tr.matches_direct)
        pi = drazin.proof_identities(t)
        add("drazin_proof_identities",
            pi.commutation and pi.residual_is_bpa and pi.cycle
            and pi.pac_matches and pi.pac_nilpotent)

    return {"checks": checks, "passed": all(c["passed"] for c in checks)}


def build_drazin_report(t: OperatorTriple) -> dict:
    tr = drazin.transfer(t)
    pi = drazin.proof_identities(t)
    resid = t.ba @ t.ba @ tr.candidate - t.ba
    nil_index = drazin.nilpotency_index(resid)
    return {
        "index_ac": tr.s_ac.index,
        "S": _matrix_doc(tr.s_ac.inverse),
        "T": _matrix_doc(tr.candidate),
        "identities": {
            "commutes": tr.commutes,
            "inner": tr.inner,
            "residual_nilpotent": tr.residual_nilpotent,
            "matches_direct": tr.matches_direct,
        },
        "residual_nilpotency_index": 0 if resid.is_zero() else nil_index,
        "proof_identities": {
            "commutation": pi.commutation,
            "residual_is_bpa": pi.residual_is_bpa,
            "cycle": pi.cycle,
            "pac_matches": pi.pac_matches,
            "pac_nilpotent": pi.pac_nilpotent,
        },
        "verified": tr.verified and tr.matches_direct,
    }


# ---------------------------------------------------------------------------
# rendering (derived strictly from the machine report)

def _render_report(report: dict, out) -> None:
    cond = report["condition"]
    print(f"dims: X = Q^{report['dim_x']}, Y = Q^{report['dim_y']}", file=out)
    print(f"condition: {'HOLDS' if cond['holds'] else 'VIOLATED'}", file=out)
    for probe in report["probes"]:
        lam = probe["lambda"]
        print(f"\nlambda = {lam}", file=out)
        print("   n | c(AC) c(BA) | c'(AC) c'(BA) | k(AC) k(BA) |", file=out)
        for row in probe["rows"]:
            mark = "HOLD" if row["hold"] else "FAIL"
            print(f"  {row['n']:2d} | {row['c'][0]:5d} {row['c'][1]:5d} "
                  f"| {row['cp'][0]:6d} {row['cp'][1]:6d} "
                  f"| {row['k'][0]:5d} {row['k'][1]:5d} | {mark}", file=out)
        tac, tba = probe["totals"]["ac"], probe["totals"]["ba"]
        print(f"  totals (c, c', k): AC-{lam} = {tuple(tac)}, "
              f"BA-{lam} = {tuple(tba)}", file=out)
        print(f"  asc = {probe['asc']}, dsc = {probe['dsc']}, "
              f"dis = {probe['dis']}", file=out)
        print(f"  hyper-range dims = {probe['hyper_range_dim']}, "
              f"hyper-kernel dims = {probe['hyper_kernel_dim']}", file=out)
        sig = probe["sigma_memberships"]
        mark = "HOLD" if sig["hold"] else "FAIL"
        members = [i + 1 for i, v in enumerate(sig["ac"]) if v]
        print(f"  sigma_R membership (i with lambda in sigma_Ri(AC)): "
              f"{members} ... {mark}", file=out)
    for sk in report["skipped_lambdas"]:
        print(f"\nlambda = {sk['lambda']} skipped: {sk['note']}", file=out)


def _render_checks(result: dict, out) -> None:
    for c in result["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        detail = f"  ({c['detail']})" if c["detail"] else ""
        print(f"{mark}  {c['name']}{detail}", file=out)
    print("verification:", "PASS" if result["passed"] else "FAIL", file=out)


def _render_drazin(report: dict, out) -> None:
    print(f"Drazin index of AC: {report['index_ac']}", file=out)
    print("S (Drazin inverse of AC):", file=out)
    for row in report["S"]:
        print("   " + "  ".join(row), file=out)
    print("T = B S^2 A:", file=out)
    for row in report["T"]:
        print("   " + "  ".join(row), file=out)
    for name, val in report["identities"].items():
        print(f"{'PASS' if val else 'FAIL'}  {name}", file=out)
    print(f"nilpotency index of (BA)^2 T - BA: "
          f"{report['residual_nilpotency_index']}", file=out)
    for name, val in report["proof_identities"].items():
        print(f"{'PASS' if val else 'FAIL'}  proof.{name}", file=out)


# ---------------------------------------------------------------------------
# commands

def _lambda_args(values: list[str] | None) -> list[Fraction] | None:
    if not values:
        return None
    out = []
    for v in values:
        if not ENTRY_RE.fullmatch(v):
            raise ParseError(f"--lambda {v!r} is not a rational p or p/q")
        out.append(Fraction(v))
    return out


def cmd_report(args) -> int:
    try:
        t, _ = parse_triple_document(_read(args.file))
        lambdas = _lambda_args(args.lam)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_report(t, lambdas, args.nmax)
    if not report["condition"]["holds"]:
        print("warning: intertwining condition violated; "
              "sequence tables are not expected to agree", file=sys.stderr)
    if args.json:
        json.dump(report, sys.stdout, indent=1)
        print()
    else:
        _render_report(report, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        t, _ = parse_triple_document(_read(args.file))
        lambdas = _lambda_args(args.lam)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not t.condition_holds:
        if args.strict:
            print("condition violated", file=sys.stderr)
            return EXIT_FAIL
        print("warning: intertwining condition violated", file=sys.stderr)
    result = run_verification(t, lambdas, args.nmax)
    if args.json:
        json.dump(result, sys.stdout, indent=1)
        print()
    else:
        _render_checks(result, sys.stdout)
    if not result["passed"]:
        failing = next(c["name"] for c in result["checks"] if not c["passed"])
        print(f"first failing check: {failing}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.template == "rational_spectrum":
            spec = genlab.GenSpec(template="c_equals_b", block_dim=args.dim,
                                  seed=args.seed, entry_bound=args.entry_bound)
            t = genlab.rational_spectrum_instance(spec)
        else:
            spec = genlab.GenSpec(template=args.template, block_dim=args.dim,
                                  seed=args.seed, entry_bound=args.entry_bound)
            t = genlab.generate(spec)
    except (ValueError, genlab.GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    meta = {"template": args.template, "seed": args.seed}
    if args.out:
        write_triple_document(t, args.out, meta)
        print(f"wrote {args.out}")
    else:
        json.dump(triple_document(t, meta), sys.stdout, indent=1)
        print()
    return EXIT_OK


def cmd_drazin(args) -> int:
    try:
        t, _ = parse_triple_document(_read(args.file))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not t.condition_holds:
        print("condition violated: the transfer theorem hypothesis fails",
              file=sys.stderr)
        return EXIT_FAIL
    report = build_drazin_report(t)
    if args.json:
        json.dump(report, sys.stdout, indent=1)
        print()
    else:
        _render_drazin(report, sys.stdout)
    return EXIT_OK if report["verified"] else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratspec",
        description="Exact verification of common spectral properties of "
                    "operator products AC and BA.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="invariant tables for a triple document")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", action="append", metavar="p/q",
                   help="probe value, repeatable (default: auto)")
    p.add_argument("--nmax", type=int, default=None, help="largest sequence index")
    p.add_argument("--json", action="store_true", help="emit the machine report")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run the full verifier battery")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", action="append", metavar="p/q")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--strict", action="store_true",
                   help="fail immediately if the condition is violated")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated triple document")
    p.add_argument("--template", required=True,
                   choices=genlab.TEMPLATES + ("rational_spectrum",))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("drazin", help="Drazin transfer report for a document")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_drazin)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
