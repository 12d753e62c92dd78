"""Command-line front end: verify, analyze, report.

Exit codes: 0 success, 1 parse/shape error, 2 axiom failure, 3 a requested
assertion failed, 4 internal clause disagreement (equivalent theorem clauses
evaluated differently, which means a bug), 5 the randomized cleft or normal
basis search was inconclusive.

Reports are deterministic: with a fixed --seed the JSON output is
byte-identical across runs, so timings go to stderr, never into the report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional

from .cleft import (
    InconclusiveSearch,
    check_theorem_main,
    check_theorem_xcase,
    find_cleft,
    integral_space,
    normal_basis_check,
    x_case_grouplike,
)
from .coring import verify_coring
from .entwining import EntwinedContext, comodule_algebra_from_unit, instance_from_json
from .exactla import ShapeError, dumps_canonical
from .galois import structure_report
from .morita import ClauseDisagreement, check_theorem_Cfinite, check_theorem_surj, find_qhat
from .verdict import VerificationError

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_AXIOM = 2
EXIT_ASSERT = 3
EXIT_DISAGREEMENT = 4
EXIT_INCONCLUSIVE = 5


@dataclass
class AnalysisReport:
    """The full structural verdict for one instance; serializes sorted."""

    payload: Dict[str, object]
    timing_ms: float = 0.0

    def to_json(self) -> str:
        return dumps_canonical(self.payload)

    def to_text(self) -> str:
        lines = []
        inst = self.payload.get("instance", {})
        lines.append(f"instance: {inst.get('name') or '(unnamed)'}")
        lines.append(f"digest: {inst.get('digest')}")
        lines.append(f"field: {json.dumps(inst.get('field'), sort_keys=True)}")
        dims = self.payload.get("dims", {})
        lines.append("dims: " + ", ".join(f"{k}={v}" for k, v in sorted(dims.items())))
        flags = self.payload.get("flags", {})
        lines.append("flags:")
        for k in sorted(flags):
            lines.append(f"  {k}: {_fmt(flags[k])}")
        if self.payload.get("qhat") is not None:
            lines.append(f"qhat: {json.dumps(self.payload['qhat'])}")
        if self.payload.get("cleft_witness"):
            cw = self.payload["cleft_witness"]
            lines.append(f"cleft lambda: {json.dumps(cw['lambda']['entries'])}")
            lines.append(f"cleft lambda_bar: {json.dumps(cw['lambda_bar']['entries'])}")
        theorems = self.payload.get("theorems", {})
        for name in sorted(theorems):
            tab = theorems[name]
            if tab is None:
                lines.append(f"theorem {name}: not applicable")
                continue
            clause_bits = ", ".join(f"{k}={_fmt(v)}"
                                    for k, v in sorted(tab["clauses"].items()))
            lines.append(f"theorem {name}: agreement={_fmt(tab['agreement'])} "
                         f"[{clause_bits}]")
        wit = self.payload.get("witnesses")
        if wit:
            lines.append("witnesses: " + ", ".join(wit))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def load_instance(path: str) -> EntwinedContext:
    with open(path) as fh:
        data = json.load(fh)
    return instance_from_json(data)


def full_verify(ctx: EntwinedContext):
    """All axiom verifiers; raises VerificationError on the first failure."""
    verdict = ctx.verify_axioms()
    if not verdict.valid:
        raise VerificationError("axioms", verdict)
    coring_verdict = verify_coring(ctx.coring())
    if not coring_verdict.valid:
        raise VerificationError("coring", coring_verdict)
    comodule_algebra_from_unit(ctx)


def run_analysis(ctx: EntwinedContext, seed: int = 0,
                 witness_budget: Optional[int] = None) -> AnalysisReport:
    """Run the whole pipeline and assemble the structured report."""
    t0 = time.perf_counter()
    witnesses = ctx.default_witnesses(seed=seed)
    if witness_budget is not None and witness_budget < len(witnesses):
        witnesses = witnesses[:max(3, witness_budget)]
    data = ctx.morita()
    report = structure_report(ctx, witnesses=witnesses, seed=seed)
    surj = check_theorem_surj(ctx, witnesses=witnesses, seed=seed)
    cfin = check_theorem_Cfinite(ctx, witnesses=witnesses, seed=seed)
    cleft_res = find_cleft(ctx, seed=seed)
    nb_res = normal_basis_check(ctx, seed=seed)
    main = check_theorem_main(ctx, seed=seed, report=report,
                              cleft_result=cleft_res, nb_result=nb_res)
    xcase = check_theorem_xcase(ctx, seed=seed, report=report,
                                cleft_result=cleft_res, nb_result=nb_res)
    integrals = integral_space(ctx)
    qhat = find_qhat(data)
    f = ctx.field
    payload: Dict[str, object] = {
        "instance": {
            "name": ctx.name,
            "digest": ctx.digest(),
            "field": f.to_json(),
        },
        "dims": {
            "A": ctx.A.dim,
            "C": ctx.C.dim,
            "coring": ctx.coring().dim,
            "dual_ring": ctx.sharp_ring().algebra.dim,
            "B": data.B.dim,
            "Q": data.Q.dim,
            "integrals": integrals.dim,
        },
        "axioms": {"valid": True},
        "flags": {
            "qhat_exists": qhat is not None,
            "F_surjective": data.F_report.surjective,
            "F_bijective": data.F_report.bijective,
            "G_surjective": data.G_report.surjective,
            "G_bijective": data.G_report.bijective,
            "galois": report.galois,
            "weak": report.weak,
            "strong": report.strong,
            "flat_BA": report.flat_BA,
            "faithfully_flat_BA": report.faithfully_flat_BA,
            "cleft": cleft_res.cleft,
            "normal_basis": nb_res.normal_basis,
            "total_integral_exists": integrals.total_example is not None,
            "x_case_applies": x_case_grouplike(ctx) is not None,
        },
        "qhat": None if qhat is None else
        [[f.scalar_to_json(qhat[i * ctx.C.dim + j]) for j in range(ctx.C.dim)]
         for i in range(ctx.A.dim)],
        "cleft_witness": None if cleft_res.witness is None else {
            "lambda": cleft_res.witness.lam.to_json(),
            "lambda_bar": cleft_res.witness.lam_bar.to_json(),
        },
        "cleft_certificate": cleft_res.certificate,
        "notes": {
            "alpha_condition": "holds (finite-dimensional)",
            "flat_means": "flat (=projective at this scale)",
            "quasiprogenerator_clauses": "not evaluated",
        },
        "theorems": {
            "surj": surj,
            "C_finite": {k: v for k, v in cfin.items() if k != "subclauses"},
            "fin_gen": {"theorem": "fin-gen",
                        "clauses": report.clause_tables["fin_gen"],
                        "agreement": True},
            "fin_prog": {"theorem": "fin-prog",
                         "clauses": report.clause_tables["fin_prog"],
                         "agreement": True},
            "main": main,
            "x_case": xcase,
        },
        "witnesses": [w.name or "?" for w in witnesses],
    }
    return AnalysisReport(payload, timing_ms=(time.perf_counter() - t0) * 1000.0)


# ---------------------------------------------------------------------------
# assertion mini-language
# ---------------------------------------------------------------------------


def _lookup(payload: dict, dotted: str):
    cur: object = payload
    for part in dotted.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            return None, False
    return cur, True


def _parse_value(text: str):
    low = text.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    try:
        return int(text)
    except ValueError:
        return text


def check_assertion(payload: dict, expr: str) -> Optional[str]:
    """Evaluate key=value; the key is a dotted path, with the top-level flag
    names usable bare.  Returns an error message or None."""
    if "=" not in expr:
        return f"malformed assertion {expr!r} (want key=value)"
    key, _, raw = expr.partition("=")
    key = key.strip()
    want = _parse_value(raw.strip())
    got, found = _lookup(payload, key)
    if not found:
        got, found = _lookup(payload.get("flags", {}), key)
    if not found:
        got, found = _lookup(payload.get("dims", {}), key)
    if not found:
        return f"assertion key {key!r} not present in the report"
    if got != want:
        return f"assertion failed: {key} = {_fmt(got)} (wanted {_fmt(want)})"
    return None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        ctx = load_instance(args.path)
    except (OSError, json.JSONDecodeError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        # builders that run during parsing (Doi-Koppinen) verify as they go
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    try:
        full_verify(ctx)
    except VerificationError as exc:
        for fail in exc.verdict.failures:
            print(f"axiom failure: {fail}", file=sys.stderr)
        return EXIT_AXIOM
    print(f"ok: {args.path} satisfies all axioms")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        ctx = load_instance(args.path)
    except (OSError, json.JSONDecodeError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    try:
        full_verify(ctx)
    except VerificationError as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    try:
        report = run_analysis(ctx, seed=args.seed, witness_budget=args.witnesses)
    except ClauseDisagreement as exc:
        print(f"clause disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except InconclusiveSearch as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(report.to_text())
    print(f"analyze took {report.timing_ms:.1f} ms", file=sys.stderr)
    failures = []
    for expr in args.asserts or []:
        msg = check_assertion(report.payload, expr)
        if msg:
            failures.append(msg)
    if failures:
        for msg in failures:
            print(msg, file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


HEADLINE = ("galois", "cleft", "weak", "strong", "normal_basis", "qhat_exists")


def cmd_report(args) -> int:
    rows = []
    had_error = False
    for path in sorted(args.paths):
        try:
            ctx = load_instance(path)
            full_verify(ctx)
            rep = run_analysis(ctx, seed=args.seed)
            flags = rep.payload["flags"]
            rows.append((path, [str(_fmt(flags[k])) for k in HEADLINE]))
        except Exception as exc:  # pragma: no cover - per-file fault barrier
            rows.append((path, ["error: " + str(exc)[:60]]))
            had_error = True
    header = ["instance"] + list(HEADLINE)
    widths = [max(len(header[0]), *(len(r[0]) for r in rows))] if rows else [len(header[0])]
    print("\t".join(header))
    for path, cells in rows:
        print("\t".join([path] + cells))
    return EXIT_PARSE if had_error else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coring-lab",
        description="Exact analysis of corings built from entwining structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check every axiom of an instance")
    p_verify.add_argument("path")
    p_verify.set_defaults(func=cmd_verify)

    default_seed = int(os.environ.get("CORING_LAB_SEED", "0"))

    p_analyze = sub.add_parser("analyze", help="full structural analysis")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--witnesses", type=int, default=None,
                           help="cap the witness family size")
    p_analyze.add_argument("--format", choices=("text", "json"), default="text")
    p_analyze.add_argument("--assert", dest="asserts", action="append",
                           metavar="KEY=VALUE",
                           help="fail (exit 3) unless the report field matches")
    p_analyze.add_argument("--seed", type=int, default=default_seed)
    p_analyze.set_defaults(func=cmd_analyze)

    p_report = sub.add_parser("report", help="one headline row per instance")
    p_report.add_argument("paths", nargs="*")
    p_report.add_argument("--seed", type=int, default=default_seed)
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
