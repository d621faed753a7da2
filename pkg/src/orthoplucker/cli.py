"""Command line interface: ``orthoplucker <command> ...``.

Exit codes: 0 when the check passes (relation holds, decomposition found,
all cases pass), 1 when it fails, 2 on usage or input errors.

Indices in files are 1-based.  In lorentzian files index 1 is the
timelike direction, so a basis written e0, e1, ... elsewhere maps to
indices 1, 2, ...
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .decomposition import Decomposition, decompose
from .errors import OrthoPluckerError, RelationViolated
from .harness import cases as case_table
from .harness import io
from .harness.trials import (
    TrialConfig,
    check_candidate,
    run_case,
    run_conjecture_direction,
    su3_counterexample,
)
from .lie import (
    bracket_from_form,
    catalog,
    form_from_bracket,
    jacobi_residual,
    metric_invariance_residual,
    oscillator,
    so3,
    so12,
    su3,
)
from .normal_forms import skew_normal_form
from .plucker import classical_plucker_check, coordinate_residual, orthogonal_relation_check
from .scalars import format_scalar

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Output:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, *args):
        if not self.quiet:
            print(*args)


def _rational(F) -> bool:
    from fractions import Fraction

    return all(type(v) is Fraction for _, v in F.items())


# ---------------------------------------------------------------- commands


def cmd_check_simple(args, out):
    F = io.load_form(args.file)
    rep = classical_plucker_check(F)
    out("simple" if rep.is_zero else f"not simple ({len(rep.violations())} nonzero contractions)")
    return rep.is_zero, rep.to_json()


def cmd_check_relation(args, out):
    F = io.load_form(args.file)
    if args.coordinate:
        rep = coordinate_residual(F)
    else:
        rep = orthogonal_relation_check(F, "auto" if _rational(F) else "sparse")
    if rep.outside_hypothesis:
        out("note: signature outside the euclidean/lorentzian hypothesis")
    if rep.is_zero:
        out("relation holds")
    else:
        out(f"relation violated: {len(rep.violations())} nonzero residual entries, max |coeff| {rep.max_abs_coeff}")
    return rep.is_zero, rep.to_json()


def cmd_decompose(args, out):
    F = io.load_form(args.file)
    try:
        result = decompose(F, args.max_parts)
    except RelationViolated as exc:
        out(f"not decomposable: {exc}")
        return False, {"status": "relation-violated"}
    data = io.decomposition_to_json(result)
    if args.out:
        io.write_json(data, args.out)
    if isinstance(result, Decomposition):
        out(f"{len(result.parts)} orthogonal simple part(s) via {result.method}")
        for k, part in enumerate(result.parts, 1):
            vecs = ["(" + ", ".join(format_scalar(c) for c in f.as_vector()) + ")" for f in part.factors]
            out(f"  part {k}: " + " ^ ".join(vecs))
        return True, data
    out(f"indeterminate: {result.reason}")
    return False, data


def cmd_normal_form(args, out):
    F = io.load_form(args.file)
    nf = skew_normal_form(F, args.tol)
    out(f"kind: {nf.kind.value}")
    out("angles: " + ", ".join(f"{a:.12g}" for a in nf.angles))
    out("basis (columns):")
    with np.printoptions(precision=6, suppress=True, linewidth=120):
        out(str(nf.basis))
    out(f"reconstruction error: {nf.residual:.3g}")
    data = {
        "kind": nf.kind.value,
        "angles": [float(a) for a in nf.angles],
        "basis": nf.basis.tolist(),
        "residual": nf.residual,
        "isometry_error": nf.isometry_error,
    }
    return True, data


def cmd_nlie(args, out):
    if args.action == "from-form":
        F = io.load_form(args.file)
        data = io.bracket_to_json(bracket_from_form(F))
        data["time_dims"] = F.space.time_dims
        if not args.quiet:
            print(json.dumps(data, indent=2))
        return True, data
    L = io.load_bracket(args.file)
    if args.action == "jacobi":
        bad = jacobi_residual(L)
        out("fundamental identity holds" if not bad else f"fundamental identity fails on {len(bad)} basis tuples")
        data = {"violations": [{"x": list(v.x), "y": list(v.y),
                                "residual": [format_scalar(c) for c in v.residual]} for v in bad]}
    else:
        bad = metric_invariance_residual(L)
        out("metric is invariant" if not bad else f"metric invariance fails on {len(bad)} basis tuples")
        data = {"violations": [{"x": list(v.x), "a": v.a, "b": v.b, "residual": format_scalar(v.residual)}
                               for v in bad]}
    return not bad, data


_NAMED_ALGEBRAS = {
    "so3": so3,
    "so12": so12,
    "su3": lambda: su3(0),
    "su3+R": lambda: su3(1),
    "su3+R2": lambda: su3(2),
    "oscillator": lambda: oscillator(1, 2, 0),
}


def cmd_catalog(args, out):
    if args.action == "list":
        algebras = catalog(args.signature, args.max_dim, seed=args.seed)
        rows = []
        for L in algebras:
            rows.append({"name": L.name, "dim": L.dim})
            out(f"{L.dim:2d}  {L.name}")
        return True, {"signature": args.signature, "max_dim": args.max_dim, "algebras": rows}
    L = _NAMED_ALGEBRAS[args.name]()
    if args.form:
        data = io.form_to_json(form_from_bracket(L))
    else:
        data = io.algebra_to_json(L)
    if not args.quiet:
        print(json.dumps(data, indent=2))
    return True, data


def cmd_verify_case(args, out):
    if args.name == "all":
        chosen = list(case_table.builtin_cases())
        if args.probes:
            chosen += [case_table.euclidean_probe(c) for c in chosen if c.time_dims == 1 and c.dim == 10]
    else:
        try:
            chosen = [case_table.get_case(args.name)]
        except KeyError:
            raise io.InputError(f"unknown case {args.name!r}; try 'catalog' or 'verify-case all'", field="name")
    reports = []
    ok = True
    for case in chosen:
        cfg = TrialConfig.for_case(case, args.trials, args.seed, args.coeff_height)
        rep = run_case(case, cfg)
        ok &= rep.passed
        tag = "flagged" if rep.flags else rep.verdict
        out(f"{rep.case:24s} {tag:8s} {rep.satisfied_and_decomposed}/{rep.trials} satisfied, "
            f"{rep.constraint_violated_and_relation_failed}/{rep.trials} violated")
        for f in rep.failures[:3]:
            out(f"    failure seed {f[0]}: {f[1]}")
        reports.append(rep.to_json(timing=not args.no_timing))
    if args.name != "all":
        return ok, reports[0]
    return ok, {"cases": reports, "verdict": "pass" if ok else "fail"}


def cmd_conjecture(args, out):
    cfg = TrialConfig(args.dim, args.time, args.degree, args.trials, args.seed, args.coeff_height)
    rep = run_conjecture_direction(cfg)
    ok = rep.passed
    data = rep.to_json(timing=not args.no_timing)
    out(f"{rep.case}: part ({rep.details['part']}) {rep.verdict}, "
        f"{rep.satisfied_and_decomposed}/{rep.trials} expected-to-hold samples hold")
    for f in rep.flags:
        out(f"  finding: {f}")
    if args.form:
        F = io.load_form(args.form)
        if (F.space.dim, F.space.time_dims, F.degree) != (args.dim, args.time, args.degree):
            raise io.InputError(
                f"form lives in d={F.space.dim}, t={F.space.time_dims}, p={F.degree}", field="dim")
        cand = check_candidate(F)
        data["candidate"] = cand
        data["counterexample"] = cand["counterexample"]
        if cand["counterexample"]:
            out(f"counterexample: relation holds, support rank {cand['support_rank']} > {2 * F.degree}")
            ok = False
        else:
            out(f"candidate: relation {'holds' if cand['relation_holds'] else 'fails'}, "
                f"support rank {cand['support_rank']}")
    return ok, data


def cmd_counterexample(args, out):
    rep = su3_counterexample()
    for label, entry in rep.details.items():
        out(f"{label:10s} {entry}")
    out(f"verdict: {rep.verdict}")
    return rep.passed, rep.to_json(timing=not args.no_timing)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthoplucker",
        description="Exact checks of the orthogonal Plucker-type relation [i_Xi F, F] = 0.",
        epilog="Indices are 1-based; in lorentzian files index 1 is timelike (e0 -> 1).",
        parents=[_global_flags(None)],
    )
    parser.set_defaults(report=None, quiet=False, no_timing=False)
    # global flags are accepted before or after the subcommand
    common = _global_flags(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-simple", parents=[common], help="classical Plucker test")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_simple)

    p = sub.add_parser("check-relation", parents=[common], help="orthogonal relation test")
    p.add_argument("file")
    p.add_argument("--coordinate", action="store_true", help="use the component formula instead")
    p.set_defaults(func=cmd_check_relation)

    p = sub.add_parser("decompose", parents=[common], help="split into orthogonal simple forms")
    p.add_argument("file")
    p.add_argument("--max-parts", type=int, choices=(1, 2), default=2)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("normal-form", parents=[common], help="normal form of a 2-form (float)")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("nlie", parents=[common], help="metric n-Lie algebra checks")
    p.add_argument("action", choices=("jacobi", "invariance", "from-form"))
    p.add_argument("file")
    p.set_defaults(func=cmd_nlie)

    p = sub.add_parser("catalog", parents=[common], help="metric Lie algebra catalogs")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("list", parents=[common])
    q.add_argument("--signature", choices=("euclidean", "lorentzian"), default="euclidean")
    q.add_argument("--max-dim", type=int, default=7)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_catalog)
    q = csub.add_parser("export", parents=[common], help="print a named algebra as a bracket or form file")
    q.add_argument("name", choices=sorted(_NAMED_ALGEBRAS))
    q.add_argument("--form", action="store_true", help="print its 3-form instead of the bracket")
    q.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-case", parents=[common], help="randomized trials of ansatz cases")
    p.add_argument("name", help="case name or 'all'")
    p.add_argument("--trials", type=_positive, default=50)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--coeff-height", type=_positive, default=10)
    p.add_argument("--no-probes", dest="probes", action="store_false",
                   help="skip the euclidean reruns of the lorentzian d=10 families")
    p.set_defaults(func=cmd_verify_case)

    p = sub.add_parser("conjecture", parents=[common], help="sample either direction of the conjecture")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--time", type=int, choices=(0, 1), default=0)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--coeff-height", type=_positive, default=10)
    p.add_argument("--form", metavar="FILE", help="also test this form as a candidate counterexample")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("counterexample", parents=[common], help="run the su(3) counterexample suite")
    p.set_defaults(func=cmd_counterexample)
    return parser


def _global_flags(default):
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--report", metavar="FILE", default=default, help="write a JSON report")
    flags.add_argument("--quiet", action="store_true", default=default, help="no output on stdout")
    flags.add_argument("--no-timing", action="store_true", default=default,
                       help="omit elapsed_ms so reports are reproducible")
    return flags


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be a 64-bit unsigned integer")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    out = _Output(args.quiet)
    try:
        ok, data = args.func(args, out)
    except io.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OrthoPluckerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.report:
        io.write_json(data, args.report)
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
