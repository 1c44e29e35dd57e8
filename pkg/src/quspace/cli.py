"""Command-line front door.

Exit codes: 0 all checks passed, 1 some check failed, 2 usage or parse
error.  Reports are deterministic for fixed inputs up to runtime_ms.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

from . import hyperspace as hyp
from . import natline, qpm, stability
from .relcore import QUSpace, SpaceValidationError, t0_classes, validate
from .report import CheckReport, emit_report, report_digest
from .spacefile import ParseError, parse_points, parse_space, serialize_space, space_hash
from .suites import Caps, gen_space, run_suite

ENV_CAPS = "QUSPACE_CAPS"


def _load_space(path: str, max_points: int = 16) -> QUSpace:
    with open(path, encoding="utf-8") as fh:
        return parse_space(fh.read(), max_points)


def _caps_from(args: argparse.Namespace) -> Caps:
    pairs: list[tuple[str, str]] = []
    env = os.environ.get(ENV_CAPS, "")
    for chunk in env.split(","):
        if chunk.strip():
            key, _, value = chunk.partition("=")
            pairs.append((key.strip(), value.strip()))
    for chunk in getattr(args, "cap", None) or []:
        key, _, value = chunk.partition("=")
        pairs.append((key.strip(), value.strip()))
    return Caps.from_pairs(pairs)


def _report_from_outcome(outcome, tag: str, runtime: int) -> CheckReport:
    witnesses = tuple(getattr(outcome, "witnesses", ()))
    if not outcome.ok and not witnesses:
        witnesses = tuple(name for name, v in outcome.clauses if not v)
    return CheckReport(
        check=getattr(outcome, "check", "check"),
        space_hash=tag,
        verdict="pass" if outcome.ok else "fail",
        witnesses=witnesses[:5],
        bounds=dict(getattr(outcome, "bounds", {}) or {}),
        runtime_ms=runtime,
    )


CHECKS: dict[str, Callable[[QUSpace], "stability.CheckOutcome"]] = {
    "stability-complete": stability.check_stability_complete,
    "quotient-bicompletion": stability.check_quotient_bicompletion,
    "principal-classes": stability.check_principal_classes,
    "cauchy-families": stability.check_cauchy_families,
    "uniform-refinement": stability.check_uniform_refinement,
    "section-transfer": stability.check_section_transfer,
}


def _cmd_validate(args: argparse.Namespace) -> int:
    space = _load_space(args.file, _caps_from(args).max_points)
    report = validate(space)
    for note in report.notes:
        print(f"note: {note}")
    print("valid" if report.ok else "invalid: " + "; ".join(report.issues))
    return 0 if report.ok else 1


def _cmd_lift(args: argparse.Namespace) -> int:
    space = _load_space(args.file, _caps_from(args).max_points)
    h = hyp.lift(space)
    reps = hyp.hyper_t0_representatives(h)
    print(f"hyper points: {h.space.ground.size}")
    print(f"equivalence classes: {len(reps)}")
    for rep in reps:
        print(f"  representative {space.ground.set_name(rep)}")
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    space = _load_space(args.file, _caps_from(args).max_points)
    s = stability.build_stability_space(space)
    print(f"stability points: {s.space.ground.size}")
    print(f"base entourages lifted: {len(s.space.base)}")
    quotient = stability.t0_stability_space(space)
    print(f"quotient points: {quotient.space.ground.size}")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    space = _load_space(args.file, _caps_from(args).max_points)
    if args.id == "dense-trace":
        if args.subset:
            labels = {space.ground.name(i): i for i in range(space.ground.size)}
            mask = 0
            for part in args.subset.split(","):
                part = part.strip()
                if part not in labels:
                    print(f"error: unknown point {part!r}", file=sys.stderr)
                    return 2
                mask |= 1 << labels[part]
        else:
            mask = 0
            for cls in t0_classes(space):
                mask |= cls & -cls
        start = time.monotonic()
        outcome = stability.check_dense_trace(space, mask)
        runtime = int((time.monotonic() - start) * 1000)
        report = _report_from_outcome(outcome, space_hash(space), runtime)
        print(emit_report([report], args.format), end="")
        return 0 if outcome.ok else 1
    if args.id == "kunzi-ryser":
        kr = hyp.kunzi_ryser_check(space)
        ok = kr.holds and kr.forms_agree and kr.matches_lift is not False
        report = CheckReport(
            check="kunzi-ryser",
            space_hash=space_hash(space),
            verdict="pass" if ok else "fail",
            witnesses=() if ok else (f"witness {kr.witness}",),
            bounds={},
            runtime_ms=0,
        )
        print(emit_report([report], args.format), end="")
        return 0 if ok else 1
    if args.id not in CHECKS:
        known = ", ".join(sorted(CHECKS) + ["dense-trace", "kunzi-ryser"])
        print(f"unknown check {args.id!r}; known: {known}")
        return 2
    start = time.monotonic()
    outcome = CHECKS[args.id](space)
    runtime = int((time.monotonic() - start) * 1000)
    report = _report_from_outcome(outcome, space_hash(space), runtime)
    print(emit_report([report], args.format), end="")
    return 0 if outcome.ok else 1


def _cmd_example(args: argparse.Namespace) -> int:
    if args.which == "contra":
        start = time.monotonic()
        outcome = natline.verify_contra(args.bound_s, args.bound_n)
        runtime = int((time.monotonic() - start) * 1000)
        report = CheckReport(
            check="counterexample-line",
            space_hash="symbolic",
            verdict="pass" if outcome.ok else "fail",
            witnesses=outcome.witnesses[:5],
            bounds=outcome.bounds,
            runtime_ms=runtime,
        )
        print(emit_report([report], args.format), end="")
        return 0 if outcome.ok else 1
    space = _load_space(args.file, _caps_from(args).max_points)
    try:
        outcome = natline.verify_bei(space)
    except ValueError as exc:
        report = CheckReport(
            check="isolated-point-criterion",
            space_hash=space_hash(space),
            verdict="fail",
            witnesses=(str(exc),),
            bounds={},
            runtime_ms=0,
        )
        print(emit_report([report], args.format), end="")
        return 1
    report = CheckReport(
        check="isolated-point-criterion",
        space_hash=space_hash(space),
        verdict="pass" if outcome.ok else "fail",
        witnesses=() if outcome.ok else tuple(n for n, v in outcome.clauses if not v),
        bounds={"entourage": outcome.entourage_index},
        runtime_ms=0,
    )
    print(emit_report([report], args.format), end="")
    return 0 if outcome.ok else 1


def _parse_subset(raw: str | None, points: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    if not raw:
        return points
    chosen = tuple(Fraction(part) for part in raw.split(","))
    for c in chosen:
        if c not in points:
            raise ParseError(0, f"{c} is not a point of the space")
    return chosen


def _cmd_qpm(args: argparse.Namespace) -> int:
    if args.qpm_command == "hausdorff":
        with open(args.file, encoding="utf-8") as fh:
            points = parse_points(fh.read())
        space = qpm.QPSpace.sorgenfrey_space(points)
        a = _parse_subset(args.a, points)
        b = _parse_subset(args.b, points)
        print(str(qpm.hausdorff_qpm(space, a, b)))
        return 0
    if args.qpm_command == "sorgenfrey-suite":
        reports = run_suite("metric", args.seed, _caps_from(args))
        print(emit_report(reports, args.format), end="")
        return 0 if all(r.verdict == "pass" for r in reports) else 1
    if args.qpm_command == "cover-fact":
        import random

        rng = random.Random(args.seed)
        y = Fraction(rng.randint(-10, 10), rng.randint(1, 8))
        n = rng.randint(1, 4)
        terms = [y + Fraction(rng.randint(0, 3), 4) * Fraction(1, 2**m) for m in range(n + 8)]
        verdict = qpm.cover_fact_check(y, terms, n)
        print(f"y={y} n={n} covered={verdict.covered} samples={verdict.samples}")
        return 0 if verdict.covered else 1
    return 2


def _cmd_gen(args: argparse.Namespace) -> int:
    space = gen_space(args.points, args.relations, args.seed)
    sys.stdout.write(serialize_space(space))
    return 0


def _cmd_suite(args: argparse.Namespace) -> int:
    caps = _caps_from(args)
    reports = run_suite(args.name, args.seed, caps)
    print(emit_report(reports, args.format), end="")
    print(f"digest {report_digest(reports)}", file=sys.stderr)
    return 0 if all(r.verdict == "pass" for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    # shared flags accepted both before and after the subcommand; the
    # suppressed defaults keep the subparser pass from clobbering values
    # parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "table"), default=argparse.SUPPRESS
    )
    common.add_argument(
        "--cap", action="append", metavar="KEY=VALUE", default=argparse.SUPPRESS
    )

    parser = argparse.ArgumentParser(
        prog="quspace",
        parents=[common],
        description="verification workbench for finite quasi-uniform spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a space file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("lift", parents=[common], help="lift a space to its nonempty subsets")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("stability", help="build the stability space")
    stability_sub = p.add_subparsers(dest="stability_command", required=True)
    pb = stability_sub.add_parser("build", parents=[common])
    pb.add_argument("file")
    pb.set_defaults(fn=_cmd_stability)

    p = sub.add_parser("check", parents=[common], help="run a named check on a space file")
    p.add_argument("id")
    p.add_argument("file")
    p.add_argument("--subset", help="comma list of point labels for dense-trace")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("example", help="run a worked example")
    example_sub = p.add_subparsers(dest="which", required=True)
    pc = example_sub.add_parser(
        "contra", parents=[common], help="counterexample on the ordered integer line"
    )
    pc.add_argument("--bound-s", type=int, default=12, dest="bound_s")
    pc.add_argument("--bound-n", type=int, default=200, dest="bound_n")
    pc.set_defaults(fn=_cmd_example, which="contra")
    pb = example_sub.add_parser(
        "bei", parents=[common], help="isolated-point entourage certificate"
    )
    pb.add_argument("file")
    pb.set_defaults(fn=_cmd_example, which="bei")

    p = sub.add_parser("qpm", help="quasi-pseudometric tools")
    qpm_sub = p.add_subparsers(dest="qpm_command", required=True)
    ph = qpm_sub.add_parser("hausdorff", parents=[common])
    ph.add_argument("file")
    ph.add_argument("--a")
    ph.add_argument("--b")
    ph.set_defaults(fn=_cmd_qpm)
    ps = qpm_sub.add_parser("sorgenfrey-suite", parents=[common])
    ps.add_argument("--seed", type=int, default=1)
    ps.set_defaults(fn=_cmd_qpm)
    pf = qpm_sub.add_parser("cover-fact", parents=[common])
    pf.add_argument("--seed", type=int, default=1)
    pf.set_defaults(fn=_cmd_qpm)

    p = sub.add_parser("gen", parents=[common], help="generate a random space file")
    p.add_argument("--points", type=int, default=4)
    p.add_argument("--relations", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("suite", parents=[common], help="run a check suite")
    p.add_argument("name", choices=("all", "finite", "symbolic", "metric"))
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not hasattr(args, "format"):
        args.format = "json"
    if not hasattr(args, "cap"):
        args.cap = []
    try:
        return args.fn(args)
    except (ParseError, SpaceValidationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
