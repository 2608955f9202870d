"""Command-line interface.

Exit codes: 0 on success (verified / all-good / exact), 1 when the answer is
negative or unavailable (bad order, inconclusive search, failed verification,
no known construction, unknown value), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from gallai.constructions import BUILDERS, build_named, lower_bound_witness
from gallai.formulas import KIND_EXACT, KIND_BOUNDS, GrResult, evaluate
from gallai.graphs import ColoredComplete, TargetGraph, parse_hspec, render_hspec
from gallai.search import (
    WitnessFailure,
    check_n,
    compute_gr,
    replay_certificate,
    verify_witness,
)
from gallai.structure import classify_p4free, classify_p5free, enumerate_p5free

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def format_value(result: GrResult) -> str:
    if result.kind == KIND_EXACT:
        return str(result.value)
    if result.kind == KIND_BOUNDS:
        hi = "?" if result.hi is None else str(result.hi)
        return f"[{result.lo},{hi}]"
    return "?"


def format_table_row(hspec: str, k: int, result: GrResult) -> str:
    prov = ",".join(result.provenance)
    return f"{hspec:<10} {k:>2}  {format_value(result):<9} {prov}"


def _parse_target(text: str) -> TargetGraph:
    try:
        return parse_hspec(text)
    except ValueError as exc:
        raise SystemExit(f"error: bad target spec {text!r}: {exc}") from exc


def _read_coloring(path: str | None) -> ColoredComplete:
    if path is None or path == "-":
        data = json.load(sys.stdin)
    else:
        with open(path) as fh:
            data = json.load(fh)
    return ColoredComplete.from_json_dict(data)


def _cmd_eval(args) -> int:
    H = _parse_target(args.H)
    result = evaluate(H, args.k, c=args.c)
    if args.mode == "table":
        print(format_table_row(render_hspec(H), args.k, result))
    else:
        print(_dumps(result.to_json_dict()))
    return EXIT_OK if result.kind != "Unknown" else EXIT_NEGATIVE


def _cmd_witness(args) -> int:
    H = _parse_target(args.H)
    if args.construction is not None:
        params = {}
        for item in args.param:
            key, _, value = item.partition("=")
            if not _:
                raise SystemExit(f"error: bad --param {item!r}, expected key=value")
            params[key] = int(value)
        try:
            coloring = build_named(args.construction, params)
        except (KeyError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NEGATIVE
        try:
            cert = verify_witness(coloring, H, label=args.construction)
        except WitnessFailure as exc:
            print(f"verification failed: {exc}", file=sys.stderr)
            return EXIT_NEGATIVE
    else:
        if args.k is None:
            raise SystemExit("error: --k is required unless --construction is given")
        cert = lower_bound_witness(H, args.k)
        if cert is None:
            print(
                f"no known construction for H={args.H}, k={args.k}", file=sys.stderr
            )
            return EXIT_NEGATIVE
    print(_dumps(cert.to_json_dict()))
    return EXIT_OK


def _cmd_check(args) -> int:
    H = _parse_target(args.H)
    start = time.monotonic()
    outcome = check_n(H, args.k, args.n, threads=args.threads)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    report = {
        "query": {"target": render_hspec(H), "k": args.k, "n": args.n},
        "status": outcome.status,
        "counts": {"examined": outcome.examined},
        "elapsed_ms": elapsed_ms,
    }
    if outcome.witness is not None:
        report["witness"] = outcome.witness.to_json_dict()
    print(_dumps(report))
    return EXIT_OK if outcome.all_good else EXIT_NEGATIVE


def _cmd_search(args) -> int:
    H = _parse_target(args.H)
    start = time.monotonic()
    result = compute_gr(H, args.k, args.n_max, threads=args.threads)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    report = {
        "query": {"target": render_hspec(H), "k": args.k, "n_max": args.n_max},
        "status": result.status,
        "value": result.value,
        "counts": {
            "orders_checked": len(result.outcomes),
            "examined": sum(o.examined for o in result.outcomes),
        },
        "elapsed_ms": elapsed_ms,
    }
    bad = next((o for o in result.outcomes if o.witness is not None), None)
    if bad is not None:
        report["witness"] = bad.witness.to_json_dict()
    print(_dumps(report))
    return EXIT_OK if result.status == "exact" else EXIT_NEGATIVE


def _cmd_classify(args) -> int:
    coloring = _read_coloring(args.file)
    if args.path_edges == 3:
        report = classify_p4free(coloring)
        out = {
            "case": report.case,
            "rainbow": None if report.rainbow is None else report.rainbow.to_json_dict(),
        }
    else:
        report = classify_p5free(coloring)
        out = {
            "cases": sorted(report.cases),
            "rainbow": None if report.rainbow is None else report.rainbow.to_json_dict(),
        }
    print(_dumps(out))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    reps = enumerate_p5free(args.n, args.k, threads=args.threads)
    for rep in reps:
        print(_dumps(rep.to_json_dict()))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.file is None or args.file == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.file) as fh:
            data = json.load(fh)
    try:
        cert = replay_certificate(data)
    except WitnessFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(_dumps(cert.to_json_dict()))
    return EXIT_OK


def _selftest_constructions() -> list[str]:
    from gallai.constructions import construction_grid

    failures = []
    for entry in construction_grid():
        name = entry["name"]
        params = entry["params"]
        H = parse_hspec(entry["target"])
        try:
            coloring = build_named(name, params)
            if coloring.n != entry["order"]:
                failures.append(
                    f"{name}{params}: order {coloring.n} != expected {entry['order']}"
                )
                continue
            verify_witness(coloring, H, label=name)
        except (ValueError, KeyError, WitnessFailure) as exc:
            failures.append(f"{name}{params}: {exc}")
    return failures


def _selftest_enumeration() -> list[str]:
    from gallai.canonical import MODE_VERTEX_AND_COLOR, canonical_form
    from gallai.search import rainbow_p5free_classes

    failures = []
    for n, k in ((5, 4), (5, 5)):
        got = {canonical_form(c, MODE_VERTEX_AND_COLOR) for c in enumerate_p5free(n, k)}
        want = rainbow_p5free_classes(n, k)
        if got != want:
            failures.append(
                f"enumerate({n},{k}): {len(got)} classes, ground truth {len(want)}"
            )
    return failures


def _selftest_classifier() -> list[str]:
    import random

    from gallai.detectors import find_rainbow_path

    failures = []
    rng = random.Random(20240817)
    for _ in range(300):
        n = rng.randint(5, 8)
        k = rng.randint(2, 8)
        colors = tuple(rng.randint(1, k) for _ in range(n * (n - 1) // 2))
        c = ColoredComplete(n, k, colors)
        report = classify_p5free(c)
        rainbow = find_rainbow_path(c, 4)
        if bool(report.cases) == (rainbow is not None):
            failures.append(f"classifier mismatch at n={n}, k={k}, colors={colors}")
    return failures


def _cmd_selftest(args) -> int:
    suites = (
        ("constructions", _selftest_constructions),
        ("enumeration", _selftest_enumeration),
        ("classifier", _selftest_classifier),
    )
    ok = True
    for name, suite in suites:
        failures = suite()
        if failures:
            ok = False
            print(f"FAIL {name}")
            for line in failures:
                print(f"  {line}")
        else:
            print(f"PASS {name}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gallai",
        description="Verification and search for rainbow-path Ramsey thresholds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="closed-form value or bounds for (H, k)")
    p.add_argument("--H", required=True, help="target graph, e.g. K5, S4^1, PA6,5, K6-M")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=float, default=None, help="constant for the two-color clique-book bound")
    p.add_argument("--mode", choices=("json", "table"), default="json")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("witness", help="build and verify a lower-bound coloring")
    p.add_argument("--H", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--construction", default=None, help=f"one of {', '.join(sorted(BUILDERS))}")
    p.add_argument("--param", action="append", default=[], help="key=value, repeatable")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("check", help="scan all exact k-colorings at one order")
    p.add_argument("--H", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("search", help="pin the exact threshold by downward scan")
    p.add_argument("--H", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("classify", help="structure cases of a coloring (JSON on stdin)")
    p.add_argument("--file", default=None, help="coloring JSON path, - for stdin")
    p.add_argument("--path-edges", type=int, choices=(3, 4), default=4)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("enumerate", help="stream rainbow-path-free classes, one JSON per line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("verify", help="replay a certificate JSON")
    p.add_argument("--file", default=None, help="certificate JSON path, - for stdin")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("selftest", help="run the built-in consistency suites")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
