"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from pathlib import Path

from .catalog import abelianize_catalog, catalog
from .certificates import (
    Rulebook,
    build_lemma_a1,
    build_normal_generation,
    build_theorem_main2,
    load_any,
    verify_any,
)
from .errors import CrosscapError, FixtureError, RelationCheckError
from .homology import evaluate, preserves_form
from .mappings import CurveMappingTable, MappingStatus
from .surface import FixtureTable, builtin_fixtures, parse_curve
from .svg import render
from .words import Word

FIXTURES_ENV = "CROSSCAP_FIXTURES"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_GENUS = 64


class UsageError(Exception):
    pass


def parse_genus_range(text: str) -> list[int]:
    """``7`` or ``7..12`` (inclusive)."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad genus range {text!r}") from None
    if not 2 <= a <= b <= MAX_GENUS:
        raise argparse.ArgumentTypeError(f"genus range must lie in [2, {MAX_GENUS}], got {text!r}")
    return list(range(a, b + 1))


def load_fixtures(path: str | None) -> FixtureTable:
    path = path or os.environ.get(FIXTURES_ENV)
    return FixtureTable.load(path) if path else builtin_fixtures()


def emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if getattr(args, "output", None) and args.command != "cert":
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _no_svg(args) -> None:
    if args.format == "svg":
        raise UsageError("--format svg is only valid for the render command")


# commands


def cmd_relations_verify(args) -> int:
    _no_svg(args)
    fixtures = load_fixtures(args.fixtures)
    t0 = time.perf_counter()
    rows, failures, notes = [], [], []
    for g in args.genus:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            cat = catalog(g, fixtures.restrict(g))
        for w in caught:
            msg = f"warning: {w.message}"
            notes.append(msg)
            print(msg, file=sys.stderr)
        for r in cat:
            ok = evaluate(r.lhs, g) == evaluate(r.rhs, g) and preserves_form(evaluate(r.lhs, g))
            rows.append({"genus": g, "relation": r.name, "pass": ok, "anchor": r.anchor})
            if not ok:
                failures.append(f"genus {g}: {r.name} fails ({r.anchor})")
    elapsed = time.perf_counter() - t0
    lines = [f"genus {g}: {sum(1 for r in rows if r['genus'] == g)} relations" for g in args.genus]
    lines += failures
    lines.append(f"{len(rows)} instances, {len(failures)} failures, {elapsed:.3f}s")
    emit(args, {"instances": rows, "failures": failures, "warnings": notes, "elapsed_seconds": round(elapsed, 6)}, "\n".join(lines))
    return EXIT_FAIL if failures else EXIT_OK


def cmd_mapping_check(args) -> int:
    _no_svg(args)
    g = args.genus
    if g < 7:
        raise UsageError(f"mapping table check needs genus >= 7, got {g}")
    table = CurveMappingTable.standard(g)
    rows, lines = [], []
    for e in table:
        row = {
            "f": str(e.f), "label": e.f_label, "source": e.source.name, "target": e.target.name,
            "origin": e.origin.value, "status": e.status.value, "anchor": e.anchor,
        }
        if e.corrected is not None:
            row["corrected"] = str(e.corrected)
        rows.append(row)
        fix = f" (holds as {e.corrected})" if e.corrected is not None else ""
        lines.append(f"{e.status.value:7} {e.origin.value:8} {e.f_label}({e.source.name}) = {e.target.name}{fix}")
    claims = table.claims()
    passed = sum(e.status is MappingStatus.PASS for e in claims)
    flagged = len(claims) - passed
    lines.append(f"claims: {passed} pass, {flagged} flagged")
    emit(args, {"genus": g, "entries": rows, "claims": {"pass": passed, "flagged": flagged}}, "\n".join(lines))
    # flagged claims are an expected finding, not a tool failure
    return EXIT_OK


def cmd_eval(args) -> int:
    _no_svg(args)
    word = Word.parse(" ".join(args.word))
    m = evaluate(word, args.genus)
    rows = m.to_lists()
    text = "\n".join(" ".join(map(str, r)) for r in rows)
    emit(args, {"word": str(word), "genus": args.genus, "matrix": rows, "hex": m.to_hex()}, text)
    return EXIT_OK


def cmd_abelianize(args) -> int:
    _no_svg(args)
    rep = abelianize_catalog(args.genus, include_lantern=not args.no_lantern, fixtures=load_fixtures(args.fixtures))
    classes = "; ".join(" ".join(c) for c in rep.classes())
    text = (
        f"genus {rep.genus}: abelianization {rep.group}, cyclic={rep.is_cyclic}, "
        f"generated by u1={rep.generated_by_u1}\nclasses: {classes}"
    )
    emit(args, rep.to_json(), text)
    return EXIT_OK


def _summary(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}"]
    for p in report.get("problems", []):
        lines.append(f"  problem: {p}")
    if "certificates" in report:
        for name, r in report["certificates"].items():
            lines.append(f"  {name}: {r['verdict']} lengths={r['lengths']}")
    else:
        lines.append(f"lengths: {report['lengths']}")
        if "factors" in report:
            lines.append(f"factors: {report['factors']} conjugates of u1^+-1")
    lines.append("assumptions:")
    for a in report["assumptions"]:
        lines.append(f"  {a['tag']}: {a['anchor']}")
    return "\n".join(lines)


def cmd_cert(args) -> int:
    _no_svg(args)
    rules = Rulebook(args.genus, load_fixtures(args.fixtures))
    if args.kind == "lemma-a1":
        obj = build_lemma_a1(args.genus, rules)
    elif args.kind == "theorem2":
        obj = build_theorem_main2(args.genus, args.boundary, rules)
    else:
        obj = build_normal_generation(args.genus, rules)
    report = verify_any(obj, rules)
    if args.output:
        Path(args.output).write_text(json.dumps(obj.to_json(), indent=1) + "\n", encoding="utf-8")
    emit(args, report, _summary(report))
    return EXIT_OK if report["verdict"] == "accepted" else EXIT_FAIL


def cmd_verify(args) -> int:
    _no_svg(args)
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
        obj = load_any(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read certificate {args.file}: {exc}") from None
    genus = obj.genus if hasattr(obj, "genus") else obj.certificate.genus
    report = verify_any(obj, Rulebook(genus, load_fixtures(args.fixtures)))
    emit(args, report, _summary(report))
    return EXIT_OK if report["verdict"] == "accepted" else EXIT_FAIL


def cmd_render(args) -> int:
    if args.format not in ("svg", None):
        raise UsageError("render only produces svg")
    curves = [parse_curve(c, args.genus) for c in args.curves]
    doc = render(curves, args.genus)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", help=f"disjointness fixture file (default: ${FIXTURES_ENV} or built-in)")
    common.add_argument("--output", "-o", help="write output to this path")
    common.add_argument("--format", choices=("json", "text", "svg"), default=None)

    p = argparse.ArgumentParser(prog="crosscap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    rel = sub.add_parser("relations", help="relation catalog checks")
    rel_sub = rel.add_subparsers(dest="action", required=True)
    rv = rel_sub.add_parser("verify", parents=[common], help="check every catalog instance in homology")
    rv.add_argument("--genus", type=parse_genus_range, default=parse_genus_range("7..12"))
    rv.set_defaults(func=cmd_relations_verify)

    mp = sub.add_parser("mapping", help="curve-mapping table")
    mp_sub = mp.add_subparsers(dest="action", required=True)
    mc = mp_sub.add_parser("check", parents=[common], help="check every curve-mapping entry")
    mc.add_argument("--genus", type=int, default=7)
    mc.set_defaults(func=cmd_mapping_check)

    ev = sub.add_parser("eval", parents=[common], help="homology matrix of a word")
    ev.add_argument("word", nargs="+")
    ev.add_argument("--genus", type=int, default=7)
    ev.set_defaults(func=cmd_eval)

    ab = sub.add_parser("abelianize", parents=[common], help="abelianization of the relation catalog")
    ab.add_argument("--genus", type=int, default=7)
    ab.add_argument("--no-lantern", action="store_true", help="drop the lantern relation")
    ab.set_defaults(func=cmd_abelianize)

    ce = sub.add_parser("cert", parents=[common], help="build and verify a certificate")
    ce.add_argument("kind", choices=("lemma-a1", "theorem2", "normal-gen"))
    ce.add_argument("--genus", type=int, default=7)
    ce.add_argument("--boundary", type=int, default=0)
    ce.set_defaults(func=cmd_cert)

    ve = sub.add_parser("verify", parents=[common], help="verify a certificate file")
    ve.add_argument("file")
    ve.set_defaults(func=cmd_verify)

    rd = sub.add_parser("render", parents=[common], help="SVG diagram of curves")
    rd.add_argument("curves", nargs="+", help="names (beta, alpha3, mu4) or index sets ({1,3,5})")
    rd.add_argument("--genus", type=int, default=7)
    rd.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command != "render" and args.format is None:
        args.format = "text"
    if hasattr(args, "genus") and isinstance(args.genus, int) and not 2 <= args.genus <= MAX_GENUS:
        print(f"error: genus must lie in [2, {MAX_GENUS}]", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (FixtureError, RelationCheckError) as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CrosscapError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
