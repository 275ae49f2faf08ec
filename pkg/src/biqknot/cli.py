"""Command-line front end.

Subcommands::

    biqknot group eval "<word>"        normal form of a group word
    biqknot group center               the exhaustively computed center
    biqknot group table                the full 64x64 multiplication table
    biqknot group parity-table         the parity-class sweep of w y^2 w^-1 y^-2
    biqknot group calibrate            the frozen convention and all matches
    biqknot audit [--n N] [--f ...]    full biquandle axiom report
    biqknot color <diagram> --start W [--end W]
    biqknot distinguish <d1> <d2> --start W

Diagrams are file paths or builtin:right-trefoil / builtin:left-trefoil.
Exit status: 0 success, 1 audit failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import biquandle as bq_mod
from . import coloring as col_mod
from .diagram import (DiagramSyntaxError, LongDiagram, PairingError,
                      builtin_trefoil, parse_diagram)
from .group_words import WordSyntaxError, eval_text, format_normal
from .torus_group import (ALL_ELEMENTS, Convention, NoConventionMatches,
                          TorusGroup, build_group, calibrate_convention)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="biqknot")
    top.add_argument("--format", choices=("text", "json"), default="text")
    sub = top.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group construction and arithmetic")
    gsub = grp.add_subparsers(dest="group_command", required=True)
    p_eval = gsub.add_parser("eval")
    p_eval.add_argument("word")
    gsub.add_parser("center")
    gsub.add_parser("table")
    gsub.add_parser("parity-table")
    gsub.add_parser("calibrate")

    aud = sub.add_parser("audit", help="exhaustive biquandle axiom audit")
    aud.add_argument("--n", type=int, default=2, dest="n_twist")
    aud.add_argument("--f", default=None, dest="f_spec",
                     help="substitution | shear | table:<file> "
                          "(default: the calibrated candidate)")

    col = sub.add_parser("color", help="enumerate colorings of a diagram")
    col.add_argument("diagram")
    col.add_argument("--start", required=True)
    col.add_argument("--end", default=None)

    dis = sub.add_parser("distinguish", help="compare two diagrams")
    dis.add_argument("diagram1")
    dis.add_argument("diagram2")
    dis.add_argument("--start", required=True)
    return top


def _load_diagram(spec: str) -> LongDiagram:
    if spec == "builtin:right-trefoil":
        return builtin_trefoil("right")
    if spec == "builtin:left-trefoil":
        return builtin_trefoil("left")
    with open(spec, "r", encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def _load_f(group: TorusGroup, spec: Optional[str],
            n_twist: int) -> bq_mod.FCandidate:
    if spec is None:
        return col_mod.select_f_candidate(group, n_twist)
    if spec == "substitution":
        return bq_mod.make_f(group, bq_mod.FKind.SUBSTITUTION)
    if spec == "shear":
        return bq_mod.make_f(group, bq_mod.FKind.SHEAR)
    if spec.startswith("table:"):
        path = spec[len("table:"):]
        mapping = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                src_text, dst_text = (line.split(" to ", 1)
                                      if " to " in line
                                      else _split_pair(line))
                mapping[eval_text(src_text, group)] = eval_text(dst_text, group)
        return bq_mod.make_f(group, bq_mod.FKind.TABLE, table=mapping,
                             name=f"table:{path}")
    raise ValueError(f"unknown f candidate {spec!r}")


def _split_pair(line: str):
    # "from to" with normal forms that may contain spaces: split at the
    # boundary before the second 'a'/'b'/'e' run. Simplest reliable rule:
    # two halves separated by two or more spaces, or a tab.
    if "\t" in line:
        left, right = line.split("\t", 1)
        return left.strip(), right.strip()
    if "  " in line:
        left, right = line.split("  ", 1)
        return left.strip(), right.strip()
    parts = line.split()
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ValueError(
        f"cannot split f-table line {line!r}; separate the two normal "
        "forms with a tab or two spaces")


def _header(group: TorusGroup) -> str:
    return f"convention: {group.convention.describe()}"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (WordSyntaxError, DiagramSyntaxError, PairingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, bq_mod.MissingF, NoConventionMatches) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    calibration = calibrate_convention()
    group = build_group(calibration.convention)
    as_json = args.format == "json"

    if args.command == "group":
        return _cmd_group(args, group, calibration, as_json)
    if args.command == "audit":
        return _cmd_audit(args, group, as_json)
    if args.command == "color":
        return _cmd_color(args, group, as_json)
    if args.command == "distinguish":
        return _cmd_distinguish(args, group, as_json)
    raise AssertionError(f"unhandled command {args.command!r}")


def _cmd_group(args, group, calibration, as_json) -> int:
    cmd = args.group_command
    if cmd == "eval":
        value = eval_text(args.word, group)
        if as_json:
            print(json.dumps({"convention": group.convention.describe(),
                              "word": args.word,
                              "normal_form": format_normal(value)}))
        else:
            print(_header(group))
            print(format_normal(value))
        return 0
    if cmd == "center":
        members = sorted(group.center())
        if as_json:
            print(json.dumps({"convention": group.convention.describe(),
                              "center": [format_normal(g) for g in members]}))
        else:
            print(_header(group))
            for g in members:
                print(format_normal(g))
        return 0
    if cmd == "table":
        if as_json:
            rows = {
                format_normal(g): {
                    format_normal(h): format_normal(group.mul(g, h))
                    for h in ALL_ELEMENTS}
                for g in ALL_ELEMENTS}
            print(json.dumps({"convention": group.convention.describe(),
                              "table": rows}))
        else:
            print(_header(group))
            for g in ALL_ELEMENTS:
                row = " | ".join(format_normal(group.mul(g, h))
                                 for h in ALL_ELEMENTS)
                print(f"{format_normal(g)} : {row}")
        return 0
    if cmd == "parity-table":
        rep = group.parity_table()
        if as_json:
            print(json.dumps({
                "convention": group.convention.describe(),
                "all_constant": rep.all_constant,
                "all_central": rep.all_central,
                "has_nontrivial": rep.has_nontrivial,
                "classes": {
                    str(key): sorted(format_normal(g) for g in vals)
                    for key, vals in sorted(rep.values.items())},
                "mismatches": [
                    {"class": str(k), "found": sorted(format_normal(g) for g in v),
                     "stated": format_normal(s)}
                    for k, v, s in rep.mismatches],
            }))
        else:
            print(_header(group))
            print("parity (i, j, k, l) -> values of w y^2 w^-1 y^-2")
            for key, vals in sorted(rep.values.items()):
                text = ", ".join(sorted(format_normal(g) for g in vals))
                print(f"  {key}: {text}")
            print(f"all classes constant: {rep.all_constant}")
            print(f"all values central:   {rep.all_central}")
            print(f"nontrivial value:     {rep.has_nontrivial}")
            print(f"mismatches vs stated pattern: {len(rep.mismatches)}")
        return 0
    if cmd == "calibrate":
        if as_json:
            print(json.dumps({
                "frozen": calibration.convention.describe(),
                "matches": [c.describe() for c in calibration.matches],
            }))
        else:
            print(f"frozen convention: {calibration.convention.describe()}")
            print(f"matching variants ({len(calibration.matches)}):")
            for c in calibration.matches:
                print(f"  {c.describe()}")
        return 0
    raise AssertionError(f"unhandled group command {cmd!r}")


def _cmd_audit(args, group, as_json) -> int:
    cand = _load_f(group, args.f_spec, args.n_twist)
    bq = bq_mod.Biquandle(group, args.n_twist).attach_f(cand)
    report = bq_mod.audit(bq)
    if as_json:
        payload = report.to_json()
        payload["convention"] = group.convention.describe()
        print(json.dumps(payload))
    else:
        print(_header(group))
        print(f"n = {args.n_twist}, f = {cand.summary()}")
        print(report.to_text())
    return 0 if report.passed else 1


def _cmd_color(args, group, as_json) -> int:
    d = _load_diagram(args.diagram)
    bq = col_mod.calibrated_biquandle(group)
    start = eval_text(args.start, group)
    end = eval_text(args.end, group) if args.end else None
    result = col_mod.solve(d, bq, start, end=end)
    if as_json:
        payload = result.to_json()
        payload["convention"] = group.convention.describe()
        print(json.dumps(payload))
    else:
        print(_header(group))
        print(result.to_text())
    return 0


def _cmd_distinguish(args, group, as_json) -> int:
    d1 = _load_diagram(args.diagram1)
    d2 = _load_diagram(args.diagram2)
    bq = col_mod.calibrated_biquandle(group)
    start = eval_text(args.start, group)
    result = col_mod.distinguish(d1, d2, bq, start)
    if as_json:
        payload = result.to_json()
        payload["convention"] = group.convention.describe()
        print(json.dumps(payload))
    else:
        print(_header(group))
        print(result.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
