"""Command-line front end.

Exit codes: 0 success, 1 domain errors (printed as `error: <Name>: ...`
on stderr), 2 usage errors.  All output is deterministic for fixed
inputs and flags; `--json` switches to a machine-readable shape.
"""

import argparse
import json
import sys

from .errors import GbsError
from .explorer import ExploreBounds, explore
from .graph import parse, parse_end, serialize, to_dot
from .moves import (
    Collapse,
    Expansion,
    Induction,
    Slide,
    apply_move,
    initial_state,
)
from .explorer import reduce_state
from .rigidity import ascending_modulus, check
from .words import Presentation, format_word, parse_word, word_length


def _build_parser():
    p = argparse.ArgumentParser(
        prog="gbsr",
        description="Rigidity and deformation tooling for GBS graphs of groups.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("check", "reduce", "export-dot"):
        sp = sub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("collapse")
    sp.add_argument("file")
    sp.add_argument("edge")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("expand")
    sp.add_argument("file")
    sp.add_argument("vertex")
    sp.add_argument("p", type=int)
    sp.add_argument("ends", nargs="*")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("slide")
    sp.add_argument("file")
    sp.add_argument("moving")
    sp.add_argument("keyword", metavar="across")
    sp.add_argument("across")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("induct")
    sp.add_argument("file")
    sp.add_argument("d", type=int)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("explore")
    sp.add_argument("file")
    sp.add_argument("--max-extra-edges", type=int, default=2)
    sp.add_argument("--max-label", type=int, default=None)
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("length")
    sp.add_argument("file")
    sp.add_argument("word")

    return p


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise GbsError(str(e))
    return parse(text)


def _emit_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _flag(value, word):
    return word if value else "not-" + word


def _run_check(args):
    g = _load(args.file)
    verdict = check(g)
    if args.json:
        _emit_json(verdict.to_json())
        return 0
    parts = [
        _flag(verdict.reduced, "reduced"),
        _flag(verdict.ascending, "ascending"),
        _flag(verdict.strongly_slide_free, "slide-free"),
        _flag(verdict.rigid, "rigid"),
    ]
    line = " ".join(parts)
    if verdict.ascending and not verdict.rigid:
        line += " (s=%d is not 1 or prime)" % ascending_modulus(g)
    print(line)
    for v, e, f, cond in verdict.violations:
        print("violation: vertex=%s endE=%s endF=%s condition=%s" % (v, e, f, cond))
    return 0


def _print_state(state, as_json):
    marking = {sym: format_word(w) for sym, w in sorted(state.marking.items())}
    if as_json:
        _emit_json(
            {
                "graph": serialize(state.graph),
                "marking": marking,
                "moves": [str(m) for m in state.history],
            }
        )
        return
    sys.stdout.write(serialize(state.graph))
    print("marking:")
    for sym, word in marking.items():
        print("  %s = %s" % (sym, word))


def _run_state_command(args):
    g = _load(args.file)
    state = initial_state(g)
    if args.command == "reduce":
        state = reduce_state(state)
    elif args.command == "collapse":
        state = apply_move(state, Collapse(args.edge))
    elif args.command == "expand":
        ends = tuple(parse_end(e) for e in args.ends)
        state = apply_move(state, Expansion(args.vertex, args.p, ends))
    elif args.command == "slide":
        state = apply_move(state, Slide(parse_end(args.moving), parse_end(args.across)))
    elif args.command == "induct":
        state = apply_move(state, Induction(args.d))
    _print_state(state, args.json)
    return 0


def _run_explore(args):
    g = _load(args.file)
    bounds = ExploreBounds(
        max_extra_edges=args.max_extra_edges,
        max_label=args.max_label,
        max_depth=args.depth,
        radius=args.radius,
    )
    report = explore(initial_state(g), bounds)
    if args.json:
        _emit_json(report.to_json())
        return 0
    print("rigid: %s" % report.rigid)
    print("classes: %d" % len(report.classes))
    for i, cls in enumerate(report.classes, 1):
        print("class %d (count %d):" % (i, cls.count))
        for line in serialize(cls.graph).splitlines():
            print("  " + line)
    if report.witness is not None:
        print("witness: %s" % "; ".join(str(m) for m in report.witness))
    return 0


def _run_length(args):
    g = _load(args.file)
    p = Presentation(g)
    print(word_length(p, parse_word(args.word)))
    return 0


def _run_export_dot(args):
    g = _load(args.file)
    text = to_dot(g)
    if args.json:
        _emit_json({"dot": text})
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if args.command == "slide" and args.keyword != "across":
        print("usage: gbsr slide <file> <end> across <end>", file=sys.stderr)
        return 2
    try:
        if args.command == "check":
            return _run_check(args)
        if args.command == "explore":
            return _run_explore(args)
        if args.command == "length":
            return _run_length(args)
        if args.command == "export-dot":
            return _run_export_dot(args)
        return _run_state_command(args)
    except GbsError as err:
        print("error: %s: %s" % (err.name, err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
