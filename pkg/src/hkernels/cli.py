"""Kernels by H-walks: recognition, kernel search, reductions and falsification.

Exit codes: 0 positive finding, 1 negative finding, 2 input error, 3 time
budget exhausted.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .digraph import (
    ParseError,
    PartitionInvalid,
    contract,
    expand,
    format_instance,
    format_pattern,
    parse_instance,
    parse_pattern,
)
from .hwalk import ColourCountMismatch, h_reach, witness_walk
from .kernel import enumerate_h_kernels, find_h_kernel
from .recognizer import recognize
from .reductions import PreconditionError, p2_transform
from .search import ESCALATION, ClassificationRow, Counterexample, SearchBounds, classify_order, falsify

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_pattern(path: str):
    try:
        return parse_pattern(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_instance(path: str):
    try:
        return parse_instance(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _check_colours(inst, h):
    if inst.k != h.n:
        raise InputError(f"instance has {inst.k} colours but the pattern has {h.n} vertices")


def _set(vs) -> str:
    return "{" + ",".join(map(str, vs)) + "}"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _parts(text: str) -> list[list[int]]:
    return [_int_list(p) for p in text.split("|")]


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def arc_string(h) -> str:
    return ",".join(f"{u}>{v}" for u, v in h.arc_list())


# --- subcommands ------------------------------------------------------------

def cmd_recognize(args) -> int:
    h = _load_pattern(args.pattern)
    verdict = recognize(h)
    print(verdict)
    return OK if verdict.panchromatic else NEGATIVE


def cmd_kernel(args) -> int:
    inst, h = _load_instance(args.instance), _load_pattern(args.pattern)
    _check_colours(inst, h)
    reach = h_reach(inst, h)
    if args.all:
        if inst.n > 20:
            raise InputError("--all enumerates subsets and is limited to 20 vertices")
        kernels = enumerate_h_kernels(inst, h, reach)
        for k in kernels:
            print(f"KERNEL {_set(k)}")
        if not kernels:
            print("NONE")
        return OK if kernels else NEGATIVE
    k = find_h_kernel(inst, h, reach)
    if k is None:
        print("NONE")
        return NEGATIVE
    print(f"KERNEL {_set(k)}")
    return OK


def cmd_reach(args) -> int:
    inst, h = _load_instance(args.instance), _load_pattern(args.pattern)
    _check_colours(inst, h)
    if args.matrix:
        for row in h_reach(inst, h).matrix():
            print(" ".join(map(str, row)))
        return OK
    if args.source is None or args.target is None:
        raise InputError("reach needs --from and --to, or --matrix")
    for v in (args.source, args.target):
        if not 0 <= v < inst.n:
            raise InputError(f"vertex {v} out of range 0..{inst.n - 1}")
    w = witness_walk(inst, h, args.source, args.target)
    if w is None:
        print("UNREACHABLE")
        return NEGATIVE
    vertices, colours = w
    print("WALK " + " ".join(map(str, vertices)) + " COLOURS " + " ".join(map(str, colours)))
    return OK


def cmd_p2(args) -> int:
    inst, h = _load_instance(args.instance), _load_pattern(args.pattern)
    try:
        t = p2_transform(inst, h, args.u, args.v, args.z)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    _emit(t.to_text(), args.output)
    print(f"added {len(t.twins)}", file=sys.stdout if args.output else sys.stderr)
    return OK


def cmd_contract(args) -> int:
    h = _load_pattern(args.pattern)
    try:
        q = contract(h, args.parts)
    except PartitionInvalid as exc:
        raise InputError(f"invalid partition: {exc}") from None
    _emit(format_pattern(q), args.output)
    return OK


def cmd_expand(args) -> int:
    h = _load_pattern(args.pattern)
    try:
        e = expand(h, args.sizes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(format_pattern(e), args.output)
    return OK


def _bounds(args, **over) -> SearchBounds:
    try:
        b = SearchBounds(
            max_vertices=getattr(args, "max_vertices", 3),
            min_vertices=getattr(args, "min_vertices", 1),
            allow_loops_in_d=args.allow_loops,
            max_arcs=args.max_arcs,
            colouring_cap=args.colouring_cap,
            time_budget=args.time_budget,
            prune_colours=not args.no_prune,
            jobs=args.jobs,
        )
        return replace(b, **over)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_falsify(args) -> int:
    h = _load_pattern(args.pattern)
    bounds = _bounds(args)
    res = falsify(h, bounds)
    if isinstance(res, Counterexample):
        out = args.output or "counterexample.txt"
        comments = [f"counterexample for pattern {arc_string(h)}", "no kernel by H-walks"]
        Path(out).write_text(format_instance(res.instance, comments), encoding="utf-8")
        print(f"COUNTEREXAMPLE n={res.instance.n} m={res.instance.d.num_arcs()} file={out}")
        return OK
    if res.timed_out:
        print(f"BUDGET {bounds.describe()} digraphs={res.digraphs_checked} colourings={res.colourings_checked}")
        return BUDGET
    note = f" skipped={res.skipped_digraphs}" if res.skipped_digraphs else ""
    print(f"EXHAUSTED {bounds.describe()} digraphs={res.digraphs_checked} colourings={res.colourings_checked}{note}")
    return NEGATIVE


def report_line(i: int, row: ClassificationRow, witness_file: str | None) -> str:
    v = row.verdict
    if v.panchromatic:
        c = v.certificate
        witness = f"{c.kind} X={_set(c.x)} Y={_set(c.y)}"
    else:
        witness = witness_file or "none"
    w = row.witness
    if isinstance(w, Counterexample):
        bounds = f"found-at-n<={row.level} n={w.instance.n} m={w.instance.d.num_arcs()}"
    elif w is None:
        bounds = "not-searched"
    else:
        bounds = ("exhausted " if w.complete else "incomplete ") + w.bounds.describe()
        if w.timed_out:
            bounds += " timed-out"
        if w.skipped_digraphs:
            bounds += f" skipped={w.skipped_digraphs}"
    return "\t".join([str(i), arc_string(row.pattern), row.status, witness, bounds])


def cmd_classify(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    bounds = _bounds(args)
    escalation = tuple(args.escalation)
    if not escalation or any(e < 1 for e in escalation) or list(escalation) != sorted(escalation):
        raise InputError("--escalation must be increasing positive integers")
    rows = classify_order(args.order, bounds, escalation,
                          positive_max_vertices=args.positive_max_vertices)
    lines = ["#\tpattern\tverdict\twitness\tbounds"]
    for i, row in enumerate(rows):
        name = None
        if isinstance(row.witness, Counterexample):
            name = f"order{args.order}_cex{i:03d}.txt"
            comments = [f"counterexample for pattern {arc_string(row.pattern)}", "no kernel by H-walks"]
            (outdir / name).write_text(format_instance(row.witness.instance, comments), encoding="utf-8")
        lines.append(report_line(i, row, name))
    (outdir / "report.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    pos = sum(r.verdict.panchromatic for r in rows)
    fatal = sum(r.fatal for r in rows)
    unwitnessed = [i for i, r in enumerate(rows) if r.status == "NOT-PANCHROMATIC-UNWITNESSED"]
    print(f"order {args.order}: {len(rows)} classes, {pos} PANCHROMATIC, "
          f"{len(rows) - pos} NOT-PANCHROMATIC, {fatal} FATAL")
    for i in unwitnessed:
        w = rows[i].witness
        how = "search stopped by the time budget" if w is not None and w.timed_out else "Exhausted"
        print(f"row {i} {arc_string(rows[i].pattern)}: no counterexample within n<={escalation[-1]} ({how})")
    timed_out = any(not isinstance(r.witness, Counterexample) and r.witness is not None
                    and r.witness.timed_out for r in rows)
    if timed_out:
        return BUDGET
    return OK if not fatal and not unwitnessed else NEGATIVE


# --- parser -----------------------------------------------------------------

def _search_flags(p):
    p.add_argument("--max-arcs", type=int)
    p.add_argument("--colouring-cap", type=int)
    p.add_argument("--time-budget", type=float, help="seconds")
    p.add_argument("--allow-loops", action="store_true", help="enumerate D with loops")
    p.add_argument("--no-prune", action="store_true", help="disable colour-symmetry pruning")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkernels", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide whether a pattern is panchromatic")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("kernel", help="find an H-kernel of a coloured instance")
    p.add_argument("instance")
    p.add_argument("pattern")
    p.add_argument("--all", action="store_true", help="list every kernel")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("reach", help="H-walk witness or the full reach relation")
    p.add_argument("instance")
    p.add_argument("pattern")
    p.add_argument("--from", dest="source", type=int)
    p.add_argument("--to", dest="target", type=int)
    p.add_argument("--matrix", action="store_true")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("p2", help="simulate a missing pattern arc u->v by twin vertices")
    p.add_argument("instance")
    p.add_argument("pattern")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--z", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_p2)

    p = sub.add_parser("contract", help="quotient a pattern by a partition")
    p.add_argument("pattern")
    p.add_argument("--parts", type=_parts, required=True, help="e.g. 0,1|2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("expand", help="blow pattern vertices up into complete blocks")
    p.add_argument("pattern")
    p.add_argument("--sizes", type=_int_list, required=True, help="e.g. 2,1")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("falsify", help="search for an instance without an H-kernel")
    p.add_argument("pattern")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--min-vertices", type=int, default=1)
    p.add_argument("-o", "--output", help="counterexample file (default counterexample.txt)")
    _search_flags(p)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("classify", help="classify every looped pattern of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out", default="classify-out")
    p.add_argument("--escalation", type=_int_list, default=list(ESCALATION))
    p.add_argument("--positive-max-vertices", type=int, default=4,
                   help="search bound used to check panchromatic verdicts")
    _search_flags(p)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, ColourCountMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
