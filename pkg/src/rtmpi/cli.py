"""Command line entry point.

Every command prints a short human-readable summary; verdicts are reported
through the exit status: 0 equivalent, 1 inequivalent, 2 indeterminate.
Errors (unreadable input, bad arguments) exit with 3.

File arguments may name a corpus file as ``corpus:parity.rtm``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import corpus
from .compiler import compile_rtm
from .equivalence import EQUIVALENT, INEQUIVALENT, FrontierError, branching_degree, equivalent
from .lts import Lts, LtsError, explore, labels, read_aut, restrict, write_aut
from .pi import NameUniverse, PiSyntaxError, parse_pi, pi_generator
from .pi.syntax import render
from .pipeline import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES, MODES, roundtrip
from .rtm import RtmError, parse_rtm, rtm_generator

EXIT_EQUIVALENT, EXIT_INEQUIVALENT, EXIT_INDETERMINATE, EXIT_ERROR = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple = ()
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH
    free_data: tuple = ()
    mode: str = "dpbb"
    out: Optional[str] = None
    allow_frontier: bool = False
    settle: bool = False
    visible_bound: Optional[int] = None

    def __post_init__(self):
        if self.max_states < 1 or self.max_depth < 1:
            raise ValueError("bounds must be positive")
        if self.visible_bound is not None and self.visible_bound < 0:
            raise ValueError("the visible bound cannot be negative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path.startswith("corpus:"):
        return corpus.read_text(path[len("corpus:"):])
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, config: RunConfig):
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        print(f"wrote {config.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _summary(l: Lts) -> str:
    shown = ", ".join(sorted(a.render() for a in labels(l)))
    return f"{l.num_states} states, {len(l.transitions)} transitions, frontier {len(l.frontier)}; labels: {shown or '-'}"


def _explore_file(path: str, config: RunConfig) -> Lts:
    text = _read(path)
    if path.endswith(".rtm"):
        gen = rtm_generator(parse_rtm(text))
    elif path.endswith(".pi"):
        gen = pi_generator(parse_pi(text), NameUniverse(config.free_data), settled=config.settle)
    else:
        raise UsageError(f"cannot explore {path}: expected a .rtm or .pi file")
    return explore(gen, config.max_states, config.max_depth)


def _load_aut(path: str, config: RunConfig) -> Lts:
    """Read an .aut file, or explore a machine or term in its place; a term
    explored over ``--free-data`` is also restricted to those names."""
    if path.endswith(".aut"):
        return read_aut(_read(path))
    l = _explore_file(path, config)
    if path.endswith(".pi") and config.free_data:
        l = restrict(l, config.free_data, allow_frontier=config.allow_frontier)
    return l


def cmd_explore(path: str, config: RunConfig) -> int:
    l = _explore_file(path, config)
    print(_summary(l), file=sys.stderr)
    _emit(write_aut(l), config)
    return 0


def cmd_compile(path: str, config: RunConfig) -> int:
    m = parse_rtm(_read(path))
    out = compile_rtm(m)
    lines = [f"# {kind} {sym} -> {name}" for (kind, sym), name in sorted(out.name_map.items())]
    lines.append(render(out.templates["M"]))
    _emit("\n".join(lines) + "\n", config)
    return 0


def _write_pairs(pairs, path: str):
    Path(path).write_text("".join(f"({i},{j})\n" for i, j in sorted(pairs)), encoding="utf-8")


def cmd_check(first: str, second: str, config: RunConfig) -> int:
    a, b = _load_aut(first, config), _load_aut(second, config)
    result = equivalent(a, b, divergence=config.mode == "dpbb", allow_frontier=config.allow_frontier)
    print(f"{config.mode}: {result.verdict}")
    if result.verdict == EQUIVALENT:
        if config.out:
            _write_pairs(result.witness, config.out)
            print(f"witness relation written to {config.out}")
        return EXIT_EQUIVALENT
    if result.verdict == INEQUIVALENT:
        if result.evidence is not None:
            print(result.evidence.describe())
            if config.out:
                Path(config.out).write_text(result.evidence.describe() + "\n", encoding="utf-8")
        return EXIT_INEQUIVALENT
    print("a frontier state was reached; raise --max-states/--max-depth")
    return EXIT_INDETERMINATE


def cmd_restrict(path: str, config: RunConfig) -> int:
    l = restrict(_load_aut(path, config), config.free_data, allow_frontier=config.allow_frontier)
    print(_summary(l), file=sys.stderr)
    _emit(write_aut(l), config)
    return 0


def cmd_degree(path: str, config: RunConfig) -> int:
    l = _load_aut(path, config)
    if l.frontier and not config.allow_frontier:
        raise FrontierError("degree of a truncated system; raise the bounds")
    d = branching_degree(l)
    lines = [f"{s} {d.per_state[s]}" for s in sorted(d.per_state)]
    print(f"supremum {d.supremum}")
    if config.out:
        Path(config.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"per-state degrees written to {config.out}")
    return 0


def cmd_roundtrip(path: str, config: RunConfig) -> int:
    m = parse_rtm(_read(path))
    report = roundtrip(m, config.mode, config.max_states, config.max_depth, visible_bound=config.visible_bound)
    compiled = report.compiled.num_states if report.compiled else "-"
    print(f"native {report.native.num_states} states, compiled {compiled} states, {report.seconds:.1f} s")
    print(f"{config.mode}: {report.verdict}")
    if report.message:
        print(report.message)
    if report.result.evidence is not None:
        print(report.result.evidence.describe())
    if report.verdict == EQUIVALENT:
        return EXIT_EQUIVALENT
    return EXIT_INEQUIVALENT if report.verdict == INEQUIVALENT else EXIT_INDETERMINATE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common.add_argument("--free-data", default="", help="comma-separated names, e.g. a,b")
    common.add_argument("--mode", choices=MODES, default="dpbb")
    common.add_argument("--allow-frontier", action="store_true")
    common.add_argument("--out", help="output file (default: standard output)")
    p = _Parser(prog="rtmpi", description="Reactive Turing machines and the pi-calculus.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    e = sub.add_parser("explore", parents=[common], help="explore a .rtm or .pi file into .aut")
    e.add_argument("file")
    e.add_argument("--settle", action="store_true", help="perform private internal communications eagerly")
    sub.add_parser("compile", parents=[common], help="compile a .rtm file into a pi-term").add_argument("file")
    c = sub.add_parser("check", parents=[common], help="compare two systems")
    c.add_argument("first")
    c.add_argument("second")
    sub.add_parser("restrict", parents=[common], help="restrict free inputs to --free-data").add_argument("file")
    sub.add_parser("degree", parents=[common], help="branching degree up to equivalence").add_argument("file")
    rt = sub.add_parser("roundtrip", parents=[common], help="compare an RTM with its compiled term")
    rt.add_argument("file")
    rt.add_argument("--visible-bound", type=int, help="cut both systems after this many visible steps")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        inputs = tuple(getattr(args, k) for k in ("file", "first", "second") if hasattr(args, k))
        config = RunConfig(
            inputs=inputs,
            max_states=args.max_states,
            max_depth=args.max_depth,
            free_data=tuple(n for n in args.free_data.split(",") if n),
            mode=args.mode,
            out=args.out,
            allow_frontier=args.allow_frontier,
            settle=getattr(args, "settle", False),
            visible_bound=getattr(args, "visible_bound", None),
        )
        if args.command == "check":
            return cmd_check(args.first, args.second, config)
        commands = {
            "explore": cmd_explore,
            "compile": cmd_compile,
            "restrict": cmd_restrict,
            "degree": cmd_degree,
            "roundtrip": cmd_roundtrip,
        }
        return commands[args.command](args.file, config)
    except FrontierError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (OSError, ValueError, UsageError, RtmError, PiSyntaxError, LtsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
