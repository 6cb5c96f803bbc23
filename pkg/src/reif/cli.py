"""Command-line front end: ``reif run``, ``reif repl`` and ``reif bench``."""

from __future__ import annotations

import argparse
import string
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, TextIO

from .engine import Answer, Database, Engine
from .goals import PrologError, SyntaxErrorAt
from .parser import parse_query
from .stdlib import load_stdlib
from .terms import Var, format_term, iter_vars

FIRST_PREFIX = "   "
NEXT_PREFIX = ";  "


@dataclass
class CliConfig:
    files: list = field(default_factory=list)
    query: str | None = None
    max_answers: int | None = None  # None = all
    expand: bool = False
    stats: bool = False
    occurs_check: bool = False


def _fresh_names(taken: set[str]) -> Iterator[str]:
    n = 0
    while True:
        q, r = divmod(n, 26)
        name = "_" + string.ascii_uppercase[r] + (str(q) if q else "")
        n += 1
        if name not in taken:
            yield name


def answer_names(a: Answer) -> dict[int, str]:
    """Display name for every variable visible in ``a``.

    A variable shared by several query variables is shown under the last of
    them; anything else gets ``_A``, ``_B``, ... in order of appearance.
    """
    names: dict[int, str] = {}
    for name, value in a.bindings.items():
        if type(value) is Var:
            names[value.id] = name
    fresh = _fresh_names(set(a.bindings))
    for t in list(a.bindings.values()) + list(a.residuals):
        for v in iter_vars(t):
            if v.id not in names:
                names[v.id] = next(fresh)
    return names


def answer_text(a: Answer) -> str:
    names = answer_names(a)
    groups: dict[int, list[str]] = {}
    for name, value in a.bindings.items():
        if type(value) is Var:
            groups.setdefault(value.id, []).append(name)
    parts = []
    for name, value in a.bindings.items():
        if type(value) is Var:
            group = groups[value.id]
            i = group.index(name)
            if i + 1 < len(group):
                parts.append(f"{name} = {group[i + 1]}")
        else:
            parts.append(f"{name} = {format_term(value, names=names)}")
    residuals = sorted({format_term(r, names=names) for r in a.residuals})
    parts.extend(residuals)
    return ", ".join(parts) if parts else "true"


def format_answer(a: Answer, is_first: bool, is_last_known_det: bool) -> str:
    """One answer line; terminated by ``.`` when nothing can follow it."""
    line = (FIRST_PREFIX if is_first else NEXT_PREFIX) + answer_text(a)
    if is_last_known_det or a.pending_choicepoints == 0:
        line += "."
    return line


def format_error(e: PrologError) -> str:
    return "ERROR: " + format_term(e.term, names={-1: "_"})


def _load(cfg: CliConfig) -> Database:
    return load_stdlib(expand=cfg.expand, extra=cfg.files)


def stats_line(engine: Engine) -> str:
    s = engine.stats
    return f"% steps={s.steps} cells={engine.b.cells} cps={s.choicepoints_created}"


def run_answers(engine: Engine, query: str, out: TextIO, limit: int | None = None) -> int:
    """Print the answers of ``query`` top-level style; returns how many were shown."""
    goal, variables = parse_query(query)
    shown = 0
    gen = engine.answers(goal, variables)
    for a in gen:
        line = format_answer(a, shown == 0, False)
        shown += 1
        if a.pending_choicepoints == 0:
            out.write(line + "\n")
            return shown
        if limit is not None and shown >= limit:
            out.write(line + " .\n")
            gen.close()
            return shown
        out.write(line + "\n")
    out.write((NEXT_PREFIX if shown else FIRST_PREFIX) + "false.\n")
    return shown


def cmd_run(cfg: CliConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Exit status: 0 with at least one answer, 1 with none, 2 on any error."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        db = _load(cfg)
    except FileNotFoundError as e:
        err.write(f"ERROR: file not found: {e.filename}\n")
        return 2
    except SyntaxErrorAt as e:
        err.write(f"ERROR: syntax error: {e}\n")
        return 2
    engine = Engine(db, occurs_check=cfg.occurs_check)
    try:
        shown = run_answers(engine, cfg.query, out, cfg.max_answers)
    except SyntaxErrorAt as e:
        err.write(f"ERROR: syntax error in query: {e}\n")
        return 2
    except PrologError as e:
        out.flush()
        err.write(format_error(e) + "\n")
        return 2
    if cfg.stats:
        out.write(stats_line(engine) + "\n")
    return 0 if shown else 1


def repl(cfg: CliConfig, inp: TextIO | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Line-oriented top level.

    After an answer that leaves choicepoints a line ``;`` asks for the next one;
    anything else ends the query.  ``:load PATH`` adds clauses to the program.
    """
    inp = inp or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    db = _load(cfg)
    interactive = inp.isatty()
    pending = ""

    def prompt(text: str) -> None:
        if interactive:
            out.write(text)
            out.flush()

    prompt("?- ")
    for raw in inp:
        line = raw.strip()
        if not pending and line.startswith(":load"):
            path = line[len(":load"):].strip()
            try:
                extra = Database().consult(Path(path).read_text(encoding="utf-8"))
                for c in (extra.specialized() if cfg.expand else extra).clauses:
                    db.add(c)
                out.write(f"% loaded {path}\n")
            except (OSError, SyntaxErrorAt) as e:
                err.write(f"ERROR: {e}\n")
            prompt("?- ")
            continue
        pending = (pending + " " + line).strip()
        if not pending:
            prompt("?- ")
            continue
        if not pending.endswith("."):
            prompt("|  ")
            continue
        text, pending = pending, ""
        if text in ("halt.", "?- halt."):
            return 0
        engine = Engine(db, occurs_check=cfg.occurs_check)
        try:
            goal, variables = parse_query(text)
            shown = 0
            for a in engine.answers(goal, variables):
                out.write(format_answer(a, shown == 0, False))
                shown += 1
                if a.pending_choicepoints == 0:
                    out.write("\n")
                    break
                out.write("\n")
                out.flush()
                reply = inp.readline().strip()
                if reply != ";":
                    out.write("   .\n")
                    break
            else:
                out.write((NEXT_PREFIX if shown else FIRST_PREFIX) + "false.\n")
            if cfg.stats:
                out.write(stats_line(engine) + "\n")
        except SyntaxErrorAt as e:
            err.write(f"ERROR: syntax error: {e}\n")
        except PrologError as e:
            err.write(format_error(e) + "\n")
        out.flush()
        prompt("?- ")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reif", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="load programs and answer one query")
    run.add_argument("files", nargs="*", help="program files loaded after the library")
    run.add_argument("-q", "--query", required=True, help='query text, e.g. "memberd(1, [1,X])."')
    count = run.add_mutually_exclusive_group()
    count.add_argument("--all", action="store_true", help="print every answer (default)")
    count.add_argument("-n", type=int, metavar="N", help="stop after N answers")
    run.add_argument("--expand", action="store_true", help="specialize if_(A = B, ...) at load time")
    run.add_argument("--stats", action="store_true", help="print a '%% steps=.. cells=.. cps=..' line")
    run.add_argument("--occurs-check", action="store_true")

    rp = sub.add_parser("repl", help="interactive top level")
    rp.add_argument("files", nargs="*")
    rp.add_argument("--expand", action="store_true")
    rp.add_argument("--stats", action="store_true")
    rp.add_argument("--occurs-check", action="store_true")

    bp = sub.add_parser("bench", help="impure vs. pure membership benchmark")
    bp.add_argument("--reps", type=int, default=None, help="repetitions per timed run")
    bp.add_argument("--runs", type=int, default=None, help="timed runs per contender (median reported)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        from . import bench

        return bench.main(reps=args.reps, runs=args.runs)
    cfg = CliConfig(
        files=list(args.files),
        expand=args.expand,
        stats=args.stats,
        occurs_check=args.occurs_check,
    )
    if args.command == "run":
        cfg.query = args.query
        cfg.max_answers = args.n
        return cmd_run(cfg)
    return repl(cfg)


if __name__ == "__main__":
    sys.exit(main())
