"""Impure vs. pure membership: step counts and wall-clock medians.

Two workloads, four contenders each:

* ``letters``: search ``z`` in ``[a,b,...,z,' ']``.
* ``keyed``: search key ``k10`` in ``[k1-v1,...,k26-v26]``.

Contenders are the impure ``once(member(...))`` baseline (``memberchk/2`` and
``lassoc/3``), the explicit-``dif`` definition, the ``if_/3`` definition run
through the meta-call, and the same ``if_/3`` definition after
``specialize``.  Every answer is enumerated, so the price of a leftover
choicepoint is part of the measurement.  Step, cell and choicepoint counts
are per repetition and must be identical on every repetition.
"""

from __future__ import annotations

import statistics
import string
import sys
import time
from dataclasses import dataclass

from .engine import Database, Engine
from .goals import Call
from .stdlib import load_stdlib
from .terms import Atom, fresh_var, make_list, mk

CONTENDERS = ("once_member", "memberd_dif", "memberd_if", "memberd_expanded")
# Kept small: this interpreter manages about 10**4 reps/s on these workloads.
DEFAULT_REPS = 1000
DEFAULT_RUNS = 5

LETTERS = make_list([Atom(c) for c in string.ascii_lowercase] + [Atom(" ")])
PAIRS = make_list([mk("-", Atom(f"k{i}"), Atom(f"v{i}")) for i in range(1, 27)])


@dataclass
class BenchWorkload:
    name: str
    predicates: dict  # contender -> predicate name
    args: tuple  # shared argument terms, identical for all contenders
    reps: int = DEFAULT_REPS

    def goal(self, contender: str):
        return Call(self.predicates[contender], self.args)


def letters_workload(reps: int = DEFAULT_REPS) -> BenchWorkload:
    return BenchWorkload(
        "letters",
        {
            "once_member": "memberchk",
            "memberd_dif": "memberd_dif",
            "memberd_if": "memberd",
            "memberd_expanded": "memberd",
        },
        (Atom("z"), LETTERS),
        reps,
    )


def keyed_workload(reps: int = DEFAULT_REPS) -> BenchWorkload:
    return BenchWorkload(
        "keyed",
        {
            "once_member": "lassoc",
            "memberd_dif": "memberk_dif",
            "memberd_if": "memberk",
            "memberd_expanded": "memberk",
        },
        (Atom("k10"), PAIRS, fresh_var("V")),
        reps,
    )


@dataclass
class BenchRow:
    workload: str
    contender: str
    answers: int
    steps: int
    cells_visited: int
    choicepoints_created: int
    ms: float  # median wall time of one run of ``reps`` repetitions

    def csv(self) -> str:
        return (
            f"{self.workload},{self.contender},{self.steps},{self.cells_visited},"
            f"{self.choicepoints_created},{self.ms:.3f}"
        )


def _counts(engine: Engine, goal) -> tuple[int, int, int, int]:
    n = sum(1 for _ in engine.answers(goal, {}))
    s = engine.stats
    return (n, s.steps, engine.b.cells, s.choicepoints_created)


def run_contender(db: Database, goal, reps: int, runs: int) -> tuple[tuple, float]:
    engine = Engine(db)
    reference = _counts(engine, goal)
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        for _ in range(reps):
            for _ in engine.answers(goal, {}):
                pass
        times.append(time.perf_counter() - t0)
        got = (reference[0], engine.stats.steps, engine.b.cells, engine.stats.choicepoints_created)
        if got != reference:
            raise RuntimeError(f"non-deterministic counts: {got} != {reference}")
    return reference, statistics.median(times) * 1000.0


def run_bench(w: BenchWorkload, runs: int = DEFAULT_RUNS, dbs: dict | None = None) -> list[BenchRow]:
    if dbs is None:
        dbs = {"plain": load_stdlib(), "expanded": load_stdlib(expand=True)}
    rows = []
    for contender in CONTENDERS:
        db = dbs["expanded"] if contender == "memberd_expanded" else dbs["plain"]
        (answers, steps, cells, cps), ms = run_contender(db, w.goal(contender), w.reps, runs)
        rows.append(BenchRow(w.name, contender, answers, steps, cells, cps, ms))
    return rows


def format_table(rows: list[BenchRow], reps: int) -> str:
    head = ("workload", "contender", "answers", "steps", "cells", "cps", f"ms/{reps}")
    body = [
        (r.workload, r.contender, str(r.answers), str(r.steps), str(r.cells_visited),
         str(r.choicepoints_created), f"{r.ms:.1f}")
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = []
    for row in [head, *body]:
        lines.append("  ".join(x.ljust(w) if i < 2 else x.rjust(w) for i, (x, w) in enumerate(zip(row, widths))))
    return "\n".join(lines)


def main(reps: int | None = None, runs: int | None = None, out=None) -> int:
    out = out or sys.stdout
    reps = DEFAULT_REPS if reps is None else reps
    runs = DEFAULT_RUNS if runs is None else runs
    dbs = {"plain": load_stdlib(), "expanded": load_stdlib(expand=True)}
    rows = []
    for w in (letters_workload(reps), keyed_workload(reps)):
        rows.extend(run_bench(w, runs, dbs))
    out.write(format_table(rows, reps) + "\n\n")
    out.write("workload,contender,steps,cells,cps,ms\n")
    for r in rows:
        out.write(r.csv() + "\n")
    return 0
