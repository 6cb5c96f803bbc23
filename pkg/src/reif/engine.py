"""Depth-first resolution with an explicit choicepoint stack.

Continuations are immutable linked cells ``(goal, env, next)``.  ``env`` is
the variable frame of the clause instance the goal came from (``None`` for
goals that already hold plain terms), so clause bodies are never copied: an
argument is built from its template only when the goal runs.

A choicepoint is ``(trail_mark, cont, clause_alt, snapshot)``.  For a
disjunction ``cont`` is the alternative continuation and ``clause_alt`` is
``None``; for clause alternatives ``cont`` is the continuation of the call and
``clause_alt`` is ``(args, candidates, next_index)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import reified
from .dif import ConstraintStore, DifOutcome
from .goals import (
    Call,
    Clause,
    Conj,
    Dif,
    Disj,
    Fail,
    Goal,
    IfReified,
    Once,
    Succeed,
    TestEq,
    Unify,
    body_goal,
    existence_error,
    instantiation_error,
    map_goal_terms,
    throw_error,
)
from .terms import Atom, Compound, Int, Term, Var, deref, fresh_var, mk, walk_star
from .unify import CELL_FUNCTORS, CLASH, IDENTICAL, Bindings, trial_unify, unify

DEFAULT_MAX_STEPS = 10**6


# --- clause templates -------------------------------------------------------


class LocalVar:
    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        self.index = index

    def __repr__(self) -> str:
        return f"L{self.index}"


class TCompound:
    """Compound template with at least one ``LocalVar`` inside."""

    __slots__ = ("functor", "args")

    def __init__(self, functor: str, args: tuple) -> None:
        self.functor = functor
        self.args = args


def _templatize(t: Term, slots: dict[int, int]):
    if type(t) is Var:
        return LocalVar(slots.setdefault(t.id, len(slots)))
    if type(t) is Compound:
        args = tuple(_templatize(a, slots) for a in t.args)
        if any(type(a) is LocalVar or type(a) is TCompound for a in args):
            return TCompound(t.functor, args)
        return Compound(t.functor, args)
    return t


def build(t, env: list):
    tt = type(t)
    if tt is LocalVar:
        v = env[t.index]
        if v is None:
            v = env[t.index] = fresh_var()
        return v
    if tt is TCompound:
        return Compound(t.functor, tuple([build(a, env) for a in t.args]))
    return t


def _index_key(t):
    tt = type(t)
    if tt is Compound or tt is TCompound:
        return (t.functor, len(t.args))
    if tt is Atom or tt is Int:
        return t
    return None


class CompiledClause:
    __slots__ = ("source", "head_args", "body", "nvars", "keys")

    def __init__(self, clause: Clause) -> None:
        slots: dict[int, int] = {}
        head = clause.head
        args = head.args if type(head) is Compound else ()
        self.source = clause
        self.head_args = tuple(_templatize(a, slots) for a in args)
        self.body = map_goal_terms(clause.body, lambda t: _templatize(t, slots))
        self.nvars = len(slots)
        self.keys = tuple(_index_key(a) for a in self.head_args)


def _match(p, t, env: list, b: Bindings) -> bool:
    tp = type(p)
    if tp is LocalVar:
        cur = env[p.index]
        if cur is None:
            env[p.index] = t
            return True
        return unify(cur, t, b)
    if tp is TCompound:
        m = b.map
        while type(t) is Var:
            nxt = m.get(t.id)
            if nxt is None:
                value = build(p, env)
                if b.occurs_check and not unify(t, value, b):
                    return False
                m[t.id] = value
                b.trail.append(t)
                return True
            t = nxt
        if type(t) is not Compound or t.functor != p.functor or len(t.args) != len(p.args):
            return False
        if (p.functor, len(p.args)) in CELL_FUNCTORS:
            b.cells += 1
        for pa, ta in zip(p.args, t.args):
            if not _match(pa, ta, env, b):
                return False
        return True
    return unify(p, t, b)


class Predicate:
    def __init__(self, name: str, arity: int) -> None:
        self.name = name
        self.arity = arity
        self.clauses: list[CompiledClause] = []
        self.positions: tuple[int, ...] = ()

    def add(self, cl: CompiledClause) -> None:
        self.clauses.append(cl)
        self.positions = tuple(
            i for i in range(self.arity) if any(c.keys[i] is not None for c in self.clauses)
        )

    def select(self, args: tuple, m: dict) -> list[CompiledClause]:
        """Clauses whose head could match ``args`` judging by principal functors.

        Every argument position takes part, so a call whose first argument is
        unbound can still be resolved deterministically on a later one.
        """
        clauses = self.clauses
        if len(clauses) == 1:
            return clauses
        keys = [(i, _index_key(deref(args[i], m))) for i in self.positions]
        out = []
        for cl in clauses:
            ck = cl.keys
            for i, k in keys:
                hk = ck[i]
                if hk is not None and k is not None and hk != k:
                    break
            else:
                out.append(cl)
        return out


class Database:
    """User predicates by name/arity.  Treated as read-only once queries run."""

    def __init__(self, clauses: Iterable[Clause] = ()) -> None:
        self.preds: dict[tuple[str, int], Predicate] = {}
        self.clauses: list[Clause] = []
        for c in clauses:
            self.add(c)

    def add(self, clause: Clause) -> None:
        key = clause.key
        pred = self.preds.get(key)
        if pred is None:
            pred = self.preds[key] = Predicate(*key)
        pred.add(CompiledClause(clause))
        self.clauses.append(clause)

    def consult(self, text: str) -> "Database":
        from .parser import parse_program

        for c in parse_program(text):
            self.add(c)
        return self

    def copy(self) -> "Database":
        return Database(self.clauses)

    def specialized(self) -> "Database":
        return Database(
            Clause(c.head, reified.specialize(c.body), c.var_names) for c in self.clauses
        )


# --- runtime-only goals -------------------------------------------------------


class _Answer:
    __slots__ = ()


class _CutTo:
    __slots__ = ("height",)

    def __init__(self, height: int) -> None:
        self.height = height


class _Dispatch:
    __slots__ = ("var", "then", "else_")

    def __init__(self, var, then, else_) -> None:
        self.var = var
        self.then = then
        self.else_ = else_


ANSWER = _Answer()


def _control(name: str):
    def run(m, args, nxt):
        args = [deref(a, m.b.map) for a in args]
        if name == "if_" and type(args[0]) is Var:
            raise instantiation_error()
        return (body_goal(mk(name, *args)), None, nxt)

    return run


def _call_n(m, args, nxt):
    g = deref(args[0], m.b.map)
    if type(g) is Var:
        raise instantiation_error()
    return (body_goal(g, tuple(args[1:])), None, nxt)


CORE_BUILTINS = {
    ("true", 0): _control("true"),
    ("fail", 0): _control("fail"),
    ("false", 0): _control("false"),
    ("=", 2): _control("="),
    ("dif", 2): _control("dif"),
    ("if_", 3): _control("if_"),
    ("once", 1): _control("once"),
    **{("call", n): _call_n for n in range(1, 9)},
    **reified.BUILTINS,
}


@dataclass
class SolveStats:
    steps: int = 0
    cells_visited: int = 0
    choicepoints_created: int = 0
    pending_at_answer: list = field(default_factory=list)


@dataclass
class Answer:
    """One projected answer.

    ``bindings`` holds every query variable (in query order) walked through the
    substitution; unbound ones map to variables.  Deciding what to show is the
    writer's job.
    """

    bindings: dict
    residuals: list
    pending_choicepoints: int


class Engine:
    def __init__(
        self,
        db: Database,
        occurs_check: bool = False,
        max_steps: int = DEFAULT_MAX_STEPS,
        debug: bool = False,
    ) -> None:
        self.db = db
        self.occurs_check = occurs_check
        self.max_steps = max_steps
        self.debug = debug
        self.builtins = dict(CORE_BUILTINS)
        self.reset()

    def reset(self) -> None:
        self.b = Bindings(self.occurs_check)
        self.store = ConstraintStore(self.b)
        self.cps: list = []
        self.stats = SolveStats()

    def snapshot(self) -> tuple:
        return (tuple(sorted(self.b.map.items())), self.store.snapshot())

    def push_alt(self, alt_cont) -> None:
        snap = self.snapshot() if self.debug else None
        self.cps.append((len(self.b.trail), alt_cont, None, snap))
        self.stats.choicepoints_created += 1

    # -- resolution ------------------------------------------------------------

    def _try(self, cands: list, i: int, args: tuple, nxt, first: bool):
        b = self.b
        store = self.store
        n = len(cands)
        while i < n:
            cl = cands[i]
            i += 1
            mark = len(b.trail)
            snap = self.snapshot() if self.debug else None
            env = [None] * cl.nvars
            ok = True
            for p, a in zip(cl.head_args, args):
                if type(p) is LocalVar and env[p.index] is None:
                    env[p.index] = a
                elif not _match(p, a, env, b):
                    ok = False
                    break
            if ok and store.watch and len(b.trail) > mark:
                ok = store.wake(b.bound_since(mark))
            if ok:
                if i < n:
                    self.cps.append((mark, nxt, (args, cands, i), snap))
                    if first:
                        self.stats.choicepoints_created += 1
                if type(cl.body) is Succeed:
                    return nxt
                return (cl.body, env, nxt)
            b.undo_to(mark)
        return None

    def _backtrack(self):
        cps = self.cps
        b = self.b
        while cps:
            mark, cont, clause_alt, snap = cps.pop()
            b.undo_to(mark)
            if snap is not None and snap != self.snapshot():
                raise AssertionError("trail rewind did not restore the state at the choicepoint")
            if clause_alt is None:
                return cont
            self.stats.steps += 1
            args, cands, i = clause_alt
            cont = self._try(cands, i, args, cont, False)
            if cont is not None:
                return cont
        return None

    def solve(self, goal: Goal) -> Iterator[int]:
        """Run ``goal``; yields the choicepoint-stack depth at every answer."""
        b = self.b
        store = self.store
        stats = self.stats
        preds = self.db.preds
        builtins = self.builtins
        cps = self.cps
        max_steps = self.max_steps
        cont = (goal, None, (ANSWER, None, None))
        while True:
            goal, env, nxt = cont
            stats.steps += 1
            if stats.steps > max_steps:
                stats.cells_visited = b.cells
                raise throw_error(mk("resource_error", Atom("steps")))
            t = type(goal)
            if t is Call:
                args = goal.args
                if env is not None:
                    args = tuple([build(a, env) for a in args])
                key = (goal.name, len(args))
                pred = preds.get(key)
                if pred is not None:
                    cands = pred.select(args, b.map)
                    cont = self._try(cands, 0, args, nxt, True) if cands else None
                else:
                    fn = builtins.get(key)
                    if fn is None:
                        raise existence_error(*key)
                    cont = fn(self, args, nxt)
            elif t is Conj:
                cont = (goal.left, env, (goal.right, env, nxt))
                continue
            elif t is TestEq:
                x = build(goal.left, env) if env is not None else goal.left
                y = build(goal.right, env) if env is not None else goal.right
                outcome = trial_unify(x, y, b, count=True)
                if outcome is IDENTICAL:
                    cont = nxt if type(goal.then) is Succeed else (goal.then, env, nxt)
                elif outcome is CLASH:
                    cont = nxt if type(goal.else_) is Succeed else (goal.else_, env, nxt)
                else:
                    self.push_alt((Dif(x, y), None, (goal.else_, env, nxt)))
                    if store.unify(x, y):
                        cont = (goal.then, env, nxt)
                    else:
                        cont = None
            elif t is IfReified:
                c = goal.cond
                v = fresh_var()
                cargs = c.bound_args
                if env is not None:
                    cargs = tuple([build(a, env) for a in cargs])
                cont = (Call(c.name, cargs + (v,)), None, (_Dispatch(v, goal.then, goal.else_), env, nxt))
                continue
            elif t is _Dispatch:
                branch = goal.then if reified.truth_value(deref(goal.var, b.map)) else goal.else_
                cont = nxt if type(branch) is Succeed else (branch, env, nxt)
                continue
            elif t is Unify:
                x = build(goal.left, env) if env is not None else goal.left
                y = build(goal.right, env) if env is not None else goal.right
                cont = nxt if store.unify(x, y) else None
            elif t is _Answer:
                stats.cells_visited = b.cells
                stats.pending_at_answer.append(len(cps))
                yield len(cps)
                cont = None
            elif t is Dif:
                x = build(goal.left, env) if env is not None else goal.left
                y = build(goal.right, env) if env is not None else goal.right
                cont = None if store.post_dif(x, y) is DifOutcome.FAILED else nxt
            elif t is Disj:
                self.push_alt((goal.right, env, nxt))
                cont = (goal.left, env, nxt)
                continue
            elif t is Succeed:
                cont = nxt
                continue
            elif t is Fail:
                cont = None
            elif t is Once:
                cont = (goal.goal, env, (_CutTo(len(cps)), None, nxt))
                continue
            elif t is _CutTo:
                del cps[goal.height:]
                cont = nxt
                continue
            else:
                raise TypeError(f"not a goal: {goal!r}")
            if cont is None:
                cont = self._backtrack()
                if cont is None:
                    stats.cells_visited = b.cells
                    return

    # -- facade ------------------------------------------------------------------

    def answers(self, goal: Goal, variables: dict[str, Var]) -> Iterator[Answer]:
        """Solve ``goal`` from a clean state, projecting onto ``variables``."""
        self.reset()
        qvars = list(variables.values())
        for pending in self.solve(goal):
            m = self.b.map
            bindings = {name: walk_star(v, m) for name, v in variables.items()}
            residuals = self.store.residual_goals(qvars)
            yield Answer(bindings, residuals, pending)


def goal_variables(goal: Goal) -> dict[str, Var]:
    """Named variables of a hand-built goal, in first-occurrence order."""
    from .terms import term_variables

    found: dict[str, Var] = {}

    def visit(t):
        for v in term_variables(t):
            if v.name and v.name != "_" and v.name not in found:
                found[v.name] = v
        return t

    map_goal_terms(goal, visit)
    return found


def run_query(
    program: Database,
    query,
    max_answers: int | None = None,
    *,
    variables: dict[str, Var] | None = None,
    occurs_check: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
    debug: bool = False,
) -> tuple[list[Answer], SolveStats]:
    """Collect up to ``max_answers`` answers (all when ``None``) of ``query``.

    ``query`` is either source text such as ``"memberd(1, [1,X])."`` or a goal.
    """
    if isinstance(query, str):
        from .parser import parse_query

        query, variables = parse_query(query)
    elif variables is None:
        variables = goal_variables(query)
    eng = Engine(program, occurs_check=occurs_check, max_steps=max_steps, debug=debug)
    out = []
    if max_answers is None or max_answers > 0:
        for ans in eng.answers(query, variables):
            out.append(ans)
            if max_answers is not None and len(out) >= max_answers:
                break
    eng.stats.cells_visited = eng.b.cells
    return out, eng.stats
