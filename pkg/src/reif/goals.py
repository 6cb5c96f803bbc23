"""Executable goal trees, closures, clauses and the error term type."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .terms import Atom, Compound, Int, Term, Var, format_term, mk


class PrologError(Exception):
    """A thrown error term, e.g. ``error(instantiation_error, _)``."""

    def __init__(self, term: Term) -> None:
        super().__init__(format_term(term))
        self.term = term

    @property
    def formal(self) -> Term:
        t = self.term
        if type(t) is Compound and t.functor == "error" and len(t.args) == 2:
            return t.args[0]
        return t


def throw_error(formal: Term) -> PrologError:
    return PrologError(Compound("error", (formal, Var(-1, "_"))))


def instantiation_error() -> PrologError:
    return throw_error(Atom("instantiation_error"))


def type_error(kind: str, culprit: Term) -> PrologError:
    return throw_error(mk("type_error", Atom(kind), culprit))


def existence_error(name: str, arity: int) -> PrologError:
    return throw_error(mk("existence_error", Atom("procedure"), mk("/", Atom(name), Int(arity))))


class SyntaxErrorAt(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple = ()) -> None:
        where = f"line {line}, column {col}"
        if expected:
            message = f"{message} (expected {' or '.join(expected)})"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.col = col
        self.expected = expected


# --- goals ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Succeed:
    pass


@dataclass(frozen=True, slots=True)
class Fail:
    pass


@dataclass(frozen=True, slots=True)
class Unify:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Dif:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Conj:
    left: "Goal"
    right: "Goal"


@dataclass(frozen=True, slots=True)
class Disj:
    left: "Goal"
    right: "Goal"


@dataclass(frozen=True, slots=True)
class Call:
    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class Closure:
    """A goal missing its last ``missing`` arguments."""

    name: str
    bound_args: tuple
    missing: int = 1


@dataclass(frozen=True, slots=True)
class IfReified:
    cond: Closure
    then: "Goal"
    else_: "Goal"


@dataclass(frozen=True, slots=True)
class TestEq:
    """Inline ``if_(A = B, Then, Else)``; only ever built by ``specialize``."""

    __test__ = False  # not a pytest class

    left: Term
    right: Term
    then: "Goal"
    else_: "Goal"


@dataclass(frozen=True, slots=True)
class Once:
    """Impure commit to the first solution; used by benchmark baselines only."""

    goal: "Goal"


Goal = Union[Succeed, Fail, Unify, Dif, Conj, Disj, Call, IfReified, TestEq, Once]

TRUE_GOAL = Succeed()
FAIL_GOAL = Fail()


def apply_closure(c: Closure, extra) -> Call:
    extra = tuple(extra)
    if len(extra) != c.missing:
        raise TypeError(f"{c.name}/{len(c.bound_args)}+{c.missing} applied to {len(extra)} argument(s)")
    return Call(c.name, tuple(c.bound_args) + extra)


def closure_of(t: Term, missing: int = 1) -> Closure:
    """View a callable term as a closure; raises the ISO error for non-callables."""
    if type(t) is Atom:
        return Closure(t.name, (), missing)
    if type(t) is Compound:
        return Closure(t.functor, t.args, missing)
    if type(t) is Var:
        raise instantiation_error()
    raise type_error("callable", t)


def body_goal(t: Term, extra: tuple = ()) -> Goal:
    """Translate a callable term (plus trailing arguments) to a goal tree.

    Control constructs are recognised by name and *final* arity, so
    ``call(','(A, B), T)`` reaches the reified conjunction ``','/3`` rather
    than ``Conj``.
    """
    if type(t) is Var:
        if extra:
            return Call("call", (t,) + extra)
        return Call("call", (t,))
    c = closure_of(t, max(len(extra), 1))
    name = c.name
    args = tuple(c.bound_args) + extra
    n = len(args)
    if n == 0:
        if name == "true":
            return TRUE_GOAL
        if name == "fail" or name == "false":
            return FAIL_GOAL
        return Call(name, ())
    if n == 2:
        if name == ",":
            return Conj(body_goal(args[0]), body_goal(args[1]))
        if name == ";":
            return Disj(body_goal(args[0]), body_goal(args[1]))
        if name == "=":
            return Unify(args[0], args[1])
        if name == "dif":
            return Dif(args[0], args[1])
    if n == 3 and name == "if_":
        if type(args[0]) is Var:
            return Call("if_", args)  # condition known only at run time
        return IfReified(closure_of(args[0]), body_goal(args[1]), body_goal(args[2]))
    if n == 1 and name == "once":
        return Once(body_goal(args[0]))
    return Call(name, args)


@dataclass(frozen=True)
class Clause:
    head: Term
    body: Goal = TRUE_GOAL
    var_names: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def key(self) -> tuple[str, int]:
        h = self.head
        if type(h) is Atom:
            return (h.name, 0)
        return (h.functor, len(h.args))


def map_goal_terms(g: Goal, fn) -> Goal:
    """Rebuild ``g`` with ``fn`` applied to every term it contains."""
    t = type(g)
    if t is Call:
        return Call(g.name, tuple(fn(a) for a in g.args))
    if t is Conj:
        return Conj(map_goal_terms(g.left, fn), map_goal_terms(g.right, fn))
    if t is Disj:
        return Disj(map_goal_terms(g.left, fn), map_goal_terms(g.right, fn))
    if t is Unify:
        return Unify(fn(g.left), fn(g.right))
    if t is Dif:
        return Dif(fn(g.left), fn(g.right))
    if t is IfReified:
        c = g.cond
        return IfReified(
            Closure(c.name, tuple(fn(a) for a in c.bound_args), c.missing),
            map_goal_terms(g.then, fn),
            map_goal_terms(g.else_, fn),
        )
    if t is TestEq:
        return TestEq(fn(g.left), fn(g.right), map_goal_terms(g.then, fn), map_goal_terms(g.else_, fn))
    if t is Once:
        return Once(map_goal_terms(g.goal, fn))
    return g


def goal_to_term(g: Goal) -> Term:
    """Inverse of ``body_goal`` (``TestEq`` prints as the ``if_`` it came from)."""
    t = type(g)
    if t is Succeed:
        return Atom("true")
    if t is Fail:
        return Atom("fail")
    if t is Call:
        return mk(g.name, *g.args)
    if t is Conj:
        return mk(",", goal_to_term(g.left), goal_to_term(g.right))
    if t is Disj:
        return mk(";", goal_to_term(g.left), goal_to_term(g.right))
    if t is Unify:
        return mk("=", g.left, g.right)
    if t is Dif:
        return mk("dif", g.left, g.right)
    if t is IfReified:
        return mk("if_", mk(g.cond.name, *g.cond.bound_args), goal_to_term(g.then), goal_to_term(g.else_))
    if t is TestEq:
        return mk("if_", mk("=", g.left, g.right), goal_to_term(g.then), goal_to_term(g.else_))
    if t is Once:
        return mk("once", goal_to_term(g.goal))
    raise TypeError(f"not a goal: {g!r}")
