"""Reified equality, the monotonic ``if_/3`` and reified connectives.

The builtins here follow the engine's builtin protocol: they receive the
machine, the call's argument terms and the continuation, and return the new
continuation or ``None`` for failure.
"""

from __future__ import annotations

from .goals import (
    Call,
    Conj,
    Dif,
    Disj,
    Goal,
    IfReified,
    Once,
    TestEq,
    Unify,
    closure_of,
    instantiation_error,
    type_error,
)
from .terms import FALSE, TRUE, Atom, Term, Var, deref
from .unify import CLASH, IDENTICAL, trial_unify


def truth_value(value: Term) -> bool:
    """Branch selector of ``if_/3`` for an already dereferenced truth term."""
    if type(value) is Atom:
        if value.name == "true":
            return True
        if value.name == "false":
            return False
    if type(value) is Var:
        raise instantiation_error()
    raise type_error("boolean", value)


def eq3(m, args, nxt):
    """``=(X, Y, T)``: decide ground-distinguishable cases without a choicepoint."""
    x, y, t = args
    store = m.store
    outcome = trial_unify(x, y, m.b, count=True)
    if outcome is IDENTICAL:
        return nxt if store.unify(t, TRUE) else None
    if outcome is CLASH:
        return nxt if store.unify(t, FALSE) else None
    m.push_alt((Unify(t, FALSE), None, (Dif(x, y), None, nxt)))
    if store.unify(t, TRUE) and store.unify(x, y):
        return nxt
    return None


def and3(m, args, nxt):
    a, b, t = args
    cond = closure_of(deref(a, m.b.map))
    return (IfReified(cond, Call("call", (b, t)), Unify(t, FALSE)), None, nxt)


def or3(m, args, nxt):
    a, b, t = args
    cond = closure_of(deref(a, m.b.map))
    return (IfReified(cond, Unify(t, TRUE), Call("call", (b, t))), None, nxt)


BUILTINS = {
    ("=", 3): eq3,
    (",", 3): and3,
    (";", 3): or3,
}


def specialize(g: Goal) -> Goal:
    """Rewrite ``if_(A = B, Then, Else)`` into an inline ``TestEq``.

    This removes the closure application and the call dispatch of ``(=)/3``;
    answers and their order are unchanged.
    """
    t = type(g)
    if t is IfReified:
        c = g.cond
        then, else_ = specialize(g.then), specialize(g.else_)
        if c.name == "=" and len(c.bound_args) == 2 and c.missing == 1:
            return TestEq(c.bound_args[0], c.bound_args[1], then, else_)
        return IfReified(c, then, else_)
    if t is Conj:
        return Conj(specialize(g.left), specialize(g.right))
    if t is Disj:
        return Disj(specialize(g.left), specialize(g.right))
    if t is TestEq:
        return TestEq(g.left, g.right, specialize(g.then), specialize(g.else_))
    if t is Once:
        return Once(specialize(g.goal))
    return g
