"""Trailed unification and the non-destructive three-way trial."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .terms import Compound, Term, Var, deref

# Functor/arity pairs whose destructuring counts as visiting a list or tree cell.
CELL_FUNCTORS = frozenset({(".", 2), ("t", 3)})


class Bindings:
    """Substitution plus trail.

    Trail entries are either a bound ``Var`` (undo = forget its binding) or a
    zero-argument callable restoring some other piece of state, e.g. the dif
    store.
    """

    __slots__ = ("map", "trail", "occurs_check", "cells")

    def __init__(self, occurs_check: bool = False) -> None:
        self.map: dict[int, Term] = {}
        self.trail: list[Union[Var, Callable[[], None]]] = []
        self.occurs_check = occurs_check
        self.cells = 0

    def mark(self) -> int:
        return len(self.trail)

    def bind(self, var: Var, value: Term) -> None:
        self.map[var.id] = value
        self.trail.append(var)

    def push_undo(self, undo: Callable[[], None]) -> None:
        self.trail.append(undo)

    def undo_to(self, mark: int) -> None:
        trail = self.trail
        m = self.map
        while len(trail) > mark:
            entry = trail.pop()
            if type(entry) is Var:
                del m[entry.id]
            else:
                entry()

    def bound_since(self, mark: int) -> list[Var]:
        return [e for e in self.trail[mark:] if type(e) is Var]


def occurs(var: Var, t: Term, m: dict) -> bool:
    stack = [t]
    while stack:
        x = deref(stack.pop(), m)
        if type(x) is Var:
            if x.id == var.id:
                return True
        elif type(x) is Compound:
            stack.extend(x.args)
    return False


def unify(t1: Term, t2: Term, b: Bindings, count: bool = True) -> bool:
    """Extend ``b`` with an mgu of ``t1`` and ``t2``.

    On failure every binding made along the way is undone before returning.
    With ``count`` set, each list/tree cell matched structurally bumps
    ``b.cells``.  Variable-variable pairs bind the younger variable to the older.
    """
    m = b.map
    mark = len(b.trail)
    stack = [(t1, t2)]
    while stack:
        x, y = stack.pop()
        while type(x) is Var:
            nxt = m.get(x.id)
            if nxt is None:
                break
            x = nxt
        while type(y) is Var:
            nxt = m.get(y.id)
            if nxt is None:
                break
            y = nxt
        if x is y:
            continue
        tx = type(x)
        ty = type(y)
        if tx is Var:
            if ty is Var:
                if x.id == y.id:
                    continue
                if x.id < y.id:
                    x, y = y, x
            elif b.occurs_check and occurs(x, y, m):
                b.undo_to(mark)
                return False
            m[x.id] = y
            b.trail.append(x)
            continue
        if ty is Var:
            if b.occurs_check and tx is Compound and occurs(y, x, m):
                b.undo_to(mark)
                return False
            m[y.id] = x
            b.trail.append(y)
            continue
        if tx is Compound and ty is Compound:
            xa = x.args
            ya = y.args
            if x.functor != y.functor or len(xa) != len(ya):
                b.undo_to(mark)
                return False
            if count and (x.functor, len(xa)) in CELL_FUNCTORS:
                b.cells += 1
            for i in range(len(xa) - 1, -1, -1):
                stack.append((xa[i], ya[i]))
            continue
        if x != y:
            b.undo_to(mark)
            return False
    return True


@dataclass(frozen=True)
class Identical:
    pass


@dataclass(frozen=True)
class Clash:
    pass


@dataclass(frozen=True)
class UnifiesWith:
    pairs: tuple  # of (Var, Term), in discovery order


TrialOutcome = Union[Identical, Clash, UnifiesWith]

IDENTICAL = Identical()
CLASH = Clash()


def trial_unify(t1: Term, t2: Term, b: Bindings, count: bool = False) -> TrialOutcome:
    """Classify ``t1``/``t2`` without leaving any trace in ``b``."""
    m = b.map
    while type(t1) is Var:
        nxt = m.get(t1.id)
        if nxt is None:
            break
        t1 = nxt
    while type(t2) is Var:
        nxt = m.get(t2.id)
        if nxt is None:
            break
        t2 = nxt
    if type(t1) is not Var and type(t1) is not Compound and type(t2) is not Var and type(t2) is not Compound:
        return IDENTICAL if t1 == t2 else CLASH
    mark = len(b.trail)
    if not unify(t1, t2, b, count):
        return CLASH
    if len(b.trail) == mark:
        return IDENTICAL
    pairs = tuple((v, b.map[v.id]) for v in b.trail[mark:])
    b.undo_to(mark)
    return UnifiesWith(pairs)
