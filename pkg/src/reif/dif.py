"""Suspension-based syntactic disequality.

A posted ``dif(A, B)`` is first classified by a trial unification.  Only the
undecided case is stored, as the list of variable/term pairs of the mgu: the
constraint is violated once all of those pairs hold at the same time.  Every
binding of a watched variable triggers a recheck of the pending pairs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .terms import Compound, Term, Var, format_term, term_variables, walk_star
from .unify import Bindings, Clash, Identical, trial_unify, unify


class DifOutcome(enum.Enum):
    ENTAILED = "entailed"
    FAILED = "failed"
    SUSPENDED = "suspended"


@dataclass(frozen=True)
class Disequation:
    id: int
    pending: tuple  # ((Var, Term), ...), never empty
    original: tuple  # the (left, right) pair as posted, kept for display
    watched: frozenset


def _watch_set(pairs, m) -> frozenset:
    ids = set()
    for var, value in pairs:
        ids.add(var.id)
        ids.update(v.id for v in term_variables(value, m))
    return frozenset(ids)


def _pairs_as_terms(pairs) -> tuple[Term, Term]:
    return (
        Compound("f", tuple(v for v, _ in pairs)),
        Compound("f", tuple(t for _, t in pairs)),
    )


class ConstraintStore:
    """Live disequations plus a var-id -> disequation-id watch index.

    Every mutation pushes its inverse onto the bindings trail, so rewinding the
    trail restores the store as well.
    """

    def __init__(self, bindings: Bindings) -> None:
        self.bindings = bindings
        self.live: dict[int, Disequation] = {}
        self.watch: dict[int, set[int]] = {}
        self._ids = itertools.count()

    # -- raw mutations ------------------------------------------------------

    def _link(self, d: Disequation) -> None:
        self.live[d.id] = d
        for vid in d.watched:
            self.watch.setdefault(vid, set()).add(d.id)

    def _unlink(self, d: Disequation) -> None:
        del self.live[d.id]
        for vid in d.watched:
            ids = self.watch[vid]
            ids.discard(d.id)
            if not ids:
                del self.watch[vid]

    def _add(self, d: Disequation) -> None:
        self._link(d)
        self.bindings.push_undo(lambda: self._unlink(d))

    def _remove(self, d: Disequation) -> None:
        self._unlink(d)
        self.bindings.push_undo(lambda: self._link(d))

    # -- operations ---------------------------------------------------------

    def post_dif(self, t1: Term, t2: Term) -> DifOutcome:
        outcome = trial_unify(t1, t2, self.bindings)
        if isinstance(outcome, Clash):
            return DifOutcome.ENTAILED
        if isinstance(outcome, Identical):
            return DifOutcome.FAILED
        d = Disequation(next(self._ids), outcome.pairs, (t1, t2), _watch_set(outcome.pairs, self.bindings.map))
        self._add(d)
        return DifOutcome.SUSPENDED

    def wake(self, bound: list[Var]) -> bool:
        """Recheck every disequation watching one of ``bound``; False on violation."""
        if not self.watch:
            return True
        ids: set[int] = set()
        for v in bound:
            hit = self.watch.get(v.id)
            if hit:
                ids |= hit
        for did in sorted(ids):
            d = self.live.get(did)
            if d is None:
                continue
            lhs, rhs = _pairs_as_terms(d.pending)
            outcome = trial_unify(lhs, rhs, self.bindings)
            if isinstance(outcome, Clash):
                self._remove(d)
            elif isinstance(outcome, Identical):
                return False
            else:
                pairs = outcome.pairs
                watched = _watch_set(pairs, self.bindings.map)
                if pairs != d.pending or watched != d.watched:
                    self._remove(d)
                    self._add(Disequation(d.id, pairs, d.original, watched))
        return True

    def unify(self, t1: Term, t2: Term, count: bool = True) -> bool:
        """Unify and then wake the constraints on every newly bound variable."""
        b = self.bindings
        mark = len(b.trail)
        if not unify(t1, t2, b, count):
            return False
        if self.watch and len(b.trail) > mark:
            if not self.wake(b.bound_since(mark)):
                b.undo_to(mark)
                return False
        return True

    def residual_goals(self, vars: list[Term], names: dict[int, str] | None = None) -> list[Term]:
        """``dif/2`` goals for constraints reachable from ``vars``.

        Reachability is transitive: a constraint sharing a variable with an
        already selected one is selected too.  The result is deduplicated and
        sorted by its printed form.
        """
        m = self.bindings.map
        reach = {v.id for t in vars for v in term_variables(t, m)}
        chosen: dict[int, Disequation] = {}
        changed = True
        while changed:
            changed = False
            for d in self.live.values():
                if d.id in chosen:
                    continue
                dvars = {v.id for v in term_variables(Compound("f", d.original), m)}
                if dvars & reach:
                    chosen[d.id] = d
                    reach |= dvars
                    changed = True
        goals = {}
        for d in sorted(chosen.values(), key=lambda d: d.id):
            left, right = walk_star(d.original[0], m), walk_star(d.original[1], m)
            if type(left) is not Var and type(right) is Var:
                left, right = right, left
            g = Compound("dif", (left, right))
            goals.setdefault(format_term(g, names=names), g)
        return [goals[k] for k in sorted(goals)]

    def snapshot(self) -> tuple:
        return (
            tuple(sorted(self.live.items())),
            tuple(sorted((k, tuple(sorted(v))) for k, v in self.watch.items())),
        )
