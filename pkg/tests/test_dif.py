import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from reif import Database, run_query
from reif.dif import ConstraintStore, DifOutcome
from reif.goals import Conj, Dif, Succeed, Unify
from reif.terms import Atom, Int, format_term, fresh_var, mk
from reif.unify import Bindings

from oracle import ABC, brute_solutions, engine_solutions, ground

a, b, c = ABC


def fresh_store():
    return ConstraintStore(Bindings())


def test_post_dif_outcomes():
    s = fresh_store()
    X = fresh_var("X")
    assert s.post_dif(a, b) is DifOutcome.ENTAILED
    assert s.post_dif(X, X) is DifOutcome.FAILED
    assert s.live == {}


def test_post_dif_suspends_then_shrinks_then_discharges():
    s = fresh_store()
    X, Y = fresh_var("X"), fresh_var("Y")
    assert s.post_dif(mk("f", X, b), mk("f", a, Y)) is DifOutcome.SUSPENDED
    (d,) = s.live.values()
    assert d.pending == ((X, a), (Y, b))
    assert s.unify(X, a)
    (d,) = s.live.values()
    assert d.pending == ((Y, b),)
    assert s.unify(Y, Atom("c"))
    assert s.live == {} and s.watch == {}


def test_wake_fails_on_violation():
    s = fresh_store()
    X = fresh_var("X")
    s.post_dif(X, Int(1))
    mark = s.bindings.mark()
    assert not s.unify(X, Int(1))
    assert s.bindings.mark() == mark


def test_wake_discharges_on_clash():
    s = fresh_store()
    X = fresh_var("X")
    s.post_dif(X, Int(1))
    assert s.unify(X, Int(2))
    assert s.live == {}


def test_wake_fails_when_all_pairs_hold():
    s = fresh_store()
    X, Y = fresh_var("X"), fresh_var("Y")
    s.post_dif(mk("f", X, b), mk("f", a, Y))
    assert s.unify(X, a)
    assert not s.unify(Y, b)


def test_wake_follows_aliasing_into_the_value():
    # dif(X, f(Z)); Z = W; W = a; X = f(a) must fail
    s = fresh_store()
    X, Z, W = fresh_var("X"), fresh_var("Z"), fresh_var("W")
    s.post_dif(X, mk("f", Z))
    assert s.unify(Z, W)
    assert s.unify(W, a)
    assert not s.unify(X, mk("f", a))


def test_residual_goals():
    s = fresh_store()
    X, Y = fresh_var("X"), fresh_var("Y")
    names = {X.id: "X", Y.id: "Y"}
    assert s.residual_goals([X]) == []
    s.post_dif(X, Int(1))
    assert [format_term(g, names=names) for g in s.residual_goals([X], names)] == ["dif(X, 1)"]

    s2 = fresh_store()
    s2.post_dif(mk("f", X, b), mk("f", a, Y))
    assert [format_term(g, names=names) for g in s2.residual_goals([X, Y], names)] == ["dif(f(X, b), f(a, Y))"]


def test_residual_projection_is_transitive():
    s = fresh_store()
    X, Y, Z = fresh_var("X"), fresh_var("Y"), fresh_var("Z")
    s.post_dif(X, Y)
    s.post_dif(Y, Z)
    s.post_dif(Z, Int(9))
    assert len(s.residual_goals([X])) == 3
    assert s.residual_goals([fresh_var()]) == []


def test_backtracking_restores_store():
    s = fresh_store()
    X, Y = fresh_var("X"), fresh_var("Y")
    s.post_dif(X, Y)
    before = s.snapshot()
    mark = s.bindings.mark()
    s.post_dif(mk("f", X), mk("f", a))
    s.unify(Y, b)
    s.unify(X, c)
    assert s.snapshot() != before
    s.bindings.undo_to(mark)
    assert s.snapshot() == before


# --- grounding oracle ---------------------------------------------------------

NAMES = ("X", "Y", "Z")


@st.composite
def small_terms(draw, depth=0):
    kind = draw(st.integers(0, 4 if depth < 1 else 2))
    if kind <= 1:
        return draw(st.sampled_from(ABC))
    if kind == 2:
        return draw(st.sampled_from(VARS))
    return mk("f", draw(small_terms(depth=depth + 1)), draw(small_terms(depth=depth + 1)))


VARS = [fresh_var(n) for n in NAMES]


@st.composite
def conjunctions(draw):
    n = draw(st.integers(1, 4))
    goals = []
    for _ in range(n):
        kind = draw(st.sampled_from([Unify, Dif, Dif]))
        goals.append(kind(draw(small_terms()), draw(small_terms())))
    return goals


def conj(goals):
    out = Succeed()
    for g in reversed(goals):
        out = Conj(g, out)
    return out


def holds(goals, sigma):
    for g in goals:
        eq = ground(g.left, sigma) == ground(g.right, sigma)
        if eq != (type(g) is Unify):
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(conjunctions())
def test_dif_sound_and_complete_against_grounding(goals):
    variables = dict(zip(NAMES, VARS))
    answers, _ = run_query(Database(), conj(goals), variables=variables, occurs_check=True)
    domains = {n: ABC for n in NAMES}
    assert engine_solutions(answers, domains) == brute_solutions(domains, lambda s: holds(goals, s))


@settings(max_examples=100, deadline=None)
@given(small_terms(), small_terms(), conjunctions())
def test_dif_is_symmetric(s, t, rest):
    variables = dict(zip(NAMES, VARS))
    domains = {n: ABC for n in NAMES}
    left, _ = run_query(Database(), conj([Dif(s, t), *rest]), variables=variables, occurs_check=True)
    right, _ = run_query(Database(), conj([Dif(t, s), *rest]), variables=variables, occurs_check=True)
    assert engine_solutions(left, domains) == engine_solutions(right, domains)


@settings(max_examples=100, deadline=None)
@given(small_terms(), small_terms())
def test_post_dif_never_creates_choicepoints(s, t):
    _, stats = run_query(Database(), Dif(s, t), variables={}, occurs_check=True)
    assert stats.choicepoints_created == 0


def test_oracle_sanity_exhaustive_pairs():
    # every pair of {a,b,c,X} posted as dif, then X enumerated by hand
    X = VARS[0]
    for s, t in itertools.product([a, b, c, X], repeat=2):
        answers, _ = run_query(Database(), Dif(s, t), variables={"X": X})
        got = engine_solutions(answers, {"X": ABC})
        want = {(v,) for v in ABC if ground(s, {"X": v}) != ground(t, {"X": v})}
        assert got == want
