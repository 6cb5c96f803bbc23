import pytest

from reif.cli import answer_text
from reif import Database, Engine, PrologError, run_query
from reif.goals import Call, Closure, Conj, Dif, Disj, Unify, apply_closure
from reif.terms import Atom, Int, fresh_var, make_list, mk

from oracle import ABC, brute_solutions, engine_solutions

a, b = Atom("a"), Atom("b")


def test_disjunction_order_and_one_choicepoint():
    X = fresh_var("X")
    answers, stats = run_query(Database(), Disj(Unify(X, a), Unify(X, b)))
    assert [ans.bindings["X"] for ans in answers] == [a, b]
    assert stats.choicepoints_created == 1


def test_unify_then_dif_has_no_answers():
    X = fresh_var("X")
    goal = Conj(Unify(X, a), Dif(X, a))
    answers, _ = run_query(Database(), goal)
    assert answers == []
    domains = {"X": ABC}
    assert engine_solutions(answers, domains) == brute_solutions(domains, lambda s: False)


def test_member_one_of_one_x(ask):
    texts, answers, _ = ask("member(1, [1,X]).")
    assert texts == ["true", "X = 1"]
    assert answers[-1].pending_choicepoints == 0


def test_apply_closure_examples():
    X, E, T, Es = (fresh_var(n) for n in "X E T Es".split())
    assert apply_closure(Closure("=", (X,), 2), [E, T]) == Call("=", (X, E, T))
    assert apply_closure(Closure("memberd_t", (E, Es), 1), [T]) == Call("memberd_t", (E, Es, T))
    assert apply_closure(Closure("dif", (X,), 1), [E]) == Call("dif", (X, E))


def test_apply_closure_arity_mismatch_is_a_type_error():
    with pytest.raises(TypeError):
        apply_closure(Closure("dif", (fresh_var(),), 1), [])
    with pytest.raises(TypeError):
        apply_closure(Closure("=", (), 2), [a])


def test_run_query_examples(ask):
    texts, answers, stats = ask("memberd(1, [1,2,3]).")
    assert texts == ["true"] and answers[0].bindings == {} and answers[0].residuals == []
    assert answers[0].pending_choicepoints == 0

    texts, answers, _ = ask("memberd(1, [1,X]).")
    assert texts == ["true"] and answers[0].pending_choicepoints == 0

    texts, answers, _ = ask("duplicate(X, [1,2,3,2,3,3]).")
    assert texts == ["X = 2", "X = 3"]
    assert answers[-1].pending_choicepoints > 0


def test_max_answers(stdlib):
    answers, _ = run_query(stdlib, "member(X, [a,b,c]).", 2)
    assert [ans.bindings["X"] for ans in answers] == [a, b]
    assert run_query(stdlib, "member(X, [a,b,c]).", 0)[0] == []


def test_unknown_predicate_is_an_existence_error():
    with pytest.raises(PrologError) as e:
        run_query(Database(), "nope(1).")
    assert str(e.value.formal) == str(mk("existence_error", Atom("procedure"), mk("/", Atom("nope"), Int(1))))


def test_call_of_non_callable_is_a_type_error(stdlib):
    with pytest.raises(PrologError) as e:
        run_query(stdlib, "call(1, X).")
    assert e.value.formal.functor == "type_error"
    with pytest.raises(PrologError) as e:
        run_query(stdlib, "call(G).")
    assert e.value.formal == Atom("instantiation_error")


def test_runaway_is_a_resource_error():
    db = Database().consult("loop :- loop.")
    with pytest.raises(PrologError) as e:
        run_query(db, "loop.", max_steps=1000)
    assert e.value.formal == mk("resource_error", Atom("steps"))


def test_clause_order_and_indexing():
    db = Database().consult("p(1, a).\np(2, b).\np(3, c).\n")
    answers, stats = run_query(db, "p(N, X).")
    assert [ans.bindings["X"] for ans in answers] == [a, b, Atom("c")]
    assert stats.choicepoints_created == 1
    answers, stats = run_query(db, "p(N, b).")
    assert [ans.bindings["N"] for ans in answers] == [Int(2)]
    assert answers[0].pending_choicepoints == 0 and stats.choicepoints_created == 0


@pytest.mark.parametrize(
    "query",
    [
        "tfilter(=(X), [1,2,3,2,3,3], Fs).",
        "firstduplicate(X, [A,B,C]).",
        "memberd(X, [A,B,a]), dif(A, b).",
        "treememberd_t(E, t(a, t(b,nil,nil), nil), T).",
        "member(X, [a,B]), memberd_dif(X, [B,c]).",
    ],
)
def test_debug_mode_checks_trail_discipline(stdlib, query):
    plain, s1 = run_query(stdlib, query)
    checked, s2 = run_query(stdlib, query, debug=True)
    assert [answer_text(x) for x in plain] == [answer_text(x) for x in checked]
    assert s1.steps == s2.steps


def test_debug_mode_catches_a_broken_undo(stdlib):
    eng = Engine(stdlib, debug=True)
    X = fresh_var("X")
    gen = eng.answers(Disj(Unify(X, a), Unify(X, b)), {"X": X})
    next(gen)
    eng.b.map[fresh_var().id] = a  # state change that no trail entry accounts for
    with pytest.raises(AssertionError):
        next(gen)


def test_counters_are_deterministic(stdlib):
    q = "tfilter(=(X), [1,2,3,2,3,3], Fs)."
    runs = [run_query(stdlib, q)[1] for _ in range(3)]
    assert len({(s.steps, s.cells_visited, s.choicepoints_created, tuple(s.pending_at_answer)) for s in runs}) == 1


def test_counters_never_decrease(stdlib):
    eng = Engine(stdlib)
    goal, names = __import__("reif").parser.parse_query("duplicate(X, [1,2,3,2,3,3]).")
    last = (0, 0, 0)
    for _ in eng.answers(goal, names):
        now = (eng.stats.steps, eng.b.cells, eng.stats.choicepoints_created)
        assert all(x <= y for x, y in zip(last, now))
        last = now


def test_partial_list_prefix(ask):
    texts, _, _ = ask("memberd(a, [a|T]).")
    assert texts == ["true"]
    texts, _, _ = ask("member(X, [a|T]).", max_answers=2)
    assert texts == ["X = a", "T = [X|_A]"]


def test_occurs_check_flag():
    X = fresh_var("X")
    goal = Unify(X, mk("f", X))
    assert run_query(Database(), goal, occurs_check=True)[0] == []
    eng = Engine(Database())
    assert list(eng.solve(goal)) == [0]  # binds a cyclic term when the check is off


def test_lists_as_arguments():
    X = fresh_var("X")
    db = Database().consult("len([], z).\nlen([_|T], s(N)) :- len(T, N).\n")
    answers, stats = run_query(db, Call("len", (make_list([a, b]), X)))
    assert answers[0].bindings["X"] == mk("s", mk("s", Atom("z")))
    assert stats.choicepoints_created == 0
