import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SIG, guess_structure
from oracles import simulate
from wellnested.alphabet import enumerate_well_nested, word
from wellnested.errors import ContractError, IncompleteAutomatonError, NotWellNestedError
from wellnested.generators import STANDARD, random_idpda
from wellnested.idpda import (
    FiniteIdpda,
    accepts_finite,
    make_idpda,
    materialize,
    run_deterministic,
    run_nondeterministic,
)

WN6 = list(enumerate_well_nested(STANDARD, 6))


def test_run_deterministic_examples(mref_struct):
    assert run_deterministic(mref_struct, word("a"), "p") == ("q", {"p", "q"})
    assert run_deterministic(mref_struct, (), "p") == ("p", {"p"})
    assert run_deterministic(mref_struct, word("<a>"), "p") == ("q", {"p", "q"})
    assert run_deterministic(mref_struct, word("<>"), "q") == ("q", {"q"})


def test_run_deterministic_rejects_ill_nested(mref_struct):
    with pytest.raises(NotWellNestedError):
        run_deterministic(mref_struct, word("<a"), "p")


def test_missing_transition_reports_position():
    aut = make_idpda(SIG, "p", "p", "s", internal=[("p", "a", "p")], push=[("p", "<", "p", "s")])
    with pytest.raises(IncompleteAutomatonError) as info:
        run_deterministic(aut, word("a<a>"), "p")
    assert info.value.position == 3


def test_run_nondeterministic_examples(mref_struct):
    assert run_nondeterministic(guess_structure(), word("a"), "p") == {("p", frozenset("p")), ("q", frozenset("pq"))}
    assert run_nondeterministic(guess_structure(), (), "q") == {("q", frozenset("q"))}
    assert run_nondeterministic(mref_struct, word("<a>a"), "p") == {("p", frozenset("pq"))}


def test_deterministic_flag():
    assert not guess_structure().deterministic
    det = make_idpda(SIG, "pq", "p", internal=[("p", "a", "q")])
    assert det.deterministic


def test_transitions_must_reference_declared_names():
    with pytest.raises(Exception):
        make_idpda(SIG, "p", "p", "s", internal=[("p", "a", "zz")])
    with pytest.raises(Exception):
        make_idpda(SIG, "p", "p", "s", push=[("p", "<", "p", "t")])


@pytest.mark.parametrize("seed", range(12))
def test_runs_agree_with_stack_simulation(seed):
    rng = random.Random(seed)
    aut = random_idpda(rng, rng.randint(1, 3), deterministic=seed % 2 == 0)
    for w in WN6:
        for q in aut.states:
            got = {(r, frozenset(s)) for r, s in run_nondeterministic(aut, w, q)}
            assert got == simulate(aut, w, q), (w, q)
            if aut.deterministic and got:
                assert {(run_deterministic(aut, w, q)[0], frozenset(run_deterministic(aut, w, q)[1]))} == got


@given(st.integers(0, 10_000))
def test_visited_contains_entry_and_exit(seed):
    rng = random.Random(seed)
    aut = random_idpda(rng, 3, deterministic=False)
    w = rng.choice(WN6)
    for r, s in run_nondeterministic(aut, w, aut.initial):
        assert aut.initial in s and r in s


def test_accepts_finite():
    aut = make_idpda(SIG, "pq", "p", "s",
                     internal=[("p", "a", "q"), ("q", "a", "p")],
                     push=[("p", "<", "p", "s"), ("q", "<", "q", "s")],
                     pop=[("p", ">", "s", "p"), ("q", ">", "s", "q")],
                     accepting="q")
    assert accepts_finite(aut, word("a<>"))
    assert not accepts_finite(aut, word("aa"))


def test_materialize_lazy_automaton_matches_runs(mref_struct):
    from wellnested.behavior import behavior_automaton
    b, _ = behavior_automaton(mref_struct)
    table = materialize(b)
    assert isinstance(table, FiniteIdpda)
    for w in WN6:
        if all(a in SIG.symbols for a in w):
            assert run_nondeterministic(table, w, table.initial) == run_nondeterministic(b, w, b.initial)


def test_with_accepting_keeps_structure(mref_struct):
    view = mref_struct.with_accepting({"q"})
    assert view.accepting == {"q"}
    assert view.structurally_equal(mref_struct.with_accepting({"q"}))
