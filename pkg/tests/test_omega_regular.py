import random

import pytest

from oracles import omega_automaton_accepts
from wellnested.acceptance import Buchi, Muller, Rabin, powerset
from wellnested.alphabet import LassoWord, PushdownAlphabet, enumerate_lassos
from wellnested.errors import ContractError, UnknownSymbolError
from wellnested.generators import random_omega_automaton
from wellnested.omega_regular import (
    buchi_as_muller,
    dra_to_dma,
    fin_lasso_accepts,
    make_automaton,
    nma_to_nba,
)
from wellnested.safra import safra_determinize


def plain_lassos(letters, max_u, max_v):
    return enumerate_lassos(PushdownAlphabet((), (), letters), max_u, max_v)


AB = plain_lassos("ab", 3, 5)
ABC = plain_lassos("abc", 2, 4)


def inf_b():
    """Nondeterministic Büchi automaton for 'infinitely many b'."""
    return make_automaton("ab", "pq", "p",
                          [("p", "a", "p"), ("p", "b", "p"), ("p", "b", "q"), ("q", "a", "p"), ("q", "b", "q"), ("q", "b", "p")],
                          Buchi({"q"}))


def L(u, v):
    return LassoWord(tuple(u), tuple(v))


def test_universal_buchi():
    aut = make_automaton("ab", "p", "p", [("p", "a", "p"), ("p", "b", "p")], Buchi({"p"}))
    assert all(fin_lasso_accepts(aut, l) for l in AB)


def test_infinitely_many_b():
    assert fin_lasso_accepts(inf_b(), L("", "ab"))
    assert not fin_lasso_accepts(inf_b(), L("b", "a"))


def test_one_state_muller():
    aut = make_automaton("ab", "p", "p", [("p", "a", "p"), ("p", "b", "p")], Muller([{"p"}]))
    assert all(fin_lasso_accepts(aut, l) for l in AB)


def test_unknown_letter():
    with pytest.raises(UnknownSymbolError):
        fin_lasso_accepts(inf_b(), L("", "c"))


def test_empty_family_gives_empty_nba():
    aut = make_automaton("ab", "p", "p", [("p", "a", "p"), ("p", "b", "p")], Muller([]))
    nba = nma_to_nba(aut)
    assert isinstance(nba.acceptance, Buchi)
    assert not any(fin_lasso_accepts(nba, l) for l in AB)


def test_one_state_muller_to_nba_is_universal():
    aut = make_automaton("ab", "p", "p", [("p", "a", "p"), ("p", "b", "p")], Muller([{"p"}]))
    assert all(fin_lasso_accepts(nma_to_nba(aut), l) for l in AB)


def test_safra_on_infinitely_many_b():
    det = safra_determinize(inf_b())
    assert det.deterministic and det.is_complete()
    for l in AB[:10]:
        assert fin_lasso_accepts(det, l) == omega_automaton_accepts(inf_b(), l)


def test_safra_of_empty_language():
    aut = make_automaton("ab", "pq", "p", [("p", "a", "q"), ("q", "b", "p")], Buchi(()))
    det = safra_determinize(aut)
    assert not any(fin_lasso_accepts(det, l) for l in AB)


def test_contract_errors():
    with pytest.raises(ContractError):
        safra_determinize(make_automaton("a", "p", "p", [], Muller([])))
    with pytest.raises(ContractError):
        dra_to_dma(inf_b())
    with pytest.raises(ContractError):
        dra_to_dma(inf_b().with_acceptance(Rabin([(set(), {"p"})])))


def test_dra_to_dma_families():
    base = make_automaton("a", "pq", "p", [("p", "a", "q"), ("q", "a", "p")], Rabin([]))
    assert not dra_to_dma(base).acceptance.holds(frozenset("pq"))
    full = dra_to_dma(base.with_acceptance(Rabin([(set(), {"p", "q"})])))
    assert all(full.acceptance.holds(s) for s in powerset("pq") if s)


def random_dra(rng, n, letters):
    states = [f"r{i}" for i in range(n)]
    trans = [(p, a, rng.choice(states)) for p in states for a in letters]
    pairs = [
        ({q for q in states if rng.random() < 0.3}, {q for q in states if rng.random() < 0.4})
        for _ in range(rng.randint(1, 2))
    ]
    return make_automaton(letters, states, states[0], trans, Rabin(pairs))


CASES = [(seed, letters) for seed in range(12) for letters in ("ab", "abc")]


@pytest.mark.parametrize("seed, letters", CASES)
def test_nma_to_nba_preserves_language(seed, letters):
    rng = random.Random(seed)
    aut = random_omega_automaton(rng, rng.randint(1, 4), letters, kind="muller")
    nba = nma_to_nba(aut)
    for l in AB if letters == "ab" else ABC:
        assert fin_lasso_accepts(nba, l) == omega_automaton_accepts(aut, l), l
        assert fin_lasso_accepts(aut, l) == omega_automaton_accepts(aut, l), l


@pytest.mark.parametrize("seed, letters", CASES)
def test_safra_preserves_language(seed, letters):
    rng = random.Random(1000 + seed)
    aut = random_omega_automaton(rng, rng.randint(1, 4), letters, kind="buchi")
    det = safra_determinize(aut)
    dma = dra_to_dma(det)
    assert det.deterministic
    for l in AB if letters == "ab" else ABC:
        expected = omega_automaton_accepts(aut, l)
        assert fin_lasso_accepts(det, l) == expected, l
        assert fin_lasso_accepts(dma, l) == expected, l


@pytest.mark.parametrize("seed", range(10))
def test_dra_to_dma_preserves_language(seed):
    rng = random.Random(2000 + seed)
    dra = random_dra(rng, 3, "ab")
    dma = dra_to_dma(dra)
    for l in AB:
        assert fin_lasso_accepts(dma, l) == omega_automaton_accepts(dra, l), l


@pytest.mark.parametrize("seed", range(6))
def test_buchi_as_muller(seed):
    rng = random.Random(3000 + seed)
    aut = random_omega_automaton(rng, 3, "ab", kind="buchi")
    lifted = buchi_as_muller(aut)
    for l in AB:
        assert fin_lasso_accepts(lifted, l) == fin_lasso_accepts(aut, l)


@pytest.mark.parametrize("seed", range(6))
def test_rotation_and_pumping(seed):
    rng = random.Random(4000 + seed)
    aut = random_omega_automaton(rng, 3, "ab", kind="muller")
    for l in AB[:80]:
        base = fin_lasso_accepts(aut, l)
        u, v = l.prefix, l.period
        assert fin_lasso_accepts(aut, LassoWord(u + v, v)) == base
        assert fin_lasso_accepts(aut, LassoWord(u, v + v)) == base
        assert fin_lasso_accepts(aut, LassoWord(u + v[:1], v[1:] + v[:1])) == base
