import os
import random

import pytest

from conftest import FIXTURES, SIG, guess_buchi, m_ref
from wellnested.alphabet import LassoWord, enumerate_lassos
from wellnested.characterization import Decomposition, decompose_det
from wellnested.errors import ParseError
from wellnested.generators import random_buchi_idpda, random_muller_idpda, random_omega_automaton
from wellnested.idpda import FiniteIdpda
from wellnested.io import (
    format_lasso,
    load,
    parse_automaton,
    parse_lasso,
    parse_omega,
    parse_word,
    serialize_automaton,
    serialize_decomposition,
    serialize_omega,
)
from wellnested.omega_idpda import OmegaIdpda, lasso_accepts
from wellnested.omega_regular import fin_lasso_accepts
from wellnested.pipeline import bounded_equivalence

AUT_FIXTURES = sorted(f for f in os.listdir(FIXTURES) if f.endswith(".aut"))
LASSOS = enumerate_lassos(SIG, 3, 4)


def read(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("name", AUT_FIXTURES)
def test_fixture_serialization_is_canonical(name):
    text = read(name)
    assert serialize_automaton(parse_automaton(text)) == text


def test_reference_round_trip():
    text = serialize_automaton(m_ref())
    back = parse_automaton(text)
    assert isinstance(back, OmegaIdpda)
    assert back.structure.structurally_equal(m_ref().structure)
    assert back.acceptance.holds(frozenset("pq")) and not back.acceptance.holds(frozenset("p"))


@pytest.mark.parametrize("seed", range(10))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    aut = (random_muller_idpda if seed % 2 else random_buchi_idpda)(rng, 3, alphabet=SIG)
    text = serialize_automaton(aut)
    back = parse_automaton(text)
    assert serialize_automaton(back) == text
    for l in LASSOS:
        assert lasso_accepts(back, l) == lasso_accepts(aut, l)


@pytest.mark.parametrize("seed", range(6))
def test_omega_round_trip(seed):
    rng = random.Random(seed)
    aut = random_omega_automaton(rng, 3, ["a1", "a2"], kind="muller" if seed % 2 else "buchi")
    text = serialize_omega(aut)
    back = parse_omega(text)
    assert serialize_omega(back) == text
    for l in enumerate_lassos(SIG.__class__((), (), ("a1", "a2")), 2, 3):
        assert fin_lasso_accepts(back, l) == fin_lasso_accepts(aut, l)


def test_composite_fixtures_keep_language():
    det = load(os.path.join(FIXTURES, "m_ref_det.aut"))
    assert det.deterministic
    assert bounded_equivalence(m_ref(), det, 3, 4)
    buchi = load(os.path.join(FIXTURES, "m_ref_buchi.aut"))
    assert buchi.is_buchi and bounded_equivalence(m_ref(), buchi, 3, 4)
    assert bounded_equivalence(guess_buchi(), load(os.path.join(FIXTURES, "guess_det.aut")), 3, 4)


def test_decomposition_round_trip():
    dec = decompose_det(m_ref())
    text = serialize_decomposition(dec)
    back = parse_automaton(text)
    assert isinstance(back, Decomposition)
    assert back.letters == dec.letters
    assert [c.witness for c in back.classes] == [c.witness for c in dec.classes]
    assert serialize_decomposition(back) == text


def test_explicit_tables_for_small_outputs():
    from wellnested.pipeline import to_nondet_buchi
    aut = to_nondet_buchi(guess_buchi())
    text = serialize_automaton(aut, explicit=True)
    back = parse_automaton(text)
    assert isinstance(back.structure, FiniteIdpda)
    for l in LASSOS:
        assert lasso_accepts(back, l) == lasso_accepts(guess_buchi(), l)


@pytest.mark.parametrize("edit, message", [
    (("internal: a", "internal: a <"), "more than one class"),
    (("stack: s\n", ""), "not declared"),
    (("  q a -> p", "  q a -> p\n  q a -> q"), "duplicate transition"),
    (("q a -> p", "q a -> zz"), "unknown state"),
    (("q a -> p", "q a p"), "'->'"),
])
def test_validation_errors(edit, message):
    text = read("m_ref.aut").replace(*edit)
    with pytest.raises(ParseError, match=message) as info:
        parse_automaton(text)
    assert info.value.line is not None


def test_lasso_syntax():
    sig = SIG
    assert parse_lasso("a<a> $ <a>", sig) == LassoWord(tuple("a<a>"), tuple("<a>"))
    assert parse_lasso("$ a", sig) == LassoWord((), ("a",))
    assert parse_word("< a >", sig) == tuple("<a>")
    # compact with single-character symbols, spaced tokens otherwise
    assert format_lasso(LassoWord(tuple("a<"), tuple("a>")), sig) == "a< $ a>"
    assert format_lasso(LassoWord(("a1",), ("a2", "a1"))) == "a1 $ a2 a1"
    for bad in ("a", "a $ ", "$ a $ a"):
        with pytest.raises(ParseError):
            parse_lasso(bad, sig)
