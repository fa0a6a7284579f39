import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SIG, SIG_AB
from oracles import all_words, grammar_elementary, grammar_well_nested
from wellnested.alphabet import (
    LassoWord,
    PushdownAlphabet,
    canonical_lasso,
    depth_profile,
    enumerate_elementary,
    enumerate_lassos,
    enumerate_well_nested,
    factor_elementary,
    is_elementary,
    is_well_nested,
    lasso_well_nested,
    normalize_lasso,
    word,
)
from wellnested.errors import DomainError, NotWellNestedError, UnknownSymbolError

words = st.lists(st.sampled_from(SIG_AB.symbols), max_size=10).map(tuple)
lassos = st.tuples(words, words.filter(bool)).map(lambda t: LassoWord(*t))


def test_alphabet_rejects_overlap():
    with pytest.raises(DomainError):
        PushdownAlphabet("<", ">", "<a")


def test_unknown_symbol_raises():
    with pytest.raises(UnknownSymbolError):
        is_well_nested(SIG, word("<x>"))


@pytest.mark.parametrize("text, expected", [
    ("", True), ("<a>", True), ("<>a", True), (">", False), ("<", False), ("<<>a<>>", True),
])
def test_well_nested_examples(text, expected):
    assert is_well_nested(SIG, word(text)) is expected


def test_well_nested_agrees_with_grammar_up_to_8():
    for w in all_words(SIG, 8):
        assert is_well_nested(SIG, w) == grammar_well_nested(SIG, w), w


@pytest.mark.parametrize("text, expected", [("a", True), ("<a><>", False), ("<<>>", True), ("", False)])
def test_elementary_examples(text, expected):
    assert is_elementary(SIG, word(text)) is expected


def test_elementary_agrees_with_grammar():
    for w in all_words(SIG, 7):
        assert is_elementary(SIG, w) == grammar_elementary(SIG, w), w


@pytest.mark.parametrize("text, factors", [
    ("", []), ("a<b>c", ["a", "<b>", "c"]), ("<a<>><>", ["<a<>>", "<>"]),
])
def test_factor_examples(text, factors):
    sig = PushdownAlphabet("<", ">", "abc")
    assert factor_elementary(sig, word(text)) == [word(f) for f in factors]


def test_factor_rejects_ill_nested():
    with pytest.raises(NotWellNestedError):
        factor_elementary(SIG, word("<a"))


@given(words)
def test_factorization_characterizes_well_nested(w):
    if is_well_nested(SIG_AB, w):
        parts = factor_elementary(SIG_AB, w)
        assert sum(parts, ()) == w
        assert all(is_elementary(SIG_AB, p) for p in parts)
    else:
        with pytest.raises(NotWellNestedError):
            factor_elementary(SIG_AB, w)


@given(words)
def test_depth_profile_steps(w):
    depths = depth_profile(SIG_AB, w)
    assert len(depths) == len(w) + 1 and depths[0] == 0
    for a, (x, y) in zip(w, zip(depths, depths[1:])):
        assert y - x == SIG_AB.kind(a)


@pytest.mark.parametrize("u, v, expected", [("", "<>", True), ("<", "<>", False), ("<", "a><", True)])
def test_lasso_well_nested_examples(u, v, expected):
    assert lasso_well_nested(SIG, LassoWord(u, v)) is expected


def _depth_oracle(sig, lasso):
    """Never below depth 0, and back at depth 0 in the last period of a long horizon.

    A period with positive net depth has no zero after ``|u| + |v| + 1``
    periods, and one with negative net depth goes below zero within
    ``|u| + 1`` periods, so ``|u| + |v| + 3`` periods separate the cases.
    """
    u, v = len(lasso.prefix), len(lasso.period)
    horizon = u + (u + v + 3) * v
    depth, zero_late = 0, False
    for i in range(horizon):
        depth += sig.kind(lasso.symbol_at(i))
        if depth < 0:
            return False
        if i >= horizon - v - 1 and depth == 0:
            zero_late = True
    return zero_late


@given(lassos)
def test_lasso_well_nested_matches_depth_oracle(lasso):
    assert lasso_well_nested(SIG_AB, lasso) == _depth_oracle(SIG_AB, lasso)


@pytest.mark.parametrize("u, v, nu, nv", [("", "<>", "", "<>"), ("<", "a><", "", "<a>"), ("a<", "b><", "a", "<b>")])
def test_normalize_examples(u, v, nu, nv):
    sig = PushdownAlphabet("<", ">", "ab")
    out = normalize_lasso(sig, LassoWord(u, v))
    assert out == LassoWord(nu, nv)
    original = LassoWord(u, v)
    n = 3 * (len(u) + len(v))
    assert out.take(n) == original.take(n)


def test_normalize_rejects_ill_nested():
    with pytest.raises(NotWellNestedError):
        normalize_lasso(SIG, LassoWord("<", "<>"))


@given(lassos)
def test_normalize_denotes_same_word(lasso):
    if not lasso_well_nested(SIG_AB, lasso):
        return
    out = normalize_lasso(SIG_AB, lasso)
    n = len(lasso.prefix) + 3 * len(lasso.period)
    assert out.take(n) == lasso.take(n)
    assert is_well_nested(SIG_AB, out.prefix)
    assert is_well_nested(SIG_AB, out.period) and out.period
    assert len(out.prefix) <= len(lasso.prefix) + len(lasso.period)


@given(lassos)
def test_canonical_lasso_same_word(lasso):
    out = canonical_lasso(SIG_AB, lasso) if lasso_well_nested(SIG_AB, lasso) else None
    if out is not None:
        n = 2 * (len(lasso.prefix) + len(lasso.period))
        assert out.take(n) == lasso.take(n)


def test_enumerate_well_nested_examples():
    assert list(enumerate_well_nested(SIG, 0)) == [()]
    # symbols sort as "<" < ">" < "a"
    assert list(enumerate_well_nested(SIG, 2)) == [(), ("a",), ("<", ">"), ("a", "a")]
    brute = [w for w in all_words(SIG, 6) if is_well_nested(SIG, w)]
    got = list(enumerate_well_nested(SIG, 6))
    assert len(got) == len(set(got)) == len(brute)
    assert set(got) == set(brute)
    rank = {s: i for i, s in enumerate(SIG.symbols)}
    keys = [(len(w), [rank[a] for a in w]) for w in got]
    assert keys == sorted(keys)


def test_enumerate_elementary_matches_filter():
    assert set(enumerate_elementary(SIG, 6)) == {w for w in all_words(SIG, 6) if is_elementary(SIG, w)}


def test_enumerate_lassos_covers_all_ultimately_periodic_words():
    got = enumerate_lassos(SIG, 2, 3)
    assert all(lasso_well_nested(SIG, l) for l in got)
    # every well-nested lasso in range denotes the same word as a listed one
    horizon = 24
    listed = {l.take(horizon) for l in got}
    assert len(listed) == len(got)
    for u in all_words(SIG, 2):
        for v in all_words(SIG, 3):
            if v and lasso_well_nested(SIG, LassoWord(u, v)):
                assert LassoWord(u, v).take(horizon) in listed
