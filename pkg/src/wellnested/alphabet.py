"""Pushdown alphabets, well-nested words and lasso words.

Finite words are plain tuples of symbols.  An infinite word is only ever
represented as a :class:`LassoWord` ``(u, v)`` standing for ``u v v v ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from .errors import DomainError, NotWellNestedError, UnknownSymbolError

CALL, INTERNAL, RETURN = 1, 0, -1


@dataclass(frozen=True)
class PushdownAlphabet:
    calls: frozenset
    returns: frozenset
    internals: frozenset

    def __init__(self, calls=(), returns=(), internals=()):
        object.__setattr__(self, "calls", frozenset(calls))
        object.__setattr__(self, "returns", frozenset(returns))
        object.__setattr__(self, "internals", frozenset(internals))
        overlap = (
            (self.calls & self.returns)
            | (self.calls & self.internals)
            | (self.returns & self.internals)
        )
        if overlap:
            raise DomainError(f"symbols in more than one class: {sorted(overlap)}")

    @property
    def symbols(self) -> tuple:
        """All symbols in the canonical total order."""
        return tuple(sorted(self.calls | self.returns | self.internals))

    def kind(self, symbol, where=None) -> int:
        """Depth change caused by ``symbol``: +1 call, -1 return, 0 internal."""
        if symbol in self.calls:
            return CALL
        if symbol in self.returns:
            return RETURN
        if symbol in self.internals:
            return INTERNAL
        raise UnknownSymbolError(symbol, where)

    def __contains__(self, symbol):
        return symbol in self.calls or symbol in self.returns or symbol in self.internals

    def check(self, word) -> tuple:
        word = tuple(word)
        for i, sym in enumerate(word):
            self.kind(sym, i)
        return word

    def __repr__(self):
        return (
            f"PushdownAlphabet(calls={sorted(self.calls)}, "
            f"returns={sorted(self.returns)}, internals={sorted(self.internals)})"
        )


def word(text: str) -> tuple:
    """Split a compact word such as ``"a<b>"`` into single-character symbols.

    Whitespace is ignored, so ``"< a >"`` denotes the same word.
    """
    return tuple(ch for ch in text if not ch.isspace())


def show(w) -> str:
    return "".join(str(s) for s in w)


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``prefix . period^omega``."""

    prefix: tuple
    period: tuple

    def __init__(self, prefix=(), period=()):
        if isinstance(prefix, str):
            prefix = word(prefix)
        if isinstance(period, str):
            period = word(period)
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "period", tuple(period))
        if not self.period:
            raise ValueError("the period of a lasso word must be nonempty")

    def symbol_at(self, i: int):
        u, v = self.prefix, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def take(self, n: int) -> tuple:
        return tuple(self.symbol_at(i) for i in range(n))

    def __str__(self):
        return f"{show(self.prefix)} $ {show(self.period)}".strip()


def depth_profile(alphabet: PushdownAlphabet, w) -> list[int]:
    """Depths after each prefix; entry ``i`` is the depth after ``w[:i]``."""
    depths = [0]
    for i, sym in enumerate(w):
        depths.append(depths[-1] + alphabet.kind(sym, i))
    return depths


def is_well_nested(alphabet: PushdownAlphabet, w) -> bool:
    depth = 0
    for i, sym in enumerate(w):
        depth += alphabet.kind(sym, i)
        if depth < 0:
            return False
    return depth == 0


def is_elementary(alphabet: PushdownAlphabet, w) -> bool:
    w = tuple(w)
    if len(w) == 1:
        return alphabet.kind(w[0], 0) == INTERNAL
    if len(w) < 2 or alphabet.kind(w[0], 0) != CALL:
        return False
    depths = depth_profile(alphabet, w)
    return depths[-1] == 0 and all(d > 0 for d in depths[1:-1])


def factor_elementary(alphabet: PushdownAlphabet, w) -> list[tuple]:
    """Cut a well-nested word at every return to depth 0."""
    w = tuple(w)
    factors = []
    depth, start = 0, 0
    for i, sym in enumerate(w):
        depth += alphabet.kind(sym, i)
        if depth < 0:
            raise NotWellNestedError(f"unmatched return at position {i} in {show(w)!r}")
        if depth == 0:
            factors.append(w[start : i + 1])
            start = i + 1
    if depth != 0:
        raise NotWellNestedError(f"{depth} unmatched call(s) in {show(w)!r}")
    return factors


def lasso_well_nested(alphabet: PushdownAlphabet, lasso: LassoWord) -> bool:
    u, v = lasso.prefix, lasso.period
    alphabet.check(u)
    alphabet.check(v)
    depth = 0
    for sym in u:
        depth += alphabet.kind(sym)
        if depth < 0:
            return False
    base = depth
    net = sum(alphabet.kind(sym) for sym in v)
    if net != 0:
        return False
    touches_zero = False
    for sym in v:
        depth += alphabet.kind(sym)
        if depth < 0:
            return False
        touches_zero = touches_zero or depth == 0
    # with net depth 0 every period repeats the profile of the first one
    return touches_zero


def _periodic_start(u: tuple, v: tuple) -> tuple[tuple, tuple]:
    """Shortest prefix after which the word is periodic with period ``|v|``."""
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = v[-1:] + v[:-1]
    return u, v


def normalize_lasso(alphabet: PushdownAlphabet, lasso: LassoWord) -> LassoWord:
    """Equivalent lasso whose prefix is well-nested and whose period starts at depth 0."""
    if not lasso_well_nested(alphabet, lasso):
        raise NotWellNestedError(f"lasso {lasso} is not well-nested")
    u, v = _periodic_start(lasso.prefix, lasso.period)
    depth = sum(alphabet.kind(s) for s in u)
    i = 0
    # u.v reaches depth 0 by well-nestedness
    while depth != 0:
        depth += alphabet.kind(v[i])
        i += 1
    shift = i % len(v)
    prefix = u + v[:i]
    period = v[shift:] + v[:shift]
    return LassoWord(prefix, period)


def primitive_root(v: tuple) -> tuple:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def canonical_lasso(alphabet: PushdownAlphabet, lasso: LassoWord) -> LassoWord:
    """Normal form identifying every lasso that denotes the same infinite word."""
    root = primitive_root(lasso.period)
    return normalize_lasso(alphabet, LassoWord(lasso.prefix, root))


def enumerate_words(alphabet: PushdownAlphabet, max_len: int) -> Iterator[tuple]:
    """Every word over the alphabet of length at most ``max_len``, length-lexicographically."""
    symbols = alphabet.symbols
    for n in range(max_len + 1):
        yield from product(symbols, repeat=n)


def enumerate_well_nested(alphabet: PushdownAlphabet, max_len: int) -> Iterator[tuple]:
    symbols = alphabet.symbols
    kinds = [alphabet.kind(s) for s in symbols]

    def extend(prefix, depth, remaining):
        if remaining == 0:
            if depth == 0:
                yield tuple(prefix)
            return
        for sym, k in zip(symbols, kinds):
            d = depth + k
            if d < 0 or d > remaining - 1:
                continue
            prefix.append(sym)
            yield from extend(prefix, d, remaining - 1)
            prefix.pop()

    for n in range(max_len + 1):
        yield from extend([], 0, n)


def enumerate_elementary(alphabet: PushdownAlphabet, max_len: int) -> Iterator[tuple]:
    for w in enumerate_well_nested(alphabet, max_len):
        if is_elementary(alphabet, w):
            yield w


@lru_cache(maxsize=32)
def _lasso_table(alphabet: PushdownAlphabet, max_u: int, max_v: int) -> tuple:
    seen = set()
    out = []
    for u in enumerate_words(alphabet, max_u):
        for v in enumerate_words(alphabet, max_v):
            if not v:
                continue
            lasso = LassoWord(u, v)
            if not lasso_well_nested(alphabet, lasso):
                continue
            key = canonical_lasso(alphabet, lasso)
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
    return tuple(out)


def enumerate_lassos(alphabet: PushdownAlphabet, max_u: int, max_v: int) -> tuple:
    """Well-nested lassos with ``|u| <= max_u`` and ``1 <= |v| <= max_v``.

    Lassos denoting the same infinite word are reported once, in canonical
    form, at the position of their first occurrence in length-lexicographic
    order of ``(u, v)``.
    """
    return _lasso_table(alphabet, max_u, max_v)


def as_lasso(lasso) -> LassoWord:
    if isinstance(lasso, LassoWord):
        return lasso
    u, v = lasso
    return LassoWord(u, v)


def concat(words: Iterable[tuple]) -> tuple:
    out = ()
    for w in words:
        out += tuple(w)
    return out
