"""Acceptance conditions for ω-automata, with and without a stack.

Accepting sets and Muller families only need to answer membership, so
constructions whose families are exponentially large keep them symbolic:
:class:`RabinFamily` and :class:`UnionFamily` describe Muller families
without listing their members.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Callable, Iterable


class StateSet:
    """A set of states given by a membership predicate."""

    def __init__(self, predicate: Callable, name: str = "states"):
        self._predicate = predicate
        self.name = name

    def __contains__(self, q):
        return bool(self._predicate(q))

    def __repr__(self):
        return f"StateSet({self.name})"


class ExplicitFamily:
    """A Muller family listed member by member."""

    def __init__(self, sets: Iterable = ()):
        self.sets = frozenset(frozenset(s) for s in sets)

    def __contains__(self, s):
        return frozenset(s) in self.sets

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __eq__(self, other):
        return isinstance(other, ExplicitFamily) and self.sets == other.sets

    def __hash__(self):
        return hash(self.sets)

    def __repr__(self):
        return f"ExplicitFamily({sorted(sorted(map(repr, s)) for s in self.sets)})"

    def label(self, q):
        return frozenset((q,))

    @property
    def base(self):
        return self


class UnionFamily:
    """Sets whose union of labels ``label(q)`` is a member of ``base``.

    With the singleton labelling this is ``base`` itself; with
    ``label = lambda q: {1} if q in F else set()`` and ``base = {{1}}`` it is
    the Büchi family of ``F``.
    """

    def __init__(self, label: Callable, base: ExplicitFamily):
        self.label = label
        self.base = base if isinstance(base, ExplicitFamily) else ExplicitFamily(base)

    def image(self, states) -> frozenset:
        out = set()
        for q in states:
            out |= self.label(q)
        return frozenset(out)

    def __contains__(self, s):
        return self.image(s) in self.base

    def __repr__(self):
        return f"UnionFamily({self.base!r})"


class RabinFamily:
    """The sets ``S`` with ``S & E == {}`` and ``S & F != {}`` for some pair."""

    def __init__(self, pairs):
        self.pairs = tuple(pairs)

    def __contains__(self, s):
        return any(
            not any(q in e for q in s) and any(q in f for q in s) for e, f in self.pairs
        )

    def __repr__(self):
        return f"RabinFamily({len(self.pairs)} pairs)"


def as_family(family):
    if isinstance(family, (ExplicitFamily, UnionFamily, RabinFamily)):
        return family
    return ExplicitFamily(family)


@dataclass(frozen=True)
class Buchi:
    accepting: object

    def __init__(self, accepting=()):
        if not isinstance(accepting, StateSet):
            accepting = frozenset(accepting)
        object.__setattr__(self, "accepting", accepting)

    def holds(self, inf) -> bool:
        return any(q in self.accepting for q in inf)


@dataclass(frozen=True)
class Muller:
    family: object

    def __init__(self, family=()):
        object.__setattr__(self, "family", as_family(family))

    def holds(self, inf) -> bool:
        return frozenset(inf) in self.family


@dataclass(frozen=True)
class Rabin:
    pairs: tuple

    def __init__(self, pairs=()):
        norm = []
        for e, f in pairs:
            e = e if isinstance(e, StateSet) else frozenset(e)
            f = f if isinstance(f, StateSet) else frozenset(f)
            norm.append((e, f))
        object.__setattr__(self, "pairs", tuple(norm))

    def holds(self, inf) -> bool:
        return frozenset(inf) in RabinFamily(self.pairs)


def powerset(items) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def buchi_family(states, accepting) -> ExplicitFamily:
    """The Muller family ``{S : S & F != {}}`` over ``states`` listed explicitly."""
    return ExplicitFamily(s for s in powerset(sorted(states, key=repr)) if any(q in accepting for q in s))
