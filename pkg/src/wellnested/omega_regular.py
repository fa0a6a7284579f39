"""Finite-state ω-automata over a plain alphabet.

These carry the ω-regular part of a decomposition.  Transitions are either a
table ``(state, letter) -> set of states`` or a function computed on demand
and memoized, which lets determinization explore only what is used.
"""

from __future__ import annotations

from collections import deque
from .acceptance import (
    Buchi,
    ExplicitFamily,
    Muller,
    Rabin,
    RabinFamily,
    StateSet,
    UnionFamily,
)
from .errors import ContractError, UnknownSymbolError
from .graphs import acceptance_cycle

EMPTY = frozenset()


class OmegaAutomaton:
    """Nondeterministic ω-automaton with Büchi, Muller or Rabin acceptance."""

    def __init__(self, alphabet, initial, transitions, acceptance, states=None, deterministic=None):
        self.alphabet = tuple(alphabet)
        self._letters = frozenset(self.alphabet)
        self.initial = frozenset(initial)
        self.acceptance = acceptance
        if callable(transitions):
            self._step = transitions
            self._table = {}
            self._lazy = True
        else:
            self._table = {k: frozenset(v) for k, v in transitions.items() if v}
            self._lazy = False
        self._states = frozenset(states) if states is not None else None
        self._deterministic = deterministic

    def successors(self, p, a) -> frozenset:
        if not self._lazy:
            return self._table.get((p, a), EMPTY)
        key = (p, a)
        out = self._table.get(key)
        if out is None:
            out = self._table[key] = frozenset(self._step(p, a))
        return out

    def step(self, p, a):
        """Successor of a deterministic automaton, or ``None`` if undefined."""
        succ = self.successors(p, a)
        if len(succ) > 1:
            raise ContractError("step() needs a deterministic automaton")
        return next(iter(succ), None)

    @property
    def states(self) -> frozenset:
        if self._states is None:
            self._states = self.reachable_states()
        return self._states

    def reachable_states(self) -> frozenset:
        seen = set(self.initial)
        queue = deque(seen)
        while queue:
            p = queue.popleft()
            for a in self.alphabet:
                for r in self.successors(p, a):
                    if r not in seen:
                        seen.add(r)
                        queue.append(r)
        return frozenset(seen)

    @property
    def deterministic(self) -> bool:
        if self._deterministic is None:
            self._deterministic = len(self.initial) <= 1 and all(
                len(self.successors(p, a)) <= 1 for p in self.states for a in self.alphabet
            )
        return self._deterministic

    def is_complete(self) -> bool:
        return bool(self.initial) and all(
            self.successors(p, a) for p in self.states for a in self.alphabet
        )

    def table(self) -> dict:
        """Transition table restricted to reachable states."""
        return {
            (p, a): self.successors(p, a)
            for p in self.states
            for a in self.alphabet
            if self.successors(p, a)
        }

    def materialize(self) -> "OmegaAutomaton":
        """Explicit copy restricted to reachable states."""
        states = self.states
        return OmegaAutomaton(self.alphabet, self.initial, self.table(),
                              _explicit_acceptance(self.acceptance, states), states=states)

    def with_acceptance(self, acceptance) -> "OmegaAutomaton":
        out = OmegaAutomaton.__new__(OmegaAutomaton)
        out.__dict__.update(self.__dict__)
        out.acceptance = acceptance
        return out

    def __repr__(self):
        kind = type(self.acceptance).__name__
        size = len(self._states) if self._states is not None else "?"
        return f"OmegaAutomaton({kind}, |alphabet|={len(self.alphabet)}, |states|={size})"


def _explicit_acceptance(acc, states):
    if isinstance(acc, Buchi) and isinstance(acc.accepting, StateSet):
        return Buchi(q for q in states if q in acc.accepting)
    if isinstance(acc, Rabin):
        return Rabin(
            (frozenset(q for q in states if q in e), frozenset(q for q in states if q in f))
            for e, f in acc.pairs
        )
    return acc


def _check_word(aut, w, where):
    for i, a in enumerate(w):
        if a not in aut._letters:
            raise UnknownSymbolError(a, f"{where}[{i}]")


def fin_lasso_accepts(aut: OmegaAutomaton, lasso) -> bool:
    """Exact acceptance of ``u v^omega``."""
    u, v = (lasso.prefix, lasso.period) if hasattr(lasso, "prefix") else lasso
    u, v = tuple(u), tuple(v)
    if not v:
        raise ValueError("empty period")
    _check_word(aut, u, "prefix")
    _check_word(aut, v, "period")
    current = set(aut.initial)
    for a in u:
        current = {r for p in current for r in aut.successors(p, a)}
    n = len(v)
    sources = [(p, 0) for p in current]
    graph = {}
    stack = list(sources)
    seen = set(sources)
    while stack:
        p, i = stack.pop()
        label = frozenset((p,))
        edges = []
        for r in aut.successors(p, v[i]):
            w = (r, (i + 1) % n)
            edges.append((label, w))
            if w not in seen:
                seen.add(w)
                stack.append(w)
        graph[p, i] = edges
    return acceptance_cycle(graph, sources, aut.acceptance)


def _counter_advance(j, order, label):
    if j == len(order):
        j = 0
    while j < len(order) and order[j] in label:
        j += 1
    return j


def nma_to_nba(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Language-equivalent Büchi automaton of a Muller automaton.

    The Büchi automaton first copies the Muller automaton, then guesses a
    member ``T`` of the family and a point after which every state's label
    stays inside ``T``; a counter cycling through ``T`` checks that each
    element recurs.  For an explicit family a state's label is the state
    itself; for a :class:`UnionFamily` it is the family's labelling.  A
    Rabin family guesses a pair instead.
    """
    acc = aut.acceptance
    if not isinstance(acc, Muller):
        raise ContractError("nma_to_nba needs Muller acceptance")
    family = acc.family
    letters = aut.alphabet

    if isinstance(family, RabinFamily):
        pairs = family.pairs

        def step(state, a):
            out = set()
            tail = state[0] == "post"
            p = state[1]
            for r in aut.successors(p, a):
                if tail:
                    i = state[2]
                    if r not in pairs[i][0]:
                        out.add(("post", r, i))
                else:
                    out.add(("pre", r))
                    for i, (bad, _) in enumerate(pairs):
                        if r not in bad:
                            out.add(("post", r, i))
            return out

        accepting = StateSet(lambda s: s[0] == "post" and s[1] in pairs[s[2]][1], "rabin good")
    else:
        if isinstance(family, UnionFamily):
            label, targets = family.label, list(family.base)
        else:
            label, targets = (lambda q: frozenset((q,))), list(family)
        targets.sort(key=lambda t: (len(t), sorted(map(repr, t))))
        orders = [tuple(sorted(t, key=repr)) for t in targets]

        def step(state, a):
            out = set()
            p = state[1]
            for r in aut.successors(p, a):
                lab = label(r)
                if state[0] == "post":
                    _, _, k, j = state
                    if lab <= targets[k]:
                        out.add(("post", r, k, _counter_advance(j, orders[k], lab)))
                else:
                    out.add(("pre", r))
                    for k, t in enumerate(targets):
                        if lab <= t:
                            out.add(("post", r, k, _counter_advance(0, orders[k], lab)))
            return out

        accepting = StateSet(lambda s: s[0] == "post" and s[3] == len(orders[s[2]]), "round done")

    lazy = OmegaAutomaton(letters, {("pre", p) for p in aut.initial}, step, Buchi(accepting))
    return lazy.materialize()


def dra_to_dma(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Deterministic Muller automaton with the Rabin pairs read as a family."""
    if not isinstance(aut.acceptance, Rabin):
        raise ContractError("dra_to_dma needs Rabin acceptance")
    if not aut.deterministic:
        raise ContractError("dra_to_dma needs a deterministic automaton")
    return aut.with_acceptance(Muller(RabinFamily(aut.acceptance.pairs)))


def buchi_as_muller(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Same automaton with the Büchi set ``F`` read as the family ``{S : S & F != {}}``."""
    if not isinstance(aut.acceptance, Buchi):
        raise ContractError("Büchi acceptance required")
    f = aut.acceptance.accepting
    return aut.with_acceptance(
        Muller(UnionFamily(lambda q: frozenset((0,)) if q in f else EMPTY, ExplicitFamily([{0}])))
    )


def nondeterministic_letters(aut: OmegaAutomaton) -> list:
    return [(p, a) for p in aut.states for a in aut.alphabet if len(aut.successors(p, a)) > 1]


def make_automaton(alphabet, states, initial, transitions, acceptance, initial_set=None):
    """Table automaton from ``(p, a, r)`` triples.

    ``initial`` is the initial state; pass ``initial_set`` instead for
    several initial states.
    """
    table = {}
    for p, a, r in transitions:
        table.setdefault((p, a), set()).add(r)
    init = frozenset(initial_set) if initial_set is not None else frozenset((initial,))
    return OmegaAutomaton(alphabet, init, table, acceptance, states=states)
