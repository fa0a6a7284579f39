"""Input-driven pushdown automata on finite well-nested words.

:class:`Idpda` is the transition interface every automaton in the package
implements.  :class:`FiniteIdpda` stores explicit tables; constructions that
would be expensive to tabulate (behaviour automata, composed automata)
subclass :class:`Idpda` and compute moves on demand.  The empty-stack marker
is the empty stack tuple: on well-nested input no run ever pops it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable

from .alphabet import CALL, INTERNAL, RETURN, PushdownAlphabet, show
from .errors import DomainError, IncompleteAutomatonError, NotWellNestedError

EMPTY = frozenset()


class Idpda:
    """Moves of an input-driven pushdown automaton.

    Subclasses provide ``alphabet``, ``initial``, ``accepting`` and the three
    ``*_moves`` methods.  Each move method returns a frozenset, empty when the
    transition is undefined.
    """

    alphabet: PushdownAlphabet
    initial: Hashable
    accepting = EMPTY

    def internal_moves(self, q, c) -> frozenset:
        raise NotImplementedError

    def call_moves(self, q, c) -> frozenset:
        raise NotImplementedError

    def return_moves(self, q, s, c) -> frozenset:
        raise NotImplementedError

    @property
    def root(self) -> "Idpda":
        """The automaton whose transitions this one uses (itself unless a view)."""
        return self

    def with_accepting(self, accepting) -> "Idpda":
        return AcceptingView(self.root, frozenset(accepting))

    def materialize(self) -> "FiniteIdpda":
        return materialize(self)


class LazyIdpda(Idpda):
    """Automaton whose moves are computed on demand.

    ``states`` and ``stack`` are the reachable ones; asking for them
    tabulates the automaton once.
    """

    _table = None

    def materialize(self):
        if self._table is None:
            self._table = materialize(self)
        return self._table

    @property
    def states(self) -> frozenset:
        return self.materialize().states

    @property
    def stack(self) -> frozenset:
        return self.materialize().stack

    @property
    def deterministic(self) -> bool:
        return self.materialize().deterministic


@dataclass(frozen=True, eq=False)
class FiniteIdpda(Idpda):
    """Explicit transition tables.

    ``internal`` maps ``(q, c)`` to a set of states, ``push`` maps ``(q, <)``
    to a set of ``(state, stack symbol)`` pairs and ``pop`` maps
    ``(q, s, >)`` to a set of states.
    """

    alphabet: PushdownAlphabet
    states: frozenset
    initial: Hashable
    stack: frozenset
    internal: dict = field(default_factory=dict)
    push: dict = field(default_factory=dict)
    pop: dict = field(default_factory=dict)
    accepting: frozenset = EMPTY

    def __post_init__(self):
        norm = lambda table: {k: frozenset(v) for k, v in table.items() if v}
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "stack", frozenset(self.stack))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "internal", norm(self.internal))
        object.__setattr__(self, "push", norm(self.push))
        object.__setattr__(self, "pop", norm(self.pop))
        self._validate()

    def _validate(self):
        Q, G, sig = self.states, self.stack, self.alphabet
        if self.initial not in Q:
            raise DomainError(f"initial state {self.initial!r} is not declared")
        if not self.accepting <= Q:
            raise DomainError(f"accepting states {set(self.accepting - Q)} are not declared")
        for (q, c), targets in self.internal.items():
            if q not in Q or not targets <= Q:
                raise DomainError(f"internal transition on {q!r} uses an undeclared state")
            if sig.kind(c) != INTERNAL:
                raise DomainError(f"{c!r} is not an internal symbol")
        for (q, c), targets in self.push.items():
            if q not in Q or any(r not in Q for r, _ in targets):
                raise DomainError(f"call transition on {q!r} uses an undeclared state")
            if any(s not in G for _, s in targets):
                raise DomainError(f"call transition on {q!r} pushes an undeclared stack symbol")
            if sig.kind(c) != CALL:
                raise DomainError(f"{c!r} is not a call symbol")
        for (q, s, c), targets in self.pop.items():
            if q not in Q or not targets <= Q:
                raise DomainError(f"return transition on {q!r} uses an undeclared state")
            if s not in G:
                raise DomainError(f"return transition pops undeclared stack symbol {s!r}")
            if sig.kind(c) != RETURN:
                raise DomainError(f"{c!r} is not a return symbol")

    def internal_moves(self, q, c):
        return self.internal.get((q, c), EMPTY)

    def call_moves(self, q, c):
        return self.push.get((q, c), EMPTY)

    def return_moves(self, q, s, c):
        return self.pop.get((q, s, c), EMPTY)

    @property
    def deterministic(self) -> bool:
        tables = (self.internal, self.push, self.pop)
        return all(len(v) <= 1 for t in tables for v in t.values())

    def materialize(self):
        return self

    def with_accepting(self, accepting):
        from dataclasses import replace

        return replace(self, accepting=frozenset(accepting))

    def structurally_equal(self, other) -> bool:
        return (
            isinstance(other, FiniteIdpda)
            and self.alphabet == other.alphabet
            and self.states == other.states
            and self.initial == other.initial
            and self.stack == other.stack
            and self.internal == other.internal
            and self.push == other.push
            and self.pop == other.pop
            and self.accepting == other.accepting
        )


class AcceptingView(LazyIdpda):
    """Same transitions as ``base`` with a different accepting set."""

    def __init__(self, base: Idpda, accepting: frozenset):
        self._base = base
        self.alphabet = base.alphabet
        self.initial = base.initial
        self.accepting = accepting

    @property
    def root(self):
        return self._base

    def internal_moves(self, q, c):
        return self._base.internal_moves(q, c)

    def call_moves(self, q, c):
        return self._base.call_moves(q, c)

    def return_moves(self, q, s, c):
        return self._base.return_moves(q, s, c)

    @property
    def deterministic(self):
        return self._base.deterministic

    def materialize(self):
        return self._base.materialize().with_accepting(self.accepting)


def materialize(aut: Idpda) -> FiniteIdpda:
    """Tabulate the part of ``aut`` reachable on prefixes of well-nested words.

    Reachability is computed level by level: ``levels[e]`` holds the states
    reachable at the same stack height from the level entry ``e``, with
    nested calls summarized by their matching returns.
    """
    sig = aut.alphabet
    calls = sorted(sig.calls)
    rets = sorted(sig.returns)
    ints = sorted(sig.internals)
    levels = {}
    callers = {}  # entry of a callee level -> {(caller level, pushed symbol)}
    internal, push, pop = {}, {}, {}
    tried = set()
    work = deque()

    def add(e, q):
        level = levels.setdefault(e, set())
        if q not in level:
            level.add(q)
            work.append((e, q))

    def returns(e, q, s):
        for c in rets:
            key = (q, s, c)
            if key in tried:
                targets = pop.get(key, EMPTY)
            else:
                tried.add(key)
                targets = aut.return_moves(q, s, c)
                if targets:
                    pop[key] = targets
            for r in targets:
                add(e, r)

    add(aut.initial, aut.initial)
    while work:
        e, q = work.popleft()
        for c in ints:
            targets = internal.get((q, c))
            if targets is None:
                targets = aut.internal_moves(q, c)
                if targets:
                    internal[q, c] = targets
            for r in targets:
                add(e, r)
        for c in calls:
            moves = push.get((q, c))
            if moves is None:
                moves = aut.call_moves(q, c)
                if moves:
                    push[q, c] = moves
            for r, s in moves:
                add(r, r)
                edges = callers.setdefault(r, set())
                if (e, s) not in edges:
                    edges.add((e, s))
                    for inner in list(levels[r]):
                        returns(e, inner, s)
        for caller, s in list(callers.get(e, ())):
            returns(caller, q, s)
    states = set().union(*levels.values())
    stack = {s for edges in callers.values() for _, s in edges}
    accepting = frozenset(q for q in states if q in aut.accepting)
    return FiniteIdpda(sig, frozenset(states), aut.initial, frozenset(stack),
                       internal, push, pop, accepting)


def _require_well_nested(alphabet, w):
    depth = 0
    for i, sym in enumerate(w):
        depth += alphabet.kind(sym, i)
        if depth < 0:
            raise NotWellNestedError(f"unmatched return at position {i} in {show(w)!r}")
    if depth:
        raise NotWellNestedError(f"{depth} unmatched call(s) in {show(w)!r}")


def run_deterministic(aut: Idpda, w, start):
    """Exit state and set of visited states of the unique run from ``start``."""
    w = tuple(w)
    sig = aut.alphabet
    _require_well_nested(sig, w)
    q, stack, visited = start, [], {start}
    for i, sym in enumerate(w):
        kind = sig.kind(sym, i)
        if kind == INTERNAL:
            moves = aut.internal_moves(q, sym)
            if not moves:
                raise IncompleteAutomatonError(q, sym, i)
            (q,) = moves
        elif kind == CALL:
            moves = aut.call_moves(q, sym)
            if not moves:
                raise IncompleteAutomatonError(q, sym, i)
            ((q, s),) = moves
            stack.append(s)
        else:
            s = stack.pop()
            moves = aut.return_moves(q, s, sym)
            if not moves:
                raise IncompleteAutomatonError(q, sym, i, stack_symbol=s)
            (q,) = moves
        visited.add(q)
    return q, frozenset(visited)


def _singleton(q):
    return frozenset((q,))


def explore_runs(aut: Idpda, w, start, mark: Callable = _singleton) -> frozenset:
    """All ``(exit, marks)`` pairs of runs from ``start`` over well-nested ``w``.

    ``marks`` is the union of ``mark(q)`` over the states ``q`` a run passes
    through.  With the default mark it is the exact set of visited states.
    """
    w = tuple(w)
    sig = aut.alphabet
    configs = {(start, (), mark(start))}
    for i, sym in enumerate(w):
        kind = sig.kind(sym, i)
        nxt = set()
        for q, stack, seen in configs:
            if kind == INTERNAL:
                for r in aut.internal_moves(q, sym):
                    nxt.add((r, stack, seen | mark(r)))
            elif kind == CALL:
                for r, s in aut.call_moves(q, sym):
                    nxt.add((r, stack + (s,), seen | mark(r)))
            else:
                if not stack:
                    raise NotWellNestedError(f"unmatched return at position {i} in {show(w)!r}")
                s = stack[-1]
                for r in aut.return_moves(q, s, sym):
                    nxt.add((r, stack[:-1], seen | mark(r)))
        configs = nxt
    if any(stack for _, stack, _ in configs):
        raise NotWellNestedError(f"unmatched call(s) in {show(w)!r}")
    return frozenset((q, seen) for q, _, seen in configs)


def run_nondeterministic(aut: Idpda, w, start) -> frozenset:
    """Every ``(exit, visited)`` pair realized by some run from ``start``."""
    w = tuple(w)
    _require_well_nested(aut.alphabet, w)
    return explore_runs(aut, w, start)


def accepts_finite(aut: Idpda, w) -> bool:
    """Acceptance of a finite well-nested word by final state."""
    return any(q in aut.accepting for q, _ in run_nondeterministic(aut, w, aut.initial))


def make_idpda(alphabet, states, initial, stack=(), internal=(), push=(), pop=(), accepting=()):
    """Build a :class:`FiniteIdpda` from transition triples.

    ``internal`` holds ``(q, c, r)``, ``push`` holds ``(q, <, r, s)`` and
    ``pop`` holds ``(q, >, s, r)``.  Repeated keys give nondeterminism.
    """
    ti, tp, tr = {}, {}, {}
    for q, c, r in internal:
        ti.setdefault((q, c), set()).add(r)
    for q, c, r, s in push:
        tp.setdefault((q, c), set()).add((r, s))
    for q, c, s, r in pop:
        tr.setdefault((q, s, c), set()).add(r)
    return FiniteIdpda(alphabet, frozenset(states), initial, frozenset(stack),
                       ti, tp, tr, frozenset(accepting))
