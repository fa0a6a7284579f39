"""Behaviours of an IDPDA on well-nested words.

A :class:`Behavior` maps an entry state to ``(exit state, visited set)`` and
describes a deterministic automaton on one well-nested word.  A
:class:`BehaviorRelation` is the set of ``(entry, visited, exit)`` triples of
a nondeterministic automaton.  Both support composition along concatenation
and wrapping in a call/return pair, which is all that is needed to compute
the behaviour of any well-nested word factor by factor.
"""

from __future__ import annotations

import heapq
from itertools import count

from .alphabet import INTERNAL
from .errors import ContractError, DomainError
from .idpda import EMPTY, Idpda, LazyIdpda, _require_well_nested, explore_runs, run_deterministic


def _states_of(aut: Idpda) -> frozenset:
    return aut.states


class Behavior:
    """A (possibly partial) function ``Q -> Q x 2^Q``.

    States missing from the map are entry states from which the run dies.
    """

    __slots__ = ("_map", "_key", "states")

    def __init__(self, mapping, states):
        self._map = dict(mapping)
        self._key = frozenset(self._map.items())
        self.states = frozenset(states)

    def __call__(self, q):
        return self._map[q]

    def get(self, q):
        return self._map.get(q)

    def items(self):
        return self._map.items()

    def __eq__(self, other):
        return isinstance(other, Behavior) and self._key == other._key and self.states == other.states

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        parts = ", ".join(
            f"{p!r}->({q!r},{{{','.join(sorted(map(repr, s)))}}})"
            for p, (q, s) in sorted(self._map.items(), key=lambda kv: repr(kv[0]))
        )
        return f"Behavior({parts})"

    def as_relation(self) -> "BehaviorRelation":
        return BehaviorRelation(((p, s, q) for p, (q, s) in self._map.items()), self.states)


class BehaviorRelation:
    """A set of ``(entry, visited, exit)`` triples."""

    __slots__ = ("triples", "states", "_by_entry")

    def __init__(self, triples, states):
        self.triples = frozenset(triples)
        self.states = frozenset(states)
        self._by_entry = None

    def by_entry(self):
        if self._by_entry is None:
            index = {}
            for p, s, q in self.triples:
                index.setdefault(p, []).append((s, q))
            self._by_entry = index
        return self._by_entry

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def __contains__(self, triple):
        return triple in self.triples

    def __eq__(self, other):
        return (
            isinstance(other, BehaviorRelation)
            and self.triples == other.triples
            and self.states == other.states
        )

    def __hash__(self):
        return hash(self.triples)

    def __repr__(self):
        body = ", ".join(sorted(
            f"({p!r},{{{','.join(sorted(map(repr, s)))}}},{q!r})" for p, s, q in self.triples
        ))
        return f"BehaviorRelation({body})"


def _check_same(x, y):
    if x.states != y.states:
        raise DomainError("behaviours over different state sets")


# -- deterministic calculus ------------------------------------------------

def identity_behavior(states) -> Behavior:
    return Behavior({q: (q, frozenset((q,))) for q in states}, states)


def internal_behavior(aut: Idpda, c) -> Behavior:
    states = _states_of(aut)
    mapping = {}
    for q in states:
        targets = aut.internal_moves(q, c)
        if len(targets) > 1:
            raise ContractError("behaviour functions need a deterministic automaton")
        for r in targets:
            mapping[q] = (r, frozenset((q, r)))
    return Behavior(mapping, states)


def compose_behavior(f: Behavior, g: Behavior) -> Behavior:
    """Behaviour on ``uv`` from the behaviour ``f`` on ``u`` and ``g`` on ``v``."""
    _check_same(f, g)
    mapping = {}
    gm = g._map
    for p, (q, s) in f._map.items():
        nxt = gm.get(q)
        if nxt is not None:
            r, t = nxt
            mapping[p] = (r, s | t)
    return Behavior(mapping, f.states)


def bracket_behavior(aut: Idpda, f: Behavior, call, ret) -> Behavior:
    """Behaviour on ``call x ret`` given the behaviour ``f`` on ``x``."""
    mapping = {}
    for p in f.states:
        moves = aut.call_moves(p, call)
        if len(moves) > 1:
            raise ContractError("behaviour functions need a deterministic automaton")
        for q, s in moves:
            inner = f.get(q)
            if inner is None:
                continue
            q2, visited = inner
            targets = aut.return_moves(q2, s, ret)
            if len(targets) > 1:
                raise ContractError("behaviour functions need a deterministic automaton")
            for r in targets:
                mapping[p] = (r, visited | {p, r})
    return Behavior(mapping, f.states)


def behavior_of(aut: Idpda, w) -> Behavior:
    """The behaviour of a deterministic automaton on the well-nested word ``w``."""
    states = _states_of(aut)
    return Behavior({q: run_deterministic(aut, w, q) for q in states}, states)


# -- nondeterministic calculus ---------------------------------------------

def identity_relation(states) -> BehaviorRelation:
    return BehaviorRelation(((q, frozenset((q,)), q) for q in states), states)


def internal_relation(aut: Idpda, c) -> BehaviorRelation:
    states = _states_of(aut)
    return BehaviorRelation(
        ((q, frozenset((q, r)), r) for q in states for r in aut.internal_moves(q, c)), states
    )


def compose_relation(r1: BehaviorRelation, r2: BehaviorRelation) -> BehaviorRelation:
    _check_same(r1, r2)
    index = r2.by_entry()
    out = set()
    for p, s, q in r1.triples:
        for t, r in index.get(q, ()):
            out.add((p, s | t, r))
    return BehaviorRelation(out, r1.states)


def bracket_relation(aut: Idpda, rel: BehaviorRelation, call, ret) -> BehaviorRelation:
    index = rel.by_entry()
    out = set()
    for p in rel.states:
        for q, s in aut.call_moves(p, call):
            for visited, q2 in index.get(q, ()):
                for r in aut.return_moves(q2, s, ret):
                    out.add((p, visited | {p, r}, r))
    return BehaviorRelation(out, rel.states)


def relation_of(aut: Idpda, w) -> BehaviorRelation:
    w = tuple(w)
    _require_well_nested(aut.alphabet, w)
    states = _states_of(aut)
    return BehaviorRelation(
        ((p, s, q) for p in states for q, s in explore_runs(aut, w, p)), states
    )


class Calculus:
    """The four operations needed to compute behaviours compositionally."""

    def __init__(self, name, identity, internal, compose, bracket):
        self.name = name
        self.identity = identity
        self.internal = internal
        self.compose = compose
        self.bracket = bracket

    def __repr__(self):
        return f"<{self.name} calculus>"


FUNCTIONS = Calculus("behaviour", identity_behavior, internal_behavior,
                     compose_behavior, bracket_behavior)
RELATIONS = Calculus("relation", identity_relation, internal_relation,
                     compose_relation, bracket_relation)


# -- behaviour automaton ---------------------------------------------------

INITIAL = "q0'"
INSIDE, OUTSIDE = 1, 0


class BehaviorAutomaton(LazyIdpda):
    """Deterministic IDPDA computing the behaviour label of an elementary word.

    States are ``INITIAL``, ``(label, 1)`` while inside brackets (``label`` is
    the behaviour of the well-nested word read since the innermost pending
    call) and ``(label, 0)`` once a whole elementary word has been read.
    States ``(label, 0)`` have no moves.  On the outer level the call symbol
    itself is pushed; inside brackets ``(label, call)`` is pushed.
    """

    def __init__(self, source: Idpda, calculus: Calculus = FUNCTIONS, accepting=EMPTY):
        self.source = source
        self.calculus = calculus
        self.alphabet = source.alphabet
        self.initial = INITIAL
        self.accepting = accepting
        self._states = _states_of(source)
        self._identity = calculus.identity(self._states)
        self._internal = {c: calculus.internal(source, c) for c in sorted(self.alphabet.internals)}
        self._compose_cache = {}
        self._bracket_cache = {}

    def compose(self, x, y):
        key = (x, y)
        out = self._compose_cache.get(key)
        if out is None:
            out = self._compose_cache[key] = self.calculus.compose(x, y)
        return out

    def bracket(self, x, call, ret):
        key = (x, call, ret)
        out = self._bracket_cache.get(key)
        if out is None:
            out = self._bracket_cache[key] = self.calculus.bracket(self.source, x, call, ret)
        return out

    def internal_label(self, c):
        return self._internal[c]

    @property
    def identity(self):
        return self._identity

    def internal_moves(self, q, c):
        if q == INITIAL:
            return frozenset(((self._internal[c], OUTSIDE),))
        label, level = q
        if level == INSIDE:
            return frozenset(((self.compose(label, self._internal[c]), INSIDE),))
        return EMPTY

    def call_moves(self, q, c):
        if q == INITIAL:
            return frozenset((((self._identity, INSIDE), c),))
        label, level = q
        if level == INSIDE:
            return frozenset((((self._identity, INSIDE), (label, c)),))
        return EMPTY

    def return_moves(self, q, s, c):
        if q == INITIAL:
            return EMPTY
        inner, level = q
        if level != INSIDE:
            return EMPTY
        if isinstance(s, tuple):
            outer, call = s
            return frozenset(((self.compose(outer, self.bracket(inner, call, c)), INSIDE),))
        return frozenset(((self.bracket(inner, s, c), OUTSIDE),))

    @property
    def deterministic(self):
        return True

    def with_accepting(self, accepting):
        return _BehaviorView(self, frozenset(accepting))

    def label_after(self, w):
        """Label of the elementary word ``w``, or ``None`` if ``w`` is not elementary."""
        try:
            q, _ = run_deterministic(self, w, INITIAL)
        except Exception:
            return None
        if q == INITIAL or q[1] != OUTSIDE:
            return None
        return q[0]


class _BehaviorView(LazyIdpda):
    def __init__(self, base: BehaviorAutomaton, accepting):
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
        return True

    def materialize(self):
        table = self._base.materialize()
        return table.with_accepting(q for q in table.states if q in self.accepting)


def _require_det(aut):
    if not aut.deterministic:
        raise ContractError("a deterministic automaton is required")


def behavior_automaton(aut: Idpda):
    """Behaviour automaton of a deterministic IDPDA and the map label -> state."""
    _require_det(aut)
    b = BehaviorAutomaton(aut, FUNCTIONS)
    return b, lambda f: (f, OUTSIDE)


def relation_automaton(aut: Idpda):
    b = BehaviorAutomaton(aut, RELATIONS)
    return b, lambda r: (r, OUTSIDE)


def reachable_behaviors(aut: Idpda, calculus: Calculus | None = None, limit: int | None = None):
    """Labels realized by elementary words, each with its shortest witness.

    Returns a dict ``label -> witness``; the witness is the shortest
    realizing word, ties broken lexicographically under the symbol order.
    The search is Knuth's generalization of Dijkstra over the grammar
    ``wn -> eps | wn ewn`` and ``ewn -> c | < wn >``.
    """
    if calculus is None:
        calculus = FUNCTIONS if aut.deterministic else RELATIONS
    sig = aut.alphabet
    rank = {s: i for i, s in enumerate(sig.symbols)}
    states = _states_of(aut)
    pairs = [(c, r) for c in sorted(sig.calls) for r in sorted(sig.returns)]
    compose, bracket = calculus.compose, calculus.bracket

    tick = count()
    heap = []

    def push(kind, label, w):
        heapq.heappush(heap, (len(w), tuple(rank[x] for x in w), next(tick), kind, label, w))

    push("w", calculus.identity(states), ())
    for c in sorted(sig.internals):
        push("e", calculus.internal(aut, c), (c,))

    done_w, done_e = {}, {}
    while heap:
        _, _, _, kind, label, w = heapq.heappop(heap)
        if kind == "e":
            if label in done_e:
                continue
            done_e[label] = w
            if limit is not None and len(done_e) > limit:
                raise ContractError(f"more than {limit} elementary classes")
            for wl, ww in list(done_w.items()):
                nxt = compose(wl, label)
                if nxt not in done_w:
                    push("w", nxt, ww + w)
        else:
            if label in done_w:
                continue
            done_w[label] = w
            for el, ew in list(done_e.items()):
                nxt = compose(label, el)
                if nxt not in done_w:
                    push("w", nxt, w + ew)
            for c, r in pairs:
                nxt = bracket(aut, label, c, r)
                if nxt not in done_e:
                    push("e", nxt, (c,) + w + (r,))
    return done_e


def is_empty_label(label) -> bool:
    """True for the label of a word on which every run dies."""
    if isinstance(label, Behavior):
        return not label._map
    return not label.triples
