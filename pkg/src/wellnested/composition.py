"""Building an ω-IDPDA from behaviour classes and a finite-alphabet ω-automaton.

The composed automaton runs the ω-automaton on the outer level of brackets.
Inside a bracket it runs all class recognizers side by side; at the closing
bracket it asks which recognizer accepts the elementary factor just read
and feeds that class's letter to the ω-automaton.

States are tagged: ``("P", p)`` for an ω-automaton state, ``("T", qs)`` for
the tuple of recognizer states inside brackets, and ``DEAD``.  When every
class is a view of one shared automaton the tuple is diagonal and ``qs`` is
just the shared state.
"""

from __future__ import annotations

from .acceptance import Buchi, ExplicitFamily, Muller, RabinFamily, StateSet, UnionFamily
from .alphabet import enumerate_elementary
from .errors import ContractError, DomainError
from .idpda import EMPTY, Idpda, LazyIdpda, accepts_finite
from .omega_idpda import OmegaIdpda
from .omega_regular import OmegaAutomaton

DEAD = "p_dead"
DEAD_SYMBOL = "dead"


def outer(p):
    return ("P", p)


def is_outer(state) -> bool:
    return isinstance(state, tuple) and len(state) == 2 and state[0] == "P"


def _only(moves):
    return next(iter(moves), None)


class ComposedIdpda(LazyIdpda):
    def __init__(self, classes, omega: OmegaAutomaton, letters=None):
        classes = list(classes)
        letters = tuple(omega.alphabet if letters is None else letters)
        if len(letters) != len(classes):
            raise ContractError("one ω-automaton letter per class is required")
        if len(omega.initial) != 1:
            raise ContractError("the ω-automaton needs exactly one initial state")
        if not classes:
            raise ContractError("at least one class is required")
        sig = classes[0].alphabet
        for c in classes:
            if c.alphabet != sig:
                raise DomainError("class recognizers over different alphabets")
            if not c.deterministic:
                raise ContractError("class recognizers must be deterministic")
        self.alphabet = sig
        self.classes = classes
        self.letters = letters
        self.omega = omega
        self.initial = outer(next(iter(omega.initial)))
        self.accepting = EMPTY
        roots = {id(c.root) for c in classes}
        self.shared = classes[0].root if len(roots) == 1 else None
        self._by_accepting = {}
        self._deterministic = omega.deterministic
        self._cache = {}
        self.witnesses = None

    # -- recognizer bookkeeping ------------------------------------------

    def _accepting_classes(self, qs):
        """Indices of the classes whose recognizer accepts in tuple state ``qs``."""
        if self.shared is not None:
            out = self._by_accepting.get(qs)
            if out is None:
                out = self._by_accepting[qs] = [
                    i for i, c in enumerate(self.classes) if qs is not None and qs in c.accepting
                ]
            return out
        return [i for i, (c, q) in enumerate(zip(self.classes, qs)) if q is not None and q in c.accepting]

    def _letter_for(self, qs):
        hits = self._accepting_classes(qs)
        if len(hits) > 1:
            raise ContractError("two classes accept the same elementary word")
        return self.letters[hits[0]] if hits else None

    def _start_tuple(self, call):
        """Recognizer states after an outer call, and their pushed symbols."""
        if self.shared is not None:
            return _only(self.shared.call_moves(self.shared.initial, call))
        out = []
        for c in self.classes:
            out.append(_only(c.call_moves(c.initial, call)))
        return tuple(m[0] if m else None for m in out), tuple(m[1] if m else None for m in out)

    def _outer_moves(self, p, letter):
        if letter is None:
            return frozenset((DEAD,))
        nxt = self.omega.successors(p, letter)
        if not nxt:
            return frozenset((DEAD,))
        return frozenset(outer(r) for r in nxt)

    # -- moves -------------------------------------------------------------

    def internal_moves(self, q, c):
        key = ("i", q, c)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._internal(q, c)
        return out

    def _internal(self, q, c):
        if q == DEAD:
            return frozenset((DEAD,))
        tag, body = q
        if tag == "P":
            if self.shared is not None:
                end = _only(self.shared.internal_moves(self.shared.initial, c))
            else:
                end = tuple(_only(k.internal_moves(k.initial, c)) for k in self.classes)
            return self._outer_moves(body, self._letter_for(end))
        if self.shared is not None:
            nxt = None if body is None else _only(self.shared.internal_moves(body, c))
        else:
            nxt = tuple(
                None if s is None else _only(k.internal_moves(s, c)) for k, s in zip(self.classes, body)
            )
        return frozenset((("T", nxt),))

    def call_moves(self, q, c):
        key = ("c", q, c)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._call(q, c)
        return out

    def _call(self, q, c):
        if q == DEAD:
            return frozenset(((DEAD, DEAD_SYMBOL),))
        tag, body = q
        if tag == "P":
            if self.shared is not None:
                move = self._start_tuple(c)
                target = None if move is None else move[0]
            else:
                target = self._start_tuple(c)[0]
            return frozenset(((("T", target), ("P", body, c)),))
        if self.shared is not None:
            move = None if body is None else _only(self.shared.call_moves(body, c))
            target, pushed = (None, None) if move is None else move
        else:
            moves = [None if s is None else _only(k.call_moves(s, c)) for k, s in zip(self.classes, body)]
            target = tuple(m[0] if m else None for m in moves)
            pushed = tuple(m[1] if m else None for m in moves)
        return frozenset(((("T", target), ("T", pushed)),))

    def return_moves(self, q, s, c):
        key = ("r", q, s, c)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._return(q, s, c)
        return out

    def _return(self, q, s, c):
        if q == DEAD:
            return frozenset((DEAD,)) if s == DEAD_SYMBOL else EMPTY
        tag, body = q
        if tag != "T" or s == DEAD_SYMBOL:
            return EMPTY
        if s[0] == "P":
            _, p, call = s
            if self.shared is not None:
                move = self._start_tuple(call)
                pushed = None if move is None else move[1]
                end = None if body is None or move is None else _only(
                    self.shared.return_moves(body, pushed, c))
            else:
                pushed = self._start_tuple(call)[1]
                end = tuple(
                    None if x is None or y is None else _only(k.return_moves(x, y, c))
                    for k, x, y in zip(self.classes, body, pushed)
                )
            return self._outer_moves(p, self._letter_for(end))
        pushed = s[1]
        if self.shared is not None:
            nxt = None if body is None or pushed is None else _only(
                self.shared.return_moves(body, pushed, c))
        else:
            nxt = tuple(
                None if x is None or y is None else _only(k.return_moves(x, y, c))
                for k, x, y in zip(self.classes, body, pushed)
            )
        return frozenset((("T", nxt),))

    @property
    def deterministic(self):
        return self._deterministic


def _outer_acceptance(acc):
    """Lift an acceptance condition on ω-automaton states to tagged composed states."""
    if isinstance(acc, Buchi):
        f = acc.accepting
        return Buchi(StateSet(lambda x: is_outer(x) and x[1] in f, "outer accepting"))
    family = acc.family
    if isinstance(family, RabinFamily):
        return Muller(RabinFamily([
            (StateSet(lambda x, e=e: is_outer(x) and x[1] in e, "outer E"),
             StateSet(lambda x, f=f: is_outer(x) and x[1] in f, "outer F"))
            for e, f in family.pairs
        ]))
    if isinstance(family, UnionFamily):
        inner = family.label
        return Muller(UnionFamily(lambda x: inner(x[1]) if is_outer(x) else EMPTY, family.base))
    if not isinstance(family, ExplicitFamily):
        family = ExplicitFamily(family)
    return Muller(UnionFamily(lambda x: frozenset((x[1],)) if is_outer(x) else EMPTY, family))


def _recognizers(classes):
    return [getattr(c, "recognizer", c) for c in classes]


def _build(classes, omega, letters):
    classes = list(classes)
    struct = ComposedIdpda(_recognizers(classes), omega, letters)
    if all(hasattr(c, "witness") for c in classes):
        struct.witnesses = tuple(c.witness for c in classes)
    return struct


def compose_det_muller(classes, omega: OmegaAutomaton, letters=None) -> OmegaIdpda:
    """Deterministic Muller ω-IDPDA from classes and a deterministic Muller automaton.

    An inf-set is accepted iff its outer-level part is in the automaton's
    family; states used inside brackets never matter.
    """
    if not isinstance(omega.acceptance, Muller):
        raise ContractError("compose_det_muller needs Muller acceptance")
    if not omega.deterministic:
        raise ContractError("compose_det_muller needs a deterministic ω-automaton")
    struct = _build(classes, omega, letters)
    return OmegaIdpda(struct, _outer_acceptance(omega.acceptance))


def compose_buchi(classes, omega: OmegaAutomaton, letters=None) -> OmegaIdpda:
    """Büchi ω-IDPDA whose outer level follows a nondeterministic Büchi automaton."""
    if not isinstance(omega.acceptance, Buchi):
        raise ContractError("compose_buchi needs Büchi acceptance")
    struct = _build(classes, omega, letters)
    return OmegaIdpda(struct, _outer_acceptance(omega.acceptance))


def check_pairwise_disjoint(classes, max_len: int):
    """First elementary word up to ``max_len`` accepted by two classes, else ``None``."""
    recs = _recognizers(classes)
    if not recs:
        return None
    for x in enumerate_elementary(recs[0].alphabet, max_len):
        if sum(1 for r in recs if accepts_finite(r, x)) > 1:
            return x
    return None
