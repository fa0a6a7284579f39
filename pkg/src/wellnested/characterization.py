"""Decomposition of an ω-IDPDA into behaviour classes and an ω-automaton.

A well-nested ω-word splits uniquely into elementary factors.  Replacing
each factor by the label of its behaviour class gives a word over a finite
alphabet, and acceptance of the original word depends only on that word.
A :class:`Decomposition` holds the classes and the finite-alphabet
automaton that decides acceptance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .acceptance import ExplicitFamily, Muller, RabinFamily, StateSet, UnionFamily, powerset
from .alphabet import LassoWord, factor_elementary
from .behavior import (
    FUNCTIONS,
    OUTSIDE,
    RELATIONS,
    BehaviorAutomaton,
    reachable_behaviors,
)
from .errors import ContractError, DomainError
from .idpda import Idpda
from .omega_idpda import OmegaIdpda, _prepare
from .omega_regular import OmegaAutomaton


@dataclass(frozen=True, eq=False)
class ClassEntry:
    """One behaviour class of elementary words."""

    letter: str
    label: object
    recognizer: Idpda
    witness: tuple


@dataclass(frozen=True, eq=False)
class Decomposition:
    source: OmegaIdpda
    automaton: BehaviorAutomaton
    classes: tuple
    omega: OmegaAutomaton
    _by_label: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_label.update({c.label: c for c in self.classes})

    @property
    def letters(self) -> tuple:
        return tuple(c.letter for c in self.classes)

    @property
    def recognizers(self) -> list:
        return [c.recognizer for c in self.classes]

    @property
    def deterministic(self) -> bool:
        return self.automaton.calculus is FUNCTIONS

    def entry(self, letter) -> ClassEntry:
        for c in self.classes:
            if c.letter == letter:
                return c
        raise DomainError(f"unknown class letter {letter!r}")

    def classify(self, x) -> ClassEntry | None:
        """The class of the elementary word ``x``, or ``None`` if it has none."""
        label = self.automaton.label_after(tuple(x))
        if label is None:
            return None
        return self._by_label.get(label)

    def letter_of(self, x) -> str:
        entry = self.classify(x)
        if entry is None:
            raise ContractError(f"factor {''.join(x)!r} lies in no class")
        return entry.letter


def class_bound(n: int, deterministic: bool) -> int:
    """Upper bound on the number of behaviour classes of an ``n``-state automaton."""
    if deterministic:
        return 2 ** (n * n) * n ** n
    return 2 ** (n * n * 2 ** n)


def _lifted_acceptance(family):
    """Acceptance on pairs ``(q, S)``: the union of the ``S`` parts lies in ``family``."""
    if isinstance(family, RabinFamily):
        # a union of S meets a set iff one of the S does
        pairs = [
            (StateSet(lambda st, e=e: any(q in e for q in st[1]), "visits E"),
             StateSet(lambda st, f=f: any(q in f for q in st[1]), "visits F"))
            for e, f in family.pairs
        ]
        return Muller(RabinFamily(pairs))
    if isinstance(family, UnionFamily):
        inner = family.label

        def label(st):
            out = set()
            for q in st[1]:
                out |= inner(q)
            return frozenset(out)

        return Muller(UnionFamily(label, family.base))
    return Muller(UnionFamily(lambda st: st[1], family))


def _order_classes(aut, labels: dict) -> list:
    rank = {s: i for i, s in enumerate(aut.alphabet.symbols)}
    return sorted(labels.items(), key=lambda kv: (len(kv[1]), [rank[x] for x in kv[1]]))


def _decompose(aut: OmegaIdpda, calculus, prune: bool, limit):
    if not aut.is_muller:
        raise ContractError("decomposition needs Muller acceptance; lift Büchi first")
    struct = aut.structure
    behaviors = BehaviorAutomaton(struct, calculus)
    found = reachable_behaviors(struct, calculus, limit=limit)
    classes = []
    for i, (label, witness) in enumerate(_order_classes(struct, found), start=1):
        recognizer = behaviors.with_accepting({(label, OUTSIDE)})
        classes.append(ClassEntry(f"a{i}", label, recognizer, witness))

    meaning = {c.letter: c.label for c in classes}
    if calculus is FUNCTIONS:
        def step(st, a):
            out = meaning[a].get(st[0])
            return () if out is None else (out,)
    else:
        def step(st, a):
            return [(r, s) for s, r in meaning[a].by_entry().get(st[0], ())]

    letters = [c.letter for c in classes]
    init = (struct.initial, frozenset((struct.initial,)))
    acceptance = _lifted_acceptance(aut.acceptance.family)
    states = struct.states
    if prune:
        lazy = OmegaAutomaton(letters, {init}, step, acceptance)
        omega = lazy.materialize()
        omega = omega.with_acceptance(acceptance)
    else:
        every = [(q, s) for q in sorted(states, key=repr) for s in powerset(sorted(states, key=repr))]
        table = {(st, a): step(st, a) for st in every for a in letters}
        omega = OmegaAutomaton(letters, {init}, table, acceptance, states=every)
    if calculus is FUNCTIONS:
        omega._deterministic = True
    return Decomposition(aut, behaviors, tuple(classes), omega)


def decompose_det(aut: OmegaIdpda, prune: bool = True, limit: int | None = None) -> Decomposition:
    """Behaviour-function decomposition of a deterministic Muller ω-IDPDA.

    With ``prune=False`` the ω-automaton keeps every pair ``(q, S)``, so it
    has exactly ``n * 2**n`` states.
    """
    if not aut.deterministic:
        raise ContractError("decompose_det needs a deterministic automaton")
    return _decompose(aut, FUNCTIONS, prune, limit)


def decompose_nondet(aut: OmegaIdpda, prune: bool = True, limit: int | None = None) -> Decomposition:
    """Behaviour-relation decomposition; the ω-automaton is nondeterministic."""
    return _decompose(aut, RELATIONS, prune, limit)


def decompose(aut: OmegaIdpda, **kwargs) -> Decomposition:
    if aut.deterministic:
        return decompose_det(aut, **kwargs)
    return decompose_nondet(aut, **kwargs)


def encode_lasso(dec: Decomposition, lasso) -> LassoWord:
    """Relabel each elementary factor of a normalized lasso by its class letter."""
    norm = _prepare(dec.source, lasso)
    sig = dec.source.alphabet
    prefix = tuple(dec.letter_of(x) for x in factor_elementary(sig, norm.prefix))
    period = tuple(dec.letter_of(x) for x in factor_elementary(sig, norm.period))
    return LassoWord(prefix, period)
