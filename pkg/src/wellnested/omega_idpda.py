"""ω-IDPDA over well-nested infinite words and exact acceptance of lassos.

On a well-nested lasso ``u v^omega`` normalized so that ``v`` starts and
ends at depth 0, every run passes the stack bottom at each period boundary.
A run is therefore a walk in the graph of boundary states whose edges are
the runs over one period, labelled by the states they visit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .acceptance import Buchi, ExplicitFamily, Muller, RabinFamily, UnionFamily, buchi_family
from .alphabet import LassoWord, as_lasso, lasso_well_nested, normalize_lasso
from .errors import ContractError, IncompleteAutomatonError, NotWellNestedError
from .graphs import buchi_cycle, muller_cycle, rabin_cycle
from .idpda import FiniteIdpda, Idpda, explore_runs, run_deterministic

EMPTY = frozenset()


@dataclass(frozen=True, eq=False)
class OmegaIdpda:
    structure: Idpda
    acceptance: object

    def __post_init__(self):
        acc = self.acceptance
        if not isinstance(acc, (Buchi, Muller)):
            raise ContractError("ω-IDPDA acceptance is Büchi or Muller")
        if isinstance(self.structure, FiniteIdpda):
            states = self.structure.states
            if isinstance(acc, Buchi) and isinstance(acc.accepting, frozenset):
                if not acc.accepting <= states:
                    raise ContractError("Büchi set names undeclared states")
            if isinstance(acc, Muller) and isinstance(acc.family, ExplicitFamily):
                if any(not s <= states for s in acc.family):
                    raise ContractError("Muller family names undeclared states")

    @property
    def alphabet(self):
        return self.structure.alphabet

    @property
    def initial(self):
        return self.structure.initial

    @property
    def states(self):
        return self.structure.states

    @property
    def deterministic(self) -> bool:
        return self.structure.deterministic

    @property
    def is_buchi(self) -> bool:
        return isinstance(self.acceptance, Buchi)

    @property
    def is_muller(self) -> bool:
        return isinstance(self.acceptance, Muller)

    def materialize(self) -> "OmegaIdpda":
        table = self.structure.materialize()
        acc = self.acceptance
        if isinstance(acc, Buchi):
            acc = Buchi(q for q in table.states if q in acc.accepting)
        return OmegaIdpda(table, acc)


def buchi_to_muller(aut: OmegaIdpda) -> OmegaIdpda:
    if not aut.is_buchi:
        raise ContractError("buchi_to_muller needs Büchi acceptance")
    f = aut.acceptance.accepting
    if isinstance(aut.structure, FiniteIdpda):
        family = buchi_family(aut.structure.states, f)
    else:
        family = UnionFamily(lambda q: frozenset((0,)) if q in f else EMPTY, ExplicitFamily([{0}]))
    return OmegaIdpda(aut.structure, Muller(family))


def _prepare(aut: OmegaIdpda, lasso) -> LassoWord:
    lasso = as_lasso(lasso)
    if not lasso_well_nested(aut.alphabet, lasso):
        raise NotWellNestedError(f"lasso {lasso} is not well-nested")
    return normalize_lasso(aut.alphabet, lasso)


@dataclass(frozen=True)
class DeterministicRun:
    """Summary of the unique run on a normalized lasso.

    ``boundaries`` lists ``(state after period j, states visited during
    period j)``; the entries from ``cycle_start`` on repeat forever.
    ``dead`` is set when the run got stuck, in which case it rejects.
    """

    lasso: LassoWord
    accepted: bool
    dead: bool
    inf: frozenset
    boundaries: tuple
    cycle_start: int


def det_lasso_run(aut: OmegaIdpda, lasso) -> DeterministicRun:
    if not aut.deterministic:
        raise ContractError("det_lasso_accepts needs a deterministic automaton")
    norm = _prepare(aut, lasso)
    struct = aut.structure
    seen = {}
    boundaries = []
    try:
        q, _ = run_deterministic(struct, norm.prefix, struct.initial)
        while True:
            q, visited = run_deterministic(struct, norm.period, q)
            pair = (q, visited)
            if pair in seen:
                break
            seen[pair] = len(boundaries)
            boundaries.append(pair)
    except IncompleteAutomatonError:
        return DeterministicRun(norm, False, True, EMPTY, tuple(boundaries), len(boundaries))
    # the next pair is determined by the exit state, so the pairs repeat from here
    start = seen[pair]
    inf = frozenset().union(*(s for _, s in boundaries[start:]))
    return DeterministicRun(norm, aut.acceptance.holds(inf), False, inf, tuple(boundaries), start)


def det_lasso_accepts(aut: OmegaIdpda, lasso) -> bool:
    return det_lasso_run(aut, lasso).accepted


def _marker(acceptance):
    """State marking and cycle test that decide ``acceptance`` on marked graphs."""
    if isinstance(acceptance, Buchi):
        f = acceptance.accepting
        hit = frozenset((True,))
        return (lambda q: hit if q in f else EMPTY), (lambda g, s: buchi_cycle(g, s, hit))
    family = acceptance.family
    if isinstance(family, UnionFamily):
        return family.label, (lambda g, s: muller_cycle(g, s, family.base))
    if isinstance(family, RabinFamily):
        pairs = family.pairs

        def mark(q):
            tags = set()
            for i, (e, f) in enumerate(pairs):
                if q in e:
                    tags.add(("E", i))
                if q in f:
                    tags.add(("F", i))
            return frozenset(tags)

        tagged = [(frozenset((("E", i),)), frozenset((("F", i),))) for i in range(len(pairs))]
        return mark, (lambda g, s: rabin_cycle(g, s, tagged))
    return (lambda q: frozenset((q,))), (lambda g, s: muller_cycle(g, s, family))


def boundary_graph(aut: OmegaIdpda, lasso, mark=None):
    """Graph of boundary states of a normalized lasso, plus its source vertices."""
    norm = _prepare(aut, lasso)
    struct = aut.structure
    if mark is None:
        mark = lambda q: frozenset((q,))
    sources = {q for q, _ in explore_runs(struct, norm.prefix, struct.initial, mark)}
    graph = {}
    stack = list(sources)
    while stack:
        p = stack.pop()
        if p in graph:
            continue
        edges = [(marks, q) for q, marks in explore_runs(struct, norm.period, p, mark)]
        graph[p] = edges
        stack.extend(q for _, q in edges if q not in graph)
    return graph, sources


def nondet_lasso_accepts(aut: OmegaIdpda, lasso) -> bool:
    """Existence of an accepting run on a well-nested lasso."""
    mark, decide = _marker(aut.acceptance)
    graph, sources = boundary_graph(aut, lasso, mark)
    return decide(graph, sources)


def lasso_accepts(aut: OmegaIdpda, lasso, nondet_oracle: bool = False) -> bool:
    """Pick the deterministic decider when it applies."""
    if not nondet_oracle and aut.deterministic:
        return det_lasso_accepts(aut, lasso)
    return nondet_lasso_accepts(aut, lasso)
