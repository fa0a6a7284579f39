"""Random automata for property tests and the acceptance suite."""

from __future__ import annotations

import random

from .acceptance import Buchi, ExplicitFamily, Muller, powerset
from .alphabet import PushdownAlphabet
from .idpda import make_idpda
from .omega_idpda import OmegaIdpda
from .omega_regular import make_automaton

STANDARD = PushdownAlphabet("<", ">", "ab")


def _names(n):
    return [f"q{i}" for i in range(n)]


def random_idpda(rng: random.Random, n: int, alphabet=STANDARD, stack_size: int = 2,
                 deterministic: bool = True, density: float = 0.35, complete: bool = False):
    """Random IDPDA with states ``q0..q{n-1}`` and initial state ``q0``.

    Deterministic automata get each transition with probability ``1 -
    density / 2`` unless ``complete``; nondeterministic ones get every
    possible transition independently with probability ``density``.
    """
    states = _names(n)
    stack = [f"s{i}" for i in range(stack_size)]
    internal, push, pop = [], [], []

    def pick(options):
        if deterministic:
            if complete or rng.random() > density / 2:
                return [rng.choice(options)]
            return []
        return [o for o in options if rng.random() < density]

    for q in states:
        for c in sorted(alphabet.internals):
            internal += [(q, c, r) for r in pick(states)]
        for c in sorted(alphabet.calls):
            push += [(q, c, r, s) for r, s in pick([(r, s) for r in states for s in stack])]
        for c in sorted(alphabet.returns):
            for s in stack:
                pop += [(q, c, s, r) for r in pick(states)]
    return make_idpda(alphabet, states, states[0], stack, internal, push, pop)


def random_family(rng: random.Random, states, max_sets: int = 3) -> ExplicitFamily:
    subsets = [s for s in powerset(sorted(states)) if s]
    k = rng.randint(1, min(max_sets, len(subsets)))
    return ExplicitFamily(rng.sample(subsets, k))


def random_muller_idpda(rng: random.Random, n: int, deterministic: bool = True, **kwargs) -> OmegaIdpda:
    aut = random_idpda(rng, n, deterministic=deterministic, **kwargs)
    return OmegaIdpda(aut, Muller(random_family(rng, aut.states)))


def random_buchi_idpda(rng: random.Random, n: int, deterministic: bool = False, **kwargs) -> OmegaIdpda:
    aut = random_idpda(rng, n, deterministic=deterministic, **kwargs)
    return OmegaIdpda(aut, Buchi(q for q in sorted(aut.states) if rng.random() < 0.5))


def random_omega_automaton(rng: random.Random, n: int, letters, kind: str = "buchi",
                           deterministic: bool = False, density: float = 0.4):
    """Random finite-alphabet ω-automaton with Büchi or Muller acceptance."""
    states = _names(n)
    trans = []
    for p in states:
        for a in letters:
            if deterministic:
                if rng.random() < 0.85:
                    trans.append((p, a, rng.choice(states)))
            else:
                trans += [(p, a, r) for r in states if rng.random() < density]
    if kind == "buchi":
        acc = Buchi(q for q in states if rng.random() < 0.4)
    else:
        acc = Muller(random_family(rng, states))
    return make_automaton(letters, states, states[0], trans, acc)
