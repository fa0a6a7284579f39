"""Cycle questions on edge-labelled graphs.

Both lasso deciders reduce acceptance to the same problem: the run of an
automaton on ``u v^omega`` is an infinite walk in a finite graph whose edges
carry the set of states visited along them, and the set of states visited
infinitely often is the union of the labels of the edges used infinitely
often.  A graph here is a dict ``vertex -> list of (label, target)``.
"""

from __future__ import annotations

import networkx as nx

from .acceptance import ExplicitFamily, RabinFamily, UnionFamily


def reachable(graph: dict, sources) -> set:
    seen = set(sources)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for _, w in graph.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _components(graph, vertices, keep):
    """SCCs of the subgraph on ``vertices`` using edges whose label passes ``keep``.

    Yields ``(component, internal edge labels)`` for each component that has
    at least one internal edge.
    """
    g = nx.DiGraph()
    g.add_nodes_from(vertices)
    for v in vertices:
        for label, w in graph.get(v, ()):
            if w in vertices and keep(label):
                g.add_edge(v, w)
    for comp in nx.strongly_connected_components(g):
        labels = [
            label
            for v in comp
            for label, w in graph.get(v, ())
            if w in comp and keep(label)
        ]
        if labels:
            yield comp, labels


def buchi_cycle(graph, sources, good) -> bool:
    """Is there a reachable cycle using an edge whose label meets ``good``?"""
    verts = reachable(graph, sources)
    hits = lambda label: any(q in good for q in label)
    return any(any(hits(l) for l in labels) for _, labels in _components(graph, verts, lambda l: True))


def _explicit_cycle(graph, verts, family):
    for target in family:
        keep = lambda label, t=target: label <= t
        for _, labels in _components(graph, verts, keep):
            if frozenset().union(*labels) == target:
                return True
    return False


def muller_cycle(graph, sources, family) -> bool:
    """Is some reachable strongly connected subgraph's label union in ``family``?"""
    verts = reachable(graph, sources)
    if isinstance(family, RabinFamily):
        return rabin_cycle(graph, sources, family.pairs, verts)
    if isinstance(family, UnionFamily):
        image = {}

        def relabel(label):
            out = image.get(label)
            if out is None:
                out = image[label] = family.image(label)
            return out

        mapped = {v: [(relabel(l), w) for l, w in graph.get(v, ())] for v in verts}
        return _explicit_cycle(mapped, verts, family.base)
    if not isinstance(family, ExplicitFamily):
        family = ExplicitFamily(family)
    return _explicit_cycle(graph, verts, family)


def rabin_cycle(graph, sources, pairs, verts=None) -> bool:
    if verts is None:
        verts = reachable(graph, sources)
    for bad, good in pairs:
        keep = lambda label, e=bad: not any(q in e for q in label)
        for _, labels in _components(graph, verts, keep):
            if any(any(q in good for q in l) for l in labels):
                return True
    return False


def acceptance_cycle(graph, sources, acceptance) -> bool:
    from .acceptance import Buchi, Muller, Rabin

    if isinstance(acceptance, Buchi):
        return buchi_cycle(graph, sources, acceptance.accepting)
    if isinstance(acceptance, Muller):
        return muller_cycle(graph, sources, acceptance.family)
    if isinstance(acceptance, Rabin):
        return rabin_cycle(graph, sources, acceptance.pairs)
    raise TypeError(f"unknown acceptance condition {acceptance!r}")
