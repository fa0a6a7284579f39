"""Brute-force reference implementations used only by the tests.

None of these share code with the package beyond the data types: they
simulate configurations with explicit stacks on the raw lasso, without the
normalization, boundary graphs or behaviour calculus the package relies on.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from wellnested.acceptance import Buchi, Muller, Rabin


def grammar_well_nested(alphabet, w) -> bool:
    """Membership in the grammar S -> SS | <S> | c | eps, by interval recursion."""
    w = tuple(w)

    @lru_cache(maxsize=None)
    def derives(i, j):
        if i == j:
            return True
        if j - i == 1 and w[i] in alphabet.internals:
            return True
        if w[i] in alphabet.calls and w[j - 1] in alphabet.returns and derives(i + 1, j - 1):
            return True
        return any(derives(i, k) and derives(k, j) for k in range(i + 1, j))

    return derives(0, len(w))


def grammar_elementary(alphabet, w) -> bool:
    w = tuple(w)
    if len(w) == 1:
        return w[0] in alphabet.internals
    return (
        len(w) >= 2
        and w[0] in alphabet.calls
        and w[-1] in alphabet.returns
        and grammar_well_nested(alphabet, w[1:-1])
    )


def all_words(alphabet, max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (a,) for w in frontier for a in alphabet.symbols]
        out += frontier
    return out


def simulate(aut, w, start):
    """Every (exit, visited) pair of runs from ``start``, with an explicit stack."""
    sig = aut.alphabet
    configs = {(start, (), frozenset((start,)))}
    for a in w:
        nxt = set()
        for q, stack, seen in configs:
            if a in sig.internals:
                for r in aut.internal_moves(q, a):
                    nxt.add((r, stack, seen | {r}))
            elif a in sig.calls:
                for r, s in aut.call_moves(q, a):
                    nxt.add((r, stack + (s,), seen | {r}))
            else:
                if not stack:
                    continue
                for r in aut.return_moves(q, stack[-1], a):
                    nxt.add((r, stack[:-1], seen | {r}))
        configs = nxt
    return {(q, seen) for q, stack, seen in configs if not stack}


# -- cycle search on explicit graphs ----------------------------------------------

def _sccs(nodes, succ):
    """Strongly connected components that contain a cycle (iterative Tarjan)."""
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = [0]
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in nodes:
                    continue
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    x = stack.pop()
                    on.discard(x)
                    comp.add(x)
                    if x == v:
                        break
                if len(comp) > 1 or any(x == v for x in succ(v)):
                    out.append(comp)
    return out


def _reach(start, succ):
    seen = set(start)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for w in succ(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _subsets(items):
    items = sorted(items, key=repr)
    for k in range(1, len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, k))


def node_graph_accepts(start, succ, state_of, acceptance, candidates=None) -> bool:
    """Is there a reachable cycle whose set of states satisfies ``acceptance``?

    Cycles are searched inside the nodes whose state lies in a target set
    ``T``; a cycle visits exactly ``T`` iff some such component's states
    are all of ``T``.
    """
    reach = _reach(start, succ)
    if isinstance(acceptance, Buchi):
        good = lambda comp: any(state_of(v) in acceptance.accepting for v in comp)
        return any(good(c) for c in _sccs(reach, succ))
    if isinstance(acceptance, Rabin):
        for e, f in acceptance.pairs:
            nodes = {v for v in reach if state_of(v) not in e}
            if any(any(state_of(v) in f for v in c) for c in _sccs(nodes, succ)):
                return True
        return False
    states = {state_of(v) for v in reach}
    targets = candidates if candidates is not None else [t for t in _subsets(states) if acceptance.holds(t)]
    for t in targets:
        nodes = {v for v in reach if state_of(v) in t}
        if any({state_of(v) for v in c} == set(t) for c in _sccs(nodes, succ)):
            return True
    return False


# -- acceptance of lassos by explicit configuration graphs ------------------------

def _lasso_position(lasso, i):
    n, m = len(lasso.prefix), len(lasso.period)
    return i + 1 if i + 1 < n + m else n


def omega_idpda_accepts(aut, lasso) -> bool:
    """Acceptance by an ω-IDPDA via the configuration graph of the raw lasso.

    Nodes are (position, state, stack).  The lasso is well-nested, so the
    stack height at each position is bounded and the graph is finite.
    """
    sig = aut.alphabet
    word = lasso.prefix + lasso.period
    struct = aut.structure

    def succ(node):
        i, q, stack = node
        a = word[i]
        j = _lasso_position(lasso, i)
        if a in sig.internals:
            return [(j, r, stack) for r in struct.internal_moves(q, a)]
        if a in sig.calls:
            return [(j, r, stack + (s,)) for r, s in struct.call_moves(q, a)]
        if not stack:
            return []
        return [(j, r, stack[:-1]) for r in struct.return_moves(q, stack[-1], a)]

    cache = {}

    def cached(node):
        out = cache.get(node)
        if out is None:
            out = cache[node] = succ(node)
        return out

    acc = aut.acceptance
    candidates = None
    if isinstance(acc, Muller) and hasattr(acc.family, "sets"):
        candidates = [t for t in acc.family.sets if t]
    return node_graph_accepts([(0, struct.initial, ())], cached, lambda v: v[1], acc, candidates)


def omega_automaton_accepts(aut, lasso) -> bool:
    """Acceptance by a finite-alphabet ω-automaton via the (position, state) graph."""
    word = tuple(lasso.prefix) + tuple(lasso.period)

    def succ(node):
        i, q = node
        j = _lasso_position(lasso, i)
        return [(j, r) for r in aut.successors(q, word[i])]

    acc = aut.acceptance
    candidates = None
    if isinstance(acc, Muller) and hasattr(acc.family, "sets"):
        candidates = [t for t in acc.family.sets if t]
    return node_graph_accepts([(0, q) for q in aut.initial], succ, lambda v: v[1], acc, candidates)


def deterministic_sampled_accepts(aut, lasso) -> bool:
    """Deterministic acceptance read off a long finite simulation.

    In the periodic regime the state at successive depth-0 points repeats
    with period at most ``|Q|`` periods, so after ``|u| + |Q| + 2`` warm-up
    periods any ``|Q| + 1`` further periods visit exactly ``inf``.
    """
    sig = aut.alphabet
    struct = aut.structure
    n = len(struct.states)
    u, v = tuple(lasso.prefix), tuple(lasso.period)
    warm = len(u) + n + 2
    window = n + 1
    q, stack = struct.initial, []
    seen = set()
    for k, a in enumerate(u + v * (warm + window)):
        if a in sig.internals:
            moves = struct.internal_moves(q, a)
            if not moves:
                return False
            (q,) = moves
        elif a in sig.calls:
            moves = struct.call_moves(q, a)
            if not moves:
                return False
            ((q, s),) = moves
            stack.append(s)
        else:
            moves = struct.return_moves(q, stack.pop(), a)
            if not moves:
                return False
            (q,) = moves
        if k >= len(u) + warm * len(v):
            seen.add(q)
    return aut.acceptance.holds(frozenset(seen))
