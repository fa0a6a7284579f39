"""Safra's determinization of Büchi automata into Rabin automata.

A Safra tree is a nested tuple ``(name, label, marked, children)`` where
``label`` is a bitmask over the Büchi automaton's states and ``children``
are ordered oldest first.  The empty tree is ``None``; it is the rejecting
sink.  Trees are built on demand, so only the part of the deterministic
automaton that is actually explored is ever computed.
"""

from __future__ import annotations

from .acceptance import Buchi, Rabin, StateSet
from .errors import ContractError
from .omega_regular import OmegaAutomaton


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Safra:
    def __init__(self, nba: OmegaAutomaton):
        self.nba = nba
        self.order = sorted(nba.states, key=repr)
        self.index = {q: i for i, q in enumerate(self.order)}
        acc = nba.acceptance.accepting
        self.final = sum(1 << i for i, q in enumerate(self.order) if q in acc)
        self.succ = {
            a: [sum(1 << self.index[r] for r in nba.successors(q, a)) for q in self.order]
            for a in nba.alphabet
        }
        self._post = {}
        self._names = {}
        self.max_names = 2 * max(1, len(self.order))

    def post(self, mask, a):
        key = (mask, a)
        out = self._post.get(key)
        if out is None:
            table = self.succ[a]
            out = 0
            for i in _bits(mask):
                out |= table[i]
            self._post[key] = out
        return out

    def initial(self):
        mask = sum(1 << self.index[q] for q in self.nba.initial)
        if not mask:
            return None
        return (1, mask, False, ())

    def names(self, tree):
        """``(present, marked)`` name bitmasks of a tree."""
        if tree is None:
            return 0, 0
        out = self._names.get(tree)
        if out is None:
            present = marked = 0
            stack = [tree]
            while stack:
                name, _, mark, children = stack.pop()
                present |= 1 << name
                if mark:
                    marked |= 1 << name
                stack.extend(children)
            out = self._names[tree] = (present, marked)
        return out

    def step(self, tree, a):
        if tree is None:
            return None
        used = self.names(tree)[0]
        free = [n for n in range(1, self.max_names + 1) if not used >> n & 1]
        free.reverse()

        # unmark, spawn children on accepting states, then powerset update
        def spawn(node):
            name, label, _, children = node
            kids = [spawn(c) for c in children]
            hit = label & self.final
            if hit:
                kids.append([free.pop(), hit, False, []])
            return [name, label, False, kids]

        def update(node):
            node[1] = self.post(node[1], a)
            for c in node[3]:
                update(c)

        root = spawn(tree)
        update(root)

        # a state stays only in the oldest branch that holds it
        def merge(node, blocked):
            node[1] &= ~blocked
            taken = blocked
            for c in node[3]:
                merge(c, taken)
                taken |= c[1]

        merge(root, 0)

        # drop empty nodes; collapse nodes covered by their children
        def prune(node):
            kids = [prune(c) for c in node[3] if c[1]]
            kids = [k for k in kids if k is not None]
            union = 0
            for k in kids:
                union |= k[1]
            if kids and union == node[1]:
                return (node[0], node[1], True, ())
            return (node[0], node[1], node[2], tuple(kids))

        if not root[1]:
            return None
        return prune(root)


def safra_determinize(nba: OmegaAutomaton) -> OmegaAutomaton:
    """Deterministic Rabin automaton equivalent to a Büchi automaton.

    There is one Rabin pair per node name ``i``: ``E_i`` holds the trees
    without a node ``i`` and ``F_i`` the trees in which node ``i`` is marked.
    """
    if not isinstance(nba.acceptance, Buchi):
        raise ContractError("safra_determinize needs Büchi acceptance")
    core = _Safra(nba)
    pairs = []
    for i in range(1, core.max_names + 1):
        bit = 1 << i
        absent = StateSet(lambda t, b=bit: not core.names(t)[0] & b, f"no node {i}")
        marked = StateSet(lambda t, b=bit: core.names(t)[1] & b, f"node {i} marked")
        pairs.append((absent, marked))
    init = core.initial()
    out = OmegaAutomaton(
        nba.alphabet,
        {init},
        lambda t, a: (core.step(t, a),),
        Rabin(pairs),
        deterministic=True,
    )
    # kept so the automaton can be written compactly as "Safra of nba"
    out.determinized_from = nba
    return out


def tree_states(tree, order) -> list:
    """Readable rendering of a Safra tree for debugging and serialization."""
    if tree is None:
        return []
    name, label, mark, children = tree
    members = [order[i] for i in _bits(label)]
    return [name, members, mark, [tree_states(c, order) for c in children]]
