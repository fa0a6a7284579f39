"""Plain-text formats for IDPDA, ω-IDPDA, ω-automata, decompositions and lassos.

An automaton file is a list of ``key: value`` lines plus indented list
sections::

    alphabet:
      call: <
      return: >
      internal: a
    states: p q
    initial: p
    stack: s
    transitions:
      p a -> q
      p < -> p push s
      p > pop s -> p
    acceptance: muller {p q}

Acceptance is ``buchi q ...``, ``muller {..} {..}``, ``muller-rabin ({E} {F})
...`` (the Muller family given by Rabin pairs), or ``muller-union {..}``
together with a ``labels:`` section ``q -> l ...`` (the sets whose union of
labels is listed).  A finite-alphabet ω-automaton file has ``letters:``
instead of ``alphabet:``, transitions ``p a -> r`` and may also use
``rabin``.  Composite files (``kind: composed`` or ``kind: decomposition``)
embed a ``[source]`` automaton and an ``[omega]`` automaton.
"""

from __future__ import annotations

import re
from collections import deque

from .acceptance import Buchi, ExplicitFamily, Muller, Rabin, RabinFamily, UnionFamily
from .alphabet import LassoWord, PushdownAlphabet, show
from .behavior import FUNCTIONS, OUTSIDE, RELATIONS, BehaviorAutomaton
from .characterization import ClassEntry, Decomposition
from .composition import ComposedIdpda, compose_buchi, compose_det_muller
from .errors import DomainError, ParseError, UnknownSymbolError, WellNestedError
from .idpda import FiniteIdpda, materialize
from .omega_idpda import OmegaIdpda
from .omega_regular import OmegaAutomaton, dra_to_dma
from .safra import safra_determinize

KEYS = {
    "alphabet", "call", "return", "internal", "states", "initial", "stack", "deterministic",
    "transitions", "acceptance", "accepting", "labels", "letters", "kind", "classes", "outer",
    "determinize", "recognizer",
}
LISTS = {"transitions", "labels", "letters", "alphabet", "recognizer"}
TOKEN = re.compile(r"^[^\s{}()#:$]+$")
GROUPS = re.compile(r"\{[^{}]*\}|\(|\)|[^\s{}()]+")


# -- generic line reader -----------------------------------------------------

class _Block:
    """Parsed ``key: value`` lines with line numbers; list sections keep their lines."""

    def __init__(self, lines):
        self.values = {}
        self.lists = {}
        current = None
        for no, raw in lines:
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            m = re.match(r"^([a-z][a-z-]*)\s*:(.*)$", text)
            if m and m.group(1) in KEYS:
                key, value = m.group(1), m.group(2).strip()
                if key in self.values:
                    raise ParseError(f"duplicate {key!r} line", no)
                self.values[key] = (value, no)
                current = key if key in LISTS and not value else None
                if current:
                    self.lists[current] = []
                continue
            if current is None:
                raise ParseError(f"unexpected line {text!r}", no)
            self.lists[current].append((text, no))

    def get(self, key, default=None):
        return self.values[key][0] if key in self.values else default

    def line(self, key):
        return self.values[key][1] if key in self.values else None

    def need(self, key):
        if key not in self.values:
            raise ParseError(f"missing {key!r} section")
        return self.values[key][0]

    def items(self, key):
        return self.lists.get(key, [])


def _numbered(text):
    return list(enumerate(text.splitlines(), start=1))


def _split_blocks(text):
    """Header lines and the ``[name]`` blocks of a composite file."""
    parts = {"": []}
    name = ""
    for no, raw in _numbered(text):
        m = re.match(r"^\s*\[([a-z]+)\]\s*$", raw)
        if m:
            name = m.group(1)
            if name in parts:
                raise ParseError(f"duplicate [{name}] block", no)
            parts[name] = []
            continue
        parts[name].append((no, raw))
    return parts


def _tokens(value):
    return value.split()


def _check_token(t, what="name"):
    if not TOKEN.match(t) or t == "->":
        raise ParseError(f"{what} {t!r} is not a plain token")
    return t


# -- words and lassos --------------------------------------------------------

def parse_word(text: str, alphabet: PushdownAlphabet) -> tuple:
    """Tokens separated by whitespace; a token that is not a symbol is split into characters."""
    out = []
    for tok in text.split():
        if tok in alphabet:
            out.append(tok)
            continue
        for ch in tok:
            if ch not in alphabet:
                raise UnknownSymbolError(ch)
            out.append(ch)
    return tuple(out)


def parse_lasso(text: str, alphabet: PushdownAlphabet) -> LassoWord:
    if text.count("$") != 1:
        raise ParseError("a lasso is written 'u $ v' with exactly one '$'")
    u, v = text.split("$")
    period = parse_word(v, alphabet)
    if not period:
        raise ParseError("the period of a lasso must be nonempty")
    return LassoWord(parse_word(u, alphabet), period)


def _spaced(alphabet, w) -> str:
    if all(len(s) == 1 for s in alphabet.symbols):
        return show(w)
    return " ".join(w)


def format_lasso(lasso: LassoWord, alphabet: PushdownAlphabet | None = None) -> str:
    if alphabet is None:
        return f"{' '.join(lasso.prefix)} $ {' '.join(lasso.period)}".strip()
    return f"{_spaced(alphabet, lasso.prefix)} $ {_spaced(alphabet, lasso.period)}".strip()


# -- acceptance --------------------------------------------------------------

def _sets(groups, no, known, what="state"):
    out = []
    for g in groups:
        if not (g.startswith("{") and g.endswith("}")):
            raise ParseError(f"expected a {{...}} set, got {g!r}", no)
        members = g[1:-1].split()
        for m in members:
            if known is not None and m not in known:
                raise ParseError(f"unknown {what} {m!r}", no)
        out.append(frozenset(members))
    return out


def _rabin_pairs(groups, no, known):
    pairs, i = [], 0
    while i < len(groups):
        if groups[i] != "(" or i + 3 >= len(groups) or groups[i + 3] != ")":
            raise ParseError("Rabin pairs are written ({E...} {F...})", no)
        e, f = _sets(groups[i + 1:i + 3], no, known)
        pairs.append((e, f))
        i += 4
    return pairs


def _parse_acceptance(block: _Block, known, allow_rabin: bool):
    value = block.get("acceptance")
    if value is None:
        return None
    no = block.line("acceptance")
    groups = GROUPS.findall(value)
    if not groups:
        raise ParseError("empty acceptance line", no)
    kind, rest = groups[0], groups[1:]
    if kind == "buchi":
        for q in rest:
            if q not in known:
                raise ParseError(f"unknown state {q!r}", no)
        return Buchi(rest)
    if kind == "muller":
        return Muller(ExplicitFamily(_sets(rest, no, known)))
    if kind == "muller-rabin":
        return Muller(RabinFamily(_rabin_pairs(rest, no, known)))
    if kind == "rabin" and allow_rabin:
        return Rabin(_rabin_pairs(rest, no, known))
    if kind == "muller-union":
        labels = {}
        for text, lno in block.items("labels"):
            left, sep, right = text.partition("->")
            q = left.strip()
            if not sep or q not in known:
                raise ParseError(f"bad label line {text!r}", lno)
            labels[q] = frozenset(right.split())
        base = ExplicitFamily(_sets(rest, no, None, "label"))
        return Muller(UnionFamily(lambda q, t=labels: t.get(q, frozenset()), base))
    raise ParseError(f"unknown acceptance kind {kind!r}", no)


def _fmt_set(items, order):
    return "{" + " ".join(sorted(items, key=order)) + "}"


def _acceptance_lines(acc, states, name, rabin_ok) -> list[str]:
    """Acceptance of an automaton whose states are listed in ``states`` (canonical order)."""
    by_name = lambda t: (0, int(t[1:])) if re.match(r"^[qs]\d+$", t) else (1, t)
    if isinstance(acc, Buchi):
        members = [name[q] for q in states if q in acc.accepting]
        return ["acceptance: " + " ".join(["buchi"] + members)]
    if isinstance(acc, Rabin) or isinstance(getattr(acc, "family", None), RabinFamily):
        pairs = acc.pairs if isinstance(acc, Rabin) else acc.family.pairs
        kind = "rabin" if isinstance(acc, Rabin) else "muller-rabin"
        if isinstance(acc, Rabin) and not rabin_ok:
            raise DomainError("Rabin acceptance is not an ω-IDPDA condition")
        parts = [kind]
        for e, f in pairs:
            es = [name[q] for q in states if q in e]
            fs = [name[q] for q in states if q in f]
            parts.append(f"({_fmt_set(es, by_name)} {_fmt_set(fs, by_name)})")
        return ["acceptance: " + " ".join(parts)]
    family = acc.family
    if isinstance(family, UnionFamily):
        state_labels = {q: family.label(q) for q in states}
        used = set().union(*state_labels.values(), *family.base)
        if all(isinstance(x, str) and TOKEN.match(x) for x in used):
            lname = {x: x for x in used}
        else:
            lname = {x: f"l{i}" for i, x in enumerate(sorted(used, key=repr))}
        base = sorted((sorted(lname[x] for x in s) for s in family.base), key=lambda s: (len(s), s))
        lines = ["acceptance: " + " ".join(["muller-union"] + ["{" + " ".join(s) + "}" for s in base])]
        lines.append("labels:")
        for q in states:
            if state_labels[q]:
                lines.append(f"  {name[q]} -> " + " ".join(sorted(lname[x] for x in state_labels[q])))
        return lines
    sets = sorted(
        (sorted((name[q] for q in s), key=by_name) for s in family if all(q in name for q in s)),
        key=lambda s: (len(s), [by_name(x) for x in s]),
    )
    return ["acceptance: " + " ".join(["muller"] + ["{" + " ".join(s) + "}" for s in sets])]


# -- IDPDA and ω-IDPDA -------------------------------------------------------

def _parse_alphabet(block: _Block) -> PushdownAlphabet:
    parts = {}
    for key in ("call", "return", "internal"):
        parts[key] = [_check_token(t, "symbol") for t in _tokens(block.get(key, ""))]
        if len(set(parts[key])) != len(parts[key]):
            raise ParseError(f"repeated symbol in {key!r}", block.line(key))
    try:
        return PushdownAlphabet(parts["call"], parts["return"], parts["internal"])
    except DomainError as exc:
        raise ParseError(str(exc), block.line("call") or block.line("alphabet")) from None


def _parse_structure(block: _Block) -> tuple:
    sig = _parse_alphabet(block)
    states = [_check_token(t) for t in _tokens(block.need("states"))]
    known = set(states)
    initial = block.need("initial")
    if initial not in known:
        raise ParseError(f"initial state {initial!r} is not declared", block.line("initial"))
    stack = set(_tokens(block.get("stack", "")))
    strict = block.get("deterministic", "no") in ("yes", "true")
    internal, push, pop = {}, {}, {}

    def add(table, key, value, no):
        cell = table.setdefault(key, set())
        if strict and cell:
            raise ParseError(f"duplicate transition for {key!r} in a deterministic automaton", no)
        cell.add(value)

    for text, no in block.items("transitions"):
        left, sep, right = text.partition("->")
        if not sep:
            raise ParseError(f"transition without '->': {text!r}", no)
        lt, rt = left.split(), right.split()
        if len(lt) < 2 or not rt:
            raise ParseError(f"malformed transition {text!r}", no)
        q, a = lt[0], lt[1]
        if q not in known:
            raise ParseError(f"unknown state {q!r}", no)
        if a not in sig:
            raise ParseError(f"unknown symbol {a!r}", no)
        kind = sig.kind(a)
        r = rt[0]
        if r not in known:
            raise ParseError(f"unknown state {r!r}", no)
        if kind == 1:
            if len(lt) != 2 or len(rt) != 3 or rt[1] != "push":
                raise ParseError("call transitions are written 'q < -> r push s'", no)
            if rt[2] not in stack:
                raise ParseError(f"stack symbol {rt[2]!r} is not declared in 'stack:'", no)
            add(push, (q, a), (r, rt[2]), no)
        elif kind == -1:
            if len(lt) != 4 or lt[2] != "pop" or len(rt) != 1:
                raise ParseError("return transitions are written 'q > pop s -> r'", no)
            if lt[3] not in stack:
                raise ParseError(f"stack symbol {lt[3]!r} is not declared in 'stack:'", no)
            add(pop, (q, lt[3], a), r, no)
        else:
            if len(lt) != 2 or len(rt) != 1:
                raise ParseError("internal transitions are written 'q a -> r'", no)
            add(internal, (q, a), r, no)
    accepting = _tokens(block.get("accepting", ""))
    for q in accepting:
        if q not in known:
            raise ParseError(f"unknown state {q!r}", block.line("accepting"))
    aut = FiniteIdpda(sig, frozenset(states), initial, frozenset(stack), internal, push, pop, frozenset(accepting))
    return aut, known


def _canonical_names(states, initial, successors, prefix):
    """Keep plain-token names; otherwise number states in breadth-first order."""
    states = list(states)
    if all(isinstance(q, str) and TOKEN.match(q) for q in states):
        return {q: q for q in states}
    seen = {initial: 0}
    queue = deque([initial])
    while queue:
        q = queue.popleft()
        for r in successors(q):
            if r not in seen:
                seen[r] = len(seen)
                queue.append(r)
    rest = sorted((q for q in states if q not in seen), key=repr)
    for q in rest:
        seen[q] = len(seen)
    return {q: f"{prefix}{i}" for q, i in seen.items()}


def _idpda_names(aut: FiniteIdpda):
    sig = aut.alphabet
    syms = sig.symbols

    def succ(q):
        out = []
        for a in syms:
            kind = sig.kind(a)
            if kind == 0:
                out += sorted(aut.internal_moves(q, a), key=repr)
            elif kind == 1:
                out += [r for r, _ in sorted(aut.call_moves(q, a), key=repr)]
            else:
                for s in sorted(aut.stack, key=repr):
                    out += sorted(aut.return_moves(q, s, a), key=repr)
        return out

    names = _canonical_names(aut.states, aut.initial, succ, "q")
    pushed = []
    for q in sorted(aut.states, key=lambda x: _name_key(names[x])):
        for a in syms:
            if sig.kind(a) == 1:
                for _, s in sorted(aut.call_moves(q, a), key=lambda m: (_name_key(names[m[0]]), repr(m[1]))):
                    if s not in pushed:
                        pushed.append(s)
    pushed += sorted((s for s in aut.stack if s not in pushed), key=repr)
    if all(isinstance(s, str) and TOKEN.match(s) for s in aut.stack):
        stack_names = {s: s for s in aut.stack}
    else:
        stack_names = {s: f"s{i}" for i, s in enumerate(pushed)}
    return names, stack_names


def _name_key(t):
    m = re.match(r"^([a-z]+)(\d+)$", t)
    return (m.group(1), int(m.group(2)), "") if m else (t, -1, t)


def _structure_lines(aut: FiniteIdpda, names, stack_names, deterministic_flag=True) -> list[str]:
    sig = aut.alphabet
    order = sorted(aut.states, key=lambda q: _name_key(names[q]))
    lines = ["alphabet:"]
    lines.append("  call: " + " ".join(sorted(sig.calls)))
    lines.append("  return: " + " ".join(sorted(sig.returns)))
    lines.append("  internal: " + " ".join(sorted(sig.internals)))
    lines.append("states: " + " ".join(names[q] for q in order))
    lines.append(f"initial: {names[aut.initial]}")
    if aut.stack:
        lines.append("stack: " + " ".join(sorted((stack_names[s] for s in aut.stack), key=_name_key)))
    if deterministic_flag and aut.deterministic:
        lines.append("deterministic: yes")
    rows = []
    for q in order:
        for a in sig.symbols:
            kind = sig.kind(a)
            if kind == 0:
                for r in aut.internal_moves(q, a):
                    rows.append((names[q], a, 0, f"  {names[q]} {a} -> {names[r]}"))
            elif kind == 1:
                for r, s in aut.call_moves(q, a):
                    rows.append((names[q], a, 1, f"  {names[q]} {a} -> {names[r]} push {stack_names[s]}"))
            else:
                for s in aut.stack:
                    for r in aut.return_moves(q, s, a):
                        rows.append((names[q], a, 2, f"  {names[q]} {a} pop {stack_names[s]} -> {names[r]}"))
    rows.sort(key=lambda t: (_name_key(t[0]), t[1], t[3]))
    if rows:
        lines.append("transitions:")
        lines += [r[3] for r in rows]
    if aut.accepting:
        acc = sorted((names[q] for q in aut.accepting), key=_name_key)
        lines.append("accepting: " + " ".join(acc))
    return lines


def _rename_idpda(aut: FiniteIdpda, names, stack_names) -> FiniteIdpda:
    return FiniteIdpda(
        aut.alphabet,
        frozenset(names[q] for q in aut.states),
        names[aut.initial],
        frozenset(stack_names[s] for s in aut.stack),
        {(names[q], c): {names[r] for r in v} for (q, c), v in aut.internal.items()},
        {(names[q], c): {(names[r], stack_names[s]) for r, s in v} for (q, c), v in aut.push.items()},
        {(names[q], stack_names[s], c): {names[r] for r in v} for (q, s, c), v in aut.pop.items()},
        frozenset(names[q] for q in aut.accepting),
    )


# -- finite-alphabet ω-automata ------------------------------------------------

def parse_omega(text: str) -> OmegaAutomaton:
    return _omega_from_block(_Block(_numbered(text)))


def _omega_from_block(block: _Block) -> OmegaAutomaton:
    letters = [_check_token(t, "letter") for t in _tokens(block.need("letters"))]
    states = [_check_token(t) for t in _tokens(block.need("states"))]
    known = set(states)
    init = _tokens(block.need("initial"))
    for q in init:
        if q not in known:
            raise ParseError(f"unknown initial state {q!r}", block.line("initial"))
    table = {}
    strict = block.get("deterministic", "no") in ("yes", "true")
    for text, no in block.items("transitions"):
        left, sep, right = text.partition("->")
        lt, rt = left.split(), right.split()
        if not sep or len(lt) != 2 or len(rt) != 1:
            raise ParseError(f"transitions are written 'p a -> r', got {text!r}", no)
        p, a, r = lt[0], lt[1], rt[0]
        if p not in known or r not in known:
            raise ParseError(f"unknown state in {text!r}", no)
        if a not in letters:
            raise ParseError(f"unknown letter {a!r}", no)
        cell = table.setdefault((p, a), set())
        if strict and cell:
            raise ParseError(f"duplicate transition for {(p, a)!r} in a deterministic automaton", no)
        cell.add(r)
    acc = _parse_acceptance(block, known, allow_rabin=True)
    if acc is None:
        raise ParseError("missing 'acceptance' line")
    aut = OmegaAutomaton(letters, init, table, acc, states=states)
    if block.get("determinize") == "safra":
        if not isinstance(acc, Buchi):
            raise ParseError("'determinize: safra' needs a Büchi automaton", block.line("determinize"))
        return dra_to_dma(safra_determinize(aut))
    return aut


def _omega_lines(aut: OmegaAutomaton) -> list[str]:
    source = getattr(aut, "determinized_from", None)
    if source is not None:
        return _omega_lines(source) + ["determinize: safra"]
    states = aut.states
    order0 = sorted(states, key=repr)
    init = sorted(aut.initial, key=repr)

    def succ(q):
        return [r for a in aut.alphabet for r in sorted(aut.successors(q, a), key=repr)]

    if len(init) == 1:
        names = _canonical_names(order0, init[0], succ, "q")
    elif all(isinstance(q, str) and TOKEN.match(q) for q in states):
        names = {q: q for q in states}
    else:
        names = {q: f"q{i}" for i, q in enumerate(order0)}
    order = sorted(states, key=lambda q: _name_key(names[q]))
    lines = ["letters: " + " ".join(aut.alphabet)]
    lines.append("states: " + " ".join(names[q] for q in order))
    lines.append("initial: " + " ".join(sorted((names[q] for q in aut.initial), key=_name_key)))
    if aut.deterministic:
        lines.append("deterministic: yes")
    rows = []
    rank = {a: i for i, a in enumerate(aut.alphabet)}
    for q in order:
        for a in aut.alphabet:
            for r in aut.successors(q, a):
                rows.append(((_name_key(names[q]), rank[a], _name_key(names[r])), f"  {names[q]} {a} -> {names[r]}"))
    rows.sort()
    if rows:
        lines.append("transitions:")
        lines += [r for _, r in rows]
    lines += _acceptance_lines(aut.acceptance, order, names, rabin_ok=True)
    return lines


def serialize_omega(aut: OmegaAutomaton) -> str:
    return "\n".join(_omega_lines(aut)) + "\n"


# -- composite files -------------------------------------------------------------

def _class_label(behaviors: BehaviorAutomaton, witness, no):
    label = behaviors.label_after(witness)
    if label is None:
        raise ParseError(f"witness {show(witness)!r} is not an elementary word", no)
    return label


def _parse_classes(header: _Block, source: OmegaIdpda | FiniteIdpda):
    struct = source.structure if isinstance(source, OmegaIdpda) else source
    calculus = {"functions": FUNCTIONS, "relations": RELATIONS}.get(header.need("classes"))
    if calculus is None:
        raise ParseError("'classes' is 'functions' or 'relations'", header.line("classes"))
    if calculus is FUNCTIONS and not struct.deterministic:
        raise ParseError("behaviour functions need a deterministic source", header.line("classes"))
    behaviors = BehaviorAutomaton(struct, calculus)
    classes = []
    seen = set()
    for text, no in header.items("letters"):
        left, sep, right = text.partition("->")
        letter = left.strip()
        if not sep or not TOKEN.match(letter):
            raise ParseError(f"class lines are written 'letter -> witness', got {text!r}", no)
        try:
            witness = parse_word(right, struct.alphabet)
        except UnknownSymbolError as exc:
            raise ParseError(str(exc), no) from None
        label = _class_label(behaviors, witness, no)
        if label in seen:
            raise ParseError(f"class {letter!r} repeats an earlier class", no)
        seen.add(label)
        classes.append(ClassEntry(letter, label, behaviors.with_accepting({(label, OUTSIDE)}), witness))
    if not classes:
        raise ParseError("no classes listed under 'letters:'")
    return behaviors, classes


def _parse_composite(text: str):
    parts = _split_blocks(text)
    header = _Block(parts[""])
    for name in ("source", "omega"):
        if name not in parts:
            raise ParseError(f"missing [{name}] block")
    source = _parse_block_automaton(_Block(parts["source"]))
    behaviors, classes = _parse_classes(header, source)
    omega = _omega_from_block(_Block(parts["omega"]))
    if list(omega.alphabet) != [c.letter for c in classes]:
        raise ParseError("[omega] letters differ from the class letters")
    kind = header.get("kind")
    if kind == "decomposition":
        if not isinstance(source, OmegaIdpda):
            raise ParseError("a decomposition's source needs an acceptance line")
        return Decomposition(source, behaviors, tuple(classes), omega)
    outer = header.get("outer", "muller")
    try:
        if outer == "buchi":
            return compose_buchi(classes, omega)
        if outer == "muller":
            return compose_det_muller(classes, omega)
    except WellNestedError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError("'outer' is 'muller' or 'buchi'", header.line("outer"))


def _parse_block_automaton(block: _Block):
    struct, known = _parse_structure(block)
    acc = _parse_acceptance(block, known, allow_rabin=False)
    if acc is None:
        return struct
    try:
        return OmegaIdpda(struct, acc)
    except WellNestedError as exc:
        raise ParseError(str(exc), block.line("acceptance")) from None


def parse_automaton(text: str):
    """An :class:`OmegaIdpda`, a :class:`FiniteIdpda`, or a :class:`Decomposition`."""
    if re.search(r"^\s*\[[a-z]+\]\s*$", text, re.M):
        return _parse_composite(text)
    block = _Block(_numbered(text))
    if block.get("kind") not in (None, "automaton"):
        raise ParseError(f"kind {block.get('kind')!r} needs [source] and [omega] blocks", block.line("kind"))
    try:
        return _parse_block_automaton(block)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def _source_lines(source) -> list[str]:
    struct = source.structure if isinstance(source, OmegaIdpda) else source
    if not isinstance(struct, FiniteIdpda):
        struct = materialize(struct)
        source = OmegaIdpda(struct, source.acceptance) if isinstance(source, OmegaIdpda) else struct
    if isinstance(source, OmegaIdpda):
        return _automaton_lines(source)
    names, stack_names = _idpda_names(struct)
    return _structure_lines(struct, names, stack_names)


def _class_lines(kind, calculus, letters, witnesses, alphabet) -> list[str]:
    lines = [f"kind: {kind}", f"classes: {'functions' if calculus is FUNCTIONS else 'relations'}", "letters:"]
    lines += [f"  {a} -> {' '.join(w)}" for a, w in zip(letters, witnesses)]
    return lines


def serialize_decomposition(dec: Decomposition) -> str:
    lines = _class_lines("decomposition", dec.automaton.calculus, dec.letters,
                         [c.witness for c in dec.classes], dec.source.alphabet)
    lines.append("[source]")
    lines += _source_lines(dec.source)
    lines.append("[omega]")
    lines += _omega_lines(dec.omega)
    return "\n".join(lines) + "\n"


def _composed_lines(aut: OmegaIdpda) -> list[str] | None:
    struct = aut.structure
    if not isinstance(struct, ComposedIdpda) or struct.witnesses is None:
        return None
    root = struct.shared
    if not isinstance(root, BehaviorAutomaton):
        return None
    lines = _class_lines("composed", root.calculus, struct.letters, struct.witnesses, struct.alphabet)
    lines.insert(1, f"outer: {'buchi' if aut.is_buchi else 'muller'}")
    lines.append("[source]")
    lines += _source_lines(root.source)
    lines.append("[omega]")
    lines += _omega_lines(struct.omega)
    return lines


def _automaton_lines(aut: OmegaIdpda) -> list[str]:
    struct = aut.structure
    if not isinstance(struct, FiniteIdpda):
        struct = materialize(struct)
    names, stack_names = _idpda_names(struct)
    order = sorted(struct.states, key=lambda q: _name_key(names[q]))
    lines = _structure_lines(struct.with_accepting(()), names, stack_names)
    lines += _acceptance_lines(aut.acceptance, order, names, rabin_ok=False)
    return lines


def serialize_automaton(aut, explicit: bool = False) -> str:
    """Canonical text of an automaton or decomposition.

    A composed automaton built from behaviour classes is written as its
    classes and outer ω-automaton unless ``explicit`` asks for the
    tabulated form, which can be very large.
    """
    if isinstance(aut, Decomposition):
        return serialize_decomposition(aut)
    if isinstance(aut, OmegaIdpda):
        lines = None if explicit else _composed_lines(aut)
        if lines is None:
            lines = _automaton_lines(aut)
    elif isinstance(aut, FiniteIdpda):
        names, stack_names = _idpda_names(aut)
        lines = _structure_lines(aut, names, stack_names)
    else:
        raise TypeError(f"cannot serialize {type(aut).__name__}")
    return "\n".join(lines) + "\n"


def canonical_copy(aut: FiniteIdpda) -> FiniteIdpda:
    """The automaton with the state and stack names its serialization uses."""
    names, stack_names = _idpda_names(aut)
    return _rename_idpda(aut, names, stack_names)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def load_omega(path):
    with open(path, encoding="utf-8") as fh:
        return parse_omega(fh.read())
