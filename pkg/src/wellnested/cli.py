"""Command-line interface.

Exit status is 0 for a positive answer (accept, well-nested, equal), 1 for
a negative one, 2 for usage and input-format errors and 3 when an
operation is applied to an automaton of the wrong kind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .alphabet import LassoWord, PushdownAlphabet, is_well_nested, lasso_well_nested
from .behavior import behavior_of, relation_of
from .characterization import Decomposition, class_bound, decompose
from .composition import compose_buchi, compose_det_muller
from .errors import ContractError, DomainError, ParseError, UnknownSymbolError, WellNestedError
from .idpda import FiniteIdpda, materialize
from .io import (
    format_lasso,
    load,
    load_omega,
    parse_lasso,
    parse_word,
    serialize_automaton,
    serialize_omega,
)
from .omega_idpda import OmegaIdpda, det_lasso_run, nondet_lasso_accepts
from .pipeline import bounded_equivalence, determinize, to_nondet_buchi
from .wadge import MonitorState, backward_reduction, forward_reduction, monitor_step

MANIFEST = "decomposition.txt"


class InputError(Exception):
    pass


def _load_omega_idpda(path) -> OmegaIdpda:
    aut = load(path)
    if isinstance(aut, Decomposition):
        return aut.source
    if not isinstance(aut, OmegaIdpda):
        raise InputError(f"{path}: no acceptance condition, so this is not an ω-IDPDA")
    return aut


def _load_decomposition(path) -> Decomposition:
    if os.path.isdir(path):
        path = os.path.join(path, MANIFEST)
    dec = load(path)
    if not isinstance(dec, Decomposition):
        raise InputError(f"{path}: not a decomposition file")
    return dec


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _plain_alphabet(args, text) -> PushdownAlphabet:
    calls, rets = set(args.calls), set(args.returns)
    others = {ch for ch in text if not ch.isspace() and ch not in calls | rets and ch != "$"}
    return PushdownAlphabet(calls, rets, others)


# -- subcommands ---------------------------------------------------------------

def cmd_check_wn(args):
    if args.automaton:
        sig = load(args.automaton)
        sig = sig.alphabet if not isinstance(sig, Decomposition) else sig.source.alphabet
    else:
        sig = _plain_alphabet(args, args.lasso)
    if "$" in args.lasso:
        ok = lasso_well_nested(sig, parse_lasso(args.lasso, sig))
    else:
        ok = is_well_nested(sig, parse_word(args.lasso, sig))
    print("well-nested" if ok else "ill-nested")
    return 0 if ok else 1


def cmd_accept(args):
    aut = _load_omega_idpda(args.automaton)
    lasso = parse_lasso(args.lasso, aut.alphabet)
    if aut.deterministic and not args.nondet_oracle:
        run = det_lasso_run(aut, lasso)
        verdict = run.accepted
        note = " (the run dies)" if run.dead else ""
    else:
        verdict, note = nondet_lasso_accepts(aut, lasso), ""
    print(("accept" if verdict else "reject") + note)
    return 0 if verdict else 1


def cmd_behavior(args):
    aut = load(args.automaton)
    struct = aut.structure if isinstance(aut, OmegaIdpda) else aut
    if isinstance(aut, Decomposition):
        struct = aut.source.structure
    w = parse_word(args.word, struct.alphabet)
    if not isinstance(struct, FiniteIdpda):
        struct = materialize(struct)
    order = sorted(struct.states, key=repr)
    fmt = lambda s: "{" + " ".join(sorted(map(str, s))) + "}"
    if struct.deterministic and not args.relation:
        f = behavior_of(struct, w)
        for p in order:
            out = f.get(p)
            print(f"{p} -> {out[0]} {fmt(out[1])}" if out else f"{p} -> dead")
    else:
        r = relation_of(struct, w)
        for p, s, q in sorted(r.triples, key=lambda t: (repr(t[0]), repr(t[2]), sorted(map(repr, t[1])))):
            print(f"{p} {fmt(s)} {q}")
    return 0


def _report(aut, dec) -> list[str]:
    n = len(aut.structure.states)
    return [
        f"source states: {n}",
        f"behaviour classes: {len(dec.classes)} (bound {class_bound(n, dec.deterministic)})",
        f"ω-automaton states: {len(dec.omega.states)} (at most {n * 2 ** n})",
    ]


def cmd_decompose(args):
    aut = _load_omega_idpda(args.automaton)
    if aut.is_buchi:
        raise ContractError("decompose needs Muller acceptance")
    dec = decompose(aut)
    os.makedirs(args.out_dir, exist_ok=True)
    _write(serialize_automaton(dec), os.path.join(args.out_dir, MANIFEST))
    _write(serialize_omega(dec.omega), os.path.join(args.out_dir, "omega.txt"))
    table = materialize(dec.automaton)
    for c in dec.classes:
        rec = table.with_accepting({s for s in table.states if s == (c.label, 0)})
        _write(serialize_automaton(rec), os.path.join(args.out_dir, f"class_{c.letter}.aut"))
    with open(os.path.join(args.out_dir, "witnesses.txt"), "w", encoding="utf-8") as fh:
        for c in dec.classes:
            fh.write(f"{c.letter} {' '.join(c.witness)}\n")
    for line in _report(aut, dec):
        print(line)
    return 0


def cmd_compose(args):
    dec = _load_decomposition(args.classes)
    omega = load_omega(args.omega) if args.omega else dec.omega
    if args.buchi:
        out = compose_buchi(dec.classes, omega, dec.letters)
    else:
        out = compose_det_muller(dec.classes, omega, dec.letters)
    _write(serialize_automaton(out, explicit=args.explicit), args.output)
    return 0


def _convert(args, convert):
    aut = _load_omega_idpda(args.automaton)
    out, report = convert(aut, report=True)
    _write(serialize_automaton(out, explicit=args.explicit), args.output)
    stream = sys.stdout if args.output not in (None, "-") else sys.stderr
    for line in report.lines():
        print(line, file=stream)
    return 0


def cmd_determinize(args):
    return _convert(args, determinize)


def cmd_to_buchi(args):
    return _convert(args, to_nondet_buchi)


def cmd_equiv(args):
    a, b = _load_omega_idpda(args.a), _load_omega_idpda(args.b)
    result = bounded_equivalence(a, b, args.max_u, args.max_v)
    if result:
        print("equal")
        return 0
    print(format_lasso(result.lasso, a.alphabet))
    side = lambda x: "accepts" if x else "rejects"
    print(f"first automaton {side(result.left)}, second {side(result.right)}", file=sys.stderr)
    return 1


def _letter_lasso(text, letters):
    if text.count("$") != 1:
        raise ParseError("a lasso is written 'u $ v' with exactly one '$'")
    u, v = (part.split() for part in text.split("$"))
    for a in u + v:
        if a not in letters:
            raise ParseError(f"unknown class letter {a!r}")
    if not v:
        raise ParseError("the period of a lasso must be nonempty")
    return u, v


def cmd_reduce(args):
    dec = _load_decomposition(args.decomposition)
    if args.backward:
        u, v = _letter_lasso(args.lasso, set(dec.letters))
        out = backward_reduction(dec, LassoWord(tuple(u), tuple(v)))
        print(format_lasso(out, dec.source.alphabet))
    else:
        out = forward_reduction(dec, parse_lasso(args.lasso, dec.source.alphabet))
        print(format_lasso(out))
    return 0


def cmd_monitor(args):
    fixed = None
    if args.automaton:
        fixed = _load_omega_idpda(args.automaton).alphabet
    seen = set()
    state = MonitorState()
    for line in sys.stdin:
        sym = line.strip()
        if not sym:
            continue
        if fixed is not None:
            sig = fixed
        else:
            if sym not in args.calls and sym not in args.returns:
                seen.add(sym)
            sig = PushdownAlphabet(set(args.calls), set(args.returns), seen)
        was_failed = state.failed
        state = monitor_step(sig, state, sym)
        if state.failed:
            event = "failed" if not was_failed else "stopped"
        elif state.depth == 0:
            event = "well-nested-prefix"
        else:
            event = "step"
        record = {
            "symbol": sym,
            "depth": state.depth,
            "prefixes_seen": state.well_nested_prefixes_seen,
            "failed": state.failed,
            "event": event,
        }
        print(json.dumps(record), flush=True)
    return 1 if state.failed else 0


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wellnested", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def alphabet_options(sp):
        sp.add_argument("--automaton", help="take the alphabet from this automaton file")
        sp.add_argument("--calls", default="<", help="call symbols (default '<')")
        sp.add_argument("--returns", default=">", help="return symbols (default '>')")

    sp = sub.add_parser("check-wn", help="is a word or lasso 'u $ v' well-nested?")
    sp.add_argument("lasso")
    alphabet_options(sp)
    sp.set_defaults(func=cmd_check_wn)

    sp = sub.add_parser("accept", help="does an ω-IDPDA accept a lasso?")
    sp.add_argument("automaton")
    sp.add_argument("lasso")
    sp.add_argument("--nondet-oracle", action="store_true", help="use the run-set decider")
    sp.set_defaults(func=cmd_accept)

    sp = sub.add_parser("behavior", help="behaviour table of a well-nested word")
    sp.add_argument("automaton")
    sp.add_argument("word")
    sp.add_argument("--relation", action="store_true", help="print the relation even if deterministic")
    sp.set_defaults(func=cmd_behavior)

    sp = sub.add_parser("decompose", help="write behaviour classes and the ω-automaton")
    sp.add_argument("automaton")
    sp.add_argument("--out-dir", required=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("compose", help="build an ω-IDPDA from classes and an ω-automaton")
    sp.add_argument("--classes", required=True, help="decomposition directory or manifest")
    sp.add_argument("--omega", help="ω-automaton file (default: the decomposition's own)")
    sp.add_argument("--buchi", action="store_true", help="the ω-automaton is a Büchi automaton")
    sp.add_argument("--explicit", action="store_true", help="write transition tables")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compose)

    for name, func, text in (("determinize", cmd_determinize, "deterministic Muller equivalent"),
                             ("to-buchi", cmd_to_buchi, "nondeterministic Büchi equivalent")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("automaton")
        sp.add_argument("--explicit", action="store_true", help="write transition tables")
        sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)

    sp = sub.add_parser("equiv", help="compare two ω-IDPDA on bounded lassos")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--max-u", type=int, default=3)
    sp.add_argument("--max-v", type=int, default=5)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("reduce", help="image of a lasso under the class relabelling")
    sp.add_argument("decomposition")
    sp.add_argument("lasso")
    sp.add_argument("--backward", action="store_true", help="map class letters back to witnesses")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("monitor", help="stream symbols from stdin through the well-nestedness monitor")
    alphabet_options(sp)
    sp.set_defaults(func=cmd_monitor)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError, UnknownSymbolError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ContractError, DomainError, WellNestedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
