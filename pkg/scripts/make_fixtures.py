"""Regenerate the files under fixtures/.

Usage: python scripts/make_fixtures.py [target-dir]
"""

import contextlib
import io
import os
import sys

from wellnested import Buchi, Muller, OmegaIdpda, PushdownAlphabet, determinize, make_idpda, to_nondet_buchi
from wellnested.cli import main as cli_main
from wellnested.io import serialize_automaton


def fixtures():
    sig = PushdownAlphabet("<", ">", "a")
    m = make_idpda(
        sig, "pq", "p", "s",
        internal=[("p", "a", "q"), ("q", "a", "p")],
        push=[("p", "<", "p", "s"), ("q", "<", "q", "s")],
        pop=[("p", ">", "s", "p"), ("q", ">", "s", "q")],
    )
    ref = OmegaIdpda(m, Muller([{"p", "q"}]))
    guess = OmegaIdpda(make_idpda(sig, "pq", "p", "s", internal=[("p", "a", "p"), ("p", "a", "q"), ("q", "a", "q")]),
                       Buchi({"q"}))
    one = make_idpda(PushdownAlphabet((), (), "a"), ["q0"], "q0", internal=[("q0", "a", "q0")])
    return {
        "m_ref.aut": ref,
        "m_ref_p.aut": OmegaIdpda(m, Muller([{"p"}])),
        "m_ref_empty.aut": OmegaIdpda(m, Muller([])),
        "m_ref_det.aut": determinize(ref),
        "m_ref_buchi.aut": to_nondet_buchi(ref),
        "guess_buchi.aut": guess,
        "guess_det.aut": determinize(guess),
        "one_state.aut": OmegaIdpda(one, Muller([{"q0"}])),
    }


def write_all(target):
    os.makedirs(target, exist_ok=True)
    for name, aut in fixtures().items():
        with open(os.path.join(target, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_automaton(aut))
    with contextlib.redirect_stdout(io.StringIO()):
        cli_main(["decompose", os.path.join(target, "m_ref.aut"),
                  "--out-dir", os.path.join(target, "m_ref_decomposition")])


if __name__ == "__main__":
    write_all(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "fixtures"))
