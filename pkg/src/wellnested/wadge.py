"""Continuous reductions between an ω-IDPDA language and its class-letter language.

The forward map relabels each elementary factor by its class letter; the
backward map substitutes each letter by its class's stored witness.  Both
act factor by factor, which is what makes them continuous.  A streaming
monitor checks well-nestedness of the input on finite prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .alphabet import CALL, RETURN, LassoWord, PushdownAlphabet, as_lasso, factor_elementary
from .characterization import Decomposition, encode_lasso
from .errors import UnknownSymbolError


def forward_reduction(dec: Decomposition, lasso) -> LassoWord:
    return encode_lasso(dec, lasso)


def encode_word(dec: Decomposition, w) -> tuple:
    """Class letters of the elementary factors of a finite well-nested word."""
    return tuple(dec.letter_of(x) for x in factor_elementary(dec.source.alphabet, tuple(w)))


def backward_reduction(dec: Decomposition, lasso) -> LassoWord:
    lasso = as_lasso(lasso)
    witness = {c.letter: c.witness for c in dec.classes}

    def expand(part, where):
        out = []
        for i, a in enumerate(part):
            if a not in witness:
                raise UnknownSymbolError(a, f"{where}[{i}]")
            out.extend(witness[a])
        return tuple(out)

    return LassoWord(expand(lasso.prefix, "prefix"), expand(lasso.period, "period"))


@dataclass(frozen=True)
class MonitorState:
    depth: int = 0
    well_nested_prefixes_seen: int = 0
    failed: bool = False


def monitor_step(alphabet: PushdownAlphabet, state: MonitorState, symbol) -> MonitorState:
    """Advance the well-nestedness monitor by one symbol.

    A return at depth 0 fails the monitor for good.  Every prefix that
    ends at depth 0 is counted as a well-nested prefix.
    """
    kind = alphabet.kind(symbol)
    if state.failed:
        return state
    if kind == RETURN and state.depth == 0:
        return replace(state, failed=True)
    depth = state.depth + (1 if kind == CALL else -1 if kind == RETURN else 0)
    seen = state.well_nested_prefixes_seen + (depth == 0)
    return MonitorState(depth, seen, False)


def run_monitor(alphabet: PushdownAlphabet, symbols, state: MonitorState | None = None):
    """Yield the monitor state after each symbol."""
    state = MonitorState() if state is None else state
    for a in symbols:
        state = monitor_step(alphabet, state, a)
        yield state


def monitor_window(lasso: LassoWord) -> int:
    """Number of symbols after which the monitor's verdict on a lasso is final.

    With net period depth ``d``, a negative ``d`` fails within
    ``|u| + 1`` periods, and a positive one keeps the depth above 0 from
    the second period on, so ``|u| + 2`` periods settle every case.
    """
    return len(lasso.prefix) + (len(lasso.prefix) + 2) * len(lasso.period)


def monitor_lasso_verdict(alphabet: PushdownAlphabet, lasso) -> bool:
    """Well-nestedness of a lasso judged by the streaming monitor alone.

    True iff the monitor has not failed over the window and its count of
    well-nested prefixes grew during the last period of the window.
    """
    lasso = as_lasso(lasso)
    n = monitor_window(lasso)
    states = list(run_monitor(alphabet, lasso.take(n)))
    last = states[-1]
    before = states[-1 - len(lasso.period)] if n > len(lasso.period) else MonitorState()
    return not last.failed and last.well_nested_prefixes_seen > before.well_nested_prefixes_seen
