"""End-to-end conversions between the ω-IDPDA variants, and a bounded equivalence check."""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import LassoWord, enumerate_lassos
from .characterization import class_bound, decompose, decompose_nondet
from .composition import compose_buchi, compose_det_muller
from .errors import DomainError
from .omega_idpda import OmegaIdpda, buchi_to_muller, lasso_accepts
from .omega_regular import dra_to_dma, nma_to_nba
from .safra import safra_determinize


def _as_muller(aut: OmegaIdpda) -> OmegaIdpda:
    return buchi_to_muller(aut) if aut.is_buchi else aut


@dataclass
class ConversionReport:
    """Sizes of the intermediate objects of a conversion."""

    source_states: int
    classes: int
    class_bound: int
    omega_states: int
    buchi_states: int

    def lines(self) -> list[str]:
        return [
            f"source states: {self.source_states}",
            f"behaviour classes: {self.classes} (bound {self.class_bound})",
            f"ω-automaton states: {self.omega_states}",
            f"Büchi automaton states: {self.buchi_states}",
        ]


def _report(aut, dec, nba) -> ConversionReport:
    n = len(aut.structure.states)
    return ConversionReport(n, len(dec.classes), class_bound(n, dec.deterministic),
                            len(dec.omega.states), len(nba.states))


def determinize(aut: OmegaIdpda, report: bool = False):
    """Deterministic Muller ω-IDPDA equivalent to ``aut`` on well-nested words.

    The relation decomposition's ω-automaton is turned into a Büchi
    automaton, determinized by Safra's construction and recomposed.  The
    deterministic part is built on demand as inputs are read.
    """
    aut = _as_muller(aut)
    dec = decompose_nondet(aut)
    nba = nma_to_nba(dec.omega)
    dma = dra_to_dma(safra_determinize(nba))
    out = compose_det_muller(dec.classes, dma, dec.letters)
    return (out, _report(aut, dec, nba)) if report else out


def to_nondet_buchi(aut: OmegaIdpda, report: bool = False):
    """Büchi ω-IDPDA equivalent to ``aut`` on well-nested words."""
    aut = _as_muller(aut)
    dec = decompose(aut)
    nba = nma_to_nba(dec.omega)
    out = compose_buchi(dec.classes, nba, dec.letters)
    return (out, _report(aut, dec, nba)) if report else out


@dataclass(frozen=True)
class Equal:
    checked: int

    def __bool__(self):
        return True

    def __str__(self):
        return "equal"


@dataclass(frozen=True)
class Counterexample:
    lasso: LassoWord
    left: bool
    right: bool

    def __bool__(self):
        return False

    def __str__(self):
        return str(self.lasso)


def bounded_equivalence(a: OmegaIdpda, b: OmegaIdpda, max_u: int, max_v: int):
    """Compare two ω-IDPDA on every well-nested lasso within the bounds.

    Lassos are visited in a fixed order, so the counterexample returned is
    always the same one.
    """
    if a.alphabet != b.alphabet:
        raise DomainError("automata over different alphabets")
    lassos = enumerate_lassos(a.alphabet, max_u, max_v)
    for lasso in lassos:
        x, y = lasso_accepts(a, lasso), lasso_accepts(b, lasso)
        if x != y:
            return Counterexample(lasso, x, y)
    return Equal(len(lassos))
