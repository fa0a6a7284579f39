"""Input-driven pushdown automata on well-nested infinite words.

The package decides acceptance of ultimately periodic well-nested words,
splits an ω-IDPDA into behaviour classes and a finite-alphabet
ω-automaton, puts such pieces back together, and uses both directions to
determinize ω-IDPDA and to turn Muller acceptance into Büchi acceptance.
"""

from .acceptance import Buchi, ExplicitFamily, Muller, Rabin, RabinFamily, UnionFamily
from .alphabet import (
    LassoWord,
    PushdownAlphabet,
    enumerate_lassos,
    factor_elementary,
    is_elementary,
    is_well_nested,
    lasso_well_nested,
    normalize_lasso,
    word,
)
from .behavior import behavior_automaton, behavior_of, reachable_behaviors, relation_of
from .characterization import Decomposition, decompose, decompose_det, decompose_nondet, encode_lasso
from .composition import check_pairwise_disjoint, compose_buchi, compose_det_muller
from .idpda import FiniteIdpda, make_idpda
from .omega_idpda import OmegaIdpda, buchi_to_muller, det_lasso_accepts, lasso_accepts, nondet_lasso_accepts
from .omega_regular import OmegaAutomaton, fin_lasso_accepts, make_automaton
from .pipeline import Counterexample, Equal, bounded_equivalence, determinize, to_nondet_buchi
from .wadge import backward_reduction, forward_reduction, monitor_step

__all__ = [name for name in dir() if not name.startswith("_")]
