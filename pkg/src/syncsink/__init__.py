"""Synchronizing automata with a sink state: constructions, exact reset thresholds, search."""

from .automaton import (
    ApProfile,
    AutomatonError,
    Dfa,
    StateSet,
    almost_permutation_profile,
    apply_word,
    find_sink,
    is_permutation_on,
    is_synchronizing,
    letter_order,
    relabel,
    step,
)
from .constructions import (
    FamilyParams,
    TailSpec,
    a_series,
    b_series,
    cerny,
    fig1_chain,
    fig2_body,
    martyugin,
    paper_reset_word,
    predict_tailed_rt,
    tail_append,
)
from .experiments import check_tail_lemma, compare_bounds, reproduce_paper_table
from .formats import ParseError, export_dot, parse_automaton, serialize_automaton
from .search import Finding, SearchConfig, canonical_form, enumerate_candidates, search_extremal
from .solver import (
    RtResult,
    SolverLimitExceeded,
    SolverLimits,
    brute_force_rt,
    exact_reset_threshold,
    greedy_upper_bound,
    verify_reset_word,
)

__version__ = "0.1.0"
