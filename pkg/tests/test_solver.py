import numpy as np
import pytest
from hypothesis import given, settings

from syncsink.automaton import Dfa, find_sink, relabel
from syncsink.constructions import (
    TailSpec,
    a_series,
    b_series,
    cerny,
    fig1_chain,
    martyugin,
    paper_reset_word,
    tail_append,
)
from syncsink.solver import (
    SolverLimitExceeded,
    SolverLimits,
    brute_force_rt,
    exact_reset_threshold,
    greedy_upper_bound,
    pair_merge_table,
    verify_reset_word,
)

from .conftest import automata, random_sink_automaton, sink_automata


@pytest.mark.parametrize(
    "dfa, expected",
    [
        (cerny(4), 9),
        (a_series(8), 20),
        (martyugin(4), 24),
        (fig1_chain(4), 6),
        (b_series(16), 87),
    ],
    ids=["cerny4", "A8", "M8", "fig1-4", "B16"],
)
def test_exact_examples(dfa, expected):
    res = exact_reset_threshold(dfa)
    assert res.synchronizing
    assert res.threshold == expected == len(res.witness)
    assert verify_reset_word(dfa, res.witness)


def test_single_state():
    res = exact_reset_threshold(Dfa(((0, 0),)))
    assert res.threshold == 0 and res.witness == ()


def test_not_synchronizing():
    res = exact_reset_threshold(Dfa(((0, 0), (1, 1))))
    assert not res.synchronizing and res.threshold is None and res.witness is None


def test_limits():
    with pytest.raises(SolverLimitExceeded):
        exact_reset_threshold(a_series(9), SolverLimits(max_length=22))
    with pytest.raises(SolverLimitExceeded):
        exact_reset_threshold(a_series(9), SolverLimits(max_subsets=50))
    with pytest.raises(SolverLimitExceeded):
        exact_reset_threshold(a_series(16), SolverLimits(max_subsets=50))
    assert exact_reset_threshold(a_series(9), SolverLimits(max_length=23)).threshold == 23
    with pytest.raises(ValueError):
        SolverLimits(max_subsets=0)


def test_witness_is_lexicographically_least():
    for d in (cerny(3), cerny(4), a_series(7), martyugin(4)):
        res = exact_reset_threshold(d)
        assert brute_force_rt(d, res.threshold).witness == res.witness


@pytest.mark.parametrize("dfa", [a_series(13), a_series(14), b_series(16), cerny(13), martyugin(7)], ids=str)
def test_engines_agree(dfa):
    assert exact_reset_threshold(dfa, engine="python") == exact_reset_threshold(dfa, engine="numpy")


def test_wide_masks():
    # more than 64 states goes through the arbitrary-width path
    d = tail_append(a_series(9), TailSpec(66, 1, 1))
    res = exact_reset_threshold(d, SolverLimits(max_length=1000))
    assert d.n == 75
    assert res.threshold == 23 + 9 * 66
    assert verify_reset_word(d, res.witness)
    with pytest.raises(ValueError):
        exact_reset_threshold(d, engine="numpy")


class TestBruteForce:
    def test_examples(self):
        assert brute_force_rt(cerny(3), 10).threshold == 4
        res = brute_force_rt(Dfa(((0, 0),)), 3)
        assert res.threshold == 0 and res.witness == ()
        res = brute_force_rt(Dfa(((0, 0), (1, 0))), 5)
        assert res.threshold == 1 and res.witness == (1,)

    def test_not_found(self):
        assert brute_force_rt(cerny(4), 8) is None
        assert brute_force_rt(Dfa(((0, 0), (1, 1))), 6) is None


class TestGreedy:
    def test_examples(self):
        w = greedy_upper_bound(cerny(3))
        assert len(w) >= 4 and verify_reset_word(cerny(3), w)
        assert greedy_upper_bound(Dfa(((0, 0),))) == ()
        w = greedy_upper_bound(a_series(7))
        assert len(w) >= 15 and verify_reset_word(a_series(7), w)

    def test_not_synchronizing(self):
        assert greedy_upper_bound(Dfa(((0, 0), (1, 1)))) is None

    def test_pair_table_distances(self):
        d = cerny(4)
        table = pair_merge_table(d)
        for (p, q), (dist, letter, nxt) in table.items():
            assert d.delta[p][letter] in nxt and d.delta[q][letter] in nxt
            assert dist == 1 + (table[nxt][0] if nxt[0] != nxt[1] else 0)

    @given(automata(max_n=6))
    @settings(max_examples=150)
    def test_dominates_exact(self, d):
        w = greedy_upper_bound(d)
        res = exact_reset_threshold(d)
        assert (w is not None) == res.synchronizing
        if w is not None:
            assert verify_reset_word(d, w)
            assert len(w) >= res.threshold


class TestVerify:
    def test_paper_word(self):
        d = a_series(7)
        w = paper_reset_word(7)
        assert verify_reset_word(d, w)
        assert not verify_reset_word(d, w[:-1])

    def test_empty_word(self):
        assert not verify_reset_word(cerny(3), ())
        assert verify_reset_word(Dfa(((0,),)), ())


@given(automata(max_n=5, max_k=2))
@settings(max_examples=200)
def test_witness_valid_and_matches_oracle(d):
    res = exact_reset_threshold(d)
    oracle = brute_force_rt(d, 16)
    if res.synchronizing:
        assert verify_reset_word(d, res.witness)
        assert oracle.threshold == res.threshold and oracle.witness == res.witness
    else:
        assert oracle is None


@given(sink_automata(max_n=6))
@settings(max_examples=200)
def test_sink_criterion_and_ryzhikov_bound(d):
    res = exact_reset_threshold(d)
    z = find_sink(d)
    if z is None:
        return
    can_reach = all(_reaches(d, q, z) for q in range(d.n))
    assert res.synchronizing == can_reach
    if res.synchronizing:
        assert res.threshold <= d.n * (d.n - 1) // 2


def _reaches(d, q, z):
    seen = {q}
    stack = [q]
    while stack:
        p = stack.pop()
        for t in d.delta[p]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return z in seen


def test_deterministic():
    rng = np.random.default_rng(7)
    for _ in range(20):
        d = random_sink_automaton(rng, 6)
        assert exact_reset_threshold(d) == exact_reset_threshold(d)


def test_relabel_keeps_witness():
    d = a_series(9)
    perm = (0, 8, 7, 6, 5, 4, 3, 2, 1)
    assert exact_reset_threshold(relabel(d, perm)) == exact_reset_threshold(d)
