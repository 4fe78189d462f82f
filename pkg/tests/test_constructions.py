import pytest

from syncsink.automaton import (
    ApProfile,
    AutomatonError,
    almost_permutation_profile,
    find_sink,
    is_permutation_on,
    is_synchronizing,
    letter_order,
    relabel,
)
from syncsink.constructions import (
    FAMILIES,
    FamilyParams,
    TailSpec,
    a_series,
    b_series,
    canonical_tail_relabeling,
    cerny,
    fig1_chain,
    fig2_body,
    fig2_label,
    martyugin,
    paper_reset_word,
    predict_tailed_rt,
    tail_append,
)
from syncsink.solver import exact_reset_threshold, verify_reset_word

A, B = 0, 1


def rt(d):
    return exact_reset_threshold(d).threshold


class TestCerny:
    @pytest.mark.parametrize("n, expected", [(2, 1), (4, 9), (6, 25)])
    def test_threshold(self, n, expected):
        assert rt(cerny(n)) == expected

    def test_too_small(self):
        with pytest.raises(AutomatonError):
            cerny(1)


class TestFig1:
    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 3), (4, 6)])
    def test_threshold(self, n, expected):
        assert rt(fig1_chain(n)) == expected

    def test_loops(self):
        # state i is fixed by every letter except a_i and a_(i+1)
        d = fig1_chain(6)
        for q in range(1, 6):
            moving = {l + 1 for l in range(d.k) if d.delta[q][l] != q}
            assert moving == {i for i in (q, q + 1) if i <= 5}
        assert find_sink(d) == 0


class TestFig2Body:
    def test_profile(self):
        p = almost_permutation_profile(fig2_body(4))
        assert p == ApProfile(0, 1, A, B)
        assert (fig2_label(4, p.sink), fig2_label(4, p.pre_sink)) == (3, 4)

    def test_order(self):
        assert letter_order(fig2_body(5), A) == 4

    def test_synchronizing(self):
        assert is_synchronizing(fig2_body(4))

    def test_too_small(self):
        with pytest.raises(AutomatonError):
            fig2_body(3)


class TestMartyugin:
    @pytest.mark.parametrize("m, expected", [(4, 24), (5, 36)])
    def test_threshold(self, m, expected):
        assert rt(martyugin(m)) == expected

    def test_sink(self):
        assert find_sink(martyugin(4)) == 0

    @pytest.mark.parametrize("m", range(4, 8))
    def test_is_tailed_body(self, m):
        tailed = tail_append(fig2_body(m), TailSpec(m - 1, 1, A))
        assert relabel(tailed, canonical_tail_relabeling(m + 1, m - 1, m - 1)) == martyugin(m)


class TestASeries:
    def test_fig3_edges(self):
        d = a_series(8)
        a = {0: 0, 1: 0, 2: 4, 3: 2, 4: 3, 5: 6, 6: 5, 7: 7}
        b = {0: 0, 1: 3, 2: 1, 3: 2, 4: 5, 5: 4, 6: 7, 7: 6}
        assert d.column(A) == tuple(a[q] for q in range(8))
        assert d.column(B) == tuple(b[q] for q in range(8))

    def test_fig4_edges(self):
        d = a_series(9)
        assert d.delta[7][A] == 8 and d.delta[8][A] == 7 and d.delta[8][B] == 8
        assert d.delta[7][B] == 6

    @pytest.mark.parametrize("n, expected", [(7, 15), (8, 20), (9, 23), (10, 27)])
    def test_threshold(self, n, expected):
        assert rt(a_series(n)) == expected

    @pytest.mark.parametrize("n", range(5, 14))
    def test_lower_bound(self, n):
        assert rt(a_series(n)) >= 4 * n - 13

    @pytest.mark.parametrize("n", range(6, 14))
    def test_structure(self, n):
        d = a_series(n)
        assert letter_order(d, B) == 6
        assert is_permutation_on(d, A, [q for q in range(n) if q != 1])
        assert almost_permutation_profile(d) == ApProfile(0, 1, B, A)

    def test_too_small(self):
        with pytest.raises(AutomatonError):
            a_series(4)


class TestTailAppend:
    def test_zero_tail(self):
        d = a_series(7)
        assert tail_append(d, TailSpec(0, 1, B)) == d

    def test_a7_tail(self):
        d = tail_append(a_series(7), TailSpec(6, 1, B))
        assert d.n == 13
        assert find_sink(d) == 7
        assert rt(d) == 15 + 7 * 6 == 57

    def test_tail_shape(self):
        d = tail_append(a_series(7), TailSpec(3, 1, B))
        assert d.delta[0] == (1, 9)
        assert d.delta[7] == (7, 7)
        assert d.delta[8] == (1, 7) and d.delta[9] == (1, 8)

    @pytest.mark.parametrize(
        "base, spec",
        [
            (cerny(4), TailSpec(3, 1, A)),
            (a_series(7), TailSpec(3, 0, B)),
            (a_series(7), TailSpec(3, 9, B)),
            (a_series(7), TailSpec(3, 1, A)),
            (fig1_chain(4), TailSpec(3, 1, A)),
        ],
        ids=["no-sink", "r-is-sink", "r-out-of-range", "non-permutation", "not-binary"],
    )
    def test_errors(self, base, spec):
        with pytest.raises(AutomatonError):
            tail_append(base, spec)

    def test_negative_k(self):
        with pytest.raises(AutomatonError):
            TailSpec(-1, 1)


class TestBSeries:
    def test_n16(self):
        d = b_series(16)
        assert d.n == 16
        assert rt(d) == 87

    @pytest.mark.parametrize("N", [15, 4, 22, 17])
    def test_congruence(self, N):
        with pytest.raises(AutomatonError, match="mod 12"):
            b_series(N)

    def test_n28_size(self):
        assert b_series(28).n == 28


class TestPredict:
    def test_examples(self):
        assert predict_tailed_rt(15, 7, 6) == 57
        assert predict_tailed_rt(11, 5, 0) == 11
        assert predict_tailed_rt(27, 10, 6) == 87


class TestPaperWords:
    def test_n7(self):
        w = paper_reset_word(7)
        assert a_series(7).format_word(w) == "aba" + "abaabbab" + "aaba"
        assert len(w) == 15

    def test_n10(self):
        w = paper_reset_word(10)
        assert a_series(10).format_word(w) == "aba" + "abaabbab" + "abbb" + "abaabbab" + "aaba"
        assert len(w) == 27

    @pytest.mark.parametrize("n", [7, 9, 10, 11, 12, 13])
    def test_resets(self, n):
        w = paper_reset_word(n)
        assert len(w) == 4 * n - 13
        assert verify_reset_word(a_series(n), w)

    @pytest.mark.parametrize("n", [8, 6, 5])
    def test_unsupported(self, n):
        with pytest.raises(AutomatonError):
            paper_reset_word(n)


class TestFamilies:
    @pytest.mark.parametrize("family, size", [("cerny", 5), ("fig1", 4), ("fig2-body", 5),
                                              ("martyugin", 4), ("a-series", 9), ("b_series", 16)])
    def test_build(self, family, size):
        d = FamilyParams(family, size).build()
        assert is_synchronizing(d)

    def test_unknown(self):
        with pytest.raises(AutomatonError, match="unknown family"):
            FamilyParams("vorel", 10).build()

    @pytest.mark.parametrize("family", sorted(FAMILIES))
    def test_documented_sink(self, family):
        size = {"b-series": 16, "martyugin": 4, "fig2-body": 4}.get(family, 6)
        d = FAMILIES[family](size)
        if family == "cerny":
            assert find_sink(d) is None
        elif family == "b-series":
            assert find_sink(d) == 10
        else:
            assert find_sink(d) == 0
