import numpy as np
from hypothesis import strategies as st

from syncsink.automaton import Dfa


@st.composite
def sink_automata(draw, min_n=1, max_n=5, k=2):
    """Binary (by default) automata on up to ``max_n`` states with state 0 fixed by every letter."""
    n = draw(st.integers(min_n, max_n))
    rows = [tuple([0] * k)]
    for _ in range(1, n):
        rows.append(tuple(draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k))))
    return Dfa(tuple(rows))


@st.composite
def automata(draw, min_n=1, max_n=6, min_k=1, max_k=3):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(min_k, max_k))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, n - 1), min_size=k, max_size=k).map(tuple),
            min_size=n,
            max_size=n,
        )
    )
    return Dfa(tuple(rows))


def random_sink_automaton(rng: np.random.Generator, n: int, k: int = 2) -> Dfa:
    table = rng.integers(0, n, size=(n, k))
    table[0] = 0
    return Dfa(tuple(tuple(int(t) for t in row) for row in table))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[0])):
        ok, detail = test_acceptance.RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
