"""Generators for the slowly synchronizing families and the tail-append operator.

Binary automata use letter 0 for ``a`` and letter 1 for ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from .automaton import (
    AutomatonError,
    Dfa,
    Word,
    find_sink,
    is_permutation_on,
)

A, B = 0, 1


@dataclass(frozen=True)
class TailSpec:
    """Tail of ``k`` new states walked by ``perm_letter``; the other letter sends the tail to ``r``."""

    k: int
    r: int
    perm_letter: int = A

    def __post_init__(self):
        if self.k < 0:
            raise AutomatonError(f"tail length must be >= 0, got {self.k}")


def cerny(n: int) -> Dfa:
    """The n-state Černý automaton: a rotates, b sends 0 to 1."""
    if n < 2:
        raise AutomatonError(f"cerny needs n >= 2, got {n}")
    a = [(i + 1) % n for i in range(n)]
    b = [1] + list(range(1, n))
    return Dfa.from_columns([a, b])


def fig1_chain(n: int) -> Dfa:
    """n states over n-1 letters a1..a(n-1) with reset threshold n(n-1)/2.

    a1 sends 1 to 0; a_i for i >= 2 swaps i-1 and i; everything else is
    fixed.
    """
    if n < 2:
        raise AutomatonError(f"fig1_chain needs n >= 2, got {n}")
    columns = []
    for i in range(1, n):
        col = list(range(n))
        if i == 1:
            col[1] = 0
        else:
            col[i - 1], col[i] = i, i - 1
        columns.append(col)
    return Dfa.from_columns(columns, tuple(f"a{i}" for i in range(1, n)))


def fig2_body(m: int) -> Dfa:
    """Martyugin's almost-permutation body on the original labels m-1..2m-1.

    State ``s`` of the drawing is index ``s - (m - 1)``, so the sink m-1
    is index 0 and the pre-sink m is index 1.
    """
    if m < 4:
        raise AutomatonError(f"fig2_body needs m >= 4, got {m}")
    off = m - 1
    a = {m - 1: m - 1, m: 2 * m - 2, 2 * m - 1: 2 * m - 1}
    for i in range(m + 1, 2 * m - 1):
        a[i] = i - 1
    b = {m - 1: m - 1, m: m - 1, m + 1: 2 * m - 1, 2 * m - 1: m + 2, 2 * m - 2: m + 1}
    for i in range(m + 2, 2 * m - 2):
        b[i] = i + 1
    states = range(m - 1, 2 * m)
    return Dfa.from_columns([[a[s] - off for s in states], [b[s] - off for s in states]])


def fig2_label(m: int, index: int) -> int:
    """Original label of state ``index`` of :func:`fig2_body`."""
    return index + m - 1


def martyugin(m: int) -> Dfa:
    """Martyugin's 2m-state automaton M_2m with reset threshold ceil((n^2+6n-16)/4)."""
    if m < 4:
        raise AutomatonError(f"martyugin needs m >= 4 (n = 2m >= 8), got {m}")
    n = 2 * m
    a, b = [0] * n, [0] * n
    for i in range(n):
        if i == 0:
            a[i] = 0
        elif i <= m - 1:
            a[i] = i - 1
        elif i == m:
            a[i] = 2 * m - 2
        elif i <= 2 * m - 2:
            a[i] = i - 1
        else:
            a[i] = 2 * m - 1
        if i == 0:
            b[i] = 0
        elif i <= m - 1:
            b[i] = m
        elif i == m:
            b[i] = m - 1
        elif i == m + 1:
            b[i] = 2 * m - 1
        elif i <= 2 * m - 3:
            b[i] = i + 1
        elif i == 2 * m - 2:
            b[i] = m + 1
        else:
            b[i] = m + 2
    return Dfa.from_columns([a, b])


def a_series(n: int) -> Dfa:
    """The n-state almost-permutation automaton A_n (b permutes, a sends 1 to the sink 0).

    For states j >= 4 the letters alternate along the chain 4-5-...-(n-1):
    b pairs (4,5), (6,7), ... and a pairs (5,6), (7,8), ...; an unpaired
    last state is fixed.
    """
    if n < 5:
        raise AutomatonError(f"a_series needs n >= 5, got {n}")
    a = [0] * n
    b = [0] * n
    a[0] = b[0] = 0
    a[1] = 0
    b[1], b[2], b[3] = 3, 1, 2
    a[2], a[3], a[4] = 4, 2, 3
    for j in range(5, n):
        if j % 2:
            a[j] = j if j == n - 1 else j + 1
        else:
            a[j] = j - 1
    for j in range(4, n):
        if j % 2 == 0:
            b[j] = j if j == n - 1 else j + 1
        else:
            b[j] = j - 1
    return Dfa.from_columns([a, b])


def tail_append(base: Dfa, spec: TailSpec) -> Dfa:
    """Attach a tail t_0..t_{k-1} (indices n..n+k-1) below the sink of ``base``.

    The permutation letter moves the old sink to t_{k-1} and each t_i to
    t_{i-1}; the other letter sends the old sink and t_1..t_{k-1} to ``r``.
    t_0 becomes the new sink.
    """
    if base.k != 2:
        raise AutomatonError("tail_append needs a binary automaton")
    if spec.perm_letter not in (0, 1):
        raise AutomatonError(f"perm_letter must be 0 or 1, got {spec.perm_letter}")
    q0 = find_sink(base)
    if q0 is None:
        raise AutomatonError("base automaton has no sink state")
    if not 0 <= spec.r < base.n or spec.r == q0:
        raise AutomatonError(f"r={spec.r} must be a non-sink state of the base automaton")
    if not is_permutation_on(base, spec.perm_letter):
        raise AutomatonError(f"letter {base.letter_names[spec.perm_letter]} does not permute the states")
    if spec.k == 0:
        return base
    n, k = base.n, spec.k
    perm, other = spec.perm_letter, 1 - spec.perm_letter
    table = [list(row) for row in base.delta] + [[0, 0] for _ in range(k)]
    t = lambda i: n + i  # noqa: E731
    table[q0][perm] = t(k - 1)
    table[q0][other] = spec.r
    table[t(0)][perm] = table[t(0)][other] = t(0)
    for i in range(1, k):
        table[t(i)][perm] = t(i - 1)
        table[t(i)][other] = spec.r
    return Dfa(tuple(tuple(row) for row in table), base.letter_names)


def b_series(N: int) -> Dfa:
    """N-state sink automaton A_n with a tail of n-4 states, n = (N+4)/2."""
    if N < 16 or N % 12 != 4:
        raise AutomatonError(f"b_series needs N >= 16 with N = 4 (mod 12), got {N}")
    n = (N + 4) // 2
    return tail_append(a_series(n), TailSpec(k=n - 4, r=1, perm_letter=B))


def predict_tailed_rt(rt_base: int, n: int, k: int) -> int:
    """Reset threshold after appending a tail of length k (a multiple of the permutation letter's order)."""
    if min(rt_base, n, k) < 0:
        raise ValueError("arguments must be nonnegative")
    return rt_base + n * k


_CYCLE = (A, B, A, A, B, B, A, B)


def paper_reset_word(n: int) -> Word:
    """Explicit reset word of length 4n-13 for A_n, n odd >= 7 or n even >= 10."""
    if n >= 7 and n % 2:
        return (A, B, A) + _CYCLE * ((n - 5) // 2) + (A, A, B, A)
    if n >= 10 and n % 2 == 0:
        return (A, B, A) + _CYCLE * ((n - 8) // 2) + (A, B, B, B) + _CYCLE + (A, A, B, A)
    raise AutomatonError(f"no explicit reset word is known for n={n}")


FAMILIES: Dict[str, Callable[[int], Dfa]] = {
    "cerny": cerny,
    "fig1": fig1_chain,
    "fig2-body": fig2_body,
    "martyugin": martyugin,
    "a-series": a_series,
    "b-series": b_series,
}


@dataclass(frozen=True)
class FamilyParams:
    """A family name from :data:`FAMILIES` and its size parameter.

    The parameter is n for cerny, fig1 and a-series, m for fig2-body and
    martyugin, and N for b-series.
    """

    family: str
    size: int

    def build(self) -> Dfa:
        try:
            ctor = FAMILIES[self.family.replace("_", "-")]
        except KeyError:
            raise AutomatonError(
                f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}"
            ) from None
        return ctor(self.size)


def canonical_tail_relabeling(base_n: int, k: int, base_offset: int) -> Tuple[int, ...]:
    """Relabeling sending base state j to ``base_offset + j`` and tail state t_i to i."""
    return tuple(base_offset + j for j in range(base_n)) + tuple(range(k))
