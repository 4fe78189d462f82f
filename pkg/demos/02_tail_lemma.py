"""Appending a tail of k states below the sink.

When the base automaton is an almost-permutation automaton on n states and k
is a multiple of the order of its permutation letter, the tailed automaton's
threshold is exactly rt(base) + n*k.  Composing this with A_16 gives a
28-state automaton with threshold 243.
"""

from syncsink import (
    TailSpec,
    a_series,
    b_series,
    check_tail_lemma,
    compare_bounds,
    exact_reset_threshold,
    tail_append,
)

B = 1
for n, k in [(7, 6), (7, 12), (9, 6)]:
    ev = check_tail_lemma(a_series(n), TailSpec(k, 1, B))
    print(f"A_{n} + tail {k}: {ev.rt_base} + {n}*{k} = {ev.predicted}, measured {ev.rt_tailed}, order {ev.order}")

b16 = b_series(16)
print("\nb_series(16):", b16.n, "states, rt =", exact_reset_threshold(b16).threshold)

ev = check_tail_lemma(a_series(16), TailSpec(12, 1, B))
print("b_series(28) via A_16:", ev.rt_tailed)

# When the tail length is not a multiple of the order, the formula can fail.
odd = tail_append(a_series(7), TailSpec(5, 1, B))
print("A_7 + tail 5 (not a multiple of 6):", exact_reset_threshold(odd).threshold, "vs", 15 + 7 * 5)

print("\nN   martyugin  quadratic  tail-series")
for N in (16, 28, 40, 64):
    c = compare_bounds(N)
    print(f"{N:<4}{c.martyugin:>9}  {float(c.vorel_conjecture):>9.1f}  {float(c.tail_series):>11.1f}")
