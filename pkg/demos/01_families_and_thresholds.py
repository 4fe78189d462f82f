"""Build the standard families and compare their exact reset thresholds.

The Cerny automaton needs (n-1)^2 letters; automata with a sink can do no
worse than n(n-1)/2, and the families below show how close one gets with an
almost-permutation construction.
"""

from syncsink import a_series, cerny, exact_reset_threshold, fig1_chain, martyugin

print(f"{'n':>3} {'cerny':>6} {'chain':>6} {'A_n':>5} {'4n-13':>6}")
for n in range(7, 14):
    row = [exact_reset_threshold(d).threshold for d in (cerny(n), fig1_chain(n), a_series(n))]
    print(f"{n:>3} {row[0]:>6} {row[1]:>6} {row[2]:>5} {4 * n - 13:>6}")

# A_8 is the odd one out: its threshold is 20, not 19.
res = exact_reset_threshold(a_series(8))
print("\nA_8 shortest reset word:", a_series(8).format_word(res.witness), f"(length {res.threshold})")

for m in (4, 5, 6):
    print(f"martyugin({m}) on {2 * m} states: rt = {exact_reset_threshold(martyugin(m)).threshold}")
