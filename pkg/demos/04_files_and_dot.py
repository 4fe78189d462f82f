"""Round-trip the text format and export Graphviz."""

from syncsink import a_series, export_dot, greedy_upper_bound, parse_automaton, serialize_automaton
from syncsink.formats import bundled_automata

text = serialize_automaton(a_series(7))
print(text)
assert serialize_automaton(parse_automaton(text)) == text

print(export_dot(a_series(7), name="A7"))

for name, d in sorted(bundled_automata().items()):
    word = greedy_upper_bound(d)
    print(f"{name:<20} n={d.n:<3} greedy {'-' if word is None else len(word)}")
