"""Exhaustive search for slowly synchronizing almost-permutation automata.

Candidates are deduplicated up to relabeling of the non-sink states, so each
finding is one isomorphism class.
"""

import time

from syncsink import SearchConfig, a_series, canonical_form, search_extremal

for n in (5, 6, 7):
    start = time.perf_counter()
    report = search_extremal(SearchConfig(n, min_rt=0))
    best = report.findings[0]
    top = sum(f.rt == best.rt for f in report.findings)
    print(f"n={n}: {report.candidates} candidates, {len(report.findings)} classes, "
          f"max rt {best.rt} ({top} classes), {time.perf_counter() - start:.1f}s")

report = search_extremal(SearchConfig(7, min_rt=15))
print("A_7 among n=7 findings with rt >= 15:", canonical_form(a_series(7)) in {f.dfa.delta for f in report.findings})
print(report.findings[0].to_json())

# Beyond 8 states, sample instead.
sampled = search_extremal(SearchConfig(10, min_rt=25, mode="random", seed=1, samples=2000))
print(f"random n=10: {len(sampled.findings)} findings with rt >= 25 out of {sampled.candidates} samples")
