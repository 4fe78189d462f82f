"""Exhaustive and random search for slowly synchronizing almost-permutation automata.

The candidate space is normalised so that the sink is state 0 and letter
``a`` (index 0) is the collapsing letter: ``a`` sends the pre-sink ``r``
to 0 and permutes the other states, ``b`` permutes every state.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .automaton import Dfa, Word, is_synchronizing
from .solver import SolverLimitExceeded, SolverLimits, exact_reset_threshold

EXHAUSTIVE_MAX_STATES = 8
BRUTE_CANONICAL_MAX_STATES = 9

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SearchConfig:
    n: int
    min_rt: int = 0
    mode: str = "exhaustive"
    seed: int = 0
    worker_count: int = 1
    samples: int = 10_000

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"search needs n >= 3, got {self.n}")
        if self.min_rt < 0:
            raise ValueError(f"min_rt must be >= 0, got {self.min_rt}")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.worker_count < 1 or self.samples < 1:
            raise ValueError("worker_count and samples must be positive")


@dataclass(frozen=True)
class Finding:
    dfa: Dfa
    rt: int
    witness: Word

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.dfa.n,
                "rt": self.rt,
                "witness": self.dfa.format_word(self.witness),
                "table": [list(row) for row in self.dfa.delta],
            }
        )


@dataclass
class SearchReport:
    findings: List[Finding] = field(default_factory=list)
    candidates: int = 0
    skipped: int = 0


def _build(n: int, r: int, a_images: Sequence[int], others: Sequence[int], b: Sequence[int]) -> Dfa:
    a = [0] * n
    for q, t in zip(others, a_images):
        a[q] = t
    return Dfa.from_columns([a, [0, *b]])


def _cycle_type_representatives(states: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """One permutation of ``states`` per cycle type, cycles laid out consecutively."""

    def partitions(total, largest):
        if total == 0:
            yield ()
            return
        for part in range(min(total, largest), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    for shape in partitions(len(states), len(states)):
        images = {}
        pos = 0
        for length in shape:
            cycle = states[pos:pos + length]
            for i, q in enumerate(cycle):
                images[q] = cycle[(i + 1) % length]
            pos += length
        yield tuple(images[q] for q in states)


def enumerate_candidates(n: int, config: Optional[SearchConfig] = None, *, reduced: bool = False) -> Iterator[Dfa]:
    """Yield synchronizing almost-permutation automata on n states (sink 0, collapse letter a).

    Exhaustive mode yields every labelled automaton of the normalised space
    (pre-sink, then b, then a in lexicographic order). With ``reduced`` it
    yields a smaller set meeting every isomorphism class: pre-sink 1 and
    one representative of each conjugacy class for a. Random mode draws
    ``config.samples`` uniform labelled candidates and keeps the
    synchronizing ones.
    """
    config = config or SearchConfig(n)
    states = list(range(1, n))
    if config.mode == "random":
        rng = random.Random(config.seed)
        for _ in range(config.samples):
            r = rng.randrange(1, n)
            others = [q for q in states if q != r]
            b = states[:]
            rng.shuffle(b)
            a_images = others[:]
            rng.shuffle(a_images)
            dfa = _build(n, r, a_images, others, b)
            if is_synchronizing(dfa):
                yield dfa
        return
    if n > EXHAUSTIVE_MAX_STATES:
        raise ValueError(
            f"exhaustive enumeration is capped at n <= {EXHAUSTIVE_MAX_STATES}; use mode='random'"
        )
    for r in ([1] if reduced else states):
        others = [q for q in states if q != r]
        a_choices = (
            list(_cycle_type_representatives(others)) if reduced else list(itertools.permutations(others))
        )
        for b in itertools.permutations(states):
            for a_images in a_choices:
                dfa = _build(n, r, a_images, others, b)
                if is_synchronizing(dfa):
                    yield dfa


def _refined_classes(dfa: Dfa) -> List[List[int]]:
    """Colour classes of an isomorphism-invariant refinement with state 0 kept apart."""
    n, k = dfa.n, dfa.k
    preds = [[] for _ in range(n)]
    for q, row in enumerate(dfa.delta):
        for l, t in enumerate(row):
            preds[t].append((l, q))
    colors = [0 if q == 0 else 1 for q in range(n)]
    while True:
        sigs = [
            (
                colors[q],
                tuple(colors[t] for t in dfa.delta[q]),
                tuple(sorted((l, colors[p]) for l, p in preds[q])),
            )
            for q in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            break
        colors = new
    classes: List[List[int]] = [[] for _ in range(max(colors) + 1)]
    for q, c in enumerate(colors):
        classes[c].append(q)
    return [c for c in classes if c]


@lru_cache(maxsize=None)
def _sink_fixing_permutations(n: int) -> Tuple[np.ndarray, np.ndarray]:
    rest = np.array(list(itertools.permutations(range(1, n))), dtype=np.int64).reshape(-1, n - 1)
    perms = np.hstack([np.zeros((rest.shape[0], 1), dtype=np.int64), rest])
    return perms, np.argsort(perms, axis=1)


def canonical_form(dfa: Dfa) -> Table:
    """Lexicographically least transition table over all relabelings fixing state 0.

    Above :data:`BRUTE_CANONICAL_MAX_STATES` states only relabelings that
    respect an invariant colour refinement are tried. That result is
    still the same for isomorphic automata but may differ from the global
    minimum.
    """
    n, k = dfa.n, dfa.k
    if n == 1:
        return dfa.delta
    if n <= BRUTE_CANONICAL_MAX_STATES:
        perms, inverse = _sink_fixing_permutations(n)
        delta = np.array(dfa.delta, dtype=np.int64)
        tables = np.take_along_axis(perms[:, :, None], delta[inverse].reshape(len(perms), -1, 1), axis=1)
        tables = tables.reshape(len(perms), n * k)
        best = tables[np.lexsort(tables.T[::-1])[0]]
        return tuple(tuple(int(t) for t in best[i * k:(i + 1) * k]) for i in range(n))
    classes = _refined_classes(dfa)
    best: Optional[Table] = None
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [0] * n
        label = 0
        for block in choice:
            for q in block:
                perm[q] = label
                label += 1
        table = [None] * n
        for q, row in enumerate(dfa.delta):
            table[perm[q]] = tuple(perm[t] for t in row)
        table = tuple(table)
        if best is None or table < best:
            best = table
    return best


def _evaluate(tables: List[Table], min_rt: int, limits: Optional[SolverLimits]):
    found, skipped = [], 0
    for table in tables:
        dfa = Dfa(table)
        try:
            res = exact_reset_threshold(dfa, limits)
        except SolverLimitExceeded:
            skipped += 1
            continue
        if res.synchronizing and res.threshold >= min_rt:
            found.append((canonical_form(dfa), res.threshold, res.witness))
    return found, skipped


def _chunks(it, size):
    it = iter(it)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def search_extremal(config: SearchConfig, limits: Optional[SolverLimits] = None) -> SearchReport:
    """Exact thresholds of all candidates; keep those >= ``config.min_rt`` up to relabeling.

    Findings are sorted by threshold (descending) then canonical table, so
    the result does not depend on ``worker_count``.
    """
    report = SearchReport()
    tables = (
        d.delta for d in enumerate_candidates(config.n, config, reduced=config.mode == "exhaustive")
    )

    def counted(source):
        for t in source:
            report.candidates += 1
            yield t

    batches = _chunks(counted(tables), 512)
    results = []
    if config.worker_count > 1:
        with ProcessPoolExecutor(config.worker_count) as pool:
            futures = [pool.submit(_evaluate, b, config.min_rt, limits) for b in batches]
            results = [f.result() for f in futures]
    else:
        results = [_evaluate(b, config.min_rt, limits) for b in batches]

    unique = {}
    for found, skipped in results:
        report.skipped += skipped
        for canon, rt, witness in found:
            unique.setdefault(canon, (rt, witness))
    report.findings = [
        Finding(Dfa(canon), rt, witness)
        for canon, (rt, witness) in sorted(unique.items(), key=lambda kv: (-kv[1][0], kv[0]))
    ]
    return report


def candidate_space_size(n: int) -> int:
    """Number of labelled candidates before the synchronization filter."""
    return (n - 1) * math.factorial(n - 1) * math.factorial(n - 2)
