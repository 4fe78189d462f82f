"""Exact reset thresholds by breadth-first search on the power-set automaton.

Subsets are bit masks. The search starts at the full state set and
expands letters in index order, so the first singleton found is reached
by the lexicographically least shortest reset word. Two interchangeable
engines implement it: a pure-Python one over arbitrary-width ints (used
for small automata and for n > 64) and a numpy one that expands a whole
frontier at once over ``uint64`` masks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .automaton import Dfa, Word, apply_word

DEFAULT_MAX_SUBSETS = 2**26
NUMPY_MIN_STATES = 13
NUMPY_MAX_STATES = 64


class SolverLimitExceeded(RuntimeError):
    """The search hit a cap before deciding; the threshold is unknown."""

    def __init__(self, message, explored=0, depth=0):
        super().__init__(message)
        self.explored = explored
        self.depth = depth


@dataclass(frozen=True)
class SolverLimits:
    max_subsets: Optional[int] = None
    max_length: Optional[int] = None

    def __post_init__(self):
        for name in ("max_subsets", "max_length"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")

    def resolve(self, n: int) -> Tuple[int, int]:
        return (
            self.max_subsets if self.max_subsets is not None else DEFAULT_MAX_SUBSETS,
            self.max_length if self.max_length is not None else n * n,
        )


@dataclass(frozen=True)
class RtResult:
    """Outcome of a reset-threshold computation.

    For a non-synchronizing automaton ``threshold`` and ``witness`` are
    None and ``synchronizing`` is False.
    """

    threshold: Optional[int]
    witness: Optional[Word]
    explored: int
    synchronizing: bool


def _byte_tables(dfa: Dfa) -> List[List[List[int]]]:
    """tables[l][j][b]: image under letter l of the states 8j..8j+7 selected by byte b."""
    n = dfa.n
    tables = []
    for l in range(dfa.k):
        col = dfa.column(l)
        per_chunk = []
        for j in range(0, n, 8):
            bits = [1 << col[q] for q in range(j, min(j + 8, n))]
            tab = [0] * 256
            for b in range(1, 256):
                low = (b & -b).bit_length() - 1
                tab[b] = tab[b & (b - 1)] | (bits[low] if low < len(bits) else 0)
            per_chunk.append(tab)
        tables.append(per_chunk)
    return tables


def _image(tabs: List[List[int]], mask: int) -> int:
    out = 0
    for tab in tabs:
        if not mask:
            break
        out |= tab[mask & 255]
        mask >>= 8
    return out


def _is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _bfs_python(dfa: Dfa, max_subsets: int, max_length: int) -> RtResult:
    tables = _byte_tables(dfa)
    full = (1 << dfa.n) - 1
    parent: Dict[int, Optional[Tuple[int, int]]] = {full: None}
    frontier = [full]
    depth = 0
    while frontier:
        if depth >= max_length:
            raise SolverLimitExceeded(f"no reset word of length <= {max_length}", len(parent), depth)
        nxt = []
        for mask in frontier:
            for l, tabs in enumerate(tables):
                img = _image(tabs, mask)
                if img in parent:
                    continue
                parent[img] = (mask, l)
                if _is_singleton(img):
                    word = []
                    cur = img
                    while parent[cur] is not None:
                        cur, letter = parent[cur]
                        word.append(letter)
                    return RtResult(depth + 1, tuple(reversed(word)), len(parent), True)
                if len(parent) > max_subsets:
                    raise SolverLimitExceeded(f"more than {max_subsets} subsets visited", len(parent), depth)
                nxt.append(img)
        frontier = nxt
        depth += 1
    return RtResult(None, None, len(parent), False)


def _byte_tables_np(dfa: Dfa) -> np.ndarray:
    tables = _byte_tables(dfa)
    return np.array(tables, dtype=np.uint64)


def _image_np(tabs: np.ndarray, masks: np.ndarray) -> np.ndarray:
    out = tabs[0][masks & np.uint64(255)]
    for j in range(1, tabs.shape[0]):
        out |= tabs[j][(masks >> np.uint64(8 * j)) & np.uint64(255)]
    return out


def _bfs_numpy(dfa: Dfa, max_subsets: int, max_length: int) -> RtResult:
    tables = _byte_tables_np(dfa)
    k = dfa.k
    full = np.uint64((1 << dfa.n) - 1)
    visited = np.array([full], dtype=np.uint64)
    frontier = visited.copy()
    # per level: (parent index into previous level, letter)
    levels: List[Tuple[np.ndarray, np.ndarray]] = []
    depth = 0
    while frontier.size:
        if depth >= max_length:
            raise SolverLimitExceeded(f"no reset word of length <= {max_length}", visited.size, depth)
        images = np.empty((frontier.size, k), dtype=np.uint64)
        for l in range(k):
            images[:, l] = _image_np(tables[l], frontier)
        flat = images.ravel()
        cand, first = np.unique(flat, return_index=True)
        pos = np.searchsorted(visited, cand)
        pos[pos == visited.size] = 0
        fresh = visited[pos] != cand
        cand, first = cand[fresh], first[fresh]
        order = np.argsort(first, kind="stable")
        cand, first = cand[order], first[order]
        levels.append((first // k, first % k))
        explored = visited.size + cand.size
        single = np.flatnonzero((cand & (cand - np.uint64(1))) == 0)
        if single.size:
            idx = int(single[0])
            word = []
            for parents, letters in reversed(levels):
                word.append(int(letters[idx]))
                idx = int(parents[idx])
            return RtResult(depth + 1, tuple(reversed(word)), explored, True)
        if explored > max_subsets:
            raise SolverLimitExceeded(f"more than {max_subsets} subsets visited", explored, depth)
        visited = np.sort(np.concatenate([visited, np.sort(cand)]), kind="stable")
        frontier = cand
        depth += 1
    return RtResult(None, None, visited.size, False)


def exact_reset_threshold(dfa: Dfa, limits: Optional[SolverLimits] = None, engine: str = "auto") -> RtResult:
    """Length of a shortest reset word, with the lexicographically least such word.

    ``engine`` is ``"auto"``, ``"python"`` or ``"numpy"``; all give
    identical results. Raises :class:`SolverLimitExceeded` when a cap in
    ``limits`` is reached before the answer is known.
    """
    max_subsets, max_length = (limits or SolverLimits()).resolve(dfa.n)
    if dfa.n == 1:
        return RtResult(0, (), 1, True)
    if engine == "auto":
        engine = "numpy" if NUMPY_MIN_STATES <= dfa.n <= NUMPY_MAX_STATES else "python"
    if engine == "numpy":
        if dfa.n > NUMPY_MAX_STATES:
            raise ValueError(f"numpy engine supports at most {NUMPY_MAX_STATES} states")
        return _bfs_numpy(dfa, max_subsets, max_length)
    if engine == "python":
        return _bfs_python(dfa, max_subsets, max_length)
    raise ValueError(f"unknown engine {engine!r}")


def verify_reset_word(dfa: Dfa, w) -> bool:
    return len(apply_word(dfa, dfa.full_set(), w)) == 1


def brute_force_rt(dfa: Dfa, max_length: int) -> Optional[RtResult]:
    """Try every word in length-then-lexicographic order; None if none up to ``max_length`` resets.

    All k**L words of length L are expanded at once as a table of state
    images, one row per word in lexicographic order. No subsets are
    remembered, so nothing is shared with the BFS beyond the definition
    of a reset word. Memory grows as k**max_length * n.
    """
    n, k = dfa.n, dfa.k
    delta = np.array(dfa.delta, dtype=np.int32)
    images = np.arange(n, dtype=np.int32)[None, :]
    tried = 0
    for length in range(max_length + 1):
        tried += images.shape[0]
        reset = np.flatnonzero((images == images[:, :1]).all(axis=1))
        if reset.size:
            idx = int(reset[0])
            word = []
            for _ in range(length):
                idx, l = divmod(idx, k)
                word.append(l)
            return RtResult(length, tuple(reversed(word)), tried, True)
        if length == max_length:
            break
        # row i*k + l is word_i followed by letter l
        images = delta[images].transpose(0, 2, 1).reshape(-1, n)
    return None


def pair_merge_table(dfa: Dfa) -> Dict[Tuple[int, int], Tuple[int, int, Tuple[int, int]]]:
    """For each mergeable pair p < q: (distance, first letter, pair after that letter).

    Computed by backward breadth-first search from the merged pairs; the
    successor pair of a distance-1 pair is a diagonal pair ``(s, s)``.
    """
    n, k = dfa.n, dfa.k
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(dfa.delta):
        for l, t in enumerate(row):
            inv[l][t].append(q)
    table: Dict[Tuple[int, int], Tuple[int, int, Tuple[int, int]]] = {}
    queue = deque()
    for s in range(n):
        queue.append((s, s))
    dist = {(s, s): 0 for s in range(n)}
    while queue:
        pair = queue.popleft()
        d = dist[pair]
        p, q = pair
        for l in range(k):
            for x in inv[l][p]:
                for y in inv[l][q]:
                    if x == y:
                        continue
                    key = (min(x, y), max(x, y))
                    if key not in dist:
                        dist[key] = d + 1
                        table[key] = (d + 1, l, pair)
                        queue.append(key)
    return table


def greedy_upper_bound(dfa: Dfa) -> Optional[Word]:
    """Greedy pair-merging reset word, or None if the automaton is not synchronizing.

    At each step the pair of current states with the shortest merging word
    is merged (ties go to the smallest pair). The result resets the
    automaton and is never shorter than the exact threshold.
    """
    table = pair_merge_table(dfa)
    current = set(range(dfa.n))
    word: List[int] = []
    while len(current) > 1:
        members = sorted(current)
        best = None
        for i, p in enumerate(members):
            for q in members[i + 1:]:
                entry = table.get((p, q))
                if entry is None:
                    return None
                if best is None or entry[0] < best[0][0]:
                    best = (entry, (p, q))
        (_, _, _), pair = best
        piece = []
        while pair[0] != pair[1]:
            _, l, pair = table[pair]
            piece.append(l)
        word.extend(piece)
        current = {_run(dfa, s, piece) for s in current}
    return tuple(word)


def _run(dfa: Dfa, q: int, word) -> int:
    for l in word:
        q = dfa.delta[q][l]
    return q

