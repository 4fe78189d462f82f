"""Complete deterministic automata, state-set images and structural checks.

States and letters are 0-based integers. Words act left to right, so the
first letter of a word is applied first.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union

log = logging.getLogger(__name__)

Word = Tuple[int, ...]


class AutomatonError(ValueError):
    """Raised for malformed automata or out-of-range states and letters."""


def default_letter_names(k: int) -> Tuple[str, ...]:
    if k == 2:
        return ("a", "b")
    return tuple(f"a{i + 1}" for i in range(k))


@dataclass(frozen=True)
class Dfa:
    """A complete DFA given by its transition table.

    ``delta[q][l]`` is the target of state ``q`` under letter ``l``.
    """

    delta: Tuple[Tuple[int, ...], ...]
    letter_names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        table = tuple(tuple(int(t) for t in row) for row in self.delta)
        if not table:
            raise AutomatonError("automaton needs at least one state")
        k = len(table[0])
        if k < 1:
            raise AutomatonError("automaton needs at least one letter")
        n = len(table)
        for q, row in enumerate(table):
            if len(row) != k:
                raise AutomatonError(f"row {q} has {len(row)} entries, expected {k}")
            for t in row:
                if not 0 <= t < n:
                    raise AutomatonError(f"target {t} of state {q} out of range [0, {n})")
        names = tuple(self.letter_names) or default_letter_names(k)
        if len(names) != k:
            raise AutomatonError(f"{len(names)} letter names given for {k} letters")
        if len(set(names)) != k:
            raise AutomatonError(f"duplicate letter names {names}")
        object.__setattr__(self, "delta", table)
        object.__setattr__(self, "letter_names", names)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], letter_names=()) -> "Dfa":
        """Build from one target list per letter."""
        return cls(tuple(zip(*columns)), tuple(letter_names))

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def k(self) -> int:
        return len(self.delta[0])

    def column(self, l: int) -> Tuple[int, ...]:
        """Targets of every state under letter ``l``."""
        self._check_letter(l)
        return tuple(row[l] for row in self.delta)

    def full_set(self) -> "StateSet":
        return StateSet((1 << self.n) - 1, self.n)

    def _check_letter(self, l: int) -> None:
        if not 0 <= l < self.k:
            raise AutomatonError(f"letter index {l} out of range [0, {self.k})")

    def _check_state(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise AutomatonError(f"state {q} out of range [0, {self.n})")

    def letter_index(self, name: str) -> int:
        try:
            return self.letter_names.index(name)
        except ValueError:
            raise AutomatonError(f"unknown letter {name!r}") from None

    def parse_word(self, text: str) -> Word:
        """Read a word written with this automaton's letter names.

        Single-character names may be run together (``"abba"``); longer
        names must be separated by whitespace.
        """
        text = text.strip()
        if not text:
            return ()
        if " " in text or any(len(s) > 1 for s in self.letter_names):
            return tuple(self.letter_index(tok) for tok in text.split())
        return tuple(self.letter_index(ch) for ch in text)

    def format_word(self, word: Iterable[int]) -> str:
        word = tuple(word)
        for l in word:
            self._check_letter(l)
        sep = "" if all(len(s) == 1 for s in self.letter_names) else " "
        return sep.join(self.letter_names[l] for l in word)


@dataclass(frozen=True)
class StateSet:
    """Subset of ``range(n)`` stored as a bit mask (bit ``q`` set iff ``q`` is a member)."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise AutomatonError(f"mask {self.mask:#x} has members outside [0, {self.n})")

    @classmethod
    def of(cls, states: Iterable[int], n: int) -> "StateSet":
        mask = 0
        for q in states:
            if not 0 <= q < n:
                raise AutomatonError(f"state {q} out of range [0, {n})")
            mask |= 1 << q
        return cls(mask, n)

    def __iter__(self):
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, q) -> bool:
        return 0 <= q < self.n and bool(self.mask >> q & 1)

    def members(self) -> Tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"StateSet({set(self)!r}, n={self.n})"


def step(dfa: Dfa, q: int, l: int) -> int:
    dfa._check_state(q)
    dfa._check_letter(l)
    return dfa.delta[q][l]


def _as_set(dfa: Dfa, s: Union[StateSet, Iterable[int]]) -> StateSet:
    if isinstance(s, StateSet):
        if s.n != dfa.n:
            raise AutomatonError(f"state set capacity {s.n} does not match automaton size {dfa.n}")
        return s
    return StateSet.of(s, dfa.n)


def apply_word(dfa: Dfa, s: Union[StateSet, Iterable[int]], w: Iterable[int]) -> StateSet:
    """Image of ``s`` under ``w``."""
    states = set(_as_set(dfa, s))
    for l in w:
        dfa._check_letter(l)
        states = {dfa.delta[q][l] for q in states}
    return StateSet.of(states, dfa.n)


def state_path(dfa: Dfa, q: int, w: Iterable[int]) -> int:
    """Image of the single state ``q`` under ``w``."""
    dfa._check_state(q)
    for l in w:
        dfa._check_letter(l)
        q = dfa.delta[q][l]
    return q


def fixed_states(dfa: Dfa) -> Tuple[int, ...]:
    return tuple(q for q, row in enumerate(dfa.delta) if all(t == q for t in row))


def find_sink(dfa: Dfa) -> Optional[int]:
    """The unique state fixed by every letter, or None.

    Automata with several such states cannot be synchronizing; None is
    returned for them as well, with a logged diagnostic.
    """
    fixed = fixed_states(dfa)
    if len(fixed) > 1:
        log.info("automaton has %d all-letter-fixed states %s; no unique sink", len(fixed), fixed)
        return None
    return fixed[0] if fixed else None


def is_permutation_on(dfa: Dfa, l: int, domain: Union[StateSet, Iterable[int], None] = None) -> bool:
    """True iff letter ``l`` maps ``domain`` (default: all states) bijectively onto itself."""
    dfa._check_letter(l)
    dom = set(range(dfa.n)) if domain is None else set(_as_set(dfa, domain))
    image = {dfa.delta[q][l] for q in dom}
    return image == dom


def letter_order(dfa: Dfa, l: int) -> Optional[int]:
    """Least m >= 1 with l^m the identity, i.e. the lcm of the cycle lengths.

    None when ``l`` is not a permutation of the states.
    """
    if not is_permutation_on(dfa, l):
        return None
    col = dfa.column(l)
    seen = [False] * dfa.n
    order = 1
    for start in range(dfa.n):
        if seen[start]:
            continue
        length = 0
        q = start
        while not seen[q]:
            seen[q] = True
            q = col[q]
            length += 1
        order = math.lcm(order, length)
    return order


@dataclass(frozen=True)
class ApProfile:
    """Almost-permutation structure of a binary sink automaton.

    ``perm_letter`` permutes every state; ``collapse_letter`` sends
    ``pre_sink`` to ``sink`` and permutes the remaining states.
    """

    sink: int
    pre_sink: int
    perm_letter: int
    collapse_letter: int


def _profile_for(dfa: Dfa, sink: int, perm: int, collapse: int) -> Optional[ApProfile]:
    if not is_permutation_on(dfa, perm):
        return None
    col = dfa.column(collapse)
    pre = [q for q in range(dfa.n) if q != sink and col[q] == sink]
    if len(pre) != 1:
        return None
    r = pre[0]
    if not is_permutation_on(dfa, collapse, [q for q in range(dfa.n) if q != r]):
        return None
    return ApProfile(sink, r, perm, collapse)


def almost_permutation_profile(dfa: Dfa) -> Optional[ApProfile]:
    """Detect the almost-permutation structure in either letter orientation.

    Synchronization is not checked here; see :func:`is_synchronizing`.
    """
    if dfa.k != 2:
        return None
    sink = find_sink(dfa)
    if sink is None:
        return None
    found = [p for p in (_profile_for(dfa, sink, 0, 1), _profile_for(dfa, sink, 1, 0)) if p]
    if len(found) != 1:
        if found:
            log.info("both letter orientations satisfy the almost-permutation conditions")
        return None
    return found[0]


def _reaches(dfa: Dfa, target: int) -> bool:
    """Every state has a path to ``target``."""
    preds = [[] for _ in range(dfa.n)]
    for q, row in enumerate(dfa.delta):
        for t in row:
            preds[t].append(q)
    seen = {target}
    queue = deque([target])
    while queue:
        for p in preds[queue.popleft()]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return len(seen) == dfa.n


def is_synchronizing(dfa: Dfa) -> bool:
    """Decide whether some word maps all states to one state.

    With a sink this is reachability of the sink; without one, every pair
    of states must be mergeable (checked by backward search on the pair
    automaton).
    """
    if dfa.n == 1:
        return True
    if len(fixed_states(dfa)) > 1:
        return False
    sink = find_sink(dfa)
    if sink is not None:
        return _reaches(dfa, sink)
    return not unmergeable_pairs(dfa)


def mergeable_pairs(dfa: Dfa) -> set:
    """All pairs (p, q), p < q, admitting a word that sends both to one state."""
    n, k = dfa.n, dfa.k
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(dfa.delta):
        for l, t in enumerate(row):
            inv[l][t].append(q)
    merged = set()
    queue = deque()
    for l in range(k):
        for t in range(n):
            src = inv[l][t]
            for i in range(len(src)):
                for j in range(i + 1, len(src)):
                    pair = (min(src[i], src[j]), max(src[i], src[j]))
                    if pair not in merged:
                        merged.add(pair)
                        queue.append(pair)
    while queue:
        p, q = queue.popleft()
        for l in range(k):
            for x in inv[l][p]:
                for y in inv[l][q]:
                    if x != y:
                        pair = (min(x, y), max(x, y))
                        if pair not in merged:
                            merged.add(pair)
                            queue.append(pair)
    return merged


def unmergeable_pairs(dfa: Dfa) -> list:
    merged = mergeable_pairs(dfa)
    return [(p, q) for p in range(dfa.n) for q in range(p + 1, dfa.n) if (p, q) not in merged]


def relabel(dfa: Dfa, perm: Sequence[int]) -> Dfa:
    """Rename state ``q`` to ``perm[q]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(dfa.n)):
        raise AutomatonError(f"{perm} is not a bijection on [0, {dfa.n})")
    table = [None] * dfa.n
    for q, row in enumerate(dfa.delta):
        table[perm[q]] = tuple(perm[t] for t in row)
    return Dfa(tuple(table), dfa.letter_names)


def inverse_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)
