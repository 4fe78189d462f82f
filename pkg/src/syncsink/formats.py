"""Plain-text automaton files and Graphviz export.

File format::

    # comment
    dfa <n> <k>
    letters <name_1> ... <name_k>     (optional)
    <target under letter 0> ... <target under letter k-1>    (n rows)
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .automaton import AutomatonError, Dfa, find_sink


class ParseError(AutomatonError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"non-integer {what} in {' '.join(tokens)!r}") from None


def parse_automaton(text: str) -> Dfa:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError(1, "empty automaton file")
    lineno, header = lines[0]
    if header[0] != "dfa" or len(header) != 3:
        raise ParseError(lineno, "expected header 'dfa <n> <k>'")
    n, k = _ints(header[1:], lineno, "header field")
    if n < 1 or k < 1:
        raise ParseError(lineno, f"state count and alphabet size must be positive, got {n} {k}")
    rows = lines[1:]
    names: Tuple[str, ...] = ()
    if rows and rows[0][1][0] == "letters":
        lineno, tokens = rows[0]
        names = tuple(tokens[1:])
        if len(names) != k:
            raise ParseError(lineno, f"{len(names)} letter names for alphabet size {k}")
        if len(set(names)) != k:
            raise ParseError(lineno, "duplicate letter names")
        rows = rows[1:]
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else (rows[-1][0] if rows else lineno)
        raise ParseError(where, f"expected {n} transition rows, found {len(rows)}")
    table = []
    for q, (lineno, tokens) in enumerate(rows):
        targets = _ints(tokens, lineno, "target")
        if len(targets) != k:
            raise ParseError(lineno, f"state {q} has {len(targets)} targets, expected {k}")
        for t in targets:
            if not 0 <= t < n:
                raise ParseError(lineno, f"target {t} of state {q} out of range [0, {n})")
        table.append(tuple(targets))
    return Dfa(tuple(table), names)


def serialize_automaton(dfa: Dfa) -> str:
    width = len(str(dfa.n - 1))
    out = [f"dfa {dfa.n} {dfa.k}", "letters " + " ".join(dfa.letter_names)]
    for row in dfa.delta:
        out.append(" ".join(str(t).rjust(width) for t in row))
    return "\n".join(out) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dfa: Dfa, name: str = "dfa") -> str:
    """Graphviz digraph; parallel edges between the same states share one label."""
    sink = find_sink(dfa)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(dfa.n):
        shape = "doublecircle" if q == sink else "circle"
        lines.append(f"  {q} [shape={shape}];")
    for q, row in enumerate(dfa.delta):
        grouped: Dict[int, List[str]] = {}
        for l, t in enumerate(row):
            grouped.setdefault(t, []).append(dfa.letter_names[l])
        for t, labels in grouped.items():
            lines.append(f"  {q} -> {t} [label={_quote(','.join(labels))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bundled_automata() -> Dict[str, Dfa]:
    """The example automaton files shipped in ``syncsink/data``, keyed by file stem."""
    from importlib.resources import files

    root = files("syncsink") / "data"
    return {
        entry.name.rsplit(".", 1)[0]: parse_automaton(entry.read_text())
        for entry in sorted(root.iterdir(), key=lambda e: e.name)
        if entry.name.endswith(".dfa")
    }
