"""Command-line interface.

Exit status: 0 on success, 1 for analysis outcomes (not synchronizing,
limit exceeded, report mismatch), 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from .automaton import (
    AutomatonError,
    Dfa,
    almost_permutation_profile,
    find_sink,
    fixed_states,
    is_synchronizing,
    letter_order,
)
from .constructions import FAMILIES, FamilyParams, TailSpec, tail_append
from .experiments import MISMATCH, format_table, reproduce_paper_table, rows_to_csv
from .formats import export_dot, parse_automaton, serialize_automaton
from .search import SearchConfig, search_extremal
from .solver import (
    SolverLimitExceeded,
    SolverLimits,
    brute_force_rt,
    exact_reset_threshold,
    greedy_upper_bound,
)

OUTPUT_DIR_ENV = "SYNCSINK_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _read(path: str, stdin) -> Dfa:
    if path == "-":
        text = stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_automaton(text)


def _write(path: Optional[str], text: str, stdout) -> None:
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text)


def _letter(dfa: Dfa, spec: str) -> int:
    if spec in dfa.letter_names:
        return dfa.letter_names.index(spec)
    try:
        idx = int(spec)
    except ValueError:
        raise UsageError(f"unknown letter {spec!r}") from None
    if not 0 <= idx < dfa.k:
        raise UsageError(f"letter index {idx} out of range")
    return idx


def cmd_gen(args, out, err, stdin) -> int:
    dfa = FamilyParams(args.family, args.n).build()
    _write(args.output, serialize_automaton(dfa), out)
    return 0


def cmd_rt(args, out, err, stdin) -> int:
    dfa = _read(args.file, stdin)
    if args.algo == "greedy":
        word = greedy_upper_bound(dfa)
        if word is None:
            err.write("not synchronizing\n")
            return 1
        out.write(f"{len(word)}\n")
        if args.witness:
            out.write(dfa.format_word(word) + "\n")
        return 0
    if args.algo == "brute":
        max_length = args.max_length or dfa.n * dfa.n
        res = brute_force_rt(dfa, max_length)
        if res is None:
            err.write(f"no reset word of length <= {max_length}\n")
            return 1
    else:
        limits = SolverLimits(args.max_subsets, args.max_length)
        try:
            res = exact_reset_threshold(dfa, limits)
        except SolverLimitExceeded as exc:
            err.write(f"limit exceeded: {exc}\n")
            return 1
        if not res.synchronizing:
            err.write("not synchronizing\n")
            return 1
    out.write(f"{res.threshold}\n")
    if args.witness:
        out.write(dfa.format_word(res.witness) + "\n")
    return 0


def cmd_check(args, out, err, stdin) -> int:
    dfa = _read(args.file, stdin)
    sink = find_sink(dfa)
    out.write(f"states: {dfa.n}\nletters: {' '.join(dfa.letter_names)}\n")
    if sink is None and len(fixed_states(dfa)) > 1:
        out.write(f"sink: none (several fixed states {list(fixed_states(dfa))})\n")
    else:
        out.write(f"sink: {'none' if sink is None else sink}\n")
    out.write(f"synchronizing: {'yes' if is_synchronizing(dfa) else 'no'}\n")
    profile = almost_permutation_profile(dfa)
    if profile is None:
        out.write("almost-permutation: no\n")
    else:
        names = dfa.letter_names
        out.write(
            f"almost-permutation: sink {profile.sink}, pre-sink {profile.pre_sink}, "
            f"permutation letter {names[profile.perm_letter]}, "
            f"collapse letter {names[profile.collapse_letter]}\n"
        )
    for l, name in enumerate(dfa.letter_names):
        order = letter_order(dfa, l)
        out.write(f"order({name}): {'not a permutation' if order is None else order}\n")
    return 0


def cmd_tail(args, out, err, stdin) -> int:
    dfa = _read(args.file, stdin)
    spec = TailSpec(args.k, args.r, _letter(dfa, args.perm_letter))
    _write(args.output, serialize_automaton(tail_append(dfa, spec)), out)
    return 0


def cmd_verify_paper(args, out, err, stdin) -> int:
    exact = (16, 28) if args.exact_b_series else (16,)
    rows = reproduce_paper_table(args.max_n, exact_b_series=exact)
    if args.csv == "-":
        out.write(rows_to_csv(rows))
    else:
        if args.csv:
            Path(args.csv).write_text(rows_to_csv(rows))
        out.write(format_table(rows))
    bad = [r for r in rows if r.status == MISMATCH]
    if bad:
        err.write(f"{len(bad)} mismatching rows\n")
        return 1
    return 0


def cmd_search(args, out, err, stdin) -> int:
    try:
        config = SearchConfig(args.n, args.min_rt, args.mode, args.seed, args.jobs, args.samples)
        report = search_extremal(config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out_dir = args.out_dir or os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    for i, finding in enumerate(report.findings):
        out.write(finding.to_json() + "\n")
        if out_dir:
            path = Path(out_dir) / f"n{finding.dfa.n}_rt{finding.rt}_{i:04d}.dfa"
            path.write_text(serialize_automaton(finding.dfa))
    err.write(
        f"{report.candidates} candidates, {len(report.findings)} findings, {report.skipped} skipped\n"
    )
    return 0


def cmd_dot(args, out, err, stdin) -> int:
    dfa = _read(args.file, stdin)
    _write(args.output, export_dot(dfa), out)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syncsink", description="Synchronizing automata with a sink state.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True, help="family size parameter (m for fig2-body and martyugin)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("rt", help="reset threshold of an automaton file")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--algo", choices=["bfs", "brute", "greedy"], default="bfs")
    p.add_argument("--max-subsets", type=int)
    p.add_argument("--max-length", type=int)
    p.set_defaults(func=cmd_rt)

    p = sub.add_parser("check", help="sink, synchronization, almost-permutation profile, letter orders")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tail", help="append a tail below the sink")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--perm-letter", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("verify-paper", help="recompute the reference thresholds")
    p.add_argument("--max-n", type=int, default=13)
    p.add_argument("--csv")
    p.add_argument("--exact-b-series", action="store_true", help="also solve the 28-state tailed automaton")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("search", help="search almost-permutation automata with large reset threshold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-rt", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)
    return parser


def run_command(argv: List[str], stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, stdout, stderr, stdin)
    except (UsageError, AutomatonError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
