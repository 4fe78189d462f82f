"""Reproduction harness for the tail lemma and the reported reset thresholds."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .automaton import Dfa, almost_permutation_profile, is_synchronizing, letter_order
from .constructions import (
    TailSpec,
    a_series,
    b_series,
    cerny,
    fig1_chain,
    martyugin,
    predict_tailed_rt,
    tail_append,
)
from .solver import SolverLimitExceeded, SolverLimits, exact_reset_threshold


class LemmaPreconditionError(ValueError):
    """The base automaton or tail does not satisfy the tail lemma's hypotheses."""


@dataclass(frozen=True)
class TailLemmaEvidence:
    holds: bool
    rt_base: int
    rt_tailed: int
    predicted: int
    n: int
    k: int
    order: int


def check_tail_lemma(base: Dfa, spec: TailSpec, limits: Optional[SolverLimits] = None) -> TailLemmaEvidence:
    """Solve both the base and the tailed automaton exactly and compare with rt + n*k."""
    profile = almost_permutation_profile(base)
    if profile is None or not is_synchronizing(base):
        raise LemmaPreconditionError("base is not a synchronizing almost-permutation automaton")
    if spec.perm_letter != profile.perm_letter or spec.r != profile.pre_sink:
        raise LemmaPreconditionError(
            f"tail must be walked by letter {profile.perm_letter} and feed pre-sink {profile.pre_sink}"
        )
    order = letter_order(base, spec.perm_letter)
    if spec.k % order:
        raise LemmaPreconditionError(f"k={spec.k} is not a multiple of the letter order {order}")
    rt_base = exact_reset_threshold(base, limits).threshold
    rt_tailed = exact_reset_threshold(tail_append(base, spec), limits).threshold
    predicted = predict_tailed_rt(rt_base, base.n, spec.k)
    return TailLemmaEvidence(rt_tailed == predicted, rt_base, rt_tailed, predicted, base.n, spec.k, order)


MATCH, BOUND_ONLY, MISMATCH, SKIPPED = "match", "bound-only", "mismatch", "skipped"


@dataclass(frozen=True)
class ReportRow:
    family: str
    param: int
    states: int
    rt_exact: Optional[int]
    rt_lower: int
    rt_formula: int
    status: str


def _row(family, param, dfa, lower, formula, limits, exact=True) -> ReportRow:
    if not exact:
        return ReportRow(family, param, dfa.n, None, lower, formula, BOUND_ONLY)
    try:
        rt = exact_reset_threshold(dfa, limits).threshold
    except SolverLimitExceeded:
        return ReportRow(family, param, dfa.n, None, lower, formula, SKIPPED)
    return ReportRow(family, param, dfa.n, rt, lower, formula, MATCH if rt == formula else MISMATCH)


def martyugin_formula(n: int) -> int:
    return -(-(n * n + 6 * n - 16) // 4)


def b_series_formula(n: int) -> int:
    return n * n // 4 + 2 * n - 9


def reproduce_paper_table(
    max_n: int = 13,
    b_series_sizes: Sequence[int] = (16, 28),
    exact_b_series: Iterable[int] = (16,),
    limits: Optional[SolverLimits] = None,
) -> List[ReportRow]:
    """Exact thresholds next to the closed forms for every family.

    Rows come in a fixed order: cerny, fig1, martyugin, a-series, b-series.
    b-series sizes not listed in ``exact_b_series`` are reported
    bound-only with the lemma-derived value.
    """
    if max_n < 7:
        raise ValueError(f"max_n must be >= 7, got {max_n}")
    exact_b = set(exact_b_series)
    rows = []
    for n in range(3, max_n + 1):
        f = (n - 1) ** 2
        rows.append(_row("cerny", n, cerny(n), f, f, limits))
    for n in range(3, max_n + 1):
        f = n * (n - 1) // 2
        rows.append(_row("fig1", n, fig1_chain(n), f, f, limits))
    for m in range(4, max(4, max_n // 2) + 1):
        f = martyugin_formula(2 * m)
        rows.append(_row("martyugin", m, martyugin(m), f, f, limits))
    for n in range(7, max_n + 1):
        f = 20 if n == 8 else 4 * n - 13
        rows.append(_row("a-series", n, a_series(n), 4 * n - 13, f, limits))
    for N in b_series_sizes:
        f = b_series_formula(N)
        rows.append(_row("b-series", N, b_series(N), f, f, limits, exact=N in exact_b))
    return rows


def rows_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(ReportRow)])
    for row in rows:
        writer.writerow(["" if v is None else v for v in astuple(row)])
    return buf.getvalue()


def format_table(rows: Sequence[ReportRow]) -> str:
    header = [f.name for f in fields(ReportRow)]
    body = [["-" if v is None else str(v) for v in astuple(r)] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in body]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BoundComparison:
    n: int
    martyugin: int
    vorel_conjecture: Fraction
    tail_series: Fraction


def compare_bounds(N: int) -> BoundComparison:
    """Closed-form lower bounds at N states: Martyugin's, Vorel's conjectured value, and n^2/4 + 2n - 9."""
    if N < 8:
        raise ValueError(f"N must be >= 8, got {N}")
    return BoundComparison(
        N,
        martyugin_formula(N),
        Fraction(N * N, 4) + Fraction(3 * N, 2) - 3,
        Fraction(N * N, 4) + 2 * N - 9,
    )
