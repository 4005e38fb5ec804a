"""Provability-density experiments and the cheap-true-sentence family.

provability_density measures, among all well-formed formulas of a given
rendered length, the fraction provable within a budget.  The denominator is
the exact count of length-n formulas; open formulas count (the shortest
provable formulas are open, and no closed formula of length 7 even exists,
so restricting to closed sentences would make small-length comparisons
vacuous).

The accounting family "the complexity of x exceeds m" lives in an extended
language with a fixed frame: its rendered length is |x| plus a constant
depending only on m, which is all the density argument uses.  Refutations
are certificates (a short program for x); truth of the rest is never
claimed, only lower-bounded by counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional

from ..complexity import SearchBudget, WitnessTable, build_witness_table, h_upper
from ..qstrings import QString, index_to_string
from .ranking import count_formulas, unrank_formula
from .syntax import Formula, formula_length, render


def provability_density(
    n: int,
    theorems: list[Formula],
) -> Fraction:
    """Fraction of length-n formulas that appear in the theorem list."""
    total = count_formulas(n)
    if total == 0:
        return Fraction(0)
    hits = sum(1 for f in theorems if formula_length(f) == n)
    return Fraction(hits, total)


def sample_provability_density(
    n: int,
    theorems: list[Formula],
    samples: int,
    seed: int,
) -> tuple[Fraction, int]:
    """Monte-Carlo estimate of provability_density for lengths too large to
    enumerate; deterministic for a given seed."""
    total = count_formulas(n)
    if total == 0:
        return Fraction(0), 0
    shorter = sum(count_formulas(l) for l in range(1, n))
    rng = Random(seed)
    theorem_set = {render(f).symbols for f in theorems if formula_length(f) == n}
    hits = 0
    for _ in range(samples):
        k = shorter + rng.randrange(total)
        f = unrank_formula(k)
        if render(f).symbols in theorem_set:
            hits += 1
    return Fraction(hits, samples), samples


# ---------------------------------------------------------------------------
# The family "complexity of x exceeds m" with fixed framing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HgtAtom:
    """Accounting sentence asserting the complexity of x exceeds m."""

    x: QString
    m: int

    def __post_init__(self):
        if self.x.q != 15:
            raise ValueError("the family quantifies over 15-ary strings")

    def render_text(self) -> str:
        return f"H({self.x.render()})>{self.m}"

    def render_length(self) -> int:
        return len(self.x) + frame_length(self.m)


def frame_length(m: int) -> int:
    """Symbols of the fixed frame H(...)>m; constant for fixed m."""
    return 4 + len(str(m))


@dataclass(frozen=True)
class HgtFamilyStats:
    n: int
    m: int
    family_size: int
    refuted_count: int
    true_fraction_lower_bound: Fraction


def hgt_family_stats(
    n: int,
    m: int,
    budget: SearchBudget,
    table: Optional[WitnessTable] = None,
) -> HgtFamilyStats:
    """Over the family of sentences of rendered length n (one per string x of
    length n - frame), count refutations: x with a witnessed program of
    length at most m.  The rest are true or undecided, so 1 - refuted/size
    lower-bounds the true fraction."""
    width = n - frame_length(m)
    if width < 0:
        raise ValueError("length n is below the frame length")
    if table is None:
        table = build_witness_table(15, budget)
    size = 15**width
    refuted = 0
    shorter = (15**width - 1) // 14
    for offset in range(size):
        x = index_to_string(15, shorter + offset)
        if m >= 0 and h_upper(15, x, budget, table=table).value <= m:
            refuted += 1
    return HgtFamilyStats(
        n=n,
        m=m,
        family_size=size,
        refuted_count=refuted,
        true_fraction_lower_bound=1 - Fraction(refuted, size),
    )
