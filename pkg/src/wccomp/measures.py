"""Cardinality-based worst-case information measures.

Everything here is exact: counts are integers and the normalized ratios are
kept as Fractions so that boundary classifications (a ratio equal to 1 versus
strictly below it) never depend on floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptySupport, InconsistentInput, InvalidArgument
from .supports import SupportSet, project


def ceil_log2(k: int) -> int:
    """Smallest b with 2**b >= k; the bits needed to name one of k candidates."""
    if k < 1:
        raise InvalidArgument(f"ceil_log2 needs k >= 1, got {k}")
    return (k - 1).bit_length()


@dataclass(frozen=True)
class MeasureSummary:
    """Ambiguity, marginals, sparsity and the two bit-count bounds of a support set.

    naive_bit_budget is what querying every informant separately would cost in
    the worst case; min_bits_bound is the information-theoretic floor.
    """

    ambiguity: int
    marginal_ambiguities: tuple[int, ...]
    sparsity: Fraction
    naive_bit_budget: int
    min_bits_bound: int


def summarize(support: SupportSet) -> MeasureSummary:
    """Compute all measures of a support set exactly."""
    if support.is_empty:
        raise EmptySupport("cannot summarize an empty set")
    space = support.space
    ambiguity = len(support)
    marginals = tuple(
        len(project(support, i)) for i in range(space.num_informants)
    )
    return MeasureSummary(
        ambiguity=ambiguity,
        marginal_ambiguities=marginals,
        sparsity=Fraction(ambiguity, space.total_cells),
        naive_bit_budget=sum(ceil_log2(m) for m in marginals),
        min_bits_bound=ceil_log2(ambiguity),
    )


def beta(support: SupportSet, bits_worst: int) -> tuple[Fraction, bool]:
    """Worst-case bits normalized by the per-informant budget.

    Returns (ratio, degenerate).  When every marginal is a singleton the
    budget is zero bits; such sets are flagged degenerate and given ratio 0.
    """
    summary = summarize(support)
    if bits_worst < 0:
        raise InconsistentInput(f"bits_worst must be >= 0, got {bits_worst}")
    if bits_worst > summary.naive_bit_budget:
        raise InconsistentInput(
            f"bits_worst {bits_worst} exceeds the naive budget "
            f"{summary.naive_bit_budget}"
        )
    if summary.naive_bit_budget == 0:
        return Fraction(0), True
    return Fraction(bits_worst, summary.naive_bit_budget), False


def eta(support: SupportSet, informants_worst: int) -> tuple[Fraction, bool]:
    """Worst-case informants queried normalized by the informant count.

    Returns (ratio, degenerate); degenerate marks sets needing no queries at
    all, for which the usual 1/N lower bound does not apply.
    """
    if support.is_empty:
        raise EmptySupport("cannot normalize over an empty set")
    n = support.space.num_informants
    if informants_worst < 0:
        raise InconsistentInput(f"informants_worst must be >= 0, got {informants_worst}")
    if informants_worst > n:
        raise InconsistentInput(
            f"informants_worst {informants_worst} exceeds informant count {n}"
        )
    if informants_worst == 0:
        return Fraction(0), True
    return Fraction(informants_worst, n), False
