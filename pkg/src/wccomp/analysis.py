"""Classification, threshold, counting and region analysis of support sets.

Closed-form threshold and count formulas are evaluated in exact integer
arithmetic; the same quantities are recomputed by exhaustive enumeration with
the cost oracle so the two can be cross-checked.  Counting is always over raw
subsets (no symmetry quotienting) so denominators are plain binomials.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from .errors import EnumerationTooLarge, InvalidArgument
from .measures import ceil_log2, beta as beta_ratio, eta as eta_ratio, summarize
from .oracle import (
    DEFAULT_STATE_CAP,
    IDENTITY,
    CostReport,
    OracleContext,
    TargetFunction,
    worst_case_bits,
    worst_case_bits_interleaved,
    worst_case_informants,
)
from .supports import (
    DEFAULT_ENUM_GUARD,
    SampleSpace,
    SupportSet,
    enumerate_masks,
    serialize_support,
)

PRED_MAX_RATE = "max_rate_bits"
PRED_ALL_INFORMANTS = "all_informants"
PRED_BETA_ONE = "beta_one"
PREDICATES = (PRED_MAX_RATE, PRED_ALL_INFORMANTS, PRED_BETA_ONE)

REGION_ALL_COMPRESSIBLE = "all_compressible"
REGION_MIXED = "mixed"
REGION_ALL_INCOMPRESSIBLE = "all_incompressible"


def _mode_for(function: TargetFunction) -> str:
    return "dsc" if function.kind == "identity" else "bitwise_or"


def predicate_fn(ctx: OracleContext, predicate: str) -> Callable[[int], bool]:
    """Incompressibility test for one support-set bitmask.

    max_rate_bits: the optimal strategy still costs a full symbol per
    informant.  all_informants: every informant must be queried in the worst
    case.  beta_one: the optimal bits equal the per-informant marginal budget.
    """
    space = ctx.space
    n = space.num_informants
    if predicate == PRED_MAX_RATE:
        target = ctx.max_rate_bits

        def pred(mask: int) -> bool:
            return ctx.bits_value(mask) == target

    elif predicate == PRED_ALL_INFORMANTS:

        def pred(mask: int) -> bool:
            return ctx.informants_value(mask) == n

    elif predicate == PRED_BETA_ONE:

        def pred(mask: int) -> bool:
            budget = 0
            for cols in ctx.cols:
                k = 0
                for col in cols:
                    if mask & col:
                        k += 1
                if k:
                    budget += ceil_log2(k)
            if budget == 0:
                return False
            return ctx.bits_value(mask) == budget

    else:
        raise InvalidArgument(f"unknown predicate {predicate!r}")
    return pred


# ---------------------------------------------------------------------------
# classification of a single set
# ---------------------------------------------------------------------------

def classify(
    support: SupportSet,
    function: TargetFunction = IDENTITY,
    model: str = "block-serial",
    include_strategies: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
) -> CostReport:
    """Full cost report for one support set: measures, both worst-case costs,
    normalized ratios and the compressibility flags."""
    if model not in ("block-serial", "bit-adaptive"):
        raise InvalidArgument(f"unknown model {model!r}")
    space = support.space
    measures = summarize(support)
    bits_strategy = None
    informants_strategy = None
    if model == "bit-adaptive":
        bits = worst_case_bits_interleaved(support, function, state_cap=state_cap)
    elif include_strategies:
        bits, bits_strategy = worst_case_bits(support, function)
    else:
        bits = OracleContext(space, function).bits_value(support.mask)
    if include_strategies:
        informants, informants_strategy = worst_case_informants(support, function)
    else:
        informants = OracleContext(space, function).informants_value(support.mask)
    beta_val, beta_deg = beta_ratio(support, bits)
    eta_val, eta_deg = eta_ratio(support, informants)
    report = CostReport(
        space=space,
        function_kind=function.kind,
        model=model,
        measures=measures,
        bits_worst=bits,
        informants_worst=informants,
        beta=beta_val,
        beta_degenerate=beta_deg,
        eta=eta_val,
        eta_degenerate=eta_deg,
        bit_compressible=beta_val < 1,
        informant_compressible=eta_val < 1,
        max_rate=bits == space.num_informants * ceil_log2(space.alphabet_size),
        all_informants=informants == space.num_informants,
        bits_strategy=bits_strategy,
        informants_strategy=informants_strategy,
    )
    return report


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdSet:
    """The four region boundaries: m1/m3 are the smallest cardinalities with an
    incompressible set (bits/informants); m2/m4 the largest with a compressible
    one."""

    mode: str
    source: str
    m1: int | None = None
    m2: int | None = None
    m3: int | None = None
    m4: int | None = None


def formula_thresholds(q: int, n: int, mode: str = "dsc") -> ThresholdSet:
    """Closed-form thresholds; for bitwise_or only m1 and m3 have closed forms."""
    if q < 2 or n < 1:
        raise InvalidArgument(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    if mode == "dsc":
        return ThresholdSet(
            mode="dsc",
            source="formula",
            m1=n * (q - 1) + 1,
            m2=q ** (n - 1) * (q - 1),
            m3=n + 1,
            m4=q ** (n - 1),
        )
    if mode == "bitwise_or":
        return ThresholdSet(
            mode="bitwise_or", source="formula", m1=n * (q - 1) + 1, m3=n + 1
        )
    raise InvalidArgument(f"unknown mode {mode!r}")


def oracle_thresholds(
    space: SampleSpace,
    function: TargetFunction = IDENTITY,
    predicate: str = PRED_MAX_RATE,
    guard: int = DEFAULT_ENUM_GUARD,
) -> ThresholdSet:
    """Exhaustive thresholds: smallest cardinality with a satisfying set and
    largest cardinality with a violating set, scanned with early exit."""
    ctx = OracleContext(space, function)
    pred = predicate_fn(ctx, predicate)
    cells = space.total_cells
    first = None
    for m in range(1, cells + 1):
        if any(pred(mask) for mask in enumerate_masks(space, m, guard=guard)):
            first = m
            break
    last = None
    for m in range(cells, 0, -1):
        if any(not pred(mask) for mask in enumerate_masks(space, m, guard=guard)):
            last = m
            break
    mode = _mode_for(function)
    if predicate == PRED_ALL_INFORMANTS:
        return ThresholdSet(mode=mode, source="oracle", m3=first, m4=last)
    return ThresholdSet(mode=mode, source="oracle", m1=first, m2=last)


def verify_proposition(
    q_range: Iterable[int] = range(3, 11), n_range: Iterable[int] = range(3, 11)
) -> list[tuple[int, int, bool]]:
    """Check the strict chain m3 < m1 < m4 < m2 across a parameter grid."""
    rows = []
    for q in q_range:
        for n in n_range:
            t = formula_thresholds(q, n)
            holds = t.m3 < t.m1 < t.m4 < t.m2
            rows.append((q, n, holds))
    return rows


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountReport:
    """Exact census of one cardinality: how many subsets are incompressible."""

    space: SampleSpace
    cardinality: int
    predicate: str
    function_kind: str
    incompressible_count: int
    total_sets: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.incompressible_count, self.total_sets)


def _scan_worker(args) -> tuple[int, bool, bool]:
    q, n, fkind, predicate, m, guard, start, stop = args
    space = SampleSpace(q, n)
    ctx = OracleContext(space, TargetFunction(fkind))
    pred = predicate_fn(ctx, predicate)
    count = 0
    sat = False
    viol = False
    for mask in enumerate_masks(space, m, guard=guard, start=start, stop=stop):
        if pred(mask):
            count += 1
            sat = True
        else:
            viol = True
    return count, sat, viol


def _scan_cardinality(
    space: SampleSpace,
    m: int,
    predicate: str,
    function: TargetFunction,
    guard: int,
    jobs: int,
) -> tuple[int, bool, bool]:
    """(count, satisfying set exists, violating set exists) over all m-subsets.

    The rank range is partitioned across workers; the reduction is a plain
    sum/or, so results do not depend on the worker count.
    """
    total = comb(space.total_cells, m)
    if total > guard:
        raise EnumerationTooLarge(
            f"{total} subsets of size {m} in {space} exceeds guard {guard}"
        )
    if jobs <= 1 or total < 4 * jobs:
        return _scan_worker(
            (
                space.alphabet_size,
                space.num_informants,
                function.kind,
                predicate,
                m,
                guard,
                0,
                total,
            )
        )
    bounds = [total * i // jobs for i in range(jobs + 1)]
    tasks = [
        (
            space.alphabet_size,
            space.num_informants,
            function.kind,
            predicate,
            m,
            guard,
            bounds[i],
            bounds[i + 1],
        )
        for i in range(jobs)
    ]
    count = 0
    sat = False
    viol = False
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part_count, part_sat, part_viol in pool.map(_scan_worker, tasks):
            count += part_count
            sat = sat or part_sat
            viol = viol or part_viol
    return count, sat, viol


def count_at_cardinality(
    space: SampleSpace,
    cardinality: int,
    predicate: str = PRED_MAX_RATE,
    function: TargetFunction = IDENTITY,
    guard: int = DEFAULT_ENUM_GUARD,
    jobs: int = 1,
) -> CountReport:
    """Exact incompressible count over every cardinality-m subset."""
    count, _, _ = _scan_cardinality(space, cardinality, predicate, function, guard, jobs)
    return CountReport(
        space=space,
        cardinality=cardinality,
        predicate=predicate,
        function_kind=function.kind,
        incompressible_count=count,
        total_sets=comb(space.total_cells, cardinality),
    )


@dataclass(frozen=True)
class FormulaCounts:
    """Closed-form incompressible counts/fractions at the two entry thresholds."""

    m1: int
    m1_count: int
    m1_total: int
    m3: int
    m3_count: int
    m3_total: int

    @property
    def m1_fraction(self) -> Fraction:
        return Fraction(self.m1_count, self.m1_total)

    @property
    def m3_fraction(self) -> Fraction:
        return Fraction(self.m3_count, self.m3_total)


def formula_counts(q: int, n: int) -> FormulaCounts:
    """Closed-form counts of incompressible sets at the smallest incompressible
    cardinalities, with exact binomial denominators."""
    if q < 2 or n < 1:
        raise InvalidArgument(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    m1 = n * (q - 1) + 1
    m3 = n + 1
    return FormulaCounts(
        m1=m1,
        m1_count=q ** (n - 1) * ((n - 1) * (q - 1) + 1),
        m1_total=comb(q**n, m1),
        m3=m3,
        m3_count=q**n * (q - 1) ** n,
        m3_total=comb(q**n, m3),
    )


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionRow:
    cardinality: int
    exists_incompressible: bool
    all_incompressible: bool
    label: str
    count: int | None = None
    total: int | None = None


@dataclass(frozen=True)
class RegionTable:
    space: SampleSpace
    function_kind: str
    kind: str
    mode: str
    rows: tuple[RegionRow, ...]


def _region_label(exists: bool, all_inc: bool) -> str:
    if all_inc:
        return REGION_ALL_INCOMPRESSIBLE
    if not exists:
        return REGION_ALL_COMPRESSIBLE
    return REGION_MIXED


def region_table(
    space: SampleSpace,
    function: TargetFunction = IDENTITY,
    kind: str = "bits",
    mode: str = "oracle",
    guard: int = DEFAULT_ENUM_GUARD,
    jobs: int = 1,
    with_counts: bool = False,
) -> RegionTable:
    """Per-cardinality compressibility bands.

    Oracle mode enumerates every subset of every cardinality; formula mode
    derives the bands from the closed-form thresholds (identity target only).
    """
    if kind not in ("bits", "informants"):
        raise InvalidArgument(f"unknown region kind {kind!r}")
    predicate = PRED_MAX_RATE if kind == "bits" else PRED_ALL_INFORMANTS
    cells = space.total_cells
    rows = []
    if mode == "formula":
        if function.kind != "identity":
            raise InvalidArgument("formula regions are defined for the identity target")
        t = formula_thresholds(space.alphabet_size, space.num_informants)
        lo = t.m1 if kind == "bits" else t.m3
        hi = t.m2 if kind == "bits" else t.m4
        for m in range(1, cells + 1):
            exists = m >= lo
            all_inc = m > hi
            rows.append(
                RegionRow(m, exists, all_inc, _region_label(exists, all_inc))
            )
    elif mode == "oracle":
        ctx = OracleContext(space, function)
        pred = predicate_fn(ctx, predicate)
        for m in range(1, cells + 1):
            if with_counts:
                count, sat, viol = _scan_cardinality(
                    space, m, predicate, function, guard, jobs
                )
                rows.append(
                    RegionRow(
                        m,
                        sat,
                        not viol,
                        _region_label(sat, not viol),
                        count=count,
                        total=comb(cells, m),
                    )
                )
            else:
                sat = False
                viol = False
                for mask in enumerate_masks(space, m, guard=guard):
                    if pred(mask):
                        sat = True
                    else:
                        viol = True
                    if sat and viol:
                        break
                rows.append(RegionRow(m, sat, not viol, _region_label(sat, not viol)))
    else:
        raise InvalidArgument(f"unknown region mode {mode!r}")
    return RegionTable(
        space=space,
        function_kind=function.kind,
        kind=kind,
        mode=mode,
        rows=tuple(rows),
    )


def find_witness(
    space: SampleSpace,
    cardinality: int,
    predicate: str = PRED_MAX_RATE,
    function: TargetFunction = IDENTITY,
    negate: bool = False,
    guard: int = DEFAULT_ENUM_GUARD,
) -> SupportSet | None:
    """First set in lexicographic combination order satisfying the predicate
    (or violating it, when negate); None when no such set exists."""
    ctx = OracleContext(space, function)
    pred = predicate_fn(ctx, predicate)
    for mask in enumerate_masks(space, cardinality, guard=guard):
        if pred(mask) != negate:
            return SupportSet._from_mask(space, mask)
    return None


# ---------------------------------------------------------------------------
# verification suites (the machinery behind `wccomp verify`)
# ---------------------------------------------------------------------------

@dataclass
class Check:
    """One verification verdict, with a serialized counterexample on failure."""

    name: str
    passed: bool
    expected: object = None
    actual: object = None
    counterexample: str | None = None


def verify_lemmas(
    space: SampleSpace,
    function: TargetFunction = IDENTITY,
    guard: int = DEFAULT_ENUM_GUARD,
) -> list[Check]:
    """Cross-check exhaustive oracle thresholds against the closed forms.

    For the identity target all four thresholds are compared; for bitwise OR
    the two entry thresholds, plus the claim that the smallest bit-threshold
    cardinality carries exactly one witness set.
    """
    checks = []
    q, n = space.alphabet_size, space.num_informants
    mode = _mode_for(function)
    formula = formula_thresholds(q, n, mode)
    bits = oracle_thresholds(space, function, PRED_MAX_RATE, guard=guard)
    informants = oracle_thresholds(space, function, PRED_ALL_INFORMANTS, guard=guard)

    def witness_at(m: int | None, predicate: str, negate: bool) -> str | None:
        if m is None or not 1 <= m <= space.total_cells:
            return None
        w = find_witness(space, m, predicate, function, negate=negate, guard=guard)
        return serialize_support(w) if w is not None else None

    pairs = [("m1", formula.m1, bits.m1, PRED_MAX_RATE, False),
             ("m3", formula.m3, informants.m3, PRED_ALL_INFORMANTS, False)]
    if mode == "dsc":
        pairs.insert(1, ("m2", formula.m2, bits.m2, PRED_MAX_RATE, True))
        pairs.append(("m4", formula.m4, informants.m4, PRED_ALL_INFORMANTS, True))
    for name, expected, actual, predicate, negate in pairs:
        passed = expected == actual
        counter = None if passed else witness_at(actual, predicate, negate)
        checks.append(
            Check(
                name=f"{name}@{space}",
                passed=passed,
                expected=expected,
                actual=actual,
                counterexample=counter,
            )
        )
    if mode == "bitwise_or" and bits.m1 is not None:
        report = count_at_cardinality(space, bits.m1, PRED_MAX_RATE, function, guard=guard)
        checks.append(
            Check(
                name=f"m1_witness_unique@{space}",
                passed=report.incompressible_count == 1,
                expected=1,
                actual=report.incompressible_count,
            )
        )
    return checks


def verify_counts(
    space: SampleSpace,
    predicate: str = PRED_ALL_INFORMANTS,
    guard: int = DEFAULT_ENUM_GUARD,
    jobs: int = 1,
) -> list[Check]:
    """Compare the enumerated incompressible count at the closed-form entry
    threshold against its closed-form value (identity target)."""
    q, n = space.alphabet_size, space.num_informants
    formulas = formula_counts(q, n)
    if predicate == PRED_MAX_RATE:
        m, expected = formulas.m1, formulas.m1_count
    elif predicate == PRED_ALL_INFORMANTS:
        m, expected = formulas.m3, formulas.m3_count
    else:
        raise InvalidArgument(f"no closed-form count for predicate {predicate!r}")
    report = count_at_cardinality(space, m, predicate, IDENTITY, guard=guard, jobs=jobs)
    return [
        Check(
            name=f"count_{predicate}_at_m{m}@{space}",
            passed=report.incompressible_count == expected,
            expected=expected,
            actual=report.incompressible_count,
        )
    ]


def verify_proposition_suite(
    q_range: Iterable[int] = range(3, 11), n_range: Iterable[int] = range(3, 11)
) -> list[Check]:
    checks = []
    for q, n, holds in verify_proposition(q_range, n_range):
        checks.append(
            Check(name=f"chain@{q}x{n}", passed=holds, expected=True, actual=holds)
        )
    return checks


def _iter_invariant_masks(space: SampleSpace, samples: int, seed: int):
    cells = space.total_cells
    if cells <= 9:
        yield from range(1, 1 << cells)
        return
    rng = random.Random(seed)
    full = (1 << cells) - 1
    for _ in range(samples):
        mask = rng.randrange(1, full + 1)
        yield mask


def verify_invariants(
    space: SampleSpace, samples: int = 500, seed: int = 0
) -> list[Check]:
    """Bounded model checks on one space: cost bounds, cost orderings between
    the two target functions and the two bit models, and region nesting.

    Exhaustive over all nonempty subsets up to 9 cells, seeded random above.
    """
    n = space.num_informants
    id_ctx = OracleContext(space, IDENTITY)
    or_ctx = OracleContext(space, TargetFunction.bitwise_or())
    failures: dict[str, str] = {}
    names = [
        "bits_within_bounds",
        "informants_within_bounds",
        "informants_le_bits",
        "or_dominated_by_identity",
        "interleaved_le_block_serial",
        "max_rate_implies_all_informants",
    ]

    def note(name: str, mask: int):
        if name not in failures:
            failures[name] = serialize_support(SupportSet._from_mask(space, mask))

    count = 0
    for mask in _iter_invariant_masks(space, samples, seed):
        count += 1
        support = SupportSet._from_mask(space, mask)
        summary = summarize(support)
        bits = id_ctx.bits_value(mask)
        informants = id_ctx.informants_value(mask)
        if not summary.min_bits_bound <= bits <= summary.naive_bit_budget:
            note("bits_within_bounds", mask)
        if len(support) == 1:
            if informants != 0:
                note("informants_within_bounds", mask)
        elif not 1 <= informants <= n:
            note("informants_within_bounds", mask)
        if len(support) > 1 and informants > bits:
            note("informants_le_bits", mask)
        if or_ctx.bits_value(mask) > bits or or_ctx.informants_value(mask) > informants:
            note("or_dominated_by_identity", mask)
        if id_ctx.interleaved_bits_value(mask) > bits:
            note("interleaved_le_block_serial", mask)
        if bits == id_ctx.max_rate_bits and informants != n:
            note("max_rate_implies_all_informants", mask)
    checks = [
        Check(
            name=f"{name}@{space}",
            passed=name not in failures,
            expected="no counterexample",
            actual=f"checked {count} sets",
            counterexample=failures.get(name),
        )
        for name in names
    ]
    return checks
