"""Acceptance suite: the project's verification matrix, one check per test.

Each test prints a single [PASS]/[FAIL] line (run with `pytest -s` to see
them all) and then asserts.  Checks 1 and 7 are known findings: exhaustive
search refutes part of the closed-form claims they encode, and the failing
assertions document exactly where.  See README "Verification matrix".
"""

from fractions import Fraction

import pytest

import test_properties
from wccomp import (
    BITWISE_OR,
    IDENTITY,
    SampleSpace,
    SupportSet,
    count_at_cardinality,
    formula_counts,
    formula_thresholds,
    oracle_thresholds,
    region_table,
    verify_proposition,
    worst_case_bits,
    worst_case_bits_interleaved,
    worst_case_informants,
)
from wccomp.analysis import PRED_ALL_INFORMANTS, PRED_MAX_RATE
from wccomp.oracle import OracleContext


def _report(num: int, description: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] check {num:2d}: {description}{suffix}")
    assert ok, f"check {num}: {description}{suffix}"


def test_check_01_threshold_reproduction():
    spaces = [(2, 2), (3, 2), (2, 3), (4, 2)]
    mismatches = []
    for q, n in spaces:
        space = SampleSpace(q, n)
        formula = formula_thresholds(q, n)
        bits = oracle_thresholds(space, IDENTITY, PRED_MAX_RATE)
        informants = oracle_thresholds(space, IDENTITY, PRED_ALL_INFORMANTS)
        got = (bits.m1, bits.m2, informants.m3, informants.m4)
        want = (formula.m1, formula.m2, formula.m3, formula.m4)
        if got != want:
            mismatches.append(f"{q}x{n}: formula {want} != oracle {got}")
    _report(
        1,
        "exhaustive thresholds equal the closed forms at 2x2, 3x2, 2x3, 4x2",
        not mismatches,
        "; ".join(mismatches),
    )


def test_check_02_counts_small_scale():
    failures = []
    fc22 = formula_counts(2, 2)
    got = count_at_cardinality(SampleSpace(2, 2), 3, PRED_MAX_RATE).incompressible_count
    if not (got == fc22.m1_count == 4):
        failures.append(f"2x2 max-rate@3 = {got}")
    got = count_at_cardinality(
        SampleSpace(2, 2), 3, PRED_ALL_INFORMANTS
    ).incompressible_count
    if not (got == fc22.m3_count == 4):
        failures.append(f"2x2 all-informants@3 = {got}")
    report = count_at_cardinality(SampleSpace(3, 2), 3, PRED_ALL_INFORMANTS)
    if (report.incompressible_count, report.total_sets) != (36, 84):
        failures.append(f"3x2 all-informants@3 = {report.incompressible_count}")
    _report(2, "entry-threshold counts at 2x2 and 3x2 match the closed forms",
            not failures, "; ".join(failures))


def test_check_03_informant_count_at_5x2():
    report = count_at_cardinality(SampleSpace(5, 2), 3, PRED_ALL_INFORMANTS)
    ok = (
        report.total_sets == 2300
        and report.incompressible_count == 400
        and report.fraction == Fraction(4, 23)
    )
    _report(
        3,
        "of the 2300 three-point sets in 5x2 exactly 400 need both informants",
        ok,
        f"count={report.incompressible_count}, fraction={report.fraction}",
    )


def test_check_04_bit_count_at_5x2():
    report = count_at_cardinality(
        SampleSpace(5, 2), 9, PRED_MAX_RATE, IDENTITY, jobs=2
    )
    expected = formula_counts(5, 2).m1_count
    ok = (
        report.total_sets == 2042975
        and report.incompressible_count == 25
        and expected == 25
    )
    _report(
        4,
        "of the 2042975 nine-point sets in 5x2 exactly 25 are full-rate",
        ok,
        f"count={report.incompressible_count} of {report.total_sets}",
    )


def test_check_05_regime_witnesses_at_5x2():
    space = SampleSpace(5, 2)
    cross = SupportSet(
        space, [(0, j) for j in range(5)] + [(i, 0) for i in range(1, 5)]
    )
    rows = SupportSet(space, [(i, j) for i in range(4) for j in range(5)])
    lset = SupportSet(space, [(0, 0), (0, 1), (1, 0)])
    row = SupportSet(space, [(0, j) for j in range(5)])
    results = {
        "cross bits": worst_case_bits(cross)[0],
        "rows bits": worst_case_bits(rows)[0],
        "L informants": worst_case_informants(lset)[0],
        "row informants": worst_case_informants(row)[0],
    }
    expected = {"cross bits": 6, "rows bits": 5, "L informants": 2, "row informants": 1}
    ok = results == expected
    _report(5, "the four 5x2 regime witnesses reproduce exactly", ok, str(results))


def test_check_06_threshold_chain():
    rows = verify_proposition(range(3, 11), range(3, 11))
    holding = sum(1 for _, _, holds in rows if holds)
    _report(
        6,
        "m3 < m1 < m4 < m2 holds at all 64 grid points with q, n in 3..10",
        holding == len(rows) == 64,
        f"{holding}/64",
    )


def test_check_07_bitwise_or_thresholds():
    failures = []
    ground_truth = []
    for q, n in [(2, 2), (3, 2)]:
        space = SampleSpace(q, n)
        bits = oracle_thresholds(space, BITWISE_OR, PRED_MAX_RATE)
        informants = oracle_thresholds(space, BITWISE_OR, PRED_ALL_INFORMANTS)
        if bits.m1 != n * (q - 1) + 1:
            failures.append(f"{q}x{n}: m1={bits.m1}")
        witnesses = count_at_cardinality(
            space, bits.m1, PRED_MAX_RATE, BITWISE_OR
        ).incompressible_count
        if witnesses != 1:
            failures.append(f"{q}x{n}: {witnesses} m1 witnesses, expected unique")
        if informants.m3 != n + 1:
            failures.append(f"{q}x{n}: m3={informants.m3}")
        or_count = count_at_cardinality(
            space, informants.m3, PRED_ALL_INFORMANTS, BITWISE_OR
        ).incompressible_count
        ground_truth.append(f"{q}x{n} OR all-informants@{informants.m3}={or_count}")
    _report(
        7,
        "bitwise-OR entry thresholds with a unique full-rate witness",
        not failures,
        "; ".join(failures + ground_truth),
    )


def test_check_08_property_suite():
    test_properties.test_cost_bounds_and_orderings()
    test_properties.test_ratio_ranges()
    test_properties.test_superset_monotonicity()
    test_properties.test_symmetry_invariance()
    test_properties.test_strategy_soundness()
    _report(8, "property sweep (bounds, orderings, symmetry, strategies) is clean", True)


def test_check_09_region_structure():
    failures = []
    table = region_table(SampleSpace(3, 2), IDENTITY, kind="bits")
    bands = [r.label for r in table.rows]
    if bands != ["all_compressible"] * 4 + ["mixed"] * 2 + ["all_incompressible"] * 3:
        failures.append(f"3x2 bit bands {bands}")
    table = region_table(SampleSpace(3, 2), IDENTITY, kind="informants")
    bands = [r.label for r in table.rows]
    if bands != ["all_compressible"] * 2 + ["mixed"] + ["all_incompressible"] * 6:
        failures.append(f"3x2 informant bands {bands}")
    for q, n in [(2, 2), (3, 2), (2, 3), (4, 2), (2, 4)]:
        space = SampleSpace(q, n)
        for kind in ("bits", "informants"):
            rows = region_table(space, IDENTITY, kind=kind).rows
            exists = [r.exists_incompressible for r in rows]
            alls = [r.all_incompressible for r in rows]
            if exists != sorted(exists) or alls != sorted(alls):
                failures.append(f"{q}x{n} {kind} regions not monotone")
            if any(a and not e for e, a in zip(exists, alls)):
                failures.append(f"{q}x{n} {kind} all without exists")
        # nesting, exhaustively: a full-rate set always needs every informant
        ctx = OracleContext(space, IDENTITY)
        for mask in range(1, 1 << space.total_cells):
            if ctx.bits_value(mask) == ctx.max_rate_bits:
                if ctx.informants_value(mask) != n:
                    failures.append(f"{q}x{n} nesting fails at mask {mask}")
                    break
    _report(9, "region bands, monotonicity and bit/informant nesting", not failures,
            "; ".join(failures))


def test_check_10_model_divergence_regression():
    space = SampleSpace(3, 2)
    seven = SupportSet(
        space, [(0, j) for j in range(3)] + [(1, j) for j in range(3)] + [(2, 0)]
    )
    block = worst_case_bits(seven)[0]
    adaptive = worst_case_bits_interleaved(seven)
    _report(
        10,
        "the 7-point 3x2 set costs 4 block-serial but 3 under adaptive questions",
        (block, adaptive) == (4, 3),
        f"block={block}, adaptive={adaptive}",
    )
