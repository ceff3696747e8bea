"""Randomized and exhaustive property checks on the cost oracles.

Spaces with at most 9 cells are swept exhaustively; larger spaces (up to 16
cells) get seeded random samples.  Every check is exact, so a single
counterexample is a real finding, not noise.
"""

import random
from fractions import Fraction

from wccomp import (
    BITWISE_OR,
    IDENTITY,
    SampleSpace,
    SupportSet,
    apply_symmetry,
    formula_counts,
    simulate,
    summarize,
    worst_case_bits,
    worst_case_informants,
)
from wccomp.measures import ceil_log2
from wccomp.oracle import OracleContext

EXHAUSTIVE_SPACES = [(2, 2), (3, 2), (2, 3)]
RANDOM_SPACES = [(4, 2), (2, 4)]
RANDOM_SETS_PER_SPACE = 550


def iter_masks(q, n, seed=0):
    space = SampleSpace(q, n)
    cells = space.total_cells
    if cells <= 9:
        yield from range(1, 1 << cells)
    else:
        rng = random.Random(seed)
        for _ in range(RANDOM_SETS_PER_SPACE):
            yield rng.randrange(1, 1 << cells)


def all_suite_spaces():
    return EXHAUSTIVE_SPACES + RANDOM_SPACES


def test_cost_bounds_and_orderings():
    for q, n in all_suite_spaces():
        space = SampleSpace(q, n)
        id_ctx = OracleContext(space, IDENTITY)
        or_ctx = OracleContext(space, BITWISE_OR)
        for mask in iter_masks(q, n):
            support = SupportSet.from_mask(space, mask)
            s = summarize(support)
            bits = id_ctx.bits_value(mask)
            informants = id_ctx.informants_value(mask)

            # identity bit bounds: information floor and per-informant budget
            assert s.min_bits_bound <= bits <= s.naive_bit_budget, (space, mask)
            assert bits <= n * ceil_log2(q)
            # informant count bounds
            if len(support) == 1:
                assert bits == 0 and informants == 0
            else:
                assert 1 <= informants <= n
                assert informants <= bits
            # the OR of the vector can never cost more than the vector itself
            or_bits = or_ctx.bits_value(mask)
            assert or_bits <= bits, (space, mask)
            assert or_ctx.informants_value(mask) <= informants, (space, mask)
            # ... but must still pay for naming one of its distinct outputs
            assert or_bits >= ceil_log2(or_ctx.distinct_values(mask))
            # the adaptive one-bit question model dominates block-serial
            assert id_ctx.interleaved_bits_value(mask) <= bits, (space, mask)
            assert or_ctx.interleaved_bits_value(mask) <= or_ctx.bits_value(mask)
            # a full-rate set always needs every informant
            if bits == id_ctx.max_rate_bits:
                assert informants == n, (space, mask)


def test_ratio_ranges():
    for q, n in all_suite_spaces():
        space = SampleSpace(q, n)
        ctx = OracleContext(space, IDENTITY)
        for mask in iter_masks(q, n, seed=1):
            support = SupportSet.from_mask(space, mask)
            s = summarize(support)
            bits = ctx.bits_value(mask)
            informants = ctx.informants_value(mask)
            if s.naive_bit_budget > 0:
                ratio = Fraction(bits, s.naive_bit_budget)
                floor = Fraction(s.min_bits_bound, s.naive_bit_budget)
                assert floor <= ratio <= 1
            if informants > 0:
                assert Fraction(1, n) <= Fraction(informants, n) <= 1


def test_superset_monotonicity():
    for q, n in all_suite_spaces():
        space = SampleSpace(q, n)
        cells = space.total_cells
        id_ctx = OracleContext(space, IDENTITY)
        or_ctx = OracleContext(space, BITWISE_OR)
        rng = random.Random(q * 100 + n)
        for _ in range(300):
            big = rng.randrange(3, 1 << cells)
            small = big & rng.randrange(1, 1 << cells)
            if small == 0 or small == big:
                continue
            for ctx in (id_ctx, or_ctx):
                assert ctx.bits_value(small) <= ctx.bits_value(big)
                assert ctx.informants_value(small) <= ctx.informants_value(big)


def test_symmetry_invariance():
    # identity costs are invariant under any relabeling; OR costs only under
    # coordinate permutations, since value maps change the function itself
    for q, n in all_suite_spaces():
        space = SampleSpace(q, n)
        id_ctx = OracleContext(space, IDENTITY)
        or_ctx = OracleContext(space, BITWISE_OR)
        rng = random.Random(q * 37 + n)
        for _ in range(120):
            mask = rng.randrange(1, 1 << space.total_cells)
            support = SupportSet.from_mask(space, mask)
            perm = rng.sample(range(n), n)
            maps = [rng.sample(range(q), q) for _ in range(n)]
            image = apply_symmetry(support, perm, maps)
            assert id_ctx.bits_value(image.mask) == id_ctx.bits_value(mask)
            assert id_ctx.informants_value(image.mask) == id_ctx.informants_value(mask)
            ident = [list(range(q)) for _ in range(n)]
            permuted = apply_symmetry(support, perm, ident)
            assert or_ctx.bits_value(permuted.mask) == or_ctx.bits_value(mask)
            assert or_ctx.informants_value(permuted.mask) == or_ctx.informants_value(
                mask
            )


def test_strategy_soundness():
    # every simulated run must output f(p) within the advertised worst case,
    # and some input must attain the worst case exactly
    for q, n in all_suite_spaces():
        space = SampleSpace(q, n)
        rng = random.Random(q * 11 + n)
        if space.total_cells <= 9:
            masks = list(iter_masks(q, n))
            rng.shuffle(masks)
            masks = masks[:150]
        else:
            masks = [rng.randrange(1, 1 << space.total_cells) for _ in range(100)]
        for mask in masks:
            support = SupportSet.from_mask(space, mask)
            for function in (IDENTITY, BITWISE_OR):
                bits, bstrat = worst_case_bits(support, function)
                seen_bits = []
                for p in support:
                    t = simulate(bstrat, p)
                    assert t.output == function.value(space, p)
                    assert t.total_bits <= bits
                    seen_bits.append(t.total_bits)
                assert max(seen_bits) == bits
                count, istrat = worst_case_informants(support, function)
                seen_counts = []
                for p in support:
                    t = simulate(istrat, p)
                    assert t.output == function.value(space, p)
                    assert t.informants_queried <= count
                    seen_counts.append(t.informants_queried)
                assert max(seen_counts) == count


def _direct_two_informant_bits(space, support, function):
    """Independent oracle for N=2: after the first informant answers, the
    second is forced, so the optimum is a two-term minimum computed without
    any recursion or memoization."""
    from wccomp import condition, project

    def f_constant(cells):
        values = {function.value(space, p) for p in cells.points}
        return len(values) <= 1

    if f_constant(support):
        return 0
    best = None
    for first in (0, 1):
        second = 1 - first
        firsts = sorted(project(support, first))
        if len(firsts) < 2:
            continue
        worst = 0
        for v in firsts:
            branch = condition(support, first, v)
            if f_constant(branch):
                tail = 0
            else:
                tail = ceil_log2(len(project(branch, second)))
            worst = max(worst, tail)
        cost = ceil_log2(len(firsts)) + worst
        best = cost if best is None else min(best, cost)
    return best


def _direct_two_informant_informants(space, support, function):
    def f_constant(cells):
        values = {function.value(space, p) for p in cells.points}
        return len(values) <= 1

    from wccomp import condition, project

    if f_constant(support):
        return 0
    for first in (0, 1):
        branches = [
            condition(support, first, v) for v in project(support, first)
        ]
        if all(f_constant(b) for b in branches):
            return 1
    return 2


def test_two_informant_direct_formula_cross_check():
    # straight-line arithmetic vs the memoized DP, exhaustively at 3x2 and on
    # random sets at 4x2 and 5x2
    cases = []
    cases.extend((SampleSpace(3, 2), mask) for mask in range(1, 1 << 9))
    rng = random.Random(5)
    cases.extend((SampleSpace(4, 2), rng.randrange(1, 1 << 16)) for _ in range(300))
    cases.extend((SampleSpace(5, 2), rng.randrange(1, 1 << 25)) for _ in range(300))
    contexts = {}
    for space, mask in cases:
        support = SupportSet.from_mask(space, mask)
        for function in (IDENTITY, BITWISE_OR):
            key = (space, function.kind)
            if key not in contexts:
                contexts[key] = OracleContext(space, function)
            ctx = contexts[key]
            assert ctx.bits_value(mask) == _direct_two_informant_bits(
                space, support, function
            ), (space, mask, function.kind)
            assert ctx.informants_value(mask) == _direct_two_informant_informants(
                space, support, function
            ), (space, mask, function.kind)


def test_closed_form_fractions_strictly_decrease():
    # the incompressible fractions at the two entry thresholds shrink as the
    # alphabet or the informant count grows
    grid = {
        (q, n): formula_counts(q, n) for q in range(2, 9) for n in range(2, 9)
    }
    for q in range(2, 9):
        for n in range(2, 9):
            here = grid[(q, n)]
            if q < 8:
                right = grid[(q + 1, n)]
                assert right.m1_fraction < here.m1_fraction
                assert right.m3_fraction < here.m3_fraction
            if n < 8:
                down = grid[(q, n + 1)]
                assert down.m1_fraction < here.m1_fraction
                assert down.m3_fraction < here.m3_fraction
