"""Exact worst-case query costs under the asymmetric sink/informant model.

Only the sink knows the support set.  The pinned cost model is block-serial:
the sink picks one informant at a time (the order may adapt to earlier
answers) and that informant fully resolves its value at a cost of
ceil(log2 k) bits, where k is the number of values it could still hold given
everything answered so far.  Downlink traffic is free.

Two quantities are minimized over all such strategies, each by exact dynamic
programming over consistent sets (the support cells compatible with the
answers so far): the worst-case total uplink bits, and the worst-case number
of informants queried.

A second, deliberately more powerful model is kept as a diagnostic: fully
adaptive one-bit membership questions ("is x_i in T?") that may interleave
informants.  It lower-bounds the block-serial cost and is reported separately
so the two can never be confused.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import EmptySupport, InvalidArgument, PointNotInSupport, StateSpaceTooLarge
from .measures import MeasureSummary, ceil_log2
from .supports import Point, SampleSpace, SupportSet, column_masks

DEFAULT_STATE_CAP = 1_000_000

_BIG = 1 << 30


@dataclass(frozen=True)
class TargetFunction:
    """What the sink must learn: the full data vector, or its bitwise OR.

    For bitwise_or each symbol is encoded in standard binary using
    ceil(log2 q) bits and the outputs are OR-ed over informants.
    """

    kind: str

    _KINDS = ("identity", "bitwise_or")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidArgument(f"unknown target function {self.kind!r}")

    @classmethod
    def identity(cls) -> "TargetFunction":
        return cls("identity")

    @classmethod
    def bitwise_or(cls) -> "TargetFunction":
        return cls("bitwise_or")

    @classmethod
    def from_name(cls, name: str) -> "TargetFunction":
        aliases = {"identity": "identity", "bitor": "bitwise_or", "bitwise_or": "bitwise_or"}
        if name not in aliases:
            raise InvalidArgument(f"unknown target function {name!r}")
        return cls(aliases[name])

    def value(self, space: SampleSpace, point: Point):
        """Function output for one data vector."""
        if self.kind == "identity":
            return tuple(point)
        acc = 0
        for sym in point:
            acc |= sym
        return acc

    def cell_values(self, space: SampleSpace) -> list:
        """Output per cell index, used to group cells by function value."""
        return [self.value(space, space.index_point(i)) for i in range(space.total_cells)]


IDENTITY = TargetFunction.identity()
BITWISE_OR = TargetFunction.bitwise_or()


# ---------------------------------------------------------------------------
# strategy trees
# ---------------------------------------------------------------------------

@dataclass
class Leaf:
    """Terminal node: the target function is constant on the consistent set."""

    output: object
    consistent: SupportSet
    cost: int = 0


@dataclass
class Query:
    """Ask one informant for its value among >= 2 remaining candidates."""

    informant: int
    candidates: tuple[int, ...]
    children: dict[int, "StrategyNode"]
    consistent: SupportSet
    cost: int = 0


StrategyNode = Union[Leaf, Query]


def strategy_to_json(node: StrategyNode) -> dict:
    """Plain-dict form of a strategy tree for export."""
    if isinstance(node, Leaf):
        output = list(node.output) if isinstance(node.output, tuple) else node.output
        return {"kind": "leaf", "output": output, "cost": node.cost}
    return {
        "kind": "query",
        "informant": node.informant,
        "candidates": list(node.candidates),
        "cost": node.cost,
        "children": {str(v): strategy_to_json(c) for v, c in sorted(node.children.items())},
    }


@dataclass
class TranscriptStep:
    informant: int
    value: int
    bits: int


@dataclass
class Transcript:
    """One simulated run of a strategy against a concrete data vector."""

    steps: list[TranscriptStep] = field(default_factory=list)
    output: object = None

    @property
    def total_bits(self) -> int:
        return sum(s.bits for s in self.steps)

    @property
    def informants_queried(self) -> int:
        return len(self.steps)


def simulate(strategy: StrategyNode, point: Point) -> Transcript:
    """Run a strategy on one input; every answer follows the point itself."""
    if point not in strategy.consistent:
        raise PointNotInSupport(f"point {point} is not in the strategy's support")
    transcript = Transcript()
    node = strategy
    while isinstance(node, Query):
        answer = point[node.informant]
        transcript.steps.append(
            TranscriptStep(node.informant, answer, ceil_log2(len(node.candidates)))
        )
        node = node.children[answer]
    transcript.output = node.output
    return transcript


# ---------------------------------------------------------------------------
# oracle context: per (space, function) tables and the lean value DPs
# ---------------------------------------------------------------------------

class OracleContext:
    """Precomputed tables for fast repeated cost evaluation on bitmasks.

    A fresh memo is built per evaluation call, so contexts can be shared
    freely; evaluation is a pure function of the mask.
    """

    def __init__(self, space: SampleSpace, function: TargetFunction = IDENTITY):
        self.space = space
        self.function = function
        self.cols = column_masks(space)
        self.identity = function.kind == "identity"
        values = function.cell_values(space)
        self.cell_values = values
        groups: dict = {}
        for idx, val in enumerate(values):
            groups[val] = groups.get(val, 0) | (1 << idx)
        self.value_masks = groups
        self.max_rate_bits = space.num_informants * ceil_log2(space.alphabet_size)

    def is_constant(self, mask: int) -> bool:
        """Is the target function constant on the cells of mask?"""
        if self.identity:
            return mask & (mask - 1) == 0
        first = (mask & -mask).bit_length() - 1
        return mask & ~self.value_masks[self.cell_values[first]] == 0

    def distinct_values(self, mask: int) -> int:
        if self.identity:
            return mask.bit_count()
        count = 0
        for vmask in self.value_masks.values():
            if mask & vmask:
                count += 1
        return count

    def bits_value(self, mask: int) -> int:
        """Optimal worst-case total bits for the block-serial model."""
        if mask == 0:
            raise EmptySupport("oracle asked about an empty set")
        memo: dict[int, int] = {}
        cols = self.cols
        n = len(cols)

        def rec(cur: int) -> int:
            got = memo.get(cur)
            if got is not None:
                return got
            if self.is_constant(cur):
                memo[cur] = 0
                return 0
            best = _BIG
            for i in range(n):
                subs = []
                for col in cols[i]:
                    sub = cur & col
                    if sub:
                        subs.append(sub)
                k = len(subs)
                if k < 2:
                    continue
                qcost = (k - 1).bit_length()
                if qcost >= best:
                    continue
                worst = 0
                dominated = False
                for sub in subs:
                    w = rec(sub)
                    if w > worst:
                        worst = w
                        if qcost + worst >= best:
                            dominated = True
                            break
                if not dominated:
                    best = qcost + worst
            memo[cur] = best
            return best

        return rec(mask)

    def informants_value(self, mask: int) -> int:
        """Optimal worst-case number of informants queried."""
        if mask == 0:
            raise EmptySupport("oracle asked about an empty set")
        memo: dict[int, int] = {}
        cols = self.cols
        n = len(cols)

        def rec(cur: int) -> int:
            got = memo.get(cur)
            if got is not None:
                return got
            if self.is_constant(cur):
                memo[cur] = 0
                return 0
            best = _BIG
            for i in range(n):
                subs = []
                for col in cols[i]:
                    sub = cur & col
                    if sub:
                        subs.append(sub)
                if len(subs) < 2:
                    continue
                worst = 0
                dominated = False
                for sub in subs:
                    w = rec(sub)
                    if w > worst:
                        worst = w
                        if 1 + worst >= best:
                            dominated = True
                            break
                if not dominated:
                    best = 1 + worst
            memo[cur] = best
            return best

        return rec(mask)

    def interleaved_bits_value(self, mask: int, state_cap: int = DEFAULT_STATE_CAP) -> int:
        """Optimal worst-case answer bits for adaptive membership questions.

        Questions have the form "is x_i in T?" for any informant i and any
        symbol subset T, one bit per answer, interleavable across informants.
        """
        if mask == 0:
            raise EmptySupport("oracle asked about an empty set")
        memo: dict[int, int] = {}
        cols = self.cols
        n = len(cols)
        q = self.space.alphabet_size

        def rec(cur: int) -> int:
            got = memo.get(cur)
            if got is not None:
                return got
            if self.is_constant(cur):
                memo[cur] = 0
                return 0
            if len(memo) > state_cap:
                raise StateSpaceTooLarge(
                    f"adaptive-question oracle exceeded {state_cap} memo states"
                )
            floor = ceil_log2(self.distinct_values(cur))
            best = _BIG
            # try the balanced split of each informant first: when it meets
            # the information floor the exhaustive subset loop is skipped,
            # which keeps wide alphabets tractable
            for i in range(n):
                present = [v for v in range(q) if cur & cols[i][v]]
                if len(present) < 2:
                    continue
                yes = 0
                for v in present[: len(present) // 2]:
                    yes |= cols[i][v]
                yes &= cur
                cand = 1 + max(rec(yes), rec(cur & ~yes))
                if cand < best:
                    best = cand
                    if best == floor:
                        memo[cur] = best
                        return best
            for i in range(n):
                present = [v for v in range(q) if cur & cols[i][v]]
                if len(present) < 2:
                    continue
                # T ranges over nonempty subsets of the non-first candidates;
                # the complement always keeps the first, so both halves are
                # nonempty and each unordered split is tried once.
                rest = present[1:]
                for sel in range(1, 1 << len(rest)):
                    yes = 0
                    for j, v in enumerate(rest):
                        if sel >> j & 1:
                            yes |= cols[i][v]
                    yes &= cur
                    no = cur & ~yes
                    cand = 1 + max(rec(yes), rec(no))
                    if cand < best:
                        best = cand
                        if best == floor:
                            memo[cur] = best
                            return best
            memo[cur] = best
            return best

        return rec(mask)


# ---------------------------------------------------------------------------
# public oracle operations
# ---------------------------------------------------------------------------

def _support_mask(support: SupportSet) -> int:
    if support.is_empty:
        raise EmptySupport("oracle needs a nonempty support set")
    return support.mask


def _build_strategy(
    ctx: OracleContext, support: SupportSet, per_query_cost
) -> StrategyNode:
    """Extract an optimal tree for the DP whose query cost is per_query_cost(k).

    Ties break toward the lowest informant index, so extraction is
    deterministic and reproducible.
    """
    space = ctx.space
    q = space.alphabet_size
    n = space.num_informants
    memo: dict[int, int] = {}

    def value(cur: int) -> int:
        got = memo.get(cur)
        if got is not None:
            return got
        if ctx.is_constant(cur):
            memo[cur] = 0
            return 0
        best = _BIG
        for i in range(n):
            subs = [cur & col for col in ctx.cols[i]]
            subs = [s for s in subs if s]
            if len(subs) < 2:
                continue
            cand = per_query_cost(len(subs)) + max(value(s) for s in subs)
            if cand < best:
                best = cand
        memo[cur] = best
        return best

    def build(cur: int) -> StrategyNode:
        consistent = SupportSet._from_mask(space, cur)
        if ctx.is_constant(cur):
            first = (cur & -cur).bit_length() - 1
            return Leaf(output=ctx.cell_values[first], consistent=consistent, cost=0)
        total = value(cur)
        for i in range(n):
            present = [v for v in range(q) if cur & ctx.cols[i][v]]
            if len(present) < 2:
                continue
            worst = max(value(cur & ctx.cols[i][v]) for v in present)
            if per_query_cost(len(present)) + worst == total:
                children = {
                    v: build(cur & ctx.cols[i][v]) for v in present
                }
                return Query(
                    informant=i,
                    candidates=tuple(present),
                    children=children,
                    consistent=consistent,
                    cost=total,
                )
        raise AssertionError("no informant achieves the DP optimum")

    return build(support.mask)


def worst_case_bits(
    support: SupportSet, function: TargetFunction = IDENTITY
) -> tuple[int, StrategyNode]:
    """Minimum worst-case total informant bits, with an optimal strategy tree."""
    ctx = OracleContext(support.space, function)
    bits = ctx.bits_value(_support_mask(support))
    strategy = _build_strategy(ctx, support, ceil_log2)
    return bits, strategy


def worst_case_informants(
    support: SupportSet, function: TargetFunction = IDENTITY
) -> tuple[int, StrategyNode]:
    """Minimum worst-case number of informants queried, with a strategy tree."""
    ctx = OracleContext(support.space, function)
    count = ctx.informants_value(_support_mask(support))
    strategy = _build_strategy(ctx, support, lambda k: 1)
    return count, strategy


def worst_case_bits_interleaved(
    support: SupportSet,
    function: TargetFunction = IDENTITY,
    state_cap: int = DEFAULT_STATE_CAP,
) -> int:
    """Diagnostic model only: adaptive one-bit membership questions."""
    ctx = OracleContext(support.space, function)
    return ctx.interleaved_bits_value(_support_mask(support), state_cap=state_cap)


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------

@dataclass
class CostReport:
    """Everything the lab knows about one support set under one target function."""

    space: SampleSpace
    function_kind: str
    model: str
    measures: MeasureSummary
    bits_worst: int
    informants_worst: int
    beta: Fraction
    beta_degenerate: bool
    eta: Fraction
    eta_degenerate: bool
    bit_compressible: bool
    informant_compressible: bool
    max_rate: bool
    all_informants: bool
    bits_strategy: StrategyNode | None = None
    informants_strategy: StrategyNode | None = None

    @property
    def degenerate(self) -> bool:
        return self.bits_worst == 0 and self.informants_worst == 0
