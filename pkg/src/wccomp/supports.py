"""Sample spaces, support sets, and the combinatorics on top of them.

A sample space is the grid of all length-N symbol vectors over the alphabet
0..q-1.  A support set is a nonempty subset of its cells.  Internally a
support set is a bitmask over lexicographic cell indices (coordinate 0 most
significant), which keeps membership tests, conditioning and hashing cheap
for the exhaustive searches that the rest of the package runs.

Two interchange formats are supported: a JSON object with explicit points,
and (for two-informant spaces only) a text grid of 'x'/'.' characters whose
rows are coordinate-0 values and columns coordinate-1 values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicatePoint,
    EmptySupport,
    EnumerationTooLarge,
    IndexOutOfRange,
    InvalidArgument,
    InvalidPermutation,
    InvalidPoint,
    InvalidSpace,
    InvalidSymbol,
    ParseError,
    UnsupportedFormat,
)

DEFAULT_CELL_CAP = 32
DEFAULT_ENUM_GUARD = 10**8

Point = tuple[int, ...]


@dataclass(frozen=True)
class SampleSpace:
    """The pair (alphabet size q, informant count N) defining a q^N-cell grid."""

    alphabet_size: int
    num_informants: int

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise InvalidSpace(f"alphabet_size must be >= 2, got {self.alphabet_size}")
        if self.num_informants < 1:
            raise InvalidSpace(f"num_informants must be >= 1, got {self.num_informants}")

    @property
    def total_cells(self) -> int:
        return self.alphabet_size**self.num_informants

    def point_index(self, point: Sequence[int]) -> int:
        """Lexicographic cell index of a point, coordinate 0 most significant."""
        self.validate_point(point)
        idx = 0
        for sym in point:
            idx = idx * self.alphabet_size + sym
        return idx

    def index_point(self, index: int) -> Point:
        """Inverse of point_index."""
        if not 0 <= index < self.total_cells:
            raise InvalidArgument(f"cell index {index} outside 0..{self.total_cells - 1}")
        coords = []
        for _ in range(self.num_informants):
            coords.append(index % self.alphabet_size)
            index //= self.alphabet_size
        return tuple(reversed(coords))

    def validate_point(self, point: Sequence[int]) -> None:
        if len(point) != self.num_informants:
            raise InvalidPoint(
                f"point {tuple(point)} has arity {len(point)}, expected {self.num_informants}"
            )
        for sym in point:
            if not isinstance(sym, int) or isinstance(sym, bool):
                raise InvalidSymbol(f"coordinate {sym!r} is not an integer symbol")
            if not 0 <= sym < self.alphabet_size:
                raise InvalidSymbol(
                    f"coordinate {sym} outside alphabet 0..{self.alphabet_size - 1}"
                )

    def __str__(self) -> str:
        return f"{self.alphabet_size}x{self.num_informants}"


def make_space(q: int, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> SampleSpace:
    """Build a SampleSpace, refusing grids larger than the cell cap."""
    if q < 2 or n < 1:
        raise InvalidSpace(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    if q**n > cell_cap:
        raise InvalidSpace(
            f"space {q}x{n} has {q ** n} cells, over the cap of {cell_cap}", guard=True
        )
    return SampleSpace(q, n)


class SupportSet:
    """An ordered set of grid cells, stored as a bitmask over cell indices.

    Public construction rejects empty sets; conditioning may legitimately
    produce empty intermediate sets and uses the internal path.
    """

    __slots__ = ("space", "mask")

    def __init__(self, space: SampleSpace, points: Iterable[Sequence[int]]):
        mask = 0
        count = 0
        for p in points:
            idx = space.point_index(p)
            bit = 1 << idx
            if mask & bit:
                raise DuplicatePoint(f"point {tuple(p)} listed more than once")
            mask |= bit
            count += 1
        if count == 0:
            raise EmptySupport("support set must contain at least one point")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("SupportSet is immutable")

    @classmethod
    def _from_mask(cls, space: SampleSpace, mask: int) -> "SupportSet":
        """Internal constructor; permits the empty set (conditioning results)."""
        inst = object.__new__(cls)
        object.__setattr__(inst, "space", space)
        object.__setattr__(inst, "mask", mask)
        return inst

    @classmethod
    def from_mask(cls, space: SampleSpace, mask: int) -> "SupportSet":
        if mask <= 0:
            raise EmptySupport("support mask must select at least one cell")
        if mask >> space.total_cells:
            raise InvalidArgument(f"mask {mask:#x} selects cells outside the space")
        return cls._from_mask(space, mask)

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(self.space.index_point(i) for i in self.indices())

    def indices(self) -> Iterator[int]:
        """Set cell indices in ascending order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point: Sequence[int]) -> bool:
        try:
            idx = self.space.point_index(point)
        except (InvalidPoint, InvalidSymbol):
            return False
        return bool(self.mask >> idx & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SupportSet)
            and self.space == other.space
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.space, self.mask))

    def __repr__(self) -> str:
        return f"SupportSet({self.space}, {list(self.points)!r})"


# ---------------------------------------------------------------------------
# interchange formats
# ---------------------------------------------------------------------------

def parse_support(text: str | bytes, fmt: str = "json") -> SupportSet:
    """Parse a support set from its JSON or grid encoding."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    if fmt == "json":
        return _parse_json(text)
    if fmt == "grid":
        return _parse_grid(text)
    raise InvalidArgument(f"unknown format {fmt!r} (expected 'json' or 'grid')")


def serialize_support(support: SupportSet, fmt: str = "json") -> str:
    """Serialize with points ascending by cell index; inverse of parse_support."""
    if fmt == "json":
        payload = {
            "alphabet_size": support.space.alphabet_size,
            "num_informants": support.space.num_informants,
            "points": [list(p) for p in support.points],
        }
        return json.dumps(payload)
    if fmt == "grid":
        space = support.space
        if space.num_informants != 2:
            raise UnsupportedFormat(
                f"grid format needs exactly 2 informants, space is {space}"
            )
        q = space.alphabet_size
        rows = []
        for r in range(q):
            rows.append(
                "".join("x" if (r, c) in support else "." for c in range(q))
            )
        return f"{q}x2\n" + "\n".join(rows) + "\n"
    raise InvalidArgument(f"unknown format {fmt!r} (expected 'json' or 'grid')")


def _parse_json(text: str) -> SupportSet:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ParseError("top-level JSON value must be an object")
    expected = {"alphabet_size", "num_informants", "points"}
    if set(payload) != expected:
        raise ParseError(
            f"JSON object must have exactly the keys {sorted(expected)}, "
            f"got {sorted(payload)}"
        )
    q, n = payload["alphabet_size"], payload["num_informants"]
    for name, value in (("alphabet_size", q), ("num_informants", n)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParseError(f"{name} must be an integer, got {value!r}")
    space = make_space(q, n)
    pts = payload["points"]
    if not isinstance(pts, list):
        raise ParseError("points must be a list of coordinate lists")
    clean: list[tuple[int, ...]] = []
    for p in pts:
        if not isinstance(p, list):
            raise ParseError(f"point {p!r} is not a list")
        try:
            space.validate_point(p)
        except (InvalidPoint, InvalidSymbol) as exc:
            raise ParseError(str(exc)) from None
        clean.append(tuple(p))
    if not clean:
        raise EmptySupport("points list is empty")
    return SupportSet(space, clean)


def _parse_grid(text: str) -> SupportSet:
    lines = [line for line in text.splitlines() if line.strip() != ""]
    if not lines:
        raise ParseError("empty grid input")
    header = lines[0].strip()
    try:
        q_str, n_str = header.split("x")
        q, n = int(q_str), int(n_str)
    except ValueError:
        raise ParseError(f"grid header must look like '5x2', got {header!r}") from None
    if n != 2:
        raise ParseError(f"grid format needs exactly 2 informants, header says {n}")
    space = make_space(q, n)
    body = lines[1:]
    if len(body) != q:
        raise ParseError(f"expected {q} grid rows, got {len(body)}")
    points = []
    for r, row in enumerate(body):
        row = row.strip()
        if len(row) != q:
            raise ParseError(f"row {r} has {len(row)} columns, expected {q}")
        for c, ch in enumerate(row):
            if ch == "x":
                points.append((r, c))
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r} in grid row {r}")
    if not points:
        raise EmptySupport("grid contains no 'x' cells")
    return SupportSet(space, points)


# ---------------------------------------------------------------------------
# projections and conditioning
# ---------------------------------------------------------------------------

def column_masks(space: SampleSpace) -> list[list[int]]:
    """For each informant i and symbol v, the mask of all cells with p[i] = v."""
    masks = [[0] * space.alphabet_size for _ in range(space.num_informants)]
    for idx in range(space.total_cells):
        point = space.index_point(idx)
        for i, sym in enumerate(point):
            masks[i][sym] |= 1 << idx
    return masks


def project(support: SupportSet, informant: int) -> set[int]:
    """The set of symbols informant i takes over the support."""
    space = support.space
    if not 0 <= informant < space.num_informants:
        raise IndexOutOfRange(
            f"informant {informant} outside 0..{space.num_informants - 1}"
        )
    q = space.alphabet_size
    stride = q ** (space.num_informants - 1 - informant)
    return {(idx // stride) % q for idx in support.indices()}


def condition(support: SupportSet, informant: int, value: int) -> SupportSet:
    """Restrict to cells where informant i equals value; may be empty."""
    space = support.space
    if not 0 <= informant < space.num_informants:
        raise IndexOutOfRange(
            f"informant {informant} outside 0..{space.num_informants - 1}"
        )
    if not 0 <= value < space.alphabet_size:
        raise InvalidSymbol(
            f"value {value} outside alphabet 0..{space.alphabet_size - 1}"
        )
    q = space.alphabet_size
    stride = q ** (space.num_informants - 1 - informant)
    mask = 0
    for idx in support.indices():
        if (idx // stride) % q == value:
            mask |= 1 << idx
    return SupportSet._from_mask(space, mask)


# ---------------------------------------------------------------------------
# enumeration by cardinality
# ---------------------------------------------------------------------------

def combination_at_rank(n: int, k: int, rank: int) -> list[int]:
    """The rank-th k-combination of 0..n-1 in lexicographic order."""
    if not 0 <= rank < comb(n, k):
        raise InvalidArgument(f"rank {rank} outside 0..{comb(n, k) - 1}")
    combo = []
    x = 0
    for remaining in range(k, 0, -1):
        while True:
            block = comb(n - x - 1, remaining - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        combo.append(x)
        x += 1
    return combo


def next_combination(combo: list[int], n: int) -> bool:
    """Advance a k-combination of 0..n-1 in place; False when exhausted."""
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


def enumerate_masks(
    space: SampleSpace,
    cardinality: int,
    guard: int = DEFAULT_ENUM_GUARD,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[int]:
    """Yield bitmasks of every cardinality-m subset in lexicographic combination
    order, optionally restricted to a [start, stop) range of combination ranks.
    """
    cells = space.total_cells
    if not 1 <= cardinality <= cells:
        raise InvalidArgument(
            f"cardinality {cardinality} outside 1..{cells} for space {space}"
        )
    total = comb(cells, cardinality)
    if total > guard:
        raise EnumerationTooLarge(
            f"{total} subsets of size {cardinality} in {space} exceeds guard {guard}"
        )
    if stop is None:
        stop = total
    stop = min(stop, total)
    if start >= stop:
        return
    if start == 0 and stop == total:
        for combo in combinations(range(cells), cardinality):
            mask = 0
            for idx in combo:
                mask |= 1 << idx
            yield mask
        return
    combo = combination_at_rank(cells, cardinality, start)
    for _ in range(stop - start):
        mask = 0
        for idx in combo:
            mask |= 1 << idx
        yield mask
        if not next_combination(combo, cells):
            break


def enumerate_supports(
    space: SampleSpace,
    cardinality: int,
    guard: int = DEFAULT_ENUM_GUARD,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[SupportSet]:
    """enumerate_masks wrapped into SupportSet objects."""
    for mask in enumerate_masks(space, cardinality, guard=guard, start=start, stop=stop):
        yield SupportSet._from_mask(space, mask)


# ---------------------------------------------------------------------------
# symmetries
# ---------------------------------------------------------------------------

def apply_symmetry(
    support: SupportSet,
    coord_perm: Sequence[int],
    value_maps: Sequence[Sequence[int]],
) -> SupportSet:
    """Relabel a support set by a coordinate permutation plus per-coordinate
    value bijections: destination coordinate i holds value_maps[i][p[coord_perm[i]]].

    These are exactly the relabelings that preserve worst-case query costs for
    the identity target, since question costs depend only on candidate counts.
    """
    space = support.space
    n, q = space.num_informants, space.alphabet_size
    if sorted(coord_perm) != list(range(n)):
        raise InvalidPermutation(f"{coord_perm!r} is not a permutation of 0..{n - 1}")
    if len(value_maps) != n:
        raise InvalidPermutation(f"need {n} value maps, got {len(value_maps)}")
    for vm in value_maps:
        if sorted(vm) != list(range(q)):
            raise InvalidPermutation(f"{vm!r} is not a bijection of 0..{q - 1}")
    mapped = []
    for p in support.points:
        mapped.append(tuple(value_maps[i][p[coord_perm[i]]] for i in range(n)))
    return SupportSet(space, mapped)


def inverse_symmetry(
    coord_perm: Sequence[int], value_maps: Sequence[Sequence[int]]
) -> tuple[list[int], list[list[int]]]:
    """The symmetry undoing apply_symmetry(coord_perm, value_maps)."""
    n = len(coord_perm)
    inv_perm = [0] * n
    for i, src in enumerate(coord_perm):
        inv_perm[src] = i
    inv_maps = []
    for i in range(n):
        vm = value_maps[inv_perm[i]]
        inv = [0] * len(vm)
        for sym, image in enumerate(vm):
            inv[image] = sym
        inv_maps.append(inv)
    return inv_perm, inv_maps


def canonical_form(support: SupportSet) -> SupportSet:
    """The least image of the support under all coordinate permutations
    composed with per-coordinate value bijections.

    Images are compared as ascending tuples of cell indices, so the result is
    idempotent and constant on symmetry orbits.
    """
    space = support.space
    n, q = space.num_informants, space.alphabet_size
    pts = support.points
    best: tuple[int, ...] | None = None
    value_bijections = list(permutations(range(q)))
    for perm in permutations(range(n)):
        source = [tuple(p[perm[i]] for i in range(n)) for p in pts]
        for maps in product(value_bijections, repeat=n):
            image = []
            for p in source:
                idx = 0
                for i in range(n):
                    idx = idx * q + maps[i][p[i]]
                image.append(idx)
            key = tuple(sorted(image))
            if best is None or key < best:
                best = key
    assert best is not None
    mask = 0
    for idx in best:
        mask |= 1 << idx
    return SupportSet._from_mask(space, mask)
