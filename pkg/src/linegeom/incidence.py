"""Finite linear spaces and their subspace lattice.

Points are the integers ``0..point_count-1``; a line is a strictly ascending
tuple of points and is identified by its position in the canonically sorted
line list. Point sets are handled internally as ``int`` bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    DuplicateLine,
    NotClosed,
    NotGeneralizedProjective,
    NotThreeDimensional,
    PairOnNoLine,
    PairOnTwoLines,
    PreconditionViolated,
    SearchBudgetExceeded,
    ShortLine,
    UnknownPoint,
)

DEFAULT_NODE_BUDGET = 10**7
# Closed-set enumeration for the exchange test is exponential on spaces with
# short lines; beyond this many points it is refused outright.
EXCHANGE_MAX_POINTS = 512


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


@dataclass(frozen=True, eq=False)
class LinearSpace:
    """A validated finite linear space.

    Build instances with :func:`validate`; the constructor assumes canonical,
    already-checked input.
    """

    point_count: int
    lines: tuple[tuple[int, ...], ...]
    line_masks: tuple[int, ...] = field(init=False, repr=False)
    point_lines: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _pair: list[list[int]] = field(init=False, repr=False)
    _line_index: dict[tuple[int, ...], int] = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        n = self.point_count
        pair = [[-1] * n for _ in range(n)]
        on = [[] for _ in range(n)]
        for lid, line in enumerate(self.lines):
            for p in line:
                on[p].append(lid)
            for p, q in itertools.combinations(line, 2):
                pair[p][q] = pair[q][p] = lid
        object.__setattr__(self, "line_masks", tuple(to_mask(l) for l in self.lines))
        object.__setattr__(self, "point_lines", tuple(tuple(x) for x in on))
        object.__setattr__(self, "_pair", pair)
        object.__setattr__(self, "_line_index", {l: i for i, l in enumerate(self.lines)})
        object.__setattr__(self, "_cache", {})

    def __eq__(self, other):
        if not isinstance(other, LinearSpace):
            return NotImplemented
        return self.point_count == other.point_count and self.lines == other.lines

    def __hash__(self):
        return hash((self.point_count, self.lines))

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def full_mask(self) -> int:
        return (1 << self.point_count) - 1

    def line_through(self, p: int, q: int) -> int:
        """Id of the unique line joining distinct points ``p`` and ``q``."""
        return self._pair[p][q]

    def line_id(self, points: Iterable[int]) -> int | None:
        """Id of the line with exactly this point set, or None."""
        return self._line_index.get(tuple(sorted(points)))

    def check_point(self, p: int) -> None:
        if not isinstance(p, int) or not 0 <= p < self.point_count:
            raise UnknownPoint(p)


@dataclass(frozen=True)
class Subspace:
    """A closed point set of a parent space."""

    points: frozenset[int]
    space: LinearSpace = field(compare=False, repr=False, hash=False)

    @property
    def mask(self) -> int:
        return to_mask(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __contains__(self, p) -> bool:
        return p in self.points

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.points))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a yes/no property test plus a counterexample on failure."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def validate(point_count: int, raw_lines: Iterable[Iterable[int]]) -> LinearSpace:
    """Check the linear-space axioms and return the canonical space.

    Line ids in error messages refer to positions in ``raw_lines``.
    """
    if not isinstance(point_count, int) or point_count < 0:
        raise PreconditionViolated(f"invalid point count {point_count!r}")
    lines = [tuple(sorted(set(l))) for l in raw_lines]
    owner: dict[tuple[int, int], int] = {}
    seen: dict[tuple[int, ...], int] = {}
    for lid, line in enumerate(lines):
        if len(line) < 2:
            raise ShortLine(lid)
        for p in line:
            if not isinstance(p, int) or not 0 <= p < point_count:
                raise UnknownPoint(p)
        if line in seen:
            raise DuplicateLine(seen[line], lid)
        seen[line] = lid
        for p, q in itertools.combinations(line, 2):
            if (p, q) in owner:
                raise PairOnTwoLines(p, q, owner[p, q], lid)
            owner[p, q] = lid
    for p, q in itertools.combinations(range(point_count), 2):
        if (p, q) not in owner:
            raise PairOnNoLine(p, q)
    return LinearSpace(point_count, tuple(sorted(lines)))


# -- closure -----------------------------------------------------------------


def close_mask(space: LinearSpace, mask: int) -> int:
    """Span of a bitmask point set, as a bitmask."""
    pair = space._pair
    masks = space.line_masks
    members = list(bits(mask))
    result = mask
    i = 1
    while i < len(members):
        p = members[i]
        row = pair[p]
        for j in range(i):
            new = masks[row[members[j]]] & ~result
            if new:
                result |= new
                members.extend(bits(new))
        i += 1
    return result


def _as_mask(space: LinearSpace, S) -> int:
    if isinstance(S, Subspace):
        return S.mask
    if isinstance(S, int):
        raise TypeError("pass point collections, not bare integers")
    mask = 0
    for p in S:
        space.check_point(p)
        mask |= 1 << p
    return mask


def _subspace(space: LinearSpace, mask: int) -> Subspace:
    return Subspace(frozenset(bits(mask)), space)


def span(space: LinearSpace, S: Iterable[int]) -> Subspace:
    """Smallest subspace containing ``S``."""
    return _subspace(space, close_mask(space, _as_mask(space, S)))


def join(space: LinearSpace, S1: Iterable[int], S2: Iterable[int]) -> Subspace:
    return _subspace(space, close_mask(space, _as_mask(space, S1) | _as_mask(space, S2)))


def is_closed_mask(space: LinearSpace, mask: int) -> bool:
    return close_mask(space, mask) == mask


# -- dimension ---------------------------------------------------------------


def _greedy_basis_size(space: LinearSpace) -> int:
    cur = 0
    size = 0
    for p in range(space.point_count):
        if not cur >> p & 1:
            cur = close_mask(space, cur | 1 << p)
            size += 1
    return size


def _exact_min_generating_size(space: LinearSpace, upper: int, budget: int) -> int:
    """Smallest k such that some k points span everything (k <= upper)."""
    n = space.point_count
    full = space.full_mask
    nodes = 0

    def search(start: int, depth: int, k: int, cur: int) -> bool:
        nonlocal nodes
        if depth == k:
            return cur == full
        for p in range(start, n - (k - depth) + 1):
            if cur >> p & 1:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(budget)
            if search(p + 1, depth + 1, k, close_mask(space, cur | 1 << p)):
                return True
        return False

    lower = min(n, 1) + (n > 1) + (n > 1 and not any(m == full for m in space.line_masks))
    for k in range(lower, upper):
        if search(0, 0, k, 0):
            return k
    return upper


def dimension(space: LinearSpace, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """``min{#X - 1 : span(X) = P}``; -1 for the empty space.

    Exchange spaces take the greedy route, which is exact there. Otherwise an
    exact search over point subsets runs with the greedy value as upper bound.
    """
    if "dimension" in space._cache:
        return space._cache["dimension"]
    upper = _greedy_basis_size(space)
    try:
        exchange = is_exchange_space(space, budget).holds
    except SearchBudgetExceeded:
        exchange = False
    size = upper if exchange else _exact_min_generating_size(space, upper, budget)
    space._cache["dimension"] = size - 1
    return size - 1


def induced_space(space: LinearSpace, S: Subspace | Iterable[int]) -> tuple[LinearSpace, tuple[int, ...]]:
    """The linear space carried by a closed set, relabelled to ``0..k-1``.

    Returns the induced space and the original ids of its points.
    """
    mask = _as_mask(space, S)
    if not is_closed_mask(space, mask):
        raise NotClosed("point set is not a subspace")
    pts = tuple(bits(mask))
    relabel = {p: i for i, p in enumerate(pts)}
    lines = [
        tuple(relabel[p] for p in line)
        for line, m in zip(space.lines, space.line_masks)
        if m & ~mask == 0
    ]
    return LinearSpace(len(pts), tuple(sorted(lines))), pts


def subspace_dimension(space: LinearSpace, S: Subspace | Iterable[int]) -> int:
    induced, _ = induced_space(space, S)
    return dimension(induced)


def planes(space: LinearSpace) -> list[Subspace]:
    """All 2-dimensional subspaces, sorted by their point lists."""
    if "planes" in space._cache:
        return space._cache["planes"]
    found: dict[int, None] = {}
    full = space.full_mask
    for lm in space.line_masks:
        covered = lm
        for p in bits(full & ~lm):
            if covered >> p & 1:
                continue
            plane = close_mask(space, lm | 1 << p)
            covered |= plane
            found.setdefault(plane)
    result = [_subspace(space, m) for m in found if subspace_dimension(space, _subspace(space, m)) == 2]
    result.sort(key=Subspace.sorted)
    space._cache["planes"] = result
    return result


# -- exchange axiom and generalized projective structure --------------------


def closed_sets(space: LinearSpace, budget: int = DEFAULT_NODE_BUDGET) -> dict[int, dict[int, int]]:
    """Every subspace, mapped to its one-point extensions ``{A: S v {A}}``."""
    if space.point_count > EXCHANGE_MAX_POINTS:
        raise SearchBudgetExceeded(EXCHANGE_MAX_POINTS)
    full = space.full_mask
    ext: dict[int, dict[int, int]] = {}
    todo = [0]
    work = 0
    while todo:
        S = todo.pop()
        if S in ext:
            continue
        row = {}
        for a in bits(full & ~S):
            work += 1
            if work > budget:
                raise SearchBudgetExceeded(budget)
            T = close_mask(space, S | 1 << a)
            row[a] = T
            if T not in ext:
                todo.append(T)
        ext[S] = row
    return ext


def is_exchange_space(space: LinearSpace, budget: int = DEFAULT_NODE_BUDGET) -> CheckResult:
    """Exhaustive exchange-axiom test over closed ``S``.

    The witness is ``(S, A, B)`` with ``B`` in ``S v {A}`` but not in
    ``<S>``, while ``A`` is not in ``S v {B}``.
    """
    if "exchange" in space._cache:
        return space._cache["exchange"]
    for S, row in closed_sets(space, budget).items():
        for a, T in row.items():
            for b in bits(T & ~S):
                if b != a and not row[b] >> a & 1:
                    res = CheckResult(False, (tuple(bits(S)), a, b))
                    space._cache["exchange"] = res
                    return res
    res = CheckResult(True)
    space._cache["exchange"] = res
    return res


def _lines_in(space: LinearSpace, mask: int) -> list[int]:
    return [lid for lid, m in enumerate(space.line_masks) if m & ~mask == 0]


def is_generalized_projective_space(space: LinearSpace) -> CheckResult:
    """Every plane has pairwise intersecting lines; witness ``(plane, l1, l2)``."""
    if "genproj" in space._cache:
        return space._cache["genproj"]
    res = CheckResult(True)
    masks = space.line_masks
    for plane in planes(space):
        inside = _lines_in(space, plane.mask)
        pair = next(
            ((x, y) for x, y in itertools.combinations(inside, 2) if not masks[x] & masks[y]),
            None,
        )
        if pair:
            res = CheckResult(False, (plane.sorted(), *pair))
            break
    space._cache["genproj"] = res
    return res


def verbind_check(space: LinearSpace, S: Iterable[int], X: int) -> bool:
    """Whether ``S v {X}`` is the union of the lines ``X v Y`` over ``Y`` in ``<S>``."""
    mask = _as_mask(space, S)
    space.check_point(X)
    if not mask:
        raise PreconditionViolated("S must be non-empty")
    closure = close_mask(space, mask)
    if closure >> X & 1:
        raise PreconditionViolated(f"point {X} lies in the span of S")
    if not is_generalized_projective_space(space):
        raise PreconditionViolated("space is not a generalized projective space")
    union = 1 << X
    for y in bits(closure):
        union |= space.line_masks[space.line_through(X, y)]
    return close_mask(space, mask | 1 << X) == union


# -- dual space --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DualSpace:
    """Planes as points, pencils of planes as lines.

    ``plane_points[i]`` is the point set of dual point ``i``;
    ``pencil_axis[j]`` is the source line whose pencil is dual line ``j``, and
    ``axis_pencil`` is the inverse.
    """

    space: LinearSpace
    source: LinearSpace
    plane_points: tuple[frozenset[int], ...]
    pencil_axis: tuple[int, ...]
    axis_pencil: tuple[int, ...]
    plane_index: dict[frozenset[int], int] = field(repr=False)


def dual_space(space: LinearSpace) -> DualSpace:
    dim = dimension(space)
    if dim != 3:
        raise NotThreeDimensional(f"dual space needs dimension 3, got {dim}")
    gp = is_generalized_projective_space(space)
    if not gp:
        raise NotGeneralizedProjective(f"plane {gp.witness[0]} has disjoint lines")
    plist = planes(space)
    pencils = []
    for lm in space.line_masks:
        pencils.append(tuple(i for i, pl in enumerate(plist) if lm & ~pl.mask == 0))
    dual = validate(len(plist), pencils)
    axis_pencil = tuple(dual.line_id(p) for p in pencils)
    pencil_axis = [0] * len(pencils)
    for axis, pid in enumerate(axis_pencil):
        pencil_axis[pid] = axis
    plane_points = tuple(pl.points for pl in plist)
    return DualSpace(
        space=dual,
        source=space,
        plane_points=plane_points,
        pencil_axis=tuple(pencil_axis),
        axis_pencil=axis_pencil,
        plane_index={pts: i for i, pts in enumerate(plane_points)},
    )
