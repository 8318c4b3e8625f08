"""The related relation on lines, stars, and maximal related sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import NotMaximal, NotRelatedSet, SizeCapExceeded, UnknownLine
from .incidence import LinearSpace, bits, close_mask

MAX_CLIQUE_LINES = 512


@dataclass(frozen=True)
class Star:
    vertex: int


@dataclass(frozen=True)
class Coplanar:
    plane: tuple[int, ...]


@dataclass(frozen=True)
class Other:
    pass


Classification = Union[Star, Coplanar, Other]


@dataclass(frozen=True)
class MaximalRelatedSet:
    lines: tuple[int, ...]
    classification: Classification

    @property
    def kind(self) -> str:
        return type(self.classification).__name__.lower()


class LineGraph:
    """Adjacency bitsets: bit ``b`` of ``adj[a]`` is set iff lines a != b meet."""

    def __init__(self, space: LinearSpace):
        self.space = space
        n = space.line_count
        adj = [0] * n
        for star_lines in space.point_lines:
            m = 0
            for l in star_lines:
                m |= 1 << l
            for l in star_lines:
                adj[l] |= m
        self.adj = tuple(a & ~(1 << l) for l, a in enumerate(adj))
        self.degree = tuple(a.bit_count() for a in self.adj)
        self._matrix = None

    def __len__(self):
        return len(self.adj)

    @property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (int64), built on first use."""
        if self._matrix is None:
            inc = np.zeros((self.space.point_count, len(self.adj)), dtype=np.int64)
            for p, on in enumerate(self.space.point_lines):
                inc[p, list(on)] = 1
            A = (inc.T @ inc > 0).astype(np.int64)
            np.fill_diagonal(A, 0)
            self._matrix = A
        return self._matrix

    @classmethod
    def of(cls, space: LinearSpace) -> "LineGraph":
        g = space._cache.get("line_graph")
        if g is None:
            g = space._cache["line_graph"] = cls(space)
        return g


def _check_line(space: LinearSpace, l) -> None:
    if not isinstance(l, int) or not 0 <= l < space.line_count:
        raise UnknownLine(l)


def related(space: LinearSpace, a: int, b: int) -> bool:
    """Lines sharing at least one point; every line is related to itself."""
    _check_line(space, a)
    _check_line(space, b)
    return bool(space.line_masks[a] & space.line_masks[b])


def adjacent(space: LinearSpace, a: int, b: int) -> bool:
    return a != b and related(space, a, b)


def star(space: LinearSpace, A: int) -> frozenset[int]:
    """All lines through the point ``A``."""
    space.check_point(A)
    return frozenset(space.point_lines[A])


def _is_related_set(g: LineGraph, mask: int) -> bool:
    return all(mask & ~(1 << l) & ~g.adj[l] == 0 for l in bits(mask))


def _classify(space: LinearSpace, lines: tuple[int, ...]) -> Classification:
    masks = space.line_masks
    common = space.full_mask
    for l in lines:
        common &= masks[l]
    if common:
        # a unique common point is a vertex; two or more means a lone line
        return Star(common.bit_length() - 1) if common & (common - 1) == 0 else Other()
    plane = close_mask(space, masks[lines[0]] | masks[lines[1]])
    if all(masks[l] & ~plane == 0 for l in lines):
        return Coplanar(tuple(bits(plane)))
    return Other()


def classify_maximal_set(space: LinearSpace, M: Iterable[int]) -> Classification:
    """Star(A), Coplanar(E) or Other for a maximal related set ``M``."""
    lines = tuple(sorted(set(M)))
    for l in lines:
        _check_line(space, l)
    g = LineGraph.of(space)
    mask = sum(1 << l for l in lines)
    if not lines or not _is_related_set(g, mask):
        raise NotRelatedSet(f"lines {lines} are not mutually related")
    outside = ((1 << len(g)) - 1) & ~mask
    for l in lines:
        outside &= g.adj[l]
    if outside:
        raise NotMaximal(f"line {outside.bit_length() - 1} extends the set")
    return _classify(space, lines)


def extend_to_maximal(space: LinearSpace, N: Iterable[int] = ()) -> MaximalRelatedSet:
    """Greedy maximal superset of a related set, scanning lines in id order."""
    lines = set(N)
    for l in lines:
        _check_line(space, l)
    g = LineGraph.of(space)
    mask = sum(1 << l for l in lines)
    if not _is_related_set(g, mask):
        raise NotRelatedSet(f"lines {sorted(lines)} are not mutually related")
    cand = (1 << len(g)) - 1
    for l in lines:
        cand &= g.adj[l]
    for l in range(len(g)):
        if cand >> l & 1:
            mask |= 1 << l
            cand &= g.adj[l]
    members = tuple(bits(mask))
    return MaximalRelatedSet(members, _classify(space, members) if members else Other())


def maximal_cliques(adj: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting over int bitsets, canonically sorted."""
    out: list[tuple[int, ...]] = []

    def expand(R: list[int], P: int, X: int) -> None:
        if not P:
            if not X:
                out.append(tuple(sorted(R)))
            return
        pivot = max(bits(P | X), key=lambda u: (P & adj[u]).bit_count())
        for v in bits(P & ~adj[pivot]):
            R.append(v)
            expand(R, P & adj[v], X & adj[v])
            R.pop()
            P &= ~(1 << v)
            X |= 1 << v

    if adj:
        expand([], (1 << len(adj)) - 1, 0)
    out.sort()
    return out


def maximal_related_sets(space: LinearSpace, max_lines: int = MAX_CLIQUE_LINES) -> list[MaximalRelatedSet]:
    """Every maximal related set, classified, in canonical order."""
    if space.line_count > max_lines:
        raise SizeCapExceeded(f"{space.line_count} lines exceeds clique cap {max_lines}")
    cached = space._cache.get("maximal_sets")
    if cached is None:
        g = LineGraph.of(space)
        cached = [MaximalRelatedSet(c, _classify(space, c)) for c in maximal_cliques(g.adj)]
        space._cache["maximal_sets"] = cached
    return cached
