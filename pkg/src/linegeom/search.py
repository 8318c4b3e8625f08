"""Backtracking isomorphism search between two graphs on line ids.

The search individualizes a fixed sequence of source vertices (a *base*)
chosen so that adjacency to the base, together with vertex degree,
separates every remaining vertex. Base vertices receive images one at a
time. After each choice every target vertex is relabelled by its degree and
its adjacency to the base images so far, and the class sizes must agree with
the source. Once the base is fully mapped the rest of the bijection is read
off the class labels and the whole map is verified.

Every isomorphism extending a base assignment survives all prunes, and the
non-base vertices are then forced, so each isomorphism is produced exactly
once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**7


@dataclass
class _Level:
    line: int  # source base vertex individualized at this level
    cls: int  # its class before individualization
    lookup: np.ndarray  # (class * 2 + bit) -> new class, -1 where absent
    counts: np.ndarray  # class sizes after individualization


def adjacency_matrix(adj_bits: tuple[int, ...]) -> np.ndarray:
    n = len(adj_bits)
    A = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(adj_bits):
        for j in range(n):
            if row >> j & 1:
                A[i, j] = 1
    return A


def _relabel(values: np.ndarray) -> np.ndarray:
    return np.unique(values, return_inverse=True)[1].astype(np.int64)


def choose_base(A: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Greedy base selection.

    Each step individualizes a vertex from the smallest class that still
    splits something (the branching factor at that level), preferring the
    vertex that yields the most classes, then higher degree, then lower id.
    Returns the base and the initial (degree) classes.
    """
    n = len(A)
    degree = A.sum(axis=1)
    initial = _relabel(degree)
    cls = initial.copy()
    base: list[int] = []
    in_base = np.zeros(n, dtype=bool)
    while True:
        rest = cls[~in_base]
        if len(np.unique(rest)) == len(rest):
            return base, initial
        sizes = np.bincount(cls)
        best, best_score = -1, None
        for v in np.flatnonzero(~in_base):
            splits = len(np.unique(cls * 2 + A[v]))
            if splits == len(sizes) and sizes[cls[v]] == 1:
                continue
            score = (-sizes[cls[v]], splits, degree[v], -v)
            if best_score is None or score > best_score:
                best, best_score = int(v), score
        base.append(best)
        in_base[best] = True
        cls = _relabel(cls * 2 + A[best])


class IsomorphismSearch:
    """All adjacency-preserving bijections from graph ``A`` onto graph ``B``."""

    def __init__(self, A: np.ndarray, B: np.ndarray, budget: int = DEFAULT_BUDGET):
        self.A = A
        self.B = B
        self.n = len(A)
        self.budget = budget
        self.nodes = 0
        self.base, initial = choose_base(A)
        self.levels: list[_Level] = []
        self.compatible = len(B) == self.n
        if not self.compatible:
            return
        # initial target classes come from matching degree multisets
        deg_a, deg_b = A.sum(axis=1), B.sum(axis=1)
        uniq = np.unique(deg_a)
        idx = np.searchsorted(uniq, deg_b)
        idx[idx >= len(uniq)] = 0
        if not np.array_equal(np.sort(deg_a), np.sort(deg_b)) or not np.array_equal(uniq[idx], deg_b):
            self.compatible = False
            return
        self.initial_source = initial
        self.initial_target = idx.astype(np.int64)
        cls = initial
        for v in self.base:
            raw = cls * 2 + A[v]
            keys, inverse, counts = np.unique(raw, return_inverse=True, return_counts=True)
            lookup = np.full(2 * int(cls.max()) + 2, -1, dtype=np.int64)
            lookup[keys] = np.arange(len(keys))
            self.levels.append(_Level(v, int(cls[v]), lookup, counts))
            cls = inverse.astype(np.int64)
        self.final_source = cls
        in_base = np.zeros(self.n, dtype=bool)
        in_base[self.base] = True
        self.rest = np.flatnonzero(~in_base)
        self.rest_sorted = self.rest[np.argsort(cls[self.rest], kind="stable")]
        self.rest_classes = np.sort(cls[self.rest])

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    def first_level_candidates(self) -> list[int]:
        if not self.compatible:
            return []
        if not self.levels:
            return [-1]
        lev = self.levels[0]
        return [int(t) for t in np.flatnonzero(self.initial_target == lev.cls)]

    def run(self, first: list[int] | None = None) -> Iterator[np.ndarray]:
        """Yield each isomorphism as an int array ``perm`` with ``perm[a] = image``.

        ``first`` restricts the image of the first base vertex, which lets
        callers split the search across workers.
        """
        if not self.compatible:
            return
        images = np.full(len(self.base), -1, dtype=np.int64)
        used = np.zeros(self.n, dtype=bool)
        yield from self._extend(0, self.initial_target, images, used, first)

    def _extend(self, depth, cls_t, images, used, first) -> Iterator[np.ndarray]:
        if depth == len(self.levels):
            perm = self._complete(cls_t, images, used)
            if perm is not None:
                yield perm
            return
        lev = self.levels[depth]
        cands = np.flatnonzero((cls_t == lev.cls) & ~used)
        if depth == 0 and first is not None:
            allowed = set(first)
            cands = [t for t in cands if t in allowed]
        for t in cands:
            self._tick()
            pos = lev.lookup[cls_t * 2 + self.B[t]]
            if pos.min() < 0:
                continue
            if not np.array_equal(np.bincount(pos, minlength=len(lev.counts)), lev.counts):
                continue
            images[depth] = t
            used[t] = True
            yield from self._extend(depth + 1, pos, images, used, first)
            used[t] = False
        images[depth] = -1

    def _complete(self, cls_t, images, used) -> np.ndarray | None:
        free = np.flatnonzero(~used)
        order = np.argsort(cls_t[free], kind="stable")
        if not np.array_equal(cls_t[free][order], self.rest_classes):
            return None
        perm = np.empty(self.n, dtype=np.int64)
        perm[self.base] = images
        perm[self.rest_sorted] = free[order]
        if not np.array_equal(self.B[np.ix_(perm, perm)], self.A):
            return None
        return perm


def iter_isomorphisms(A: np.ndarray, B: np.ndarray, budget: int = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    yield from IsomorphismSearch(A, B, budget).run()
