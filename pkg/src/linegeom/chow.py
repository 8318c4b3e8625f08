"""Adjacency-preserving line bijections and their point-level origin.

A bijection between the line sets of two linear spaces of dimension at least
3 that preserves the related relation in both directions comes either from a
collineation or, when both spaces are 3-dimensional generalized projective
spaces, from a correlation. The functions here verify the hypothesis,
recover the point map, and enumerate all such bijections of small spaces.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionTooSmall,
    HypothesisViolated,
    ImageNotMaximal,
    NonUniformStarImages,
    NotBijective,
    NotCollineation,
    NotCoplanarPreserving,
    NotCorrelation,
    NotStarPreserving,
    SizeCapExceeded,
    SourceNotGenProjDim3,
    TargetNotGenProjDim3,
    TheoremAlarm,
    WellDefinednessFailure,
)
from .incidence import (
    CheckResult,
    DualSpace,
    LinearSpace,
    bits,
    close_mask,
    dimension,
    dual_space,
    is_generalized_projective_space,
    planes,
    validate,
)
from .pluecker import Classification, Coplanar, LineGraph, MaximalRelatedSet, Other, Star, _classify
from .search import DEFAULT_BUDGET, IsomorphismSearch

MAX_AUTOMORPHISM_LINES = 40


def _check_bijection(image: Sequence[int], n_source: int, n_target: int, what: str) -> None:
    if n_source != n_target or len(image) != n_source or sorted(image) != list(range(n_target)):
        raise NotBijective(f"{what} image is not a bijection onto 0..{n_target - 1}")


@dataclass(frozen=True, eq=False)
class LineMap:
    """``image[l]`` is the target line id of source line ``l``."""

    source: LinearSpace = field(repr=False)
    target: LinearSpace = field(repr=False)
    image: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))
        _check_bijection(self.image, self.source.line_count, self.target.line_count, "line map")

    def inverse(self) -> "LineMap":
        inv = [0] * len(self.image)
        for a, b in enumerate(self.image):
            inv[b] = a
        return LineMap(self.target, self.source, tuple(inv))

    def then(self, other: "LineMap") -> "LineMap":
        """Apply ``self`` first, then ``other``."""
        return LineMap(self.source, other.target, tuple(other.image[b] for b in self.image))


@dataclass(frozen=True, eq=False)
class PointMap:
    source: LinearSpace = field(repr=False)
    target: LinearSpace = field(repr=False)
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))
        _check_bijection(self.image, self.source.point_count, self.target.point_count, "point map")


@dataclass(frozen=True, eq=False)
class CorrelationMap:
    """``image[p]`` is the dual point (a plane of ``target``) assigned to ``p``."""

    source: LinearSpace = field(repr=False)
    target: LinearSpace = field(repr=False)
    dual: DualSpace
    image: tuple[int, ...]

    def plane_of(self, p: int) -> frozenset[int]:
        return self.dual.plane_points[self.image[p]]

    @property
    def plane_map(self) -> list[list[int]]:
        return [sorted(self.plane_of(p)) for p in range(self.source.point_count)]


@dataclass(frozen=True, eq=False)
class MapVerdict:
    kind: str  # "collineation" or "correlation"
    mapping: PointMap | CorrelationMap
    probe: int
    probe_image: Classification


# -- hypothesis --------------------------------------------------------------


def check_adjacency_preserving(m: LineMap) -> CheckResult:
    """``a`` related to ``b`` iff their images are related, for all pairs.

    The witness is the first offending source pair ``(a, b)`` with ``a < b``.
    """
    cached = m._cache.get("preserving")
    if cached is not None:
        return cached
    A = LineGraph.of(m.source).matrix
    B = LineGraph.of(m.target).matrix
    img = np.asarray(m.image, dtype=np.int64)
    bad = np.argwhere(np.triu(B[np.ix_(img, img)] != A))
    res = CheckResult(True) if len(bad) == 0 else CheckResult(False, tuple(int(x) for x in bad[0]))
    m._cache["preserving"] = res
    return res


def _require_hypothesis(m: LineMap) -> None:
    res = check_adjacency_preserving(m)
    if not res:
        raise HypothesisViolated(res.witness)


def _require_dimensions(m: LineMap) -> None:
    for which, space in (("source", m.source), ("target", m.target)):
        d = dimension(space)
        if d < 3:
            raise DimensionTooSmall(which, d)
        if any(len(on) < 2 for on in space.point_lines):
            raise DimensionTooSmall(which, d)


def map_maximal_set(m: LineMap, M: Iterable[int]) -> MaximalRelatedSet:
    """Image of a maximal related set, checked maximal in the target and classified."""
    _require_hypothesis(m)
    lines = tuple(sorted(m.image[l] for l in M))
    g = LineGraph.of(m.target)
    mask = 0
    for l in lines:
        mask |= 1 << l
    outside = ((1 << len(g)) - 1) & ~mask
    for l in lines:
        if mask & ~(1 << l) & ~g.adj[l]:
            raise ImageNotMaximal(f"image lines {lines} are not mutually related")
        outside &= g.adj[l]
    if outside:
        raise ImageNotMaximal(f"image {lines} extends by line {outside.bit_length() - 1}")
    return MaximalRelatedSet(lines, _classify(m.target, lines))


# -- star images -------------------------------------------------------------


def _star_image(m: LineMap, p: int) -> Classification:
    target = m.target
    masks = target.line_masks
    lines = [m.image[l] for l in m.source.point_lines[p]]
    common = target.full_mask
    for l in lines:
        common &= masks[l]
    if common and common & (common - 1) == 0:
        return Star(common.bit_length() - 1)
    if common or len(lines) < 2:
        return Other()
    plane = close_mask(target, masks[lines[0]] | masks[lines[1]])
    if all(masks[l] & ~plane == 0 for l in lines):
        return Coplanar(tuple(bits(plane)))
    return Other()


def star_images(m: LineMap) -> list[Classification]:
    """Classification of the image of every star, indexed by source point."""
    cached = m._cache.get("stars")
    if cached is None:
        cached = m._cache["stars"] = [_star_image(m, p) for p in range(m.source.point_count)]
    return cached


# -- reconstruction ----------------------------------------------------------


def induce_line_map(kappa: PointMap) -> LineMap:
    """Line map ``{A} v {B} -> {A'} v {B'}`` of a collineation."""
    image = []
    for lid, line in enumerate(kappa.source.lines):
        t = kappa.target.line_id(kappa.image[p] for p in line)
        if t is None:
            raise NotCollineation(f"line {lid} is not mapped onto a line", witness=lid)
        image.append(t)
    return LineMap(kappa.source, kappa.target, tuple(image))


def reconstruct_collineation(m: LineMap) -> PointMap:
    """Send each point to the common point of the image of its star."""
    _require_hypothesis(m)
    images = star_images(m)
    kappa = []
    for p, c in enumerate(images):
        if not isinstance(c, Star):
            raise NotStarPreserving(f"the star at point {p} is mapped onto a non-star {c}")
        kappa.append(c.vertex)
    masks = m.target.line_masks
    for p, on in enumerate(m.source.point_lines):
        want = 1 << kappa[p]
        for a, b in zip(on, on[1:]):
            if masks[m.image[a]] & masks[m.image[b]] != want:
                raise WellDefinednessFailure(f"lines {a}, {b} through point {p} disagree")
    try:
        pm = PointMap(m.source, m.target, tuple(kappa))
        induced = induce_line_map(pm)
    except (NotBijective, NotCollineation) as exc:
        raise TheoremAlarm(f"reconstructed point map is not a collineation: {exc}") from exc
    if induced.image != m.image:
        raise TheoremAlarm("reconstructed collineation does not induce the given line map")
    return pm


def _dual_of(space: LinearSpace) -> DualSpace:
    d = space._cache.get("dual")
    if d is None:
        d = space._cache["dual"] = dual_space(space)
    return d


def _is_gen_proj_dim3(space: LinearSpace) -> bool:
    return dimension(space) == 3 and bool(is_generalized_projective_space(space))


def reconstruct_correlation(m: LineMap) -> CorrelationMap:
    """Send each point to the plane spanned by the image of its star."""
    _require_hypothesis(m)
    images = star_images(m)
    for p, c in enumerate(images):
        if not isinstance(c, Coplanar):
            raise NotCoplanarPreserving(f"the star at point {p} is mapped onto {c}")
    if not _is_gen_proj_dim3(m.target):
        raise TargetNotGenProjDim3("stars go to coplanar sets but the target is not a 3-dimensional generalized projective space")
    dual = _dual_of(m.target)
    delta = []
    for p, c in enumerate(images):
        idx = dual.plane_index.get(frozenset(c.plane))
        if idx is None:
            raise TheoremAlarm(f"image of the star at {p} spans {c.plane}, which is not a plane")
        delta.append(idx)
    if len(set(delta)) != len(delta) or len(delta) != dual.space.point_count:
        raise TheoremAlarm("point-to-plane map is not a bijection onto the planes")
    for lid, line in enumerate(m.source.lines):
        pencil = dual.axis_pencil[m.image[lid]]
        if tuple(sorted(delta[p] for p in line)) != dual.space.lines[pencil]:
            raise TheoremAlarm(f"line {lid} is not mapped onto the pencil of its image line")
    if not _is_gen_proj_dim3(m.source):
        raise SourceNotGenProjDim3("source of a correlation is not a 3-dimensional generalized projective space")
    return CorrelationMap(m.source, m.target, dual, tuple(delta))


def classify_map(m: LineMap, probe: int = 0) -> MapVerdict:
    """Decide whether an adjacency-preserving bijection comes from a
    collineation or a correlation, and reconstruct the point map.

    One star decides; all other stars are then checked to behave the same.
    """
    _require_hypothesis(m)
    _require_dimensions(m)
    images = star_images(m)
    first = images[probe]
    if isinstance(first, Other):
        raise TheoremAlarm(f"image of the star at {probe} is neither a star nor coplanar")
    kind = type(first)
    for p, c in enumerate(images):
        if type(c) is not kind:
            raise NonUniformStarImages(
                f"star at {probe} maps to {kind.__name__} but star at {p} maps to {type(c).__name__}"
            )
    if kind is Star:
        return MapVerdict("collineation", reconstruct_collineation(m), probe, first)
    return MapVerdict("correlation", reconstruct_correlation(m), probe, first)


def induce_line_map_from_correlation(
    space: LinearSpace,
    plane_of: Sequence[Iterable[int]] | Mapping[int, Iterable[int]],
    target: LinearSpace | None = None,
) -> LineMap:
    """Line map ``{A} v {B} -> delta(A) meet delta(B)`` of a point-to-plane map."""
    target = space if target is None else target
    n = space.point_count
    if isinstance(plane_of, Mapping):
        plane_of = [plane_of[p] for p in range(n)]
    images = [frozenset(pl) for pl in plane_of]
    target_planes = {pl.points for pl in planes(target)}
    if len(images) != n or len(target_planes) != n:
        raise NotCorrelation(f"{n} points cannot map bijectively onto {len(target_planes)} planes")
    if any(pl not in target_planes for pl in images) or len(set(images)) != n:
        raise NotCorrelation("point-to-plane map is not a bijection onto the planes")
    image = []
    for lid, line in enumerate(space.lines):
        axis = target.line_id(images[line[0]] & images[line[1]])
        if axis is None:
            raise NotCorrelation(f"images of the points of line {lid} do not meet in a line")
        axis_pts = set(target.lines[axis])
        if any(not axis_pts <= images[p] for p in line):
            raise NotCorrelation(f"images of the points of line {lid} share no common line")
        image.append(axis)
    try:
        return LineMap(space, target, tuple(image))
    except NotBijective as exc:
        raise NotCorrelation(str(exc)) from exc


# -- enumeration -------------------------------------------------------------


@dataclass
class AutomorphismTally:
    total: int = 0
    collineation: int = 0
    correlation: int = 0
    classified: bool = False
    nodes: int = 0
    maps: list[tuple[int, ...]] | None = None

    def merge(self, other: "AutomorphismTally") -> None:
        self.total += other.total
        self.collineation += other.collineation
        self.correlation += other.correlation
        self.nodes += other.nodes
        if other.maps is not None:
            self.maps = (self.maps or []) + other.maps


def _run_search(space: LinearSpace, first, mode: str, budget: int, classify: bool) -> AutomorphismTally:
    A = LineGraph.of(space).matrix
    search = IsomorphismSearch(A, A, budget)
    tally = AutomorphismTally(classified=classify, maps=[] if mode == "list" else None)
    counts: Counter[str] = Counter()
    for perm in search.run(first):
        tally.total += 1
        image = tuple(perm.tolist())
        if classify:
            counts[classify_map(LineMap(space, space, image)).kind] += 1
        if tally.maps is not None:
            tally.maps.append(image)
    tally.collineation = counts["collineation"]
    tally.correlation = counts["correlation"]
    tally.nodes = search.nodes
    return tally


def _worker(point_count, lines, first, mode, budget, classify):
    return _run_search(validate(point_count, lines), first, mode, budget, classify)


def enumerate_automorphisms(
    space: LinearSpace,
    mode: str = "count",
    budget: int = DEFAULT_BUDGET,
    max_lines: int = MAX_AUTOMORPHISM_LINES,
    classify: bool = True,
    workers: int = 1,
) -> AutomorphismTally:
    """All bijections of the line set preserving the related relation.

    With ``classify`` and dimension at least 3, each map is passed through
    :func:`classify_map` and tallied. ``mode="list"`` also returns the maps,
    sorted.
    """
    if mode not in ("count", "list"):
        raise ValueError(f"unknown mode {mode!r}")
    if space.line_count > max_lines:
        raise SizeCapExceeded(f"{space.line_count} lines exceeds automorphism cap {max_lines}")
    classify = classify and dimension(space) >= 3
    if workers <= 1:
        tally = _run_search(space, None, mode, budget, classify)
    else:
        firsts = IsomorphismSearch(LineGraph.of(space).matrix, LineGraph.of(space).matrix, budget).first_level_candidates()
        chunks = [firsts[i::workers] for i in range(workers) if firsts[i::workers]]
        tally = AutomorphismTally(classified=classify, maps=[] if mode == "list" else None)
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
            futures = [
                pool.submit(_worker, space.point_count, space.lines, c, mode, budget, classify)
                for c in chunks
            ]
            for f in futures:
                tally.merge(f.result())
    if tally.maps is not None:
        tally.maps.sort()
    return tally


def iter_line_isomorphisms(source: LinearSpace, target: LinearSpace, budget: int = DEFAULT_BUDGET):
    """Yield every adjacency-preserving line bijection from ``source`` to ``target``."""
    search = IsomorphismSearch(LineGraph.of(source).matrix, LineGraph.of(target).matrix, budget)
    for perm in search.run():
        yield LineMap(source, target, tuple(perm.tolist()))


def find_collineation(source: LinearSpace, target: LinearSpace, budget: int = DEFAULT_BUDGET) -> PointMap | None:
    """A collineation between two spaces of dimension >= 3, found through their line graphs."""
    for m in iter_line_isomorphisms(source, target, budget):
        verdict = classify_map(m)
        if verdict.kind == "collineation":
            return verdict.mapping
    return None
