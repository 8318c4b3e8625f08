"""Canonical finite test geometries over prime fields."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import PreconditionViolated, SizeCapExceeded, UnsupportedOrder, WrongProvenance
from .incidence import LinearSpace, validate

MAX_POINTS = 512
MAX_LINES = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


class PrimeField:
    """Arithmetic modulo a prime ``p``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise UnsupportedOrder(p)
        self.p = p
        self.inverse = [0] + [pow(a, p - 2, p) for a in range(1, p)]

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inverse[a % self.p]

    def elements(self) -> range:
        return range(self.p)

    def dot(self, u, v) -> int:
        return sum(a * b for a, b in zip(u, v)) % self.p

    def matvec(self, M, v) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) % self.p for row in M)

    def rank(self, M) -> int:
        rows = [list(r) for r in M]
        rank = 0
        ncols = len(rows[0]) if rows else 0
        for c in range(ncols):
            pivot = next((r for r in range(rank, len(rows)) if rows[r][c] % self.p), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = self.inv(rows[rank][c])
            rows[rank] = [x * inv % self.p for x in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [(x - f * y) % self.p for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def random_invertible(self, n: int, rng: random.Random) -> tuple[tuple[int, ...], ...]:
        while True:
            M = tuple(tuple(rng.randrange(self.p) for _ in range(n)) for _ in range(n))
            if self.rank(M) == n:
                return M

    def normalize(self, v) -> tuple[int, ...]:
        """Scale a nonzero vector so its first nonzero coordinate is 1."""
        lead = next((x for x in v if x % self.p), None)
        if lead is None:
            raise ZeroDivisionError("zero vector has no projective normal form")
        inv = self.inv(lead)
        return tuple(x * inv % self.p for x in v)


@dataclass(frozen=True, eq=False)
class LabeledSpace:
    space: LinearSpace
    labels: tuple
    provenance: dict = field(default_factory=dict)

    def point_of(self, label) -> int:
        return self._index[tuple(label) if isinstance(label, (list, tuple)) else label]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_idx", idx)
        return idx


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _check_params(n: int, q: int, points: int, lines: int, max_points: int, max_lines: int):
    if not 1 <= n <= 4:
        raise PreconditionViolated(f"dimension n={n} outside 1..4")
    if not is_prime(q):
        raise UnsupportedOrder(q)
    if points > max_points or lines > max_lines:
        raise SizeCapExceeded(
            f"{points} points / {lines} lines exceeds cap {max_points} / {max_lines}"
        )


def _lines_from_points(F: PrimeField, vectors, combine) -> list[tuple[int, ...]]:
    index = {v: i for i, v in enumerate(vectors)}
    n = len(vectors)
    covered = [[False] * n for _ in range(n)]
    lines = []
    for i, j in itertools.combinations(range(n), 2):
        if covered[i][j]:
            continue
        line = sorted({index[w] for w in combine(vectors[i], vectors[j])})
        for a, b in itertools.combinations(line, 2):
            covered[a][b] = True
        lines.append(tuple(line))
    return lines


def generate_pg(n: int, q: int, max_points: int = MAX_POINTS, max_lines: int = MAX_LINES) -> LabeledSpace:
    """Projective space PG(n, q): 1-subspaces of GF(q)^(n+1) as points."""
    points = gaussian_binomial(n + 1, 1, q) if is_prime(q) else 0
    lines = gaussian_binomial(n + 1, 2, q) if is_prime(q) else 0
    _check_params(n, q, points, lines, max_points, max_lines)
    F = PrimeField(q)
    vectors = sorted(
        {F.normalize(v) for v in itertools.product(range(q), repeat=n + 1) if any(v)}
    )

    def combine(u, v):
        yield u
        for t in range(q):
            yield F.normalize(tuple((t * a + b) % q for a, b in zip(u, v)))

    space = validate(len(vectors), _lines_from_points(F, vectors, combine))
    return LabeledSpace(space, tuple(vectors), {"family": "pg", "n": n, "q": q})


def generate_ag(n: int, q: int, max_points: int = MAX_POINTS, max_lines: int = MAX_LINES) -> LabeledSpace:
    """Affine space AG(n, q): vectors as points, cosets of 1-subspaces as lines."""
    points = q**n if is_prime(q) else 0
    lines = q ** (n - 1) * gaussian_binomial(n, 1, q) if is_prime(q) else 0
    _check_params(n, q, points, lines, max_points, max_lines)
    F = PrimeField(q)
    vectors = list(itertools.product(range(q), repeat=n))

    def combine(u, v):
        d = tuple((b - a) % q for a, b in zip(u, v))
        for t in range(q):
            yield tuple((a + t * x) % q for a, x in zip(u, d))

    space = validate(len(vectors), _lines_from_points(F, vectors, combine))
    prov = {"family": "ag", "n": n, "q": q}
    if q == 2:
        prov["degenerate"] = "complete"
    return LabeledSpace(space, tuple(vectors), prov)


def generate_complete(n: int) -> LabeledSpace:
    """All 2-subsets of n points as lines."""
    if n < 2:
        raise PreconditionViolated("complete space needs n >= 2")
    space = validate(n, itertools.combinations(range(n), 2))
    return LabeledSpace(space, tuple(range(n)), {"family": "complete", "n": n})


def generate_near_pencil(n: int) -> LabeledSpace:
    """One line on points 1..n-1 plus the lines {0, i}."""
    if n < 3:
        raise PreconditionViolated("near-pencil needs n >= 3")
    lines = [tuple(range(1, n))] + [(0, i) for i in range(1, n)]
    space = validate(n, lines)
    return LabeledSpace(space, tuple(range(n)), {"family": "near-pencil", "n": n})


# -- collineations from coordinates ------------------------------------------


def projective_point_map(pg: LabeledSpace, M) -> tuple[int, ...]:
    """Point permutation of PG(n, q) induced by an invertible matrix."""
    if pg.provenance.get("family") != "pg":
        raise WrongProvenance("expected a projective space")
    F = PrimeField(pg.provenance["q"])
    return tuple(pg.point_of(F.normalize(F.matvec(M, v))) for v in pg.labels)


def affine_point_map(ag: LabeledSpace, M, b) -> tuple[int, ...]:
    """Point permutation of AG(n, q) induced by ``x -> Mx + b``."""
    if ag.provenance.get("family") != "ag":
        raise WrongProvenance("expected an affine space")
    F = PrimeField(ag.provenance["q"])
    return tuple(
        ag.point_of(tuple((x + y) % F.p for x, y in zip(F.matvec(M, v), b))) for v in ag.labels
    )


def random_collineation(labeled: LabeledSpace, rng: random.Random) -> tuple[int, ...]:
    """A random point permutation that maps lines onto lines."""
    fam = labeled.provenance.get("family")
    if fam == "pg":
        F = PrimeField(labeled.provenance["q"])
        return projective_point_map(labeled, F.random_invertible(labeled.provenance["n"] + 1, rng))
    if fam == "ag":
        F = PrimeField(labeled.provenance["q"])
        n = labeled.provenance["n"]
        M = F.random_invertible(n, rng)
        return affine_point_map(labeled, M, tuple(rng.randrange(F.p) for _ in range(n)))
    if fam == "complete":
        perm = list(range(labeled.space.point_count))
        rng.shuffle(perm)
        return tuple(perm)
    raise WrongProvenance(f"no collineation sampler for family {fam!r}")


# -- the standard polarity of PG(3, q) ----------------------------------------


@dataclass(frozen=True, eq=False)
class CorrelationSeed:
    """A point-to-plane map of a 3-dimensional projective space.

    ``plane_of[p]`` is the point set of the image plane of point ``p`` and
    ``line_map[l]`` the induced image of line ``l``.
    """

    source: LabeledSpace
    plane_of: tuple[frozenset[int], ...]
    line_map: tuple[int, ...]

    def pole(self, plane) -> int:
        """Inverse of ``plane_of``: the point whose image is ``plane``."""
        return self.plane_of.index(frozenset(plane))


def standard_polarity(pg3q: LabeledSpace) -> CorrelationSeed:
    """Send the point ``<v>`` to the plane ``v^perp`` of the dot product."""
    prov = pg3q.provenance
    if prov.get("family") != "pg" or prov.get("n") != 3:
        raise WrongProvenance("standard_polarity needs a space from generate_pg(3, q)")
    F = PrimeField(prov["q"])
    space = pg3q.space
    plane_of = tuple(
        frozenset(i for i, w in enumerate(pg3q.labels) if F.dot(v, w) == 0) for v in pg3q.labels
    )
    line_map = []
    for a, b, *_ in space.lines:
        lid = space.line_id(plane_of[a] & plane_of[b])
        if lid is None:
            raise PreconditionViolated("two image planes do not meet in a line")
        line_map.append(lid)
    return CorrelationSeed(pg3q, plane_of, tuple(line_map))
