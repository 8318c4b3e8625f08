import itertools
import random

import pytest

import oracles
from linegeom import (
    PrimeField,
    dimension,
    generate_ag,
    generate_complete,
    generate_near_pencil,
    generate_pg,
    is_generalized_projective_space,
    standard_polarity,
)
from linegeom.chow import LineMap, check_adjacency_preserving
from linegeom.errors import SizeCapExceeded, UnsupportedOrder, WrongProvenance
from linegeom.generators import gaussian_binomial, random_collineation


class TestPrimeField:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_inverses(self, p):
        F = PrimeField(p)
        assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, p))

    @pytest.mark.parametrize("q", [1, 4, 6, 9])
    def test_rejects_non_primes(self, q):
        with pytest.raises(UnsupportedOrder):
            PrimeField(q)

    def test_rank(self):
        F = PrimeField(3)
        assert F.rank([[1, 2], [2, 1]]) == 1
        assert F.rank([[1, 0], [0, 2]]) == 2

    def test_random_invertible(self):
        F = PrimeField(2)
        rng = random.Random(0)
        for _ in range(20):
            assert F.rank(F.random_invertible(4, rng)) == 4


@pytest.mark.parametrize(
    "n,q,points,lines,per_line",
    [(3, 2, 15, 35, 3), (2, 2, 7, 7, 3), (3, 3, 40, 130, 4), (2, 3, 13, 13, 4), (1, 5, 6, 1, 6)],
)
def test_pg_counts(n, q, points, lines, per_line):
    s = generate_pg(n, q).space
    assert (s.point_count, s.line_count) == (points, lines)
    assert {len(l) for l in s.lines} == {per_line}


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_pg_lines_match_vector_space_enumeration(n, q):
    pg = generate_pg(n, q)
    F = PrimeField(q)
    expected = {
        frozenset(F.normalize(v) for v in sub)
        for sub in oracles.subspaces_of_vector_space(n + 1, 2, q)
    }
    got = {frozenset(pg.labels[p] for p in line) for line in pg.space.lines}
    assert got == expected


def test_gaussian_binomials():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(4, 1, 3) == 40


@pytest.mark.parametrize(
    "n,q,points,lines", [(3, 3, 27, 117), (2, 3, 9, 12), (3, 2, 8, 28), (2, 5, 25, 30)]
)
def test_ag_counts(n, q, points, lines):
    ag = generate_ag(n, q)
    s = ag.space
    assert (s.point_count, s.line_count) == (points, lines)
    assert {len(l) for l in s.lines} == {q}
    got = {frozenset(ag.labels[p] for p in line) for line in s.lines}
    assert got == oracles.cosets_of_lines(n, q)


def test_ag_over_gf2_is_complete():
    ag = generate_ag(3, 2)
    assert ag.provenance["degenerate"] == "complete"
    assert ag.space == generate_complete(8).space


def test_labels_normalized_and_sorted():
    pg = generate_pg(3, 3)
    assert list(pg.labels) == sorted(pg.labels)
    assert len(set(pg.labels)) == 40
    assert all(next(x for x in v if x) == 1 for v in pg.labels)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_complete(n):
    s = generate_complete(n).space
    assert s.line_count == n * (n - 1) // 2
    assert dimension(s) == n - 1


def test_near_pencil():
    s = generate_near_pencil(4).space
    assert (s.point_count, s.line_count) == (4, 4)
    assert all(set(a) & set(b) for a, b in itertools.combinations(s.lines, 2))
    assert is_generalized_projective_space(generate_near_pencil(7).space)
    assert generate_near_pencil(3).space == generate_complete(3).space
    assert dimension(generate_near_pencil(6).space) == 2


@pytest.mark.parametrize("make", [generate_pg, generate_ag])
def test_unsupported_order(make):
    with pytest.raises(UnsupportedOrder):
        make(3, 4)


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        generate_pg(4, 5)
    assert generate_pg(3, 5).space.point_count == 156


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_generated_projectivity(n, q):
    assert is_generalized_projective_space(generate_pg(n, q).space)
    assert not is_generalized_projective_space(generate_ag(n, 3).space)


class TestPolarity:
    def test_image_of_first_basis_point(self, pg32):
        seed = standard_polarity(pg32)
        e0 = pg32.point_of((1, 0, 0, 0))
        plane = {pg32.labels[p] for p in seed.plane_of[e0]}
        expected = {v for v in itertools.product(range(2), repeat=4) if any(v) and v[0] == 0}
        assert plane == expected and len(plane) == 7

    def test_induced_map_preserves_adjacency(self, pg32):
        seed = standard_polarity(pg32)
        s = pg32.space
        for a, b in itertools.product(range(35), repeat=2):
            assert bool(set(s.lines[a]) & set(s.lines[b])) == bool(
                set(s.lines[seed.line_map[a]]) & set(s.lines[seed.line_map[b]])
            )
        assert check_adjacency_preserving(LineMap(s, s, seed.line_map))

    @pytest.mark.parametrize("q", [2, 3])
    def test_pole_of_polar_is_identity(self, q):
        seed = standard_polarity(generate_pg(3, q))
        assert all(seed.pole(seed.plane_of[p]) == p for p in range(len(seed.plane_of)))

    def test_wrong_provenance(self, fano, ag33):
        with pytest.raises(WrongProvenance):
            standard_polarity(fano)
        with pytest.raises(WrongProvenance):
            standard_polarity(ag33)


@pytest.mark.parametrize("make", [lambda: generate_pg(3, 3), lambda: generate_ag(3, 3), lambda: generate_complete(6)])
def test_random_collineation_maps_lines_to_lines(make):
    lab = make()
    s = lab.space
    rng = random.Random(7)
    for _ in range(5):
        kappa = random_collineation(lab, rng)
        assert sorted(kappa) == list(range(s.point_count))
        assert all(s.line_id(kappa[p] for p in line) is not None for line in s.lines)
