import itertools
from collections import Counter

import pytest

import oracles
from linegeom import (
    Coplanar,
    Other,
    Star,
    classify_maximal_set,
    dimension,
    extend_to_maximal,
    generate_complete,
    generate_near_pencil,
    join,
    maximal_related_sets,
    planes,
    related,
    star,
    validate,
)
from linegeom.errors import NotMaximal, NotRelatedSet, SizeCapExceeded, UnknownLine, UnknownPoint
from linegeom.pluecker import LineGraph


def kinds(space):
    return Counter((M.kind, len(M.lines)) for M in maximal_related_sets(space))


class TestRelated:
    def test_fano_lines_all_meet(self, fano):
        s = fano.space
        assert all(related(s, a, b) for a, b in itertools.combinations(range(7), 2))

    def test_parallel_lines(self, ag23):
        s = ag23.space
        a, b = next(
            (a, b) for a, b in itertools.combinations(range(12), 2) if not set(s.lines[a]) & set(s.lines[b])
        )
        assert not related(s, a, b)

    def test_reflexive(self, pg32):
        assert all(related(pg32.space, a, a) for a in range(35))

    def test_unknown_line(self, pg32):
        with pytest.raises(UnknownLine):
            related(pg32.space, 0, 35)

    def test_line_graph_symmetric_irreflexive(self, pg33):
        g = LineGraph.of(pg33.space)
        A = g.matrix
        assert (A == A.T).all() and not A.diagonal().any()
        s = pg33.space
        for a, b in [(0, 1), (5, 100), (17, 129)]:
            assert bool(A[a, b]) == (a != b and related(s, a, b))
            if A[a, b]:
                assert len(set(s.lines[a]) & set(s.lines[b])) == 1


class TestStar:
    def test_sizes(self, pg32, k8, ag33):
        assert {len(star(pg32.space, p)) for p in range(15)} == {7}
        assert {len(star(k8.space, p)) for p in range(8)} == {7}
        assert {len(star(ag33.space, p)) for p in range(27)} == {13}

    def test_members_contain_vertex(self, pg33):
        s = pg33.space
        assert all(5 in s.lines[l] for l in star(s, 5))

    def test_unknown_point(self, pg32):
        with pytest.raises(UnknownPoint):
            star(pg32.space, 15)


class TestMaximalRelatedSets:
    def test_pg32(self, pg32):
        assert kinds(pg32.space) == {("star", 7): 15, ("coplanar", 7): 15}

    def test_k8(self, k8):
        assert kinds(k8.space) == {("star", 7): 8, ("coplanar", 3): 56}

    def test_pg33(self, pg33):
        assert kinds(pg33.space) == {("star", 13): 40, ("coplanar", 13): 40}

    def test_single_line_space(self):
        sets = maximal_related_sets(validate(3, [[0, 1, 2]]))
        assert len(sets) == 1
        assert sets[0].lines == (0,) and sets[0].classification == Other()

    def test_empty_space(self):
        assert maximal_related_sets(validate(0, [])) == []

    def test_canonical_order(self, pg32):
        sets = maximal_related_sets(pg32.space)
        assert [M.lines for M in sets] == sorted(M.lines for M in sets)
        assert all(list(M.lines) == sorted(M.lines) for M in sets)

    def test_cap(self, pg33):
        with pytest.raises(SizeCapExceeded):
            maximal_related_sets(pg33.space, max_lines=100)

    @pytest.mark.parametrize(
        "name", ["pg32", "k8", "k5", "fano", "ag23", "near_pencil7", "non_exchange"]
    )
    def test_matches_naive_enumeration(self, name, request):
        fx = request.getfixturevalue(name)
        s = getattr(fx, "space", fx)
        assert s.line_count <= 40
        naive = oracles.all_maximal_cliques(s.line_count, lambda a, b: bool(set(s.lines[a]) & set(s.lines[b])))
        assert [M.lines for M in maximal_related_sets(s)] == naive

    @pytest.mark.parametrize("n", [6, 7])
    def test_complete_graphs_match_naive(self, n):
        s = generate_complete(n).space
        naive = oracles.all_maximal_cliques(s.line_count, lambda a, b: bool(set(s.lines[a]) & set(s.lines[b])))
        assert [M.lines for M in maximal_related_sets(s)] == naive


class TestClassify:
    def test_star_of_pg33(self, pg33):
        assert classify_maximal_set(pg33.space, star(pg33.space, 11)) == Star(11)

    def test_lines_of_a_plane(self, pg33):
        s = pg33.space
        plane = planes(s)[3]
        inside = [l for l in range(s.line_count) if set(s.lines[l]) <= plane.points]
        assert len(inside) == 13
        assert classify_maximal_set(s, inside) == Coplanar(plane.sorted())

    def test_triangle_in_k8(self, k8):
        s = k8.space
        tri = [s.line_id((0, 1)), s.line_id((0, 2)), s.line_id((1, 2))]
        assert classify_maximal_set(s, tri) == Coplanar((0, 1, 2))

    def test_fano_whole_line_set(self, fano):
        assert classify_maximal_set(fano.space, range(7)) == Coplanar(tuple(range(7)))

    def test_errors(self, pg32, ag23):
        s = pg32.space
        with pytest.raises(NotMaximal):
            classify_maximal_set(s, list(star(s, 0))[:3])
        skew = next(l for l in range(35) if not set(s.lines[l]) & set(s.lines[0]))
        with pytest.raises(NotRelatedSet):
            classify_maximal_set(s, [0, skew])
        # an affine star is maximal in the plane
        assert classify_maximal_set(ag23.space, star(ag23.space, 0)) == Star(0)


class TestExtend:
    def test_from_empty(self, pg32):
        M = extend_to_maximal(pg32.space)
        assert M.lines == tuple(range(7)) and M.classification == Star(0)

    def test_from_single_edge_of_k8(self, k8):
        s = k8.space
        a = s.line_id((0, 1))
        M = extend_to_maximal(s, {a})
        assert a in M.lines
        assert M.classification == Star(0) and len(M.lines) == 7

    def test_three_lines_force_a_star(self, pg32):
        s = pg32.space
        plane = planes(s)[0].points
        through = [l for l in range(35) if set(s.lines[l]) <= plane]
        a, b = through[0], through[1]
        vertex = (set(s.lines[a]) & set(s.lines[b])).pop()
        c = next(l for l in star(s, vertex) if not set(s.lines[l]) <= plane)
        M = extend_to_maximal(s, {a, b, c})
        assert M.classification == Star(vertex)
        assert set(M.lines) == set(star(s, vertex))

    def test_not_related(self, pg32):
        s = pg32.space
        skew = next(l for l in range(35) if not set(s.lines[l]) & set(s.lines[0]))
        with pytest.raises(NotRelatedSet):
            extend_to_maximal(s, {0, skew})


# -- the dichotomy and its boundary --------------------------------------------

DIM3_FIXTURES = ["pg32", "pg33", "ag33", "k8"]


@pytest.mark.parametrize("name", DIM3_FIXTURES + ["k5", "k6", "k7"])
def test_no_other_class_in_dimension_three_or_more(name, request):
    if name in ("k5", "k6", "k7"):
        s = generate_complete(int(name[1])).space
    else:
        s = request.getfixturevalue(name).space
    assert dimension(s) >= 3
    sets = maximal_related_sets(s)
    assert all(M.kind in ("star", "coplanar") for M in sets)
    stars = [M for M in sets if M.kind == "star"]
    assert sorted(M.classification.vertex for M in stars) == list(range(s.point_count))


@pytest.mark.parametrize("name", DIM3_FIXTURES + ["ag23", "fano", "near_pencil7"])
def test_non_star_sets_span_one_plane_pairwise(name, request):
    s = request.getfixturevalue(name).space
    for M in maximal_related_sets(s):
        if M.kind == "star":
            continue
        plane = frozenset(M.classification.plane)
        for x, y in itertools.combinations(M.lines, 2):
            assert join(s, s.lines[x], s.lines[y]).points == plane
        assert all(set(s.lines[l]) <= plane for l in M.lines)


@pytest.mark.parametrize("name", DIM3_FIXTURES)
def test_every_star_is_maximal_off_dimension_two(name, request):
    s = request.getfixturevalue(name).space
    for p in range(s.point_count):
        st = star(s, p)
        assert set(extend_to_maximal(s, st).lines) == st


def test_two_dimensional_boundary(fano, ag23):
    sets = maximal_related_sets(fano.space)
    assert [M.lines for M in sets] == [tuple(range(7))]
    assert extend_to_maximal(fano.space, star(fano.space, 0)).lines == tuple(range(7))
    st = star(ag23.space, 4)
    assert len(st) == 4
    assert set(extend_to_maximal(ag23.space, st).lines) == st


def test_near_pencil_is_one_maximal_set():
    s = generate_near_pencil(5).space
    assert [M.kind for M in maximal_related_sets(s)] == ["coplanar"]
