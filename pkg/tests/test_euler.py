"""Rooting enumeration, arborescence/Bareiss, and BEST-formula tests."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertrace import (
    Budget,
    DirectedMultigraph,
    EmptyGraph,
    LimitExceeded,
    NotEulerian,
    RootCountMatrix,
    ValidationError,
    VertexOutOfRange,
    arborescence_count,
    build_digraph,
    contribution,
    enumerate_rootings,
    euler_circuits_best,
    euler_circuits_exhaustive,
    hyperpath,
    hyperstar,
    new_hypergraph,
    query,
    tuple_multiplicity,
)
from hypertrace.euler import _bareiss_determinant

TRIANGLE = new_hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)])


def cycle_digraph(k: int) -> DirectedMultigraph:
    return DirectedMultigraph(
        vertices=tuple(range(k)), arcs={(i, (i + 1) % k): 1 for i in range(k)}
    )


class TestRootCountMatrix:
    def test_valid_matrix_accepted(self):
        mat = RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1, 1),))
        assert mat.k_vector == (3,)
        assert mat.total == 3
        assert mat.root_counts == {0: 1, 1: 1, 2: 1}
        assert mat.support == (0,)

    def test_row_shape_checked(self):
        with pytest.raises(ValidationError):
            RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1),))
        with pytest.raises(ValidationError):
            RootCountMatrix(host=hyperpath(3, 1), counts=())

    def test_negative_counts_rejected(self):
        with pytest.raises(ValidationError):
            RootCountMatrix(host=hyperpath(3, 1), counts=((2, 2, -1),))

    def test_empty_selection_rejected(self):
        with pytest.raises(NotEulerian):
            RootCountMatrix(host=hyperpath(3, 1), counts=((0, 0, 0),))

    def test_unbalanced_rooting_rejected(self):
        # all three instances rooted at one vertex starves the others
        with pytest.raises(NotEulerian):
            RootCountMatrix(host=hyperpath(3, 1), counts=((3, 0, 0),))

    def test_disconnected_support_rejected(self):
        h = new_hypergraph(3, 7, [(0, 1, 2), (2, 3, 4), (4, 5, 6)])
        with pytest.raises(NotEulerian):
            RootCountMatrix(host=h, counts=((1, 1, 1), (0, 0, 0), (1, 1, 1)))


class TestEnumeration:
    def test_single_edge_orders(self):
        h = hyperpath(3, 1)
        assert [m.counts for m in enumerate_rootings(h, 3)] == [((1, 1, 1),)]
        assert [m.counts for m in enumerate_rootings(h, 6)] == [((2, 2, 2),)]
        for d in (1, 2, 4, 5):
            assert list(enumerate_rootings(h, d)) == []

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValidationError):
            list(enumerate_rootings(hyperpath(3, 1), 0))

    def test_two_edge_path_order_six(self):
        mats = {m.counts for m in enumerate_rootings(hyperpath(3, 2), 6)}
        assert mats == {
            ((2, 2, 2), (0, 0, 0)),
            ((1, 1, 1), (1, 1, 1)),
            ((0, 0, 0), (2, 2, 2)),
        }

    def test_every_enumerated_rooting_is_balanced_and_connected(self):
        # the matrix validator re-runs both checks on construction, so a
        # clean pass over the enumeration is itself the assertion
        for d in (2, 4, 6):
            for mat in enumerate_rootings(TRIANGLE, d):
                assert mat.total == d
                g = build_digraph(mat)
                assert g.is_balanced() and g.is_weakly_connected()

    def test_triangle_rooting_census(self):
        # d=2: one edge doubly selected, rooted once at each endpoint
        assert len(list(enumerate_rootings(TRIANGLE, 2))) == 3
        # d=3: the two orientations of the full triangle
        assert len(list(enumerate_rootings(TRIANGLE, 3))) == 2

    def test_forbidden_vertex_drops_incident_edges(self):
        h = hyperpath(3, 2)
        mats = list(enumerate_rootings(h, 3, query(forbidden=[4])))
        assert [m.k_vector for m in mats] == [(3, 0)]
        assert list(enumerate_rootings(h, 3, query(forbidden=[2]))) == []

    def test_required_vertex_filters(self):
        h = hyperpath(3, 2)
        mats = list(enumerate_rootings(h, 3, query(required=[3])))
        assert [m.k_vector for m in mats] == [(0, 3)]

    def test_pinned_vertex_filters(self):
        # triangle host at d=4: six rootings total, exactly two of which
        # root vertex 0 once (host edge order (0,1), (0,2), (1,2))
        assert len(list(enumerate_rootings(TRIANGLE, 4))) == 6
        mats = list(enumerate_rootings(TRIANGLE, 4, query(pinned=(0, 1))))
        assert {m.counts for m in mats} == {
            ((1, 1), (0, 0), (1, 1)),
            ((0, 0), (1, 1), (1, 1)),
        }
        # on a path host the cut-vertex count is forced, so pinning the
        # forced value keeps every rooting
        h = hyperpath(3, 2)
        assert len(list(enumerate_rootings(h, 6, query(pinned=(2, 2))))) == 3

    def test_query_vertex_range_checked(self):
        with pytest.raises(VertexOutOfRange):
            list(enumerate_rootings(hyperpath(3, 1), 3, query(required=[9])))

    @settings(max_examples=30, deadline=None)
    @given(d=st.integers(min_value=1, max_value=6), data=st.data())
    def test_queries_select_exactly_the_matching_rootings(self, d, data):
        h = data.draw(st.sampled_from([hyperpath(3, 2), TRIANGLE, hyperstar(3, 2)]))
        q = data.draw(
            st.sampled_from(
                [
                    query(required=[0]),
                    query(forbidden=[0]),
                    query(pinned=(1, 1)),
                    query(required=[1], forbidden=[0]),
                ]
            )
        )
        unfiltered = {m.counts for m in enumerate_rootings(h, d)}
        filtered = {m.counts for m in enumerate_rootings(h, d, q)}
        expected = {
            m.counts for m in enumerate_rootings(h, d) if q.matches(m.root_counts)
        }
        assert filtered == expected
        assert filtered <= unfiltered


class TestArborescences:
    def test_directed_cycle_has_one_arborescence_per_root(self):
        g = cycle_digraph(4)
        for root in g.vertices:
            assert arborescence_count(g, root) == 1

    def test_complete_bidirected_counts(self):
        # tau(t * K<->m) = t^(m-1) * m^(m-2), from the matrix-tree minor
        for m, t in [(3, 1), (3, 2), (4, 1), (2, 3)]:
            vertices = tuple(range(m))
            arcs = {
                (u, w): t for u in vertices for w in vertices if u != w
            }
            g = DirectedMultigraph(vertices=vertices, arcs=arcs)
            assert arborescence_count(g, 0) == t ** (m - 1) * m ** (m - 2)

    def test_root_independence_on_eulerian_digraphs(self):
        for d in (4, 6):
            for mat in enumerate_rootings(TRIANGLE, d):
                g = build_digraph(mat)
                counts = {arborescence_count(g, v) for v in g.vertices}
                assert len(counts) == 1

    def test_self_loops_do_not_change_the_count(self):
        g = cycle_digraph(3)
        loops = dict(g.arcs)
        loops[(1, 1)] = 5
        g_loops = DirectedMultigraph(vertices=g.vertices, arcs=loops)
        assert arborescence_count(g_loops, 0) == arborescence_count(g, 0)

    def test_unreachable_root_gives_zero(self):
        g = DirectedMultigraph(vertices=(0, 1, 2), arcs={(0, 1): 1, (1, 0): 1})
        assert arborescence_count(g, 2) == 0

    def test_argument_validation(self):
        g = cycle_digraph(3)
        with pytest.raises(VertexOutOfRange):
            arborescence_count(g, 7)
        with pytest.raises(EmptyGraph):
            arborescence_count(DirectedMultigraph(vertices=(), arcs={}), 0)

    def test_single_vertex(self):
        g = DirectedMultigraph(vertices=(0,), arcs={})
        assert arborescence_count(g, 0) == 1


class TestBareiss:
    def test_known_determinants(self):
        assert _bareiss_determinant([]) == 1
        assert _bareiss_determinant([[7]]) == 7
        assert _bareiss_determinant([[1, 2], [3, 4]]) == -2
        assert _bareiss_determinant([[0, 1], [1, 0]]) == -1
        assert _bareiss_determinant([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
        assert _bareiss_determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        )
    )
    def test_matches_cofactor_expansion_3x3(self, rows):
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        expected = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        assert _bareiss_determinant([list(r) for r in rows]) == expected


class TestEulerCounts:
    def test_single_edge_census(self):
        g = build_digraph(RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1, 1),)))
        rep = euler_circuits_best(g)
        assert rep.arborescences == 3
        assert rep.circuits == 3
        assert rep.tours == 18

    def test_doubled_edge_census(self):
        g = build_digraph(RootCountMatrix(host=hyperpath(3, 1), counts=((2, 2, 2),)))
        rep = euler_circuits_best(g)
        assert rep.arborescences == 12
        assert rep.circuits == 2592
        assert rep.tours == 2592 * 12

    def test_directed_cycle_has_one_circuit(self):
        g = cycle_digraph(5)
        rep = euler_circuits_best(g)
        assert rep.circuits == 1
        assert rep.tours == 5
        assert euler_circuits_exhaustive(g) == 1

    def test_best_rejects_non_eulerian_digraphs(self):
        with pytest.raises(NotEulerian):
            euler_circuits_best(
                DirectedMultigraph(vertices=(0, 1), arcs={(0, 1): 1})
            )
        with pytest.raises(NotEulerian):
            euler_circuits_best(
                DirectedMultigraph(
                    vertices=(0, 1, 2, 3),
                    arcs={(0, 1): 1, (1, 0): 1, (2, 3): 1, (3, 2): 1},
                )
            )
        with pytest.raises(NotEulerian):
            euler_circuits_best(DirectedMultigraph(vertices=(0,), arcs={}))

    def test_exhaustive_arc_budget(self):
        g = build_digraph(RootCountMatrix(host=hyperpath(3, 1), counts=((3, 3, 3),)))
        with pytest.raises(LimitExceeded):
            euler_circuits_exhaustive(g, Budget(arc_limit=8))

    def test_best_matches_exhaustive_over_enumerations(self):
        hosts = [hyperpath(3, 1), hyperpath(3, 2), TRIANGLE, hyperstar(3, 2)]
        checked = 0
        for h in hosts:
            for d in range(1, 7):
                for mat in enumerate_rootings(h, d):
                    g = build_digraph(mat)
                    if g.arc_count > 16:
                        continue
                    assert euler_circuits_best(g).circuits == euler_circuits_exhaustive(g)
                    checked += 1
        assert checked >= 10


class TestContributions:
    def test_tuple_multiplicity_values(self):
        single = RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1, 1),))
        assert tuple_multiplicity(single) == 1
        double = RootCountMatrix(host=hyperpath(3, 1), counts=((2, 2, 2),))
        assert tuple_multiplicity(double) == 1
        mixed = RootCountMatrix(host=hyperpath(3, 2), counts=((1, 1, 1), (1, 1, 1)))
        # the cut vertex holds one root from each edge: 2!/(1!1!) = 2
        assert tuple_multiplicity(mixed) == 2

    def test_single_edge_contribution_in_ambient_five(self):
        mat = RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1, 1),))
        assert contribution(mat, 5) == Fraction(36)
        assert contribution(mat, 3) == Fraction(9)

    def test_mixed_rooting_contribution(self):
        mat = RootCountMatrix(host=hyperpath(3, 2), counts=((1, 1, 1), (1, 1, 1)))
        assert contribution(mat, 5) == Fraction(54)

    def test_ambient_must_cover_host(self):
        mat = RootCountMatrix(host=hyperpath(3, 1), counts=((1, 1, 1),))
        with pytest.raises(ValidationError):
            contribution(mat, 2)

    def test_contribution_factors_out_degrees(self):
        # denominator is the product of digraph out-degrees; sanity-check
        # against the explicit digraph for one mixed rooting
        mat = RootCountMatrix(host=hyperpath(3, 2), counts=((1, 1, 1), (1, 1, 1)))
        g = build_digraph(mat)
        denom = math.prod(g.out_degrees[v] for v in g.vertices)
        tau = arborescence_count(g, g.vertices[0])
        expected = (
            Fraction(tuple_multiplicity(mat) * mat.total * 2**5 * tau, denom)
        )
        assert contribution(mat, 5) == expected
