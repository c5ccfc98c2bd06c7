"""Complexes: dual graphs, bipartiteness, colorings, decorations, signs."""

from fractions import Fraction

import pytest

from virodecor import catalog
from virodecor.complexes import (
    SimplicialComplex,
    balanced_coloring,
    coloring_from_json_dict,
    coloring_to_json_dict,
    decoration_from_coloring,
    dual_graph,
    is_bipartite,
    is_positively_decorated,
    is_unimodular,
    normalized_volume,
    simplex_signs,
    total_normalized_volume,
)
from virodecor.families import (
    cyclic_minimal_triangulation,
    cyclic_points,
    snd_subcomplex,
)


O63 = cyclic_minimal_triangulation(6, 3)
O63_FACETS = [(1, 2, 3, 4), (1, 2, 4, 5), (1, 2, 5, 6),
              (2, 3, 4, 5), (2, 3, 5, 6), (3, 4, 5, 6)]


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(1, 3, ((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        SimplicialComplex(1, 2, ((1, 3),))
    with pytest.raises(ValueError):
        SimplicialComplex(1, 3, ((1, 2), (1, 2)))


def test_complex_json_roundtrip():
    K = SimplicialComplex.from_facets(2, 4, [(1, 2, 3), (2, 3, 4)])
    assert SimplicialComplex.from_json(K.to_json()) == K


def test_dual_graph_of_minimal_cyclic_triangulation():
    # facet indices follow the sorted facet list
    assert list(O63.facets) == O63_FACETS
    G = dual_graph(O63)
    a, b, c, d, e, f = range(6)  # 1234, 1245, 1256, 2345, 2356, 3456
    assert G.edges == sorted([
        (a, b), (a, d), (b, c), (b, d), (c, e), (d, e), (d, f), (e, f),
    ])


def test_minimal_cyclic_triangulation_not_bipartite():
    check = is_bipartite(dual_graph(O63))
    assert not check
    cycle = check.odd_cycle
    assert len(cycle) % 2 == 1 and len(cycle) >= 3
    # witness must be a genuine cycle in the dual graph
    G = dual_graph(O63)
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        assert v in G.adjacency[u]


def test_snd_subcomplex_bipartite_but_not_balanced():
    K = snd_subcomplex(6, 3)
    assert set(K.facets) == set(O63_FACETS) - {(2, 3, 4, 5)}
    assert is_bipartite(dual_graph(K))
    assert balanced_coloring(K) is None


def test_balanced_coloring_of_path_complex():
    K = SimplicialComplex.from_facets(1, 4, [(1, 2), (2, 3), (3, 4)])
    coloring = balanced_coloring(K)
    assert coloring is not None
    for a, b in K.facets:
        assert coloring[a] != coloring[b]


def test_balanced_coloring_across_components():
    # two disjoint triangles must still get consistent colors
    K = SimplicialComplex.from_facets(2, 6, [(1, 2, 3), (4, 5, 6)])
    coloring = balanced_coloring(K)
    assert coloring is not None
    for f in K.facets:
        assert len({coloring[v] for v in f}) == 3


def test_decoration_from_coloring_columns():
    C = decoration_from_coloring({1: 0, 2: 1, 3: 2}, 3, 2)
    assert C.column(0) == (1, 0)
    assert C.column(1) == (0, 1)
    assert C.column(2) == (-1, -1)


def test_coloring_decorations_of_reference_fixtures():
    f = catalog.planar_hexagon_fixture()
    C = decoration_from_coloring(f.coloring, 7, 2)
    ok, failing = is_positively_decorated(f.complex, C)
    assert ok and failing == []


def test_exact_decoration_snd63():
    f = catalog.snd63_fixture()
    ok, failing = is_positively_decorated(f.complex, f.coefficients)
    assert ok and failing == []


def test_exact_decoration_snd115():
    f = catalog.snd115_fixture()
    assert len(f.complex.facets) == 38
    ok, failing = is_positively_decorated(f.complex, f.coefficients)
    assert ok and failing == []


def test_decoration_failure_reports_all_facets():
    f = catalog.snd63_fixture()
    # zeroing one column breaks every facet through vertex 3
    rows = f.coefficients.to_lists()
    for r in rows:
        r[2] = Fraction(0)
    from virodecor.exactlinalg import RationalMatrix

    ok, failing = is_positively_decorated(f.complex, RationalMatrix(rows))
    assert not ok
    assert set(failing) == {t for t in f.complex.facets if 3 in t}


def test_simplex_signs_alternate_on_adjacent_facets():
    f = catalog.planar_hexagon_fixture()
    C = decoration_from_coloring(f.coloring, 7, 2)
    signs = simplex_signs(f.complex, f.configuration, C)
    G = dual_graph(f.complex)
    for i, j in G.edges:
        assert signs[f.complex.facets[i]] == -signs[f.complex.facets[j]]


def test_simplex_signs_match_reference_pattern():
    f = catalog.planar_hexagon_fixture()
    C = decoration_from_coloring(f.coloring, 7, 2)
    signs = simplex_signs(f.complex, f.configuration, C)
    flips = {signs[k] * v for k, v in catalog.PLANAR_HEXAGON_SIGNS.items()}
    assert flips in ({1}, {-1})  # equal up to one global flip


def test_normalized_volume_unit_simplex():
    from virodecor.complexes import PointConfiguration

    A = PointConfiguration.from_rows([(0, 0), (1, 0), (0, 1)])
    assert normalized_volume(A, (1, 2, 3)) == 1
    assert is_unimodular(SimplicialComplex.from_facets(2, 3, [(1, 2, 3)]), A)


def test_total_normalized_volume_of_cyclic_triangulation():
    A = cyclic_points(6, 3)
    # a full triangulation's simplices tile the polytope: volumes add up
    total = total_normalized_volume(O63, A)
    assert total == sum(normalized_volume(A, f) for f in O63.facets)
    assert total > 0


def test_coloring_json_roundtrip():
    coloring = {1: 0, 2: 1, 3: 2, 4: 1}
    d = coloring_to_json_dict(coloring, 4)
    assert coloring_from_json_dict(d) == coloring
