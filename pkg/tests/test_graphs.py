import math

import pytest

from gpcops import (
    GpParams,
    Graph,
    IGraphParams,
    ParameterError,
    ParseError,
    PreconditionError,
    Subgraph,
    build_gp,
    build_igraph,
    distances,
    girth,
    induced_subgraph,
    is_connected,
    is_connected_igraph,
    is_isometric_subgraph,
    is_tree,
    lower_bounds,
)
from gpcops.graphs import (
    INFINITY,
    aigner_fromme_bound,
    format_edge_list,
    frankl_bound,
    min_degree,
    parse_edge_list,
)

from oracles import nx_distances, nx_girth


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


# -- constructors --------------------------------------------------------------

def test_gp_5_2_shape(petersen):
    assert petersen.n_vertices == 10
    assert petersen.n_edges == 15
    assert all(petersen.degree(v) == 3 for v in range(10))


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (9, 3), (12, 4), (11, 1)])
def test_gp_is_cubic_with_2n_vertices_3n_edges(n, k):
    g = build_gp(GpParams(n, k))
    assert g.n_vertices == 2 * n
    assert g.n_edges == 3 * n
    assert all(g.degree(v) == 3 for v in range(g.n_vertices))


def test_gp_6_2_antipodal_outer_vertices():
    g = build_gp(GpParams(6, 2))
    a0, a3 = g.vertex_id("A", 0), g.vertex_id("A", 3)
    assert distances(g, a0)[a3] == 3  # opposite on the 6-cycle outer rim


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 0), (8, 4)])
def test_gp_bad_params_rejected(n, k):
    with pytest.raises(ParameterError):
        GpParams(n, k)


def test_igraph_7_3_2_built_connected():
    g = build_igraph(IGraphParams(7, 3, 2))
    assert g.n_vertices == 14 and g.n_edges == 21
    assert is_connected(g)


@pytest.mark.parametrize("n,k", [(5, 2), (8, 3), (11, 4)])
def test_igraph_j1_equals_gp_edge_sets(n, k):
    assert build_igraph(IGraphParams(n, 1, k)).edge_set() == \
        build_gp(GpParams(n, k)).edge_set()


def test_igraph_6_2_2_two_components():
    g = build_igraph(IGraphParams(6, 2, 2))
    comp = distances(g, 0)
    assert sum(1 for d in comp if d < INFINITY) == g.n_vertices // 2


def test_igraph_bad_params_rejected():
    with pytest.raises(ParameterError):
        IGraphParams(6, 3, 2)
    with pytest.raises(ParameterError):
        IGraphParams(4, 1, 1)


def test_adjacency_is_symmetric_and_simple():
    for g in (build_gp(GpParams(7, 2)), build_igraph(IGraphParams(9, 2, 4))):
        for u in range(g.n_vertices):
            nbrs = g.neighbors(u)
            assert len(set(nbrs)) == len(nbrs)
            assert u not in nbrs
            for v in nbrs:
                assert u in g.neighbors(v)


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 5)])


# -- connectivity criterion ------------------------------------------------------

@pytest.mark.parametrize("params,expected", [
    (IGraphParams(7, 3, 2), True),
    (IGraphParams(6, 2, 2), False),
    (IGraphParams(9, 1, 4), True),
    (IGraphParams(12, 2, 4), False),
])
def test_igraph_connectivity_criterion(params, expected):
    assert is_connected_igraph(params) is expected
    assert is_connected(build_igraph(params)) is expected


# -- distances and girth -----------------------------------------------------------

def test_distances_examples(petersen):
    d = distances(petersen, petersen.vertex_id("A", 0))
    assert d[petersen.vertex_id("A", 0)] == 0
    assert d[petersen.vertex_id("B", 0)] == 1
    assert max(d) == 2  # the Petersen graph has diameter 2


def test_distances_match_networkx(petersen):
    for g in (petersen, build_gp(GpParams(9, 3)), build_igraph(IGraphParams(8, 2, 3))):
        want = nx_distances(g, 0)
        got = distances(g, 0)
        assert all(got[v] == want[v] for v in want)


def test_distances_bad_source(petersen):
    with pytest.raises(PreconditionError):
        distances(petersen, 99)


def test_girth_examples(petersen):
    assert girth(petersen) == 5
    for k in (2, 3, 4):
        assert girth(build_gp(GpParams(3 * k, k))) == 3
    for n in (5, 7, 10):
        assert girth(build_gp(GpParams(n, 1))) == 4
    assert girth(path(6)) == INFINITY


@pytest.mark.parametrize("n", range(5, 25))
def test_girth_matches_networkx(n):
    for k in range(1, (n - 1) // 2 + 1):
        g = build_gp(GpParams(n, k))
        assert girth(g) == nx_girth(g)


def test_girth_criterion_small():
    # girth >= 5 iff k != 1 and n not in {3k, 4k}; the exhaustive sweep to
    # n = 60 lives in the acceptance suite
    for n in range(5, 31):
        for k in range(1, (n - 1) // 2 + 1):
            expected = k != 1 and n not in (3 * k, 4 * k)
            assert (girth(build_gp(GpParams(n, k))) >= 5) is expected, (n, k)


# -- bounds ----------------------------------------------------------------------

def test_lower_bounds_petersen(petersen):
    rep = lower_bounds(petersen)
    assert rep.min_degree == 3 and rep.girth == 5
    assert rep.aigner_fromme_lb == 3
    assert rep.frankl_lb == 3  # t = 1 gives (3-1)^1 + 1
    assert rep.upper_bound == 4


def test_lower_bounds_gp_n1():
    rep = lower_bounds(build_gp(GpParams(9, 1)))
    assert rep.girth == 4 and rep.aigner_fromme_lb == 1 and rep.frankl_lb == 1


def test_frankl_formula_values():
    assert frankl_bound(3, 13) == 5  # t = 2: (3-1)^2 + 1, strict bound
    assert frankl_bound(3, 12) == 3
    assert frankl_bound(4, 21) == 28  # t = 3: 3^3 + 1
    assert frankl_bound(1, 100) == 1
    assert frankl_bound(3, INFINITY) == 1
    assert aigner_fromme_bound(3, 5) == 3
    assert aigner_fromme_bound(3, 4) == 1


def test_bound_ordering_on_families():
    for n in range(5, 16):
        for k in range(1, (n - 1) // 2 + 1):
            rep = lower_bounds(build_gp(GpParams(n, k)))
            assert 1 <= rep.aigner_fromme_lb <= rep.frankl_lb or \
                rep.frankl_lb == 1 <= rep.aigner_fromme_lb
            assert rep.upper_bound == 4


def test_igraph_upper_bound():
    assert lower_bounds(build_igraph(IGraphParams(7, 3, 2))).upper_bound == 5
    assert lower_bounds(build_igraph(IGraphParams(6, 2, 2))).upper_bound is None
    assert lower_bounds(cycle(8)).upper_bound is None


# -- subgraphs ---------------------------------------------------------------------

def test_single_vertex_is_isometric(petersen):
    sub = Subgraph.make([3], [])
    assert is_isometric_subgraph(petersen, sub)


def test_path_in_cycle_not_isometric():
    g = cycle(8)
    sub = Subgraph.make(range(6), [(i, i + 1) for i in range(5)])
    assert not is_isometric_subgraph(g, sub)  # endpoints: 5 inside vs 3 in g


def test_whole_graph_is_isometric(petersen):
    for g in (petersen, cycle(8), path(5)):
        sub = Subgraph.make(range(g.n_vertices), g.edges())
        assert is_isometric_subgraph(g, sub)


def test_isometric_checks_containment(petersen):
    with pytest.raises(PreconditionError):
        is_isometric_subgraph(petersen, Subgraph.make([0, 99], [(0, 99)]))
    with pytest.raises(PreconditionError):
        is_isometric_subgraph(petersen, Subgraph.make([0, 2], [(0, 2)]))


def test_is_tree():
    g = build_gp(GpParams(9, 3))
    ids = [g.vertex_id(r, i) for i in (1, 2, 3) for r in ("A", "B")]
    sub = induced_subgraph(g, ids)
    assert is_tree(sub)  # 6 vertices, 5 edges, connected
    assert not is_tree(Subgraph.make(range(8), [(i, (i + 1) % 8) for i in range(8)]))
    assert not is_tree(Subgraph.make([0, 1, 2, 3], [(0, 1), (2, 3)]))


# -- edge-list format ------------------------------------------------------------

def test_edge_list_round_trip(petersen):
    text = format_edge_list(petersen)
    g = parse_edge_list(text)
    assert g == petersen


def test_edge_list_ignores_comments():
    g = parse_edge_list("# a triangle\np 3 3\n0 1\n# middle\n1 2\n0 2\n")
    assert g.n_edges == 3


@pytest.mark.parametrize("text,fragment", [
    ("0 1\n", "header"),
    ("p 3\n0 1\n", "header"),
    ("p 3 2\n0 1\n", "2 edges but 1"),
    ("p 3 1\n0 x\n", "line 2"),
    ("p 3 1\n0 0\n", "self-loop"),
])
def test_edge_list_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_edge_list(text)


def test_min_degree():
    assert min_degree(path(4)) == 1
    assert min_degree(cycle(5)) == 2
