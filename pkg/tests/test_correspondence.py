import pytest

from goeritz import GaussianInt, parse_pd
from goeritz.catalog import TREFOIL_MATRIX
from goeritz.correspondence import (EmbeddingMove, NotNormalError, build_diagram, embedding_move,
                                    extract_graph, random_embedding_move, realizable,
                                    realizable_bruteforce, relabel_vertices)
from goeritz.generate import random_weighted_graph
from goeritz.matrices import (LabeledSymMatrix, adjusted_goeritz_matrix, bijection_equal,
                              goeritz_matrix)
from goeritz.normalize import check_strongly_normal
from goeritz.planegraph import GraphError, graph_from_json

from conftest import rng_for


def simple(vertices, edges, rotation, **kw):
    obj = {"vertices": vertices, "edges": edges, "rotation": rotation}
    obj.update(kw)
    return graph_from_json(obj)


TRIANGLE = dict(vertices=[1, 2, 3], edges=[[1, 2, 1], [2, 3, 1], [3, 1, 1]],
                rotation={"1": [2, 3], "2": [3, 1], "3": [1, 2]})


def laplacian_ok(g, b):
    m = goeritz_matrix(b.diagram, b.shading)
    for e, u, v, w in g.edges:
        ru, rv = b.vertex_region[u], b.vertex_region[v]
        if m.entry(ru, rv) != -w:
            return False
    return m.row_sums_zero()


def round_trips(g):
    b = build_diagram(g)
    g2 = extract_graph(b.diagram, b.shading)
    back = {r: v for v, r in b.vertex_region.items()}
    return relabel_vertices(g2, back).same_as(g)


def test_single_vertex():
    g = simple([1], [], {})
    b = build_diagram(g)
    assert b.diagram.n_crossings == 0 and len(b.diagram.circles) == 1
    assert goeritz_matrix(b.diagram, b.shading).rows == ((0,),)
    assert round_trips(g)


@pytest.mark.parametrize("n", [1, 2, 3, -4])
def test_one_edge_twist(n):
    g = simple([1, 2], [[1, 2, n]], {"1": [2], "2": [1]})
    b = build_diagram(g)
    assert b.diagram.n_crossings == abs(n)
    assert laplacian_ok(g, b)
    assert round_trips(g)


def test_triangle_is_trefoil():
    b = build_diagram(simple(**TRIANGLE))
    assert b.diagram.n_crossings == 3
    m = goeritz_matrix(b.diagram, b.shading)
    assert bijection_equal(m, LabeledSymMatrix.from_rows(TREFOIL_MATRIX))[0]


def test_extract_trefoil(trefoil):
    s = next(x for x in trefoil.shadings() if check_strongly_normal(trefoil, x).ok)
    g = extract_graph(trefoil, s)
    assert len(g.vertices) == 3 and sorted(abs(w) for *_, w in g.edges) == [1, 1, 1]


def test_extract_rejects_non_normal(trefoil):
    bad = next(x for x in trefoil.shadings() if not check_strongly_normal(trefoil, x).ok)
    with pytest.raises(NotNormalError):
        extract_graph(trefoil, bad)


def test_rejects_zero_weight_and_non_simple():
    with pytest.raises(GraphError):
        build_diagram(simple([1, 2], [[1, 2, 0]], {"1": [2], "2": [1]}))
    with pytest.raises(GraphError):
        simple([1, 2], [[1, 2, 1], [1, 2, 1]], {"1": [2, 2], "2": [1, 1]})


def test_random_round_trips():
    rng = rng_for("round-trip")
    for _ in range(40):
        g = random_weighted_graph(rng)
        b = build_diagram(g)
        assert check_strongly_normal(b.diagram, b.shading).ok
        assert laplacian_ok(g, b)
        assert round_trips(g)


def test_embedding_moves_keep_matrix():
    rng = rng_for("embedding")
    moved = 0
    for _ in range(40):
        g = random_weighted_graph(rng, isolated=0.5)
        m = random_embedding_move(g, rng)
        if m is None:
            continue
        g2 = embedding_move(g, m)
        assert sorted((u, v, w) for _, u, v, w in g.edges) == \
            sorted((u, v, w) for _, u, v, w in g2.edges)
        a, b = build_diagram(g), build_diagram(g2)
        assert bijection_equal(adjusted_goeritz_matrix(a.diagram, a.shading),
                               adjusted_goeritz_matrix(b.diagram, b.shading))[0]
        moved += 1
    assert moved > 10


def test_component_move_of_isolated_vertex():
    g = simple([1, 2, 3, 4], **{k: v for k, v in TRIANGLE.items() if k != "vertices"})
    here = g.layout.face_region["v:4"]
    target = next(f for f in g.faces if g.layout.face_region[f] != here)
    g2 = embedding_move(g, EmbeddingMove("component", ("4", target)))
    assert not g2.same_as(g)
    a, b = build_diagram(g), build_diagram(g2)
    assert len(a.diagram.circles) == len(b.diagram.circles) == 1
    assert bijection_equal(adjusted_goeritz_matrix(a.diagram, a.shading),
                           adjusted_goeritz_matrix(b.diagram, b.shading))[0]


def test_triangle_not_realizable():
    g = simple(**TRIANGLE)
    r = realizable(g)
    assert not r.realizable and r.conflict
    assert not realizable_bruteforce(g)


@pytest.mark.parametrize("w", [2, GaussianInt(0, 2)])
def test_hopf_edge_realizable(w):
    g = simple([1, 2], [[1, 2, w]], {"1": [2], "2": [1]})
    r = realizable(g)
    assert r.realizable and realizable_bruteforce(g)
    assert len(r.signs) == 2


def test_realizable_matches_bruteforce():
    rng = rng_for("realizable")
    for _ in range(40):
        g = random_weighted_graph(rng, max_vertices=5, max_weight=2, gaussian=True)
        assert realizable(g).realizable == realizable_bruteforce(g)
