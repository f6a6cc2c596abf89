import pytest

from goeritz import parse_pd
from goeritz.generate import random_diagram, random_plane_graph
from goeritz.tait import (Multigraph, WhitneyTwistSpec, betas, random_twist_spec, tait_graph,
                          whitney_twist)

from conftest import rng_for


def test_trefoil_shaded_graph(trefoil):
    s = next(x for x in trefoil.shadings() if len(x.shaded) == 3)
    g = tait_graph(trefoil, s, "s")
    assert len(g.vertices) == 3 and len(g.edges) == 3 and g.beta == 1


def test_two_circles():
    d = parse_pd("O O")
    g = tait_graph(d, d.shading("u"), "s")
    assert len(g.vertices) == 2 and not g.edges and g.beta == 2


def test_one_circle_unshaded():
    d = parse_pd("O")
    g = tait_graph(d, d.shading("s"), "u")
    assert len(g.vertices) == 1 and g.beta == 1


def test_bad_color(trefoil):
    with pytest.raises(ValueError):
        tait_graph(trefoil, trefoil.shading("s"), "x")


def test_kink_gives_loop():
    d = parse_pd("X(1,1,2,2)")
    loops = [g for s in d.shadings() for g in [tait_graph(d, s, "s")]
             if any(u == v for _, u, v in g.edges)]
    assert loops


def test_complementary_shadings():
    rng = rng_for("tait-complement")
    for _ in range(30):
        d = random_diagram(rng)
        s, u = d.shadings()
        assert tait_graph(d, s, "u") == tait_graph(d, u, "s")
        assert betas(d, s) == betas(d, u)[::-1]


def test_single_edge_twist():
    g = Multigraph(("u", "v", "w"), ((0, "u", "v"), (1, "v", "w")))
    t = whitney_twist(g, WhitneyTwistSpec(frozenset({0}), "v", "w"))
    assert (0, "u", "w") in t.edges
    assert t.beta == g.beta


def test_twist_with_equal_cut_vertices():
    g = Multigraph((1, 2, 3, 4), ((0, 1, 2), (1, 2, 3), (2, 3, 1), (3, 1, 4)))
    assert whitney_twist(g, WhitneyTwistSpec(frozenset({3}), 1, 1)) == g


def test_twist_creates_degree_four_vertex():
    # each side meets a once and b twice, or the reverse
    g = Multigraph(("a", "b", "x", "y", "z", "w"),
                   ((0, "a", "x"), (1, "x", "b"), (2, "b", "y"), (3, "y", "x"),
                    (4, "a", "z"), (5, "a", "w"), (6, "z", "w"), (7, "z", "b")))
    t = whitney_twist(g, WhitneyTwistSpec(frozenset({4, 5, 6, 7}), "a", "b"))
    assert max(g.degree(v) for v in g.vertices) == 3
    assert max(t.degree(v) for v in t.vertices) == 4
    assert t.beta == g.beta


def test_invalid_spec():
    g = Multigraph((1, 2, 3), ((0, 1, 2), (1, 2, 3)))
    with pytest.raises(ValueError):
        whitney_twist(g, WhitneyTwistSpec(frozenset({0}), 1, 3))   # 2 shared besides the cut
    with pytest.raises(ValueError):
        whitney_twist(g, WhitneyTwistSpec(frozenset({9}), 1, 2))


def test_twists_preserve_components():
    rng = rng_for("whitney")
    for _ in range(200):
        pg = random_plane_graph(rng, rng.randint(1, 8))
        g = Multigraph(tuple(pg.vertices), tuple((e, u, v) for e, u, v, _ in pg.edges))
        spec = random_twist_spec(g, rng)
        assert whitney_twist(g, spec).beta == g.beta
