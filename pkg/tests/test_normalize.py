import pytest

from goeritz import parse_pd
from goeritz.correspondence import NotNormalError, build_diagram, medial
from goeritz.generate import random_diagram
from goeritz.matrices import adjusted_goeritz_matrix, bijection_equal
from goeritz.normalize import (MoveTrace, check_strongly_normal, crossing_pairs, normalize,
                               omega2_cancel, omega4_unwind, omega5_consolidate, reduce_beta,
                               shaded_bigons, unshaded_boundaries_connected)
from goeritz.planegraph import PlaneGraph
from goeritz.tait import betas

from conftest import TREFOIL, rng_for


def from_graph(vertices, edges, rotation):
    m = medial(PlaneGraph.make(vertices, edges, rotation))
    return m.diagram, m.shading


def same_adj(a, b):
    return bijection_equal(adjusted_goeritz_matrix(*a), adjusted_goeritz_matrix(*b))[0]


# two parallel edges of opposite sign: a +/- clasp
CLASP = (["1", "2"], [(0, "1", "2", 1), (1, "1", "2", -1)],
         {"1": [(0, 0), (1, 0)], "2": [(1, 1), (0, 1)]})
KINK = (["1"], [(0, "1", "1", 1)], {"1": [(0, 0), (0, 1)]})
# a loop with a triangle hanging inside it
KINKED_TREFOIL = (["1", "2", "3"],
                  [(0, "1", "1", 1), (1, "1", "2", 1), (2, "2", "3", 1), (3, "3", "1", 1)],
                  {"1": [(0, 0), (1, 0), (3, 1), (0, 1)], "2": [(2, 0), (1, 1)],
                   "3": [(3, 0), (2, 1)]})
# parallel edges 0 and 1 separated on both sides by paths through 3 and 4
SEPARATED = (["1", "2", "3", "4"],
             [(0, "1", "2", 1), (1, "1", "2", 1), (2, "1", "3", 1), (3, "3", "2", 1),
              (4, "1", "4", 1), (5, "4", "2", 1)],
             {"1": [(0, 0), (2, 0), (1, 0), (4, 0)], "2": [(0, 1), (5, 1), (1, 1), (3, 1)],
              "3": [(3, 0), (2, 1)], "4": [(5, 0), (4, 1)]})
# three parallel edges, each pair separated by a path
SCATTERED = (["1", "2", "3", "4", "5"],
             [(0, "1", "2", 1), (1, "1", "2", 1), (2, "1", "2", 1), (3, "1", "3", 1),
              (4, "3", "2", 1), (5, "1", "4", 1), (6, "4", "2", 1), (7, "1", "5", 1),
              (8, "5", "2", 1)],
             {"1": [(0, 0), (3, 0), (1, 0), (5, 0), (2, 0), (7, 0)],
              "2": [(0, 1), (8, 1), (2, 1), (6, 1), (1, 1), (4, 1)],
              "3": [(4, 0), (3, 1)], "4": [(6, 0), (5, 1)], "5": [(8, 0), (7, 1)]})


def test_built_diagrams_are_strongly_normal():
    rng = rng_for("normal-built")
    from goeritz.generate import random_weighted_graph
    for _ in range(20):
        b = build_diagram(random_weighted_graph(rng))
        assert check_strongly_normal(b.diagram, b.shading).ok


def test_kink_fails_condition_three():
    d, s = from_graph(*KINK)
    r = check_strongly_normal(d, s)
    assert r.flags() == (True, True, False, True, True)
    assert not r.ok and "C_ii" in r.summary()


def test_trefoil_unshaded_outer_fails_condition_one(trefoil):
    r = check_strongly_normal(trefoil, trefoil.shading("u"))
    assert not r.flags()[0]
    assert check_strongly_normal(trefoil, trefoil.shading("s")).ok


def test_clasp_cancels():
    d, s = from_graph(*CLASP)
    assert not check_strongly_normal(d, s).no_mixed_signs
    d2, s2 = omega2_cancel(d, s, (0, 1))
    assert d2.n_crossings == 0
    assert same_adj((d, s), (d2, s2))


def test_omega2_rejects_same_sign(trefoil):
    s = trefoil.shading("s")
    for pair in [(0, 1), (1, 2), (0, 2)]:
        with pytest.raises(NotNormalError):
            omega2_cancel(trefoil, s, pair)


def test_two_clasps_cancel_in_either_order():
    verts = ["1", "2", "3"]
    edges = [(0, "1", "2", 1), (1, "1", "2", -1), (2, "2", "3", 1), (3, "2", "3", -1)]
    rot = {"1": [(0, 0), (1, 0)], "2": [(1, 1), (0, 1), (2, 0), (3, 0)], "3": [(3, 1), (2, 1)]}
    d, s = from_graph(verts, edges, rot)
    a = omega2_cancel(*omega2_cancel(d, s, (0, 1)), (0, 1))
    b = omega2_cancel(*omega2_cancel(d, s, (2, 3)), (0, 1))
    assert a[0].n_crossings == b[0].n_crossings == 0
    assert same_adj(a, b) and same_adj(a, (d, s))


def test_kink_unwinds_to_circle():
    d, s = from_graph(*KINK)
    d2, s2 = omega4_unwind(d, s, 0)
    assert d2.n_crossings == 0 and len(d2.circles) == 1
    assert same_adj((d, s), (d2, s2))


def test_kink_with_hanging_trefoil():
    d, s = from_graph(*KINKED_TREFOIL)
    d2, s2 = omega4_unwind(d, s, 0)
    assert d2.n_crossings == 3
    assert d2.isomorphic(parse_pd(TREFOIL))
    assert d2.component_trace() == d.component_trace() == 1
    assert same_adj((d, s), (d2, s2))


def test_omega4_needs_a_loop(trefoil):
    with pytest.raises(NotNormalError):
        omega4_unwind(trefoil, trefoil.shading("s"), 0)


def test_omega5_joins_separated_pair():
    d, s = from_graph(*SEPARATED)
    assert not check_strongly_normal(d, s).twist_regions
    d2, s2 = omega5_consolidate(d, s, 0, 1)
    assert (0, 1) in shaded_bigons(d2, s2) or (1, 0) in shaded_bigons(d2, s2)
    assert check_strongly_normal(d2, s2).ok
    assert same_adj((d, s), (d2, s2))
    with pytest.raises(NotNormalError):
        omega5_consolidate(d2, s2, 0, 1)


def test_omega5_repeated_until_one_twist_region():
    d, s = from_graph(*SCATTERED)
    start = (d, s)
    for _ in range(4):
        if check_strongly_normal(d, s).twist_regions:
            break
        adjacent = {frozenset(p) for p in shaded_bigons(d, s)}
        pair = next((a, b) for a, b in [(0, 1), (1, 2), (0, 2)]
                    if frozenset((a, b)) not in adjacent)
        d, s = omega5_consolidate(d, s, *pair)
        assert same_adj(start, (d, s))
    assert check_strongly_normal(d, s).ok
    group = next(v for v in crossing_pairs(d, s).values() if len(v) == 3)
    assert sorted(group) == [0, 1, 2]


def test_reduce_beta_relocates_circle():
    d = parse_pd(TREFOIL + " O\nnest 7 in 1:2.5")
    s = d.shading("s")
    assert betas(d, s)[0] == 2
    d2, s2, tag = reduce_beta(d, s)
    assert tag == "circle-relocation" and betas(d2, s2)[0] == 1
    assert same_adj((d, s), (d2, s2))


def test_reduce_beta_connected_sum():
    d = parse_pd(TREFOIL + " X(11,14,12,15) X(13,16,14,11) X(15,12,16,13)\n"
                 "nest 11:11.13.15 in 1:2.5")
    s = d.shading("s")
    assert betas(d, s)[0] == 2
    d2, s2, tag = reduce_beta(d, s)
    assert tag == "beta-reduction" and betas(d2, s2)[0] == 1
    assert len(d2.circles) == 1
    assert same_adj((d, s), (d2, s2))


def test_reduce_beta_needs_split(trefoil):
    with pytest.raises(NotNormalError):
        reduce_beta(trefoil, trefoil.shading("s"))


def test_normalize_identity_on_normal_input(trefoil):
    d, s, trace = normalize(trefoil, trefoil.shading("s"))
    assert d == trefoil and trace.kinds() == ["input"]


def test_normalize_trefoil_unshaded_outer(trefoil):
    d, s, trace = normalize(trefoil, trefoil.shading("u"))
    assert trace.kinds() == ["input", "set_outer_face"]
    assert check_strongly_normal(d, s).ok


def test_normalize_fixtures():
    for fx in (CLASP, KINK, KINKED_TREFOIL, SEPARATED, SCATTERED):
        d, s = from_graph(*fx)
        d2, s2, trace = normalize(d, s)
        assert isinstance(trace, MoveTrace) and trace.steps[0].kind == "input"
        assert check_strongly_normal(d2, s2).ok
        assert same_adj((d, s), (d2, s2))
        assert len(trace.to_text().splitlines()) == len(trace.steps)


def test_normalize_random():
    rng = rng_for("normalize")
    for _ in range(40):
        d = random_diagram(rng)
        for s in d.shadings():
            d2, s2, trace = normalize(d, s)
            assert check_strongly_normal(d2, s2).ok
            assert unshaded_boundaries_connected(d2, s2)
            m0 = trace.steps[0].matrix
            assert all(bijection_equal(m0, st.matrix)[0] for st in trace.steps)
            assert all(st.diagram.component_trace() == d.component_trace() for st in trace.steps)
