"""Random diagrams and random signed plane graphs for property tests."""

from __future__ import annotations

import os
import random
from typing import Dict, List, Optional

from ._sphere import label_key
from .correspondence import medial
from .diagram import Diagram, assemble
from .gaussian import GaussianInt
from .planegraph import Dart, PlaneGraph

SEED_ENV = "GOERITZ_SEED"


def make_rng(seed: Optional[int] = None) -> random.Random:
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return random.Random(seed)


def random_plane_graph(rng: random.Random, n_edges: int, loops: bool = True,
                       weights=(1, -1)) -> PlaneGraph:
    """Connected plane multigraph grown by pendant edges and face chords."""
    rot: Dict[str, List[Dart]] = {"1": []}
    edges = []
    for e in range(n_edges):
        g = PlaneGraph.make_unglued(list(rot), [(a, u, v, 1) for a, u, v in edges], rot)
        w = rng.choice(weights)
        if rng.random() < 0.4 or not edges:
            v = rng.choice(list(rot))
            new = str(len(rot) + 1)
            ds = rot[v]
            i = rng.randrange(len(ds) + 1)
            ds.insert(i, (e, 0))
            rot[new] = [(e, 1)]
            edges.append((e, v, new))
            continue
        face = rng.choice(sorted(g.faces))
        corners = list(g.faces[face])
        d1, d2 = rng.choice(corners), rng.choice(corners)
        if d1 == d2 and not loops:
            continue
        x1, x2 = g.vertex_of(d1), g.vertex_of(d2)
        if d1 == d2:
            ds = rot[x1]
            i = ds.index(d1) + 1
            ds[i:i] = [(e, 0), (e, 1)] if rng.random() < 0.5 else [(e, 1), (e, 0)]
            edges.append((e, x1, x1))
            continue
        rot[x1].insert(rot[x1].index(d1) + 1, (e, 0))
        rot[x2].insert(rot[x2].index(d2) + 1, (e, 1))
        edges.append((e, x1, x2))
    signs = {a: rng.choice(weights) for a, _, _ in edges}
    return PlaneGraph.make(list(rot), [(a, u, v, signs[a]) for a, u, v in edges], rot)


def random_diagram(rng: random.Random, max_edges: int = 6, max_pieces: int = 3,
                   max_circles: int = 2) -> Diagram:
    """Random split diagram: a few medial pieces and circles nested at random."""
    crossings: List[tuple] = []
    offset = 0
    for _ in range(rng.randint(1, max_pieces)):
        g = random_plane_graph(rng, rng.randint(1, max_edges))
        d = medial(g).diagram
        if not d.n_crossings:
            continue
        crossings += [tuple(a + offset for a in x) for x in d.crossings]
        offset += max(d.arcs)
    circles = [offset + 1 + i for i in range(rng.randint(0 if crossings else 1, max_circles))]
    base = assemble(crossings, circles, [], None)
    topo = base._topo
    pieces = sorted(topo.piece_faces, key=label_key)
    rng.shuffle(pieces)
    nests = []
    for i, p in enumerate(pieces[1:], 1):
        parent = pieces[rng.randrange(i)]
        cf = rng.choice(topo.piece_faces[p])
        pf = rng.choice(topo.piece_faces[parent])
        nests.append((int(p), cf, int(parent), pf))
    d = assemble(crossings, circles, nests, None)
    d = d.set_outer_face(rng.choice(sorted(d.regions, key=label_key)))[0]
    order = list(range(d.n_crossings))
    rng.shuffle(order)
    return Diagram.make([d.crossings[i] for i in order], d.circles, d.glue, d.outer)


def random_weighted_graph(rng: random.Random, max_vertices: int = 8, max_weight: int = 4,
                          gaussian: bool = False, isolated: float = 0.2) -> PlaneGraph:
    """Random simple weighted plane graph, sometimes with an isolated vertex."""
    while True:
        g = random_plane_graph(rng, rng.randint(1, 2 * max_vertices), loops=False)
        if len(g.vertices) <= max_vertices:
            break
    keep, seen = [], set()
    for e, u, v, _ in g.edges:
        key = frozenset((u, v))
        if u != v and key not in seen:
            seen.add(key)
            keep.append(e)
    kept = set(keep)

    def weight():
        w = rng.choice([x for x in range(-max_weight, max_weight + 1) if x])
        if gaussian and rng.random() < 0.5:
            return GaussianInt(0, w)
        return GaussianInt(w) if gaussian else w

    edges = [(e, u, v, weight()) for e, u, v, _ in g.edges if e in kept]
    rot = {v: [d for d in ds if d[0] in kept] for v, ds in g.rot.items()}
    verts = list(g.vertices)
    glue = []
    if edges and len(verts) < max_vertices and rng.random() < isolated:
        probe = PlaneGraph.make_unglued(verts, edges, rot)
        x = str(max(int(v) for v in verts) + 1)
        verts.append(x)
        glue.append((f"v:{x}", rng.choice(sorted(probe.faces))))
    return PlaneGraph.make(verts, edges, rot, glue)
