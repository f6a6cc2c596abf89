"""Weighted plane graphs <-> diagrams with strongly normal shadings.

The medial construction turns each edge of a signed plane multigraph into a
crossing: the edge's endpoints become unshaded regions, its two sides become
shaded regions, and the sign is the crossing's Goeritz index. Integer weights
are first expanded into parallel edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ._sphere import label_key
from .diagram import Diagram, DiagramError, OrientedDiagram, Shading, _Topology
from .gaussian import GaussianInt
from .planegraph import Dart, GraphError, PlaneGraph, isolated_face
from .unionfind import ParityUnionFind


class NotNormalError(ValueError):
    """The diagram/shading pair is outside the domain of the operation."""


@dataclass
class Medial:
    diagram: Diagram
    shading: Shading
    crossing_edge: Dict[int, int]      # crossing index -> edge id
    vertex_region: Dict[str, str]      # graph vertex -> unshaded region


def _sign(w) -> int:
    if isinstance(w, GaussianInt):
        w = w.re + w.im
    return 1 if w > 0 else -1


def medial(g: PlaneGraph) -> Medial:
    """Diagram of a signed plane multigraph (weights used only for their sign)."""
    arc: Dict[Dart, int] = {}
    for v, ds in g.rotation:
        for d in ds:
            arc[d] = len(arc) + 1
    crossings = []
    crossing_edge = {}
    corner_elem: Dict[Tuple[int, int], Tuple[str, str]] = {}
    for e, u, v, w in g.edges:
        h, h2 = (e, 0), (e, 1)
        nw, sw, se, ne = arc[h], arc[g.prv(h)], arc[h2], arc[g.prv(h2)]
        s = _sign(w)
        c = len(crossings)
        crossings.append((nw, sw, se, ne) if s == 1 else (ne, nw, sw, se))
        crossing_edge[c] = e
        k0 = 0 if s == 1 else 1
        corner_elem[(c, k0)] = ("v", u)
        corner_elem[(c, (k0 + 2) % 4)] = ("v", v)
        corner_elem[(c, (k0 - 1) % 4)] = ("f", g.face_of(h))
        corner_elem[(c, (k0 + 1) % 4)] = ("f", g.face_of(h2))
    next_label = len(arc) + 1
    circles = []
    circle_vertex = {}
    for v in g.vertices:
        if not g.rot[v]:
            circles.append(next_label)
            circle_vertex[next_label] = v
            next_label += 1
    topo = _Topology(tuple(crossings), tuple(circles))
    # diagram face -> graph element
    elem: Dict[str, Tuple[str, str]] = {}
    for f, cs in topo.face_corners.items():
        kinds = {corner_elem[x] for x in cs}
        if len(kinds) != 1:
            raise GraphError("medial faces do not match graph elements")
        elem[f] = kinds.pop()
    for o, v in circle_vertex.items():
        elem[f"{o}i"] = ("v", v)
        elem[f"{o}o"] = ("f", isolated_face(v))
    lay = g.layout
    by_region: Dict[str, List[str]] = {}
    vertex_face: Dict[str, str] = {}
    for f, (kind, x) in elem.items():
        if kind == "v":
            vertex_face[x] = f
        else:
            by_region.setdefault(lay.face_region[x], []).append(f)
    groups = [fs for fs in by_region.values() if len(fs) > 1]
    outer_face = by_region[lay.outer][0]
    d = Diagram.make(crossings, circles, groups, outer_face)
    sigma = d.shading("s")
    vertex_region = {v: d.region_of_face(f) for v, f in vertex_face.items()}
    return Medial(d, sigma, crossing_edge, vertex_region)


def tait_extract(d: Diagram, sigma: Shading) -> Tuple[PlaneGraph, Dict[str, str]]:
    """Signed plane multigraph Gamma_u: vertices are unshaded regions.

    Requires a shaded outer region and unshaded regions that are single faces.
    Returns the graph (edge id = crossing index, weight = Goeritz index) and a
    map from shaded regions to the graph regions they became.
    """
    if d.outer not in sigma.shaded:
        raise NotNormalError("outer region is unshaded")
    topo = d._topo
    lay = d.layout
    rotation: Dict[str, List[Dart]] = {}
    verts = d.unshaded_regions(sigma)
    circle_other: Dict[str, str] = {}
    for r in verts:
        faces = lay.regions[r]
        if len(faces) != 1:
            raise NotNormalError(f"unshaded region {r} has disconnected boundary")
        f = faces[0]
        if f in topo.face_corners:
            ds = []
            for c, k in topo.face_corners[f]:
                k0 = d.unshaded_corner(sigma, c)
                ds.append((c, 0) if k == k0 else (c, 1))
            rotation[r] = ds
        else:
            rotation[r] = []
            o = f[:-1]
            other = f"{o}o" if f.endswith("i") else f"{o}i"
            circle_other[r] = d.region_of_face(other)
    edges = []
    for c in range(d.n_crossings):
        k0 = d.unshaded_corner(sigma, c)
        edges.append((c, d.region_of_corner(c, k0), d.region_of_corner(c, k0 + 2),
                      d.goeritz_index(sigma, c)))
    g0 = PlaneGraph.make_unglued(verts, edges, rotation)
    gface_region: Dict[str, str] = {}
    for f, ds in g0.faces.items():
        c, end = ds[0]
        k0 = d.unshaded_corner(sigma, c)
        gface_region[f] = d.region_of_corner(c, k0 - 1 if end == 0 else k0 + 1)
    for r, other in circle_other.items():
        gface_region[isolated_face(r)] = other
    by_region: Dict[str, List[str]] = {}
    for f, r in gface_region.items():
        by_region.setdefault(r, []).append(f)
    missing = set(sigma.shaded) - set(by_region)
    if missing:
        raise NotNormalError(f"shaded regions without graph faces: {sorted(missing)}")
    groups = [fs for fs in by_region.values() if len(fs) > 1]
    g = PlaneGraph.make(verts, edges, rotation, groups, by_region[d.outer][0])
    region_map = {r: g.layout.face_region[fs[0]] for r, fs in by_region.items()}
    return g, region_map


# -- parallel classes ------------------------------------------------------------------


def parallel_chains(g: PlaneGraph) -> Dict[frozenset, List[List[int]]]:
    """Non-loop parallel classes split into maximal bigon-connected chains."""
    classes: Dict[frozenset, List[int]] = {}
    for e, u, v, _ in g.edges:
        if u != v:
            classes.setdefault(frozenset((u, v)), []).append(e)
    out = {}
    for key, es in classes.items():
        es_set = set(es)
        # bigon between e and f: face of (e, end at u) is exactly {that, (f, end at v)}
        adj: Dict[int, Set[int]] = {e: set() for e in es}
        for f, ds in g.faces.items():
            if len(ds) == 2 and ds[0][0] in es_set and ds[1][0] in es_set and ds[0][0] != ds[1][0]:
                adj[ds[0][0]].add(ds[1][0])
                adj[ds[1][0]].add(ds[0][0])
        seen: Set[int] = set()
        chains = []
        for e in sorted(es):
            if e in seen:
                continue
            comp, stack = [], [e]
            seen.add(e)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            chains.append(sorted(comp))
        out[key] = chains
    return out


def _dart_at(g: PlaneGraph, e: int, vertex: str) -> Dart:
    u, v, _ = g.edge_map[e]
    return (e, 0) if u == vertex else (e, 1)


def _chain_order(g: PlaneGraph, chain: Sequence[int], u: str) -> List[Dart]:
    """Darts of a consecutive chain at u, in counterclockwise order."""
    darts = {_dart_at(g, e, u) for e in chain}
    start = next((d for d in darts if g.prv(d) not in darts), None)
    if start is None:
        start = min(darts)
    out = [start]
    while len(out) < len(darts):
        nx = g.nxt(out[-1])
        if nx not in darts:
            raise NotNormalError("parallel edges are not consecutive")
        out.append(nx)
    return out


def collapse_parallel(g: PlaneGraph) -> PlaneGraph:
    """Merge each parallel class (which must be one chain) into a weighted edge."""
    chains = parallel_chains(g)
    keep_weight: Dict[int, object] = {}
    drop: Set[int] = set()
    dart_src: Dict[Dart, Dart] = {}
    extra: Dict[Dart, List[str]] = {}
    for key, cs in chains.items():
        if len(cs) != 1:
            raise NotNormalError("parallel edges split into several twist regions")
        chain = cs[0]
        if len(chain) == 1:
            continue
        u = min(key, key=label_key)
        order = _chain_order(g, chain, u)
        rep = order[0]
        total = sum((g.weight(d[0]) for d in order), 0)
        if total == 0:
            raise NotNormalError("parallel edges with cancelling weights")
        keep_weight[rep[0]] = total
        drop.update(d[0] for d in order[1:])
        dart_src[rep] = order[-1]
        extra[rep] = [g.region_of_dart(d) for d in order[:-1]]
    edges = [(e, u, v, keep_weight.get(e, w)) for e, u, v, w in g.edges if e not in drop]
    rotation = {v: [d for d in ds if d[0] not in drop] for v, ds in g.rotation}
    return g.rebuild(g.vertices, edges, rotation, lambda d: dart_src.get(d, d), extra=extra)


def expand_parallel(g: PlaneGraph) -> Tuple[PlaneGraph, Dict[int, int]]:
    """Replace an edge of weight w by |w| parallel edges of sign w/|w|."""
    new_edges = []
    copies: Dict[int, List[int]] = {}
    origin: Dict[int, int] = {}
    nid = 0
    for e, u, v, w in g.edges:
        ww = w.re + w.im if isinstance(w, GaussianInt) else w
        n, s = abs(ww), (1 if ww > 0 else -1)
        ids = []
        for _ in range(n):
            new_edges.append((nid, u, v, s))
            ids.append(nid)
            origin[nid] = e
            nid += 1
        copies[e] = ids
    rotation = {}
    for x, ds in g.rotation:
        out = []
        for e, end in ds:
            ids = copies[e] if end == 0 else list(reversed(copies[e]))
            out.extend((i, end) for i in ids)
        rotation[x] = out

    def src(d: Dart) -> Optional[Dart]:
        e = origin[d[0]]
        ids = copies[e]
        if d[1] == 0 and d[0] == ids[-1]:
            return (e, 0)
        if d[1] == 1 and d[0] == ids[0]:
            return (e, 1)
        return None

    return g.rebuild(g.vertices, new_edges, rotation, src), origin


# -- the correspondence -----------------------------------------------------------------


def validate_weighted(g: PlaneGraph):
    if not g.is_simple():
        raise GraphError("weighted plane graphs must be simple")
    for e, u, v, w in g.edges:
        if w == 0:
            raise GraphError(f"edge {e} has zero weight")
        if isinstance(w, GaussianInt) and w.re and w.im:
            raise GraphError(f"edge {e}: oriented weights are n or n*i")


@dataclass
class Built:
    diagram: Diagram
    shading: Shading
    crossing_edge: Dict[int, int]   # crossing -> edge of the weighted graph
    vertex_region: Dict[str, str]


def build_diagram(g: PlaneGraph) -> Built:
    """The diagram of a weighted plane graph, with its strongly normal shading."""
    validate_weighted(g)
    multi, origin = expand_parallel(g)
    m = medial(multi)
    ce = {c: origin[e] for c, e in m.crossing_edge.items()}
    return Built(m.diagram, m.shading, ce, m.vertex_region)


def extract_graph(d: Diagram, sigma: Shading) -> PlaneGraph:
    """Weighted plane graph of a strongly normal diagram (vertices = unshaded regions)."""
    from .normalize import check_strongly_normal

    rep = check_strongly_normal(d, sigma)
    if not rep.ok:
        raise NotNormalError(f"shading is not strongly normal: {rep.summary()}")
    g, _ = tait_extract(d, sigma)
    return collapse_parallel(g)


def relabel_vertices(g: PlaneGraph, mapping: Dict[str, str]) -> PlaneGraph:
    """Rename vertices; face labels are dart based, so glue only changes for isolated vertices."""
    edges = [(e, mapping[u], mapping[v], w) for e, u, v, w in g.edges]
    rotation = {mapping[v]: ds for v, ds in g.rotation}

    def fix(f: str) -> str:
        return isolated_face(mapping[f[2:]]) if f.startswith("v:") else f

    glue = [[fix(f) for f in grp] for grp in g.glue]
    outer = fix(g.layout.regions[g.outer][0])
    return PlaneGraph.make([mapping[v] for v in g.vertices], edges, rotation, glue, outer)


# -- embedding moves ------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingMove:
    kind: str                      # "component", "swing" or "flip"
    params: Tuple = field(default=())


def _side(g: PlaneGraph, starts: Sequence[str], blocked: Set[str]) -> Set[str]:
    seen = set(x for x in starts if x not in blocked)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in blocked and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _contiguous(ds: Sequence[Dart], block: Set[Dart]) -> Optional[List[Dart]]:
    """The block as a ccw run within ds, or None if it is not contiguous."""
    n = len(ds)
    idx = [i for i, d in enumerate(ds) if d in block]
    if not idx:
        return []
    for s in idx:
        run = [ds[(s + j) % n] for j in range(len(idx))]
        if set(run) == block:
            return run
    return None


def component_move(g: PlaneGraph, piece_vertex: str, target_face: str) -> PlaneGraph:
    """Re-place the component of ``piece_vertex`` (and what it encloses) in another face."""
    pid = g.piece_of(piece_vertex)
    lay = g.layout
    attach = None
    for child, cf, parent, pf in lay.nesting():
        if child == pid:
            attach = cf
    if attach is None:
        raise GraphError("cannot move the root component")
    if target_face not in lay.face_region:
        raise GraphError(f"unknown face {target_face!r}")
    groups = [[f for f in fs if f != attach] for fs in lay.regions.values()]
    target = lay.face_region[target_face]
    for grp, (r, fs) in zip(groups, lay.regions.items()):
        if r == target:
            grp.append(attach)
    groups = [grp for grp in groups if grp]
    groups.append([attach])
    # the outer region keeps one of its faces that is not the moved one
    outer_faces = [f for f in lay.regions[lay.outer] if f != attach] or [attach]
    try:
        return PlaneGraph.make(g.vertices, g.edges, g.rot, groups, outer_faces[0])
    except (ValueError, GraphError) as e:
        raise GraphError(f"invalid component move: {e}") from None


def swing(g: PlaneGraph, v: str, block: Sequence[Dart], after: Dart) -> PlaneGraph:
    """Move the subgraph hanging at cut vertex v (darts ``block``) to another corner of v."""
    block_set = set(block)
    ds = list(g.rot[v])
    run = _contiguous(ds, block_set)
    if not run:
        raise GraphError("swing block must be a nonempty contiguous run of darts at v")
    if after in block_set or after not in ds:
        raise GraphError("swing target must be a dart at v outside the block")
    far = [g.vertex_of(g.twin(d)) for d in run]
    side = _side(g, far, {v})
    h_edges = {e for e, a, b, _ in g.edges if a in side or b in side}
    h_edges |= {d[0] for d in run}
    at_v = {d for d in ds if d[0] in h_edges}
    if at_v != block_set or v in side:
        raise GraphError("block does not hang from v alone")
    rest = [d for d in ds if d not in block_set]
    i = rest.index(after)
    new_rot = dict(g.rot)
    new_rot[v] = rest[:i + 1] + run + rest[i + 1:]
    strong = {d for x, dd in g.rotation for d in dd if d[0] not in h_edges}
    return g.rebuild(g.vertices, g.edges, new_rot, lambda d: d, strong=strong)


def flip(g: PlaneGraph, v: str, w: str, side: Set[str]) -> PlaneGraph:
    """Mirror the part ``side`` attached to the rest only at v and w."""
    side = set(side)
    if v in side or w in side or not side:
        raise GraphError("flip side must be nonempty and avoid v, w")
    if _side(g, list(side), {v, w}) != side:
        raise GraphError("flip side is not a union of components of G - {v, w}")
    h_edges = {e for e, a, b, _ in g.edges if a in side or b in side}
    new_rot = dict(g.rot)
    for x in side:
        new_rot[x] = list(reversed(g.rot[x]))
    for x in {v, w}:
        ds = list(g.rot[x])
        block = {d for d in ds if d[0] in h_edges}
        run = _contiguous(ds, block)
        if run is None:
            raise GraphError(f"side darts at {x} are not contiguous")
        if not run:
            continue
        pos = [ds.index(d) for d in run]
        rev = list(reversed(run))
        for p, d in zip(pos, rev):
            ds[p] = d
        new_rot[x] = ds
    strong = {d for x, dd in g.rotation for d in dd if d[0] not in h_edges}
    h_darts = {d for x, dd in g.rotation for d in dd if d[0] in h_edges}

    def src(d: Dart) -> Dart:
        return g.twin(d) if d in h_darts else d

    return g.rebuild(g.vertices, g.edges, new_rot, src, strong=strong)


def embedding_move(g: PlaneGraph, m: EmbeddingMove) -> PlaneGraph:
    if m.kind == "component":
        return component_move(g, *m.params)
    if m.kind == "swing":
        return swing(g, *m.params)
    if m.kind == "flip":
        v, w, side = m.params
        return flip(g, v, w, set(side))
    raise GraphError(f"unknown embedding move {m.kind!r}")


def random_embedding_move(g: PlaneGraph, rng) -> Optional[EmbeddingMove]:
    """Some valid move for g, or None if none was found quickly."""
    kinds = ["swing", "flip", "component"]
    rng.shuffle(kinds)
    verts = list(g.vertices)
    for kind in kinds:
        for _ in range(12):
            if kind == "component":
                nest = g.layout.nesting()
                if not nest:
                    break
                child = rng.choice(nest)[0]
                vert = g.pieces[child][0]
                faces = [f for f in g.layout.face_region
                         if g.layout.face_piece[f] != child]
                m = EmbeddingMove("component", (vert, rng.choice(faces)))
                if _try(g, m):
                    return m
                continue
            v = rng.choice(verts)
            if kind == "swing":
                ds = list(g.rot[v])
                if len(ds) < 2:
                    continue
                others = _side_blocks(g, v)
                if len(others) < 2:
                    continue
                blk = rng.choice(others)
                targets = [d for d in ds if d not in blk]
                m = EmbeddingMove("swing", (v, tuple(blk), rng.choice(targets)))
                if _try(g, m):
                    return m
            else:
                w = rng.choice(verts)
                if w == v:
                    continue
                comps = _components_without(g, {v, w})
                if len(comps) < 2:
                    continue
                side = rng.choice(comps)
                m = EmbeddingMove("flip", (v, w, frozenset(side)))
                if _try(g, m):
                    return m
    return None


def _try(g: PlaneGraph, m: EmbeddingMove) -> bool:
    try:
        embedding_move(g, m)
        return True
    except (GraphError, DiagramError, ValueError):
        return False


def _components_without(g: PlaneGraph, cut: Set[str]) -> List[Set[str]]:
    piece = g.piece_of(next(iter(cut)))
    verts = [x for x in g.pieces[piece] if x not in cut]
    seen: Set[str] = set()
    out = []
    for x in verts:
        if x in seen:
            continue
        s = _side(g, [x], cut)
        seen |= s
        out.append(s)
    return out


def _side_blocks(g: PlaneGraph, v: str) -> List[List[Dart]]:
    """Dart groups at v belonging to different components of G - v."""
    groups: Dict[frozenset, List[Dart]] = {}
    for d in g.rot[v]:
        far = g.vertex_of(g.twin(d))
        key = frozenset(_side(g, [far], {v})) if far != v else frozenset([("loop", d[0])])
        groups.setdefault(key, []).append(d)
    return list(groups.values())


# -- realizability -------------------------------------------------------------------------


@dataclass
class Realizability:
    realizable: bool
    signs: Optional[Tuple[int, ...]]          # per component of the built diagram
    conflict: Optional[List[Tuple[int, int, int]]]
    built: Built


def _targets(g: PlaneGraph, b: Built) -> Dict[int, int]:
    """Crossing -> required writhe."""
    out = {}
    for c, e in b.crossing_edge.items():
        w = g.weight(e)
        w = GaussianInt.coerce(w)
        eta = b.diagram.goeritz_index(b.shading, c)
        out[c] = eta if w.im == 0 else -eta
    return out


def underlying(g: PlaneGraph) -> PlaneGraph:
    """w-bar: n*i becomes n."""
    return g.with_weights({e: (w.re + w.im if isinstance(w, GaussianInt) else w)
                           for e, _, _, w in g.edges})


def realizable(g: PlaneGraph) -> Realizability:
    """Decide whether the built diagram can be oriented to realize g's weights."""
    validate_weighted(g)
    b = build_diagram(underlying(g))
    d = b.diagram
    ref = OrientedDiagram(d)
    sc = d.strand_component
    puf = ParityUnionFind()
    for i in range(d.component_trace()):
        puf.add(i)
    for c, want in _targets(g, b).items():
        parity = 0 if ref.writhe(c) == want else 1
        a, bb = sc[(c, 0)], sc[(c, 1)]
        if a == bb:
            if parity:
                return Realizability(False, None, [(a, a, 1)], b)
            continue
        bad = puf.constrain(a, bb, parity)
        if bad is not None:
            return Realizability(False, None, bad, b)
    signs = tuple(-1 if puf.value(i) else 1 for i in range(d.component_trace()))
    return Realizability(True, signs, None, b)


def realizable_bruteforce(g: PlaneGraph) -> bool:
    b = build_diagram(underlying(g))
    d = b.diagram
    targets = {c: GaussianInt.coerce(g.weight(e)) for c, e in b.crossing_edge.items()}
    for signs in itertools.product((1, -1), repeat=d.component_trace()):
        od = OrientedDiagram(d, signs)
        if all(od.checkerboard_writhe(b.shading, c) == _unit(t) for c, t in targets.items()):
            return True
    return False


def _unit(t: GaussianInt) -> GaussianInt:
    if t.im == 0:
        return GaussianInt(1 if t.re > 0 else -1)
    return GaussianInt(0, 1 if t.im > 0 else -1)
