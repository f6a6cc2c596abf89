"""Strongly normal shadings: the check and the normalization pipeline.

Once the outer region is shaded and beta_s = 1, every unshaded region is a
disk, so the diagram is the medial of its signed graph Gamma_u. The Omega.2,
Omega.4 and Omega.5 rewrites are carried out on that graph and read back
through the medial construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ._sphere import label_key
from .correspondence import (NotNormalError, _chain_order, _dart_at, medial,
                             parallel_chains, tait_extract)
from .diagram import Diagram, Shading
from .matrices import LabeledSymMatrix, adjusted_goeritz_matrix, bijection_equal
from .planegraph import Dart, PlaneGraph
from .tait import tait_graph
from .unionfind import UnionFind


@dataclass
class NormalityReport:
    outer_shaded: bool
    beta_s_one: bool
    no_self_crossings: bool
    no_mixed_signs: bool
    twist_regions: bool
    unshaded_disks: bool
    witnesses: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.outer_shaded and self.beta_s_one and self.no_self_crossings
                and self.no_mixed_signs and self.twist_regions)

    def flags(self) -> Tuple[bool, ...]:
        return (self.outer_shaded, self.beta_s_one, self.no_self_crossings,
                self.no_mixed_signs, self.twist_regions)

    def summary(self) -> str:
        names = ["outer shaded", "beta_s = 1", "no C_ii", "no mixed signs", "twist regions"]
        parts = []
        for i, (n, v) in enumerate(zip(names, self.flags())):
            w = self.witnesses.get(n)
            parts.append(f"{i + 1}. {n}: {'yes' if v else 'no'}" + (f" ({w})" if w and not v else ""))
        return "; ".join(parts)


def crossing_pairs(d: Diagram, sigma: Shading) -> Dict[frozenset, List[int]]:
    """Unordered unshaded-region pair -> crossings between them (C_ij, or C_ii)."""
    out: Dict[frozenset, List[int]] = {}
    for c in range(d.n_crossings):
        k0 = d.unshaded_corner(sigma, c)
        key = frozenset((d.region_of_corner(c, k0), d.region_of_corner(c, k0 + 2)))
        out.setdefault(key, []).append(c)
    return out


def shaded_bigons(d: Diagram, sigma: Shading) -> List[Tuple[int, int]]:
    """Crossing pairs that are the two corners of a shaded bigon face.

    Split pieces nested in the bigon's region do not break the braid.
    """
    topo = d._topo
    out = []
    for r in d.shaded_regions(sigma):
        for f in d.regions[r]:
            cs = topo.face_corners.get(f, ())
            if len(cs) == 2 and cs[0][0] != cs[1][0]:
                out.append((cs[0][0], cs[1][0]))
    return out


def check_strongly_normal(d: Diagram, sigma: Shading) -> NormalityReport:
    wit: Dict[str, object] = {}
    outer_shaded = d.outer in sigma.shaded
    if not outer_shaded:
        wit["outer shaded"] = d.outer
    beta = tait_graph(d, sigma, "s").beta
    if beta != 1:
        wit["beta_s = 1"] = f"beta_s={beta}"
    pairs = crossing_pairs(d, sigma)
    self_c = [(cs[0], next(iter(k))) for k, cs in pairs.items() if len(k) == 1]
    if self_c:
        wit["no C_ii"] = f"crossing {self_c[0][0]} in C_ii of {self_c[0][1]}"
    mixed = None
    for k, cs in pairs.items():
        if len(k) == 2 and len({d.goeritz_index(sigma, c) for c in cs}) > 1:
            mixed = (sorted(k, key=label_key), cs)
            break
    if mixed:
        wit["no mixed signs"] = f"regions {mixed[0]} crossings {mixed[1]}"
    uf = UnionFind(range(d.n_crossings))
    for a, b in shaded_bigons(d, sigma):
        uf.union(a, b)
    twist = None
    for k, cs in pairs.items():
        if len(k) == 2 and len(cs) > 1:
            roots = {uf.find(c) for c in cs}
            if len(roots) > 1:
                twist = (sorted(k, key=label_key), cs)
                break
    if twist:
        wit["twist regions"] = f"regions {twist[0]} crossings {twist[1]} not in one braid"
    disks = all(len(d.regions[r]) == 1 for r in d.unshaded_regions(sigma))
    return NormalityReport(outer_shaded, beta == 1, not self_c, mixed is None, twist is None,
                           disks, wit)


def unshaded_boundaries_connected(d: Diagram, sigma: Shading) -> bool:
    """Every unshaded region is bounded by a single closed walk."""
    return all(len(d.regions[r]) == 1 for r in d.unshaded_regions(sigma))


# -- beta reduction (diagram level) -------------------------------------------------------


def _descendants(d: Diagram, piece: str) -> List[str]:
    kids: Dict[str, List[str]] = {}
    for child, _, parent, _ in d.layout.nesting():
        kids.setdefault(parent, []).append(child)
    out, stack = [], [piece]
    while stack:
        p = stack.pop()
        out.append(p)
        stack.extend(kids.get(p, ()))
    return out


def _across(d: Diagram, face: str) -> List[str]:
    """Regions adjacent to a face across one of its arcs."""
    topo = d._topo
    if face in topo.face_corners:
        out = set()
        for c, k in topo.face_corners[face]:
            out.add(d.region_of_corner(c, k - 1))
            out.add(d.region_of_corner(c, k + 1))
        return sorted(out, key=label_key)
    o = face[:-1]
    return [d.region_of_face(f"{o}o" if face.endswith("i") else f"{o}i")]


def reduce_beta(d: Diagram, sigma: Shading) -> Tuple[Diagram, Shading, str]:
    """One step lowering beta_s. Returns (diagram, shading, move tag)."""
    lay = d.layout
    topo = d._topo
    cand = next(((c, cf, p, pf) for c, cf, p, pf in lay.nesting()
                 if lay.face_region[cf] not in sigma.shaded), None)
    if cand is None:
        raise NotNormalError("beta_s is already 1")
    child, cf, parent, pf = cand
    region = lay.face_region[cf]
    cluster = _descendants(d, child)
    old_region = d.region_of_corner

    if all(not topo.piece_crossings[p] for p in cluster):
        # circles only: lay them flat in a neighboring shaded region
        cset = set(cluster)
        targets = set()
        for f in lay.regions[region]:
            if lay.face_piece[f] not in cset:
                targets.update(r for r in _across(d, f) if r in sigma.shaded)
        target = min(targets, key=label_key)
        circ_src = {}
        for o in d.circles:
            if str(o) in cset:
                circ_src[f"{o}o"] = [target]
            else:
                circ_src[f"{o}i"] = [d.region_of_face(f"{o}i")]
                circ_src[f"{o}o"] = [d.region_of_face(f"{o}o")]
        new = d.rebuild(d.crossings, d.circles, lambda s: [old_region(*s)], circ_src)
        return new, new.shading(sigma.kind), "circle-relocation"

    # connected sum of the hanging piece with its parent across the region
    crossings = [list(x) for x in d.crossings]
    circles = list(d.circles)
    circ_src: Dict[str, List[str]] = {}
    corner_extra: Dict[Tuple[int, int], str] = {}
    p_is_circle = not topo.piece_crossings[child]
    q_is_circle = not topo.piece_crossings[parent]

    def other_side(face: str) -> str:
        o = face[:-1]
        return d.region_of_face(f"{o}o" if face.endswith("i") else f"{o}i")

    if p_is_circle or q_is_circle:
        gone, stay, stay_face = (child, parent, pf) if p_is_circle else (parent, child, cf)
        gone_face = cf if p_is_circle else pf
        extra_region = other_side(gone_face)
        circles.remove(int(gone))
        if topo.piece_crossings[stay]:
            c, k = min(topo.face_corners[stay_face])
            corner_extra[(c, (k - 1) % 4)] = extra_region
            shaded_target = old_region(c, k - 1)
        else:
            circ_src[stay_face] = [d.region_of_face(stay_face)]
            other = f"{stay}o" if stay_face.endswith("i") else f"{stay}i"
            circ_src[other] = [d.region_of_face(other), extra_region]
            shaded_target = d.region_of_face(other)
    else:
        e, m = min(topo.face_corners[pf])
        c, k = min(topo.face_corners[cf])
        a, b = d.crossings[e][m], d.crossings[c][k]
        crossings[c][k] = a
        crossings[e][m] = b
        shaded_target = old_region(e, m - 1)
    for o in circles:
        if f"{o}i" not in circ_src and str(o) not in (child, parent):
            circ_src[f"{o}i"] = [d.region_of_face(f"{o}i")]
            circ_src[f"{o}o"] = [d.region_of_face(f"{o}o")]
    new_label = max([a for x in d.crossings for a in x] + list(d.circles)) + 1
    circles.append(new_label)
    circ_src[f"{new_label}o"] = [shaded_target]

    def src(s):
        out = [old_region(*s)]
        if s in corner_extra:
            out.append(corner_extra[s])
        return out

    new = d.rebuild(crossings, circles, src, circ_src)
    return new, new.shading(sigma.kind), "beta-reduction"


# -- graph rewrites ---------------------------------------------------------------------


def _remove_edges(g: PlaneGraph, drop) -> Tuple[list, Dict[str, List[Dart]]]:
    edges = [x for x in g.edges if x[0] not in drop]
    rot = {v: [d for d in ds if d[0] not in drop] for v, ds in g.rotation}
    return edges, rot


def graph_omega2(g: PlaneGraph, e: int, f: int) -> PlaneGraph:
    """Delete two bigon-adjacent parallel edges of opposite sign."""
    u, v, we = g.edge_map[e]
    u2, v2, wf = g.edge_map[f]
    if {u, v} != {u2, v2} or u == v:
        raise NotNormalError("crossings are not in a common C_ij")
    if (we > 0) == (wf > 0):
        raise NotNormalError("crossings have the same Goeritz index")
    bigon = None
    for face, ds in g.faces.items():
        if len(ds) == 2 and {ds[0][0], ds[1][0]} == {e, f}:
            bigon = face
            break
    if bigon is None:
        raise NotNormalError("crossings are not adjacent in a twist region")
    b_region = g.layout.face_region[bigon]
    sides = {g.region_of_dart(d) for d in [(e, 0), (e, 1), (f, 0), (f, 1)]}
    edges, rot = _remove_edges(g, {e, f})
    extra: Dict[Dart, List[str]] = {}
    iso: Dict[str, List[str]] = {}
    for x in (u, v):
        if rot[x]:
            # the corner that replaces the pair lies after the dart preceding it
            ds = g.rot[x]
            i = next(i for i, d in enumerate(ds) if d[0] in (e, f) and ds[i - 1][0] not in (e, f))
            extra[ds[i - 1]] = sorted(sides | {b_region})
        else:
            iso[x] = sorted(sides | {b_region})
    return g.rebuild(g.vertices, edges, rot, lambda d: d, isolated_src=iso, extra=extra)


def _side_of(g: PlaneGraph, starts, blocked) -> set:
    seen = set(x for x in starts if x not in blocked)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in blocked and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def graph_omega4(g: PlaneGraph, e: int) -> PlaneGraph:
    """Remove loop e and mirror the part of the graph on one side of it."""
    x, y, _ = g.edge_map[e]
    if x != y:
        raise NotNormalError("crossing is not in any C_ii")
    ds = list(g.rot[x])
    i1, i2 = ds.index((e, 0)), ds.index((e, 1))
    n = len(ds)
    a_block = [ds[(i1 + j) % n] for j in range(1, (i2 - i1) % n)]
    b_block = [ds[(i2 + j) % n] for j in range(1, (i1 - i2) % n)]
    p_region = g.region_of_dart((e, 0))
    q_region = g.region_of_dart((e, 1))

    def side(block):
        verts = _side_of(g, [g.vertex_of(g.twin(d)) for d in block], {x})
        edges = {d[0] for d in block} | {k for k, a, b, _ in g.edges if a in verts or b in verts}
        return verts, edges

    a_verts, a_edges = side(a_block)
    # mirror the side away from the unbounded region
    outer_faces = set(g.layout.regions[g.outer])
    a_faces = {g.face_of(d) for v in a_verts for d in g.rot[v]} | {g.face_of((e, 0))}
    a_faces |= {g.face_of(d) for d in a_block}
    if outer_faces & a_faces and b_block:
        block, (verts, medges) = b_block, side(b_block)
    else:
        block, verts, medges = a_block, a_verts, a_edges
    edges, rot = _remove_edges(g, {e})
    for v in verts:
        rot[v] = list(reversed(g.rot[v]))
    rest = [d for d in ds if d[0] != e]
    pos = [rest.index(d) for d in block]
    for p, d in zip(pos, reversed(block)):
        rest[p] = d
    rot[x] = rest
    mirrored = {d for v in verts for d in g.rot[v]} | set(block)

    def src(d: Dart) -> Dart:
        return g.twin(d) if d in mirrored else d

    extra: Dict[Dart, List[str]] = {}
    iso: Dict[str, List[str]] = {}
    if rest:
        # the corners where the loop used to sit
        if block is a_block:
            ends = a_block[:1] + b_block[-1:]
        else:
            ends = a_block[-1:] + b_block[:1]
        for dd in ends:
            extra[dd] = [p_region, q_region]
    else:
        iso[x] = [p_region, q_region]
    return g.rebuild(g.vertices, edges, rot, src, isolated_src=iso, extra=extra)


def graph_omega5(g: PlaneGraph, e1: int, e2: int) -> PlaneGraph:
    """Move parallel edge e1 across the part separating it from e2."""
    u, v, _ = g.edge_map[e1]
    if u == v or {u, v} != set(g.edge_map[e2][:2]) or e1 == e2:
        raise NotNormalError("crossings are not in a common C_ij")
    for face, ds in g.faces.items():
        if len(ds) == 2 and {ds[0][0], ds[1][0]} == {e1, e2}:
            raise NotNormalError("crossings are already adjacent")
    u = min(u, v, key=label_key)
    v = g.edge_map[e1][1] if g.edge_map[e1][0] == u else g.edge_map[e1][0]
    e1u, e2u = _dart_at(g, e1, u), _dart_at(g, e2, u)
    e1v, e2v = _dart_at(g, e1, v), _dart_at(g, e2, v)
    du, dv = list(g.rot[u]), list(g.rot[v])

    def between(ds, a, b):
        i, n = ds.index(a), len(ds)
        out = []
        j = (i + 1) % n
        while ds[j] != b:
            out.append(ds[j])
            j = (j + 1) % n
        return out

    xs = between(du, e1u, e2u)
    zs = between(dv, e2v, e1v)
    y_last = g.prv(e1u)
    nu = [d for d in du if d != e1u]
    nu.insert(nu.index(e2u), e1u)
    nv = [d for d in dv if d != e1v]
    nv.insert(nv.index(e2v) + 1, e1v)
    rot = dict(g.rot)
    rot[u], rot[v] = nu, nv
    # the new bigon is empty; the face e1 leaves behind joins the far side
    src: Dict[Dart, Optional[Dart]] = {y_last: y_last, e1u: None, e2v: None}
    if zs:
        src[zs[-1]] = e1v
    if xs:
        src[xs[-1]] = xs[-1] if zs else y_last
    src[e1v] = e2v if (xs and zs) else e1v
    extra = {y_last: [g.region_of_dart(e1u)]}
    return g.rebuild(g.vertices, g.edges, rot, lambda d: src.get(d, d), strong=set(src),
                     extra=extra)


# -- diagram-level wrappers ---------------------------------------------------------------


def _graph_of(d: Diagram, sigma: Shading) -> PlaneGraph:
    if d.outer not in sigma.shaded:
        raise NotNormalError("move needs a shaded outer region")
    if tait_graph(d, sigma, "s").beta != 1:
        raise NotNormalError("move needs beta_s = 1")
    return tait_extract(d, sigma)[0]


def _diagram_of(g: PlaneGraph) -> Tuple[Diagram, Shading]:
    m = medial(g)
    return m.diagram, m.shading


def omega2_cancel(d: Diagram, sigma: Shading, pair: Tuple[int, int]):
    return _diagram_of(graph_omega2(_graph_of(d, sigma), *pair))


def omega4_unwind(d: Diagram, sigma: Shading, c: int):
    return _diagram_of(graph_omega4(_graph_of(d, sigma), c))


def omega5_consolidate(d: Diagram, sigma: Shading, c1: int, c2: int):
    return _diagram_of(graph_omega5(_graph_of(d, sigma), c1, c2))


# -- pipeline -------------------------------------------------------------------------------


@dataclass
class Step:
    kind: str
    diagram: Diagram
    shading: Shading
    matrix: LabeledSymMatrix


@dataclass
class MoveTrace:
    steps: List[Step] = field(default_factory=list)

    def kinds(self) -> List[str]:
        return [s.kind for s in self.steps]

    def to_text(self) -> str:
        return "\n".join(f"{i} {s.kind} {s.matrix.digest()}" for i, s in enumerate(self.steps))


class InvariantViolation(RuntimeError):
    """A rewrite changed G^adj or the component count."""


def _spread(g: PlaneGraph) -> int:
    """Parallel edges lying outside the largest chain of their class."""
    return sum(sum(map(len, cs)) - max(map(len, cs)) for cs in parallel_chains(g).values())


def _next_graph_move(g: PlaneGraph):
    loops = sorted(e for e, a, b, _ in g.edges if a == b)
    if loops:
        return "omega4", (loops[0],)
    chains = parallel_chains(g)
    for key in sorted(chains, key=lambda k: sorted(k, key=label_key)):
        cs = chains[key]
        if len(cs) > 1:
            t = max(cs, key=len)
            other = min((c for c in cs if c is not t), key=len)
            u = min(key, key=label_key)
            e1 = _chain_order(g, other, u)[-1][0]
            d = g.nxt(_dart_at(g, e1, u))
            tset = set(t)
            while d[0] not in tset:
                d = g.nxt(d)
            return "omega5", (e1, d[0])
    for key in sorted(chains, key=lambda k: sorted(k, key=label_key)):
        for chain in chains[key]:
            if len(chain) < 2:
                continue
            order = _chain_order(g, chain, min(key, key=label_key))
            for a, b in zip(order, order[1:] + order[:1]):
                if a == b:
                    continue
                wa, wb = g.weight(a[0]), g.weight(b[0])
                if (wa > 0) != (wb > 0) and any(
                        len(ds) == 2 and {ds[0][0], ds[1][0]} == {a[0], b[0]}
                        for ds in g.faces.values()):
                    return "omega2", (a[0], b[0])
    return None


def normalize(d: Diagram, sigma: Shading, check: bool = True):
    """Rewrite to a strongly normal shading keeping G^adj. Returns (d', sigma', trace)."""
    trace = MoveTrace()
    mu = d.component_trace()

    def record(kind, dd, ss):
        m = adjusted_goeritz_matrix(dd, ss)
        if check and trace.steps:
            if not bijection_equal(trace.steps[0].matrix, m)[0]:
                raise InvariantViolation(f"G^adj changed by {kind}")
            if dd.component_trace() != mu:
                raise InvariantViolation(f"component count changed by {kind}")
        trace.steps.append(Step(kind, dd, ss, m))

    record("input", d, sigma)
    if d.outer not in sigma.shaded:
        target = min(sigma.shaded, key=label_key)
        d, _, _ = d.set_outer_face(target)
        sigma = d.shading("s")
        record("set_outer_face", d, sigma)
    while tait_graph(d, sigma, "s").beta > 1:
        before = tait_graph(d, sigma, "s").beta
        d, sigma, kind = reduce_beta(d, sigma)
        if tait_graph(d, sigma, "s").beta >= before:
            raise InvariantViolation("beta reduction did not lower beta_s")
        record(kind, d, sigma)
    if check_strongly_normal(d, sigma).ok:
        return d, sigma, trace
    g, _ = tait_extract(d, sigma)
    tags = {"omega2": "Ω.2", "omega4": "Ω.4", "omega5": "Ω.5+mutation"}
    while True:
        mv = _next_graph_move(g)
        if mv is None:
            break
        kind, args = mv
        n_before = (len(g.edges), _spread(g))
        if kind == "omega4":
            g = graph_omega4(g, *args)
        elif kind == "omega5":
            g = graph_omega5(g, *args)
        else:
            g = graph_omega2(g, *args)
        n_after = (len(g.edges), _spread(g))
        if not n_after < n_before:
            raise InvariantViolation(f"{kind} did not make progress")
        d, sigma = _diagram_of(g)
        record(tags[kind], d, sigma)
    return d, sigma, trace
