"""Plane multigraphs as rotation systems, possibly split and nested.

Edges carry stable integer ids and a weight; a dart is ``(edge, end)`` with
end 0 at the edge's first vertex. Rotations list darts counterclockwise. The
face to the left of a dart ``d`` continues with ``prev(twin(d))``; it contains
the corner between ``d`` and ``next(d)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ._sphere import PieceView, SphereLayout, canonical_code, label_key, orbit, reglue
from .gaussian import GaussianInt, entry_key
from .unionfind import UnionFind

Dart = Tuple[int, int]


class GraphError(ValueError):
    """Invalid plane graph data."""


def dart_str(d: Dart) -> str:
    return f"{d[0]}{'ab'[d[1]]}"


def isolated_face(v: str) -> str:
    return f"v:{v}"


@dataclass(frozen=True)
class PlaneGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[int, str, str, object], ...]
    rotation: Tuple[Tuple[str, Tuple[Dart, ...]], ...]
    glue: Tuple[Tuple[str, ...], ...] = ()
    outer: str = ""

    @classmethod
    def make(cls, vertices, edges, rotation: Mapping[str, Sequence[Dart]], glue=(),
             outer: Optional[str] = None) -> "PlaneGraph":
        vertices = tuple(sorted({str(v) for v in vertices}, key=label_key))
        edges = tuple(sorted((int(e), str(u), str(v), w) for e, u, v, w in edges))
        rot = tuple((v, tuple((int(e), int(k)) for e, k in rotation.get(v, ()))) for v in vertices)
        g = cls(vertices, edges, rot, (), "")
        g._validate()
        topo = g._topo
        if outer is None:
            anyf = next(iter(topo["piece_faces"].values()))[0]
            try:
                outer = min(SphereLayout(topo["piece_faces"], glue, anyf).regions, key=label_key)
            except ValueError as e:
                raise GraphError(str(e)) from None
        try:
            lay = SphereLayout(topo["piece_faces"], glue, outer)
        except ValueError as e:
            raise GraphError(str(e)) from None
        out = cls(vertices, edges, rot, lay.groups, lay.outer)
        out.__dict__["layout"] = lay
        return out

    # -- structure ----------------------------------------------------------------

    @cached_property
    def edge_map(self) -> Dict[int, Tuple[str, str, object]]:
        return {e: (u, v, w) for e, u, v, w in self.edges}

    @cached_property
    def rot(self) -> Dict[str, Tuple[Dart, ...]]:
        return dict(self.rotation)

    @cached_property
    def _pos(self) -> Dict[Dart, Tuple[str, int]]:
        return {d: (v, i) for v, ds in self.rotation for i, d in enumerate(ds)}

    def vertex_of(self, d: Dart) -> str:
        u, v, _ = self.edge_map[d[0]]
        return u if d[1] == 0 else v

    @staticmethod
    def twin(d: Dart) -> Dart:
        return (d[0], 1 - d[1])

    def nxt(self, d: Dart) -> Dart:
        v, i = self._pos[d]
        ds = self.rot[v]
        return ds[(i + 1) % len(ds)]

    def prv(self, d: Dart) -> Dart:
        v, i = self._pos[d]
        ds = self.rot[v]
        return ds[(i - 1) % len(ds)]

    def face_next(self, d: Dart) -> Dart:
        return self.prv(self.twin(d))

    def weight(self, e: int):
        return self.edge_map[e][2]

    def _validate(self):
        em = {e: (u, v) for e, u, v, _ in self.edges}
        if len(em) != len(self.edges):
            raise GraphError("duplicate edge id")
        vs = set(self.vertices)
        want: Dict[str, List[Dart]] = {v: [] for v in vs}
        for e, (u, v) in em.items():
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e} has an unknown endpoint")
            want[u].append((e, 0))
            want[v].append((e, 1))
        for v, ds in self.rotation:
            if sorted(ds) != sorted(want[v]):
                raise GraphError(f"rotation at {v} does not list exactly its darts")
        for e, u, v, w in self.edges:
            if w == 0:
                raise GraphError(f"edge {e} has zero weight")

    @cached_property
    def _topo(self) -> dict:
        uf = UnionFind(self.vertices)
        for _, u, v, _ in self.edges:
            uf.union(u, v)
        comps: Dict[str, List[str]] = {}
        for v in self.vertices:
            comps.setdefault(uf.find(v), []).append(v)
        dart_face: Dict[Dart, str] = {}
        face_darts: Dict[str, Tuple[Dart, ...]] = {}
        for v, ds in self.rotation:
            for d in ds:
                if d in dart_face:
                    continue
                cyc = orbit(d, self.face_next)
                lab = ".".join(sorted((dart_str(x) for x in cyc), key=label_key))
                face_darts[lab] = tuple(cyc)
                for x in cyc:
                    dart_face[x] = lab
        piece_faces: Dict[str, Tuple[str, ...]] = {}
        piece_vertices: Dict[str, Tuple[str, ...]] = {}
        for vs in comps.values():
            pid = min(vs, key=label_key)
            darts = [d for v in vs for d in self.rot[v]]
            if not darts:
                faces = (isolated_face(pid),)
            else:
                faces = tuple(sorted({dart_face[d] for d in darts}, key=label_key))
                n_e = len(darts) // 2
                if len(vs) - n_e + len(faces) != 2:
                    raise GraphError(f"component of {pid} is not planar (V - E + F != 2)")
            piece_faces[pid] = faces
            piece_vertices[pid] = tuple(sorted(vs, key=label_key))
        piece_of = {v: p for p, vs in piece_vertices.items() for v in vs}
        return {"dart_face": dart_face, "face_darts": face_darts, "piece_faces": piece_faces,
                "piece_vertices": piece_vertices, "piece_of": piece_of}

    @cached_property
    def layout(self) -> SphereLayout:
        return SphereLayout(self._topo["piece_faces"], self.glue, self.outer)

    def face_of(self, d: Dart) -> str:
        return self._topo["dart_face"][d]

    def region_of_dart(self, d: Dart) -> str:
        return self.layout.face_region[self.face_of(d)]

    def region_of_vertex(self, v: str) -> str:
        """Region around an isolated vertex."""
        return self.layout.face_region[isolated_face(v)]

    @property
    def faces(self) -> Dict[str, Tuple[Dart, ...]]:
        return self._topo["face_darts"]

    @property
    def pieces(self) -> Dict[str, Tuple[str, ...]]:
        return self._topo["piece_vertices"]

    def piece_of(self, v: str) -> str:
        return self._topo["piece_of"][v]

    def neighbors(self, v: str) -> List[str]:
        return [self.vertex_of(self.twin(d)) for d in self.rot[v]]

    # -- predicates ------------------------------------------------------------------

    def is_simple(self) -> bool:
        seen = set()
        for _, u, v, _ in self.edges:
            if u == v:
                return False
            k = frozenset((u, v))
            if k in seen:
                return False
            seen.add(k)
        return True

    def canonical_code(self):
        """Invariant under renaming vertices and edges; weights are kept."""
        topo = self._topo
        views = {}
        for pid, faces in topo["piece_faces"].items():
            darts = [d for v in topo["piece_vertices"][pid] for d in self.rot[v]]
            if not darts:
                views[pid] = PieceView(faces, special=("V",))
                continue
            views[pid] = PieceView(faces, darts, twin=self.twin, nxt=self.nxt,
                                   deco=lambda d: entry_key(self.edge_map[d[0]][2]),
                                   face_of=topo["dart_face"].__getitem__)
        return canonical_code(views, self.layout)

    def isomorphic(self, other: "PlaneGraph") -> bool:
        return self.canonical_code() == other.canonical_code()

    def same_as(self, other: "PlaneGraph") -> bool:
        """Equality for simple graphs with matching vertex names.

        Edge ids may differ; darts are identified by their directed vertex pair.
        """
        if set(self.vertices) != set(other.vertices) or len(self.edges) != len(other.edges):
            return False
        if not (self.is_simple() and other.is_simple()):
            raise GraphError("same_as needs simple graphs")

        def data(g: PlaneGraph):
            def key(d):
                return (g.vertex_of(d), g.vertex_of(g.twin(d)))
            ew = {frozenset((u, v)): w for _, u, v, w in g.edges}
            rots = {}
            for v, ds in g.rotation:
                seq = [key(d)[1] for d in ds]
                if seq:
                    i = seq.index(min(seq))
                    seq = seq[i:] + seq[:i]
                rots[v] = tuple(seq)
            fid = {}
            for f, ds in g.faces.items():
                fid[f] = frozenset(key(d) for d in ds)
            for v in g.vertices:
                if not g.rot[v]:
                    fid[isolated_face(v)] = frozenset([("v", v)])
            regions = frozenset(frozenset(fid[f] for f in fs) for fs in g.layout.regions.values())
            outer = frozenset(fid[f] for f in g.layout.regions[g.layout.outer])
            return ew, rots, regions, outer
        return data(self) == data(other)

    # -- surgery support ---------------------------------------------------------------

    def rebuild(self, vertices, edges, rotation: Mapping[str, Sequence[Dart]],
                dart_src: Callable[[Dart], Optional[Dart]],
                strong: Optional[Set[Dart]] = None,
                isolated_src: Mapping[str, Iterable[str]] = {},
                extra: Mapping[Dart, Iterable[str]] = {}) -> "PlaneGraph":
        """A new graph whose regions are inherited from this one.

        Each new dart contributes the old region of ``dart_src(dart)``. Faces
        holding a dart from ``strong`` use only their strong darts; ``None``
        means every dart is strong. ``extra`` adds old regions per dart and
        ``isolated_src`` gives the old regions around new isolated vertices.
        """
        tmp = PlaneGraph.make_unglued(vertices, edges, rotation)
        topo = tmp._topo
        sources: Dict[str, Set[str]] = {}
        for f, ds in topo["face_darts"].items():
            use = ds if strong is None else ([d for d in ds if d in strong] or ds)
            acc = sources.setdefault(f, set())
            for d in use:
                s = dart_src(d)
                if s is not None:
                    acc.add(self.region_of_dart(s))
                acc.update(extra.get(d, ()))
        for v, rs in isolated_src.items():
            sources.setdefault(isolated_face(v), set()).update(rs)
        for v in vertices:
            v = str(v)
            if v not in isolated_src and not rotation.get(v) and v in self.rot and not self.rot[v]:
                sources.setdefault(isolated_face(v), set()).add(self.region_of_vertex(v))
        groups, outer_face = reglue(topo["piece_faces"], sources, self.outer)
        return PlaneGraph.make(vertices, edges, rotation, groups, outer_face)

    @classmethod
    def make_unglued(cls, vertices, edges, rotation) -> "PlaneGraph":
        vertices = tuple(sorted({str(v) for v in vertices}, key=label_key))
        edges = tuple(sorted((int(e), str(u), str(v), w) for e, u, v, w in edges))
        rot = tuple((v, tuple(rotation.get(v, ()))) for v in vertices)
        g = cls(vertices, edges, rot)
        g._validate()
        return g

    def with_weights(self, weights: Mapping[int, object]) -> "PlaneGraph":
        edges = tuple((e, u, v, weights.get(e, w)) for e, u, v, w in self.edges)
        return PlaneGraph.make(self.vertices, edges, self.rot, self.glue, self.outer)

    # -- serialization -------------------------------------------------------------------

    def to_json(self) -> dict:
        def wj(w):
            if isinstance(w, GaussianInt):
                return w.re if not w.im else {"re": w.re, "im": w.im}
            return w
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "u": u, "v": v, "weight": wj(w)} for e, u, v, w in self.edges],
            "rotation": {v: [list(d) for d in ds] for v, ds in self.rotation},
            "glue": [list(g) for g in self.glue],
            "outer": self.layout.regions[self.outer][0],
        }

    def dump(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _weight_from_json(w):
    if isinstance(w, GaussianInt):
        return w if w.im else w.re
    if isinstance(w, dict):
        g = GaussianInt(int(w.get("re", 0)), int(w.get("im", 0)))
        return g if g.im else g.re
    if isinstance(w, str):
        g = GaussianInt.parse(w)
        return g if g.im else g.re
    return int(w)


def graph_from_json(obj: dict) -> PlaneGraph:
    """Read a graph file.

    Two styles are accepted. The dart style mirrors :meth:`PlaneGraph.to_json`.
    The neighbor style, for simple graphs, gives ``rotation`` as counterclockwise
    neighbor lists, ``edges`` as ``[u, v, weight]`` triples, ``outer`` as a
    directed edge ``[u, v]`` whose left face is unbounded, and optional ``nest``
    entries ``{"piece": x, "in": [u, v]}`` placing the component of ``x`` in
    the face left of ``u -> v``.
    """
    verts = [str(v) for v in obj["vertices"]]
    raw_edges = obj.get("edges", [])
    if raw_edges and isinstance(raw_edges[0], dict):
        edges = [(int(x["id"]), str(x["u"]), str(x["v"]), _weight_from_json(x["weight"]))
                 for x in raw_edges]
        rotation = {str(v): [tuple(d) for d in ds] for v, ds in obj.get("rotation", {}).items()}
        return PlaneGraph.make(verts, edges, rotation, obj.get("glue", ()), obj.get("outer"))
    edges = []
    lookup: Dict[Tuple[str, str], Dart] = {}
    for i, (u, v, w) in enumerate(raw_edges):
        u, v = str(u), str(v)
        if u == v or (u, v) in lookup:
            raise GraphError("neighbor-style graphs must be simple")
        edges.append((i, u, v, _weight_from_json(w)))
        lookup[(u, v)] = (i, 0)
        lookup[(v, u)] = (i, 1)
    rotation = {}
    for v, nbrs in obj.get("rotation", {}).items():
        try:
            rotation[str(v)] = [lookup[(str(v), str(n))] for n in nbrs]
        except KeyError as e:
            raise GraphError(f"rotation at {v} names a non-neighbor") from None
    probe = PlaneGraph.make_unglued(verts, edges, rotation)

    def face_of_pair(pair) -> str:
        if isinstance(pair, str):
            return pair
        return probe.face_of(lookup[(str(pair[0]), str(pair[1]))])

    glue = []
    for n in obj.get("nest", []):
        pid = probe.piece_of(str(n["piece"]))
        own = n.get("face")
        if own is None:
            own_face = probe._topo["piece_faces"][pid][0]
        else:
            own_face = face_of_pair(own)
        glue.append((own_face, face_of_pair(n["in"])))
    outer = obj.get("outer")
    if outer is not None:
        outer = face_of_pair(outer)
    # unplaced components go into the outer face
    placed = {probe.piece_of(str(n["piece"])) for n in obj.get("nest", [])}
    pf = probe._topo["piece_faces"]
    uf = UnionFind(pf)
    fp = {f: p for p, fs in pf.items() for f in fs}
    for a, b in glue:
        uf.union(fp[a], fp[b])
    root = fp[outer] if outer is not None else min(pf, key=label_key)
    target = outer if outer is not None else pf[root][0]
    for p in sorted(pf, key=label_key):
        if uf.find(p) != uf.find(root) and p not in placed:
            glue.append((pf[p][0], target))
            uf.union(p, root)
    return PlaneGraph.make(verts, edges, rotation, glue, outer)
