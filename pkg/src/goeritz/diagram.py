"""Link diagrams as glued 4-valent combinatorial maps.

A crossing is a tuple ``(a, b, c, d)`` of arc labels in counterclockwise
order, ``a`` being the incoming understrand (PD convention), so slots 0 and
2 carry the understrand and slots 1 and 3 the overstrand. A *corner*
``(c, k)`` is the wedge between slots ``k`` and ``k+1`` of crossing ``c``.

Split diagrams are stored as connected pieces (crossing maps and
crossing-free circles) glued along faces; see :mod:`goeritz._sphere`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ._sphere import PieceView, SphereLayout, canonical_code, label_key, orbit, reglue
from .gaussian import I, GaussianInt
from .unionfind import UnionFind

Slot = Tuple[int, int]


class DiagramError(ValueError):
    """Invalid diagram data."""


def _face_name(arcs: Iterable[int]) -> str:
    return ".".join(str(a) for a in sorted(set(arcs)))


class _Topology:
    """Faces, pieces and strand data of the crossing maps and circles."""

    def __init__(self, crossings: Sequence[Tuple[int, int, int, int]], circles: Sequence[int]):
        self.crossings = crossings
        where: Dict[int, List[Slot]] = {}
        for c, x in enumerate(crossings):
            if len(x) != 4:
                raise DiagramError(f"crossing {c} does not have four slots")
            for k, a in enumerate(x):
                where.setdefault(a, []).append((c, k))
        for a, slots in where.items():
            if len(slots) != 2:
                raise DiagramError(f"arc {a} appears {len(slots)} times (expected 2)")
        seen = set()
        for o in circles:
            if o in where or o in seen:
                raise DiagramError(f"circle label {o} is already in use")
            seen.add(o)
        self.arc_slots: Dict[int, Tuple[Slot, Slot]] = {a: (s[0], s[1]) for a, s in where.items()}
        self.twin: Dict[Slot, Slot] = {}
        for s, t in self.arc_slots.values():
            self.twin[s] = t
            self.twin[t] = s

        # connected pieces of crossings
        uf = UnionFind(range(len(crossings)))
        for (c1, _), (c2, _) in self.arc_slots.values():
            uf.union(c1, c2)
        groups: Dict[int, List[int]] = {}
        for c in range(len(crossings)):
            groups.setdefault(uf.find(c), []).append(c)

        # faces: corner (c,k) is followed by (c', k'-1) where (c',k') = twin(c,k)
        raw_faces: List[List[Slot]] = []
        seen_c = set()
        for c in range(len(crossings)):
            for k in range(4):
                if (c, k) in seen_c:
                    continue
                cyc = orbit((c, k), self.face_next)
                seen_c.update(cyc)
                raw_faces.append(cyc)
        names: Dict[str, List[int]] = {}
        face_arc_lists = []
        for i, cyc in enumerate(raw_faces):
            arcs = [crossings[c][k] for c, k in cyc]
            face_arc_lists.append(arcs)
            names.setdefault(_face_name(arcs), []).append(i)
        self.face_corners: Dict[str, Tuple[Slot, ...]] = {}
        self.face_arcs: Dict[str, Tuple[int, ...]] = {}
        for base, idxs in names.items():
            for j, i in enumerate(idxs):
                lab = base if len(idxs) == 1 else f"{base}~{j + 1}"
                self.face_corners[lab] = tuple(raw_faces[i])
                self.face_arcs[lab] = tuple(face_arc_lists[i])
        self.corner_face: Dict[Slot, str] = {
            s: f for f, cs in self.face_corners.items() for s in cs}

        self.piece_faces: Dict[str, Tuple[str, ...]] = {}
        self.piece_crossings: Dict[str, Tuple[int, ...]] = {}
        self.piece_of_label: Dict[int, str] = {}
        for cs in groups.values():
            arcs = {a for c in cs for a in crossings[c]}
            pid = str(min(arcs))
            faces = sorted({self.corner_face[(c, k)] for c in cs for k in range(4)}, key=label_key)
            if len(faces) != len(cs) + 2:
                raise DiagramError(f"piece {pid} is not planar (V - E + F != 2)")
            self.piece_faces[pid] = tuple(faces)
            self.piece_crossings[pid] = tuple(sorted(cs))
            for a in arcs:
                self.piece_of_label[a] = pid
        for o in circles:
            pid = str(o)
            self.piece_faces[pid] = (f"{o}i", f"{o}o")
            self.piece_crossings[pid] = ()
            self.piece_of_label[o] = pid
        self.circles = tuple(circles)

    def face_next(self, s: Slot) -> Slot:
        c, k = self.twin[s]
        return (c, (k - 1) % 4)

    def default_face(self, pid: str) -> str:
        faces = self.piece_faces[pid]
        if not self.piece_crossings[pid]:
            return faces[1]  # the "o" side of a circle
        return faces[0]

    def resolve_face(self, pid: str, name: str) -> str:
        faces = self.piece_faces[pid]
        if name in faces:
            return name
        if not self.piece_crossings[pid] and name in ("i", "o"):
            return f"{pid}{name}"
        raise DiagramError(f"piece {pid} has no face {name!r}")


@dataclass(frozen=True)
class Shading:
    """Checkerboard shading: the set of shaded regions, plus kind 's' or 'u'."""

    shaded: frozenset
    kind: str

    def is_shaded(self, region: str) -> bool:
        return region in self.shaded


@dataclass(frozen=True)
class Diagram:
    crossings: Tuple[Tuple[int, int, int, int], ...]
    circles: Tuple[int, ...] = ()
    glue: Tuple[Tuple[str, ...], ...] = ()
    outer: str = ""

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, crossings, circles=(), glue=(), outer: Optional[str] = None) -> "Diagram":
        """Validate and normalize. ``outer`` may name a face or a region."""
        crossings = tuple(tuple(int(a) for a in x) for x in crossings)
        circles = tuple(int(o) for o in circles)
        topo = _Topology(crossings, circles)
        if outer is None:
            any_face = next(iter(topo.piece_faces.values()))[0]
            try:
                probe = SphereLayout(topo.piece_faces, glue, any_face)
            except ValueError as e:
                raise DiagramError(str(e)) from None
            outer = min(probe.regions, key=label_key)
        try:
            layout = SphereLayout(topo.piece_faces, glue, outer)
        except ValueError as e:
            raise DiagramError(str(e)) from None
        d = cls(crossings, circles, layout.groups, layout.outer)
        d.__dict__["_topo"] = topo
        d.__dict__["layout"] = layout
        return d

    @cached_property
    def _topo(self) -> _Topology:
        return _Topology(self.crossings, self.circles)

    @cached_property
    def layout(self) -> SphereLayout:
        return SphereLayout(self._topo.piece_faces, self.glue, self.outer)

    # -- basic data ----------------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> Tuple[int, ...]:
        return tuple(sorted(self._topo.arc_slots))

    @property
    def regions(self) -> Dict[str, Tuple[str, ...]]:
        return self.layout.regions

    def region_of_corner(self, c: int, k: int) -> str:
        return self.layout.face_region[self._topo.corner_face[(c, k % 4)]]

    def region_of_face(self, face: str) -> str:
        return self.layout.face_region[face]

    def twin(self, s: Slot) -> Slot:
        return self._topo.twin[s]

    def arc_at(self, c: int, k: int) -> int:
        return self.crossings[c][k % 4]

    @property
    def pieces(self) -> Dict[str, Tuple[int, ...]]:
        """Piece id -> crossing indices (empty for a circle)."""
        return dict(self._topo.piece_crossings)

    def piece_of(self, label: int) -> str:
        return self._topo.piece_of_label[label]

    # -- regions ---------------------------------------------------------------

    def trace_regions(self) -> Dict[str, dict]:
        """Region -> boundary arcs, corner incidences, and circle sides."""
        out = {}
        topo = self._topo
        for r, faces in self.regions.items():
            corners, arcs, circ = [], [], []
            for f in faces:
                if f in topo.face_corners:
                    corners.extend(topo.face_corners[f])
                    arcs.extend(topo.face_arcs[f])
                else:
                    circ.append(f)
            out[r] = {"faces": faces, "corners": tuple(corners),
                      "arcs": tuple(sorted(set(arcs))), "circle_sides": tuple(circ)}
        return out

    def region_boundary_components(self, region: str) -> int:
        """Number of closed boundary walks of a region (faces of its pieces)."""
        return len(self.regions[region])

    # -- shadings --------------------------------------------------------------

    @cached_property
    def _face_parity(self) -> Dict[str, int]:
        """A 2-coloring of each piece's faces (arbitrary per piece)."""
        topo = self._topo
        col: Dict[str, int] = {}
        for pid, faces in topo.piece_faces.items():
            if not topo.piece_crossings[pid]:
                col[faces[0]], col[faces[1]] = 0, 1
                continue
            col[faces[0]] = 0
            stack = [faces[0]]
            while stack:
                f = stack.pop()
                for c, k in topo.face_corners[f]:
                    for dk in (1, 3):
                        g = topo.corner_face[(c, (k + dk) % 4)]
                        if g not in col:
                            col[g] = 1 - col[f]
                            stack.append(g)
                        elif col[g] == col[f]:
                            raise DiagramError("faces are not 2-colorable")
        return col

    @cached_property
    def _shadings(self) -> Tuple[Shading, Shading]:
        lay = self.layout
        par = self._face_parity
        color: Dict[str, int] = {lay.outer: 1}  # 1 = shaded
        flip: Dict[str, int] = {}
        queue = [lay.outer]
        while queue:
            r = queue.pop()
            for f in lay.regions[r]:
                p = lay.face_piece[f]
                if p in flip:
                    continue
                flip[p] = par[f] ^ color[r]
                for g in lay.piece_faces[p]:
                    r2 = lay.face_region[g]
                    want = par[g] ^ flip[p]
                    if r2 in color:
                        if color[r2] != want:
                            raise DiagramError("inconsistent shading across nesting")
                    else:
                        color[r2] = want
                        queue.append(r2)
        s = frozenset(r for r, v in color.items() if v == 1)
        u = frozenset(r for r, v in color.items() if v == 0)
        return Shading(s, "s"), Shading(u, "u")

    def shadings(self) -> Tuple[Shading, Shading]:
        """(sigma_s, sigma_u): outer region shaded, resp. unshaded."""
        return self._shadings

    def shading(self, kind: str) -> Shading:
        return self._shadings[0 if kind == "s" else 1]

    def unshaded_regions(self, sigma: Shading) -> List[str]:
        return sorted((r for r in self.regions if r not in sigma.shaded), key=label_key)

    def shaded_regions(self, sigma: Shading) -> List[str]:
        return sorted((r for r in self.regions if r in sigma.shaded), key=label_key)

    def goeritz_index(self, sigma: Shading, c: int) -> int:
        """+1 when the region at corner 0 (over strand on its right) is unshaded."""
        if not 0 <= c < len(self.crossings):
            raise DiagramError(f"unknown crossing {c}")
        return -1 if self.region_of_corner(c, 0) in sigma.shaded else 1

    def unshaded_corner(self, sigma: Shading, c: int) -> int:
        """The smaller of the two unshaded corner indices (0 or 1)."""
        return 0 if self.goeritz_index(sigma, c) == 1 else 1

    # -- components ------------------------------------------------------------

    @cached_property
    def _components(self) -> Tuple[Tuple[Tuple[Slot, ...], ...], Tuple[int, ...]]:
        """Reference traversals of crossing components, as in-slot sequences.

        Each component is listed as the slots through which it enters
        crossings, in travel order. The reference direction enters the
        understrand at slot 0 at the component's first undercrossing; a
        component passing only over is run from the later end of its least arc.
        """
        topo = self._topo
        seen = set()
        comps = []
        for a in sorted(topo.arc_slots):
            s, t = topo.arc_slots[a]
            if s in seen:
                continue
            head = max(s, t)
            ins = []
            x = head
            while True:
                ins.append(x)
                c, k = x
                out = (c, (k + 2) % 4)
                x = topo.twin[out]
                if x == head:
                    break
            unders = sorted((c, k) for c, k in ins if k % 2 == 0)
            if unders and unders[0][1] != 0:
                ins = [(c, (k + 2) % 4) for c, k in reversed(ins)]
            for c, k in ins:
                seen.add((c, k))
                seen.add((c, (k + 2) % 4))
            comps.append(tuple(ins))
        items = [(min(self.crossings[c][k] for c, k in comp), ("x", comp)) for comp in comps]
        items += [(o, ("o", o)) for o in self.circles]
        items.sort(key=lambda t: t[0])
        return tuple(it[1] for it in items), tuple(it[0] for it in items)

    def components(self) -> List[dict]:
        """Components in order of least label, with arcs in reference travel order."""
        out = []
        for kind, data in self._components[0]:
            if kind == "o":
                out.append({"circle": data, "arcs": (data,), "crossings": ()})
            else:
                arcs = tuple(self.crossings[c][k] for c, k in data)
                out.append({"circle": None, "arcs": arcs,
                            "crossings": tuple(sorted({c for c, _ in data}))})
        return out

    def component_trace(self) -> int:
        """Number of link components, by following strands."""
        return len(self._components[0])

    @cached_property
    def strand_component(self) -> Dict[Slot, int]:
        """Slot -> index of the component whose strand uses it."""
        out = {}
        for i, (kind, data) in enumerate(self._components[0]):
            if kind == "x":
                for c, k in data:
                    out[(c, k)] = i
                    out[(c, (k + 2) % 4)] = i
        return out

    def detached_sublinks(self) -> List[Tuple[int, ...]]:
        """Classes of components; no crossing joins two classes."""
        n = self.component_trace()
        uf = UnionFind(range(n))
        sc = self.strand_component
        for c in range(len(self.crossings)):
            uf.union(sc[(c, 0)], sc[(c, 1)])
        return sorted(tuple(sorted(cl)) for cl in uf.classes())

    # -- re-rooting ------------------------------------------------------------

    def set_outer_face(self, region: str):
        """Make ``region`` the unbounded region. Returns (diagram, f, g).

        Only the choice of outer region changes, so the region bijection f and
        crossing bijection g are identities.
        """
        try:
            r = self.layout.resolve_region(region)
        except ValueError as e:
            raise DiagramError(str(e)) from None
        d = Diagram.make(self.crossings, self.circles, self.glue, r)
        f = {x: x for x in self.regions}
        g = {c: c for c in range(len(self.crossings))}
        return d, f, g

    # -- rebuilding after surgery ----------------------------------------------

    def rebuild(self, crossings, circles, corner_sources: Callable[[Slot], Iterable[str]],
                circle_sources: Mapping[str, Iterable[str]] = {},
                outer: Optional[str] = None) -> "Diagram":
        """A new diagram whose regions are inherited from this one.

        ``corner_sources(corner)`` names old regions a new corner lies in;
        ``circle_sources`` does the same for circle faces like ``"7o"``.
        """
        crossings = tuple(tuple(x) for x in crossings)
        topo = _Topology(crossings, tuple(circles))
        sources: Dict[str, set] = {}
        for f, cs in topo.face_corners.items():
            acc = sources.setdefault(f, set())
            for s in cs:
                acc.update(corner_sources(s))
        for f, rs in circle_sources.items():
            sources.setdefault(f, set()).update(rs)
        groups, outer_face = reglue(topo.piece_faces, sources, outer or self.outer)
        return Diagram.make(crossings, circles, groups, outer_face)

    # -- identity ----------------------------------------------------------------

    def canonical_code(self):
        """Invariant under relabeling of arcs, crossings, and circles."""
        topo = self._topo
        views = {}
        for pid, faces in topo.piece_faces.items():
            if not topo.piece_crossings[pid]:
                views[pid] = PieceView(faces, special=("O",))
                continue
            darts = [(c, k) for c in topo.piece_crossings[pid] for k in range(4)]
            views[pid] = PieceView(
                faces, darts,
                twin=topo.twin.__getitem__,
                nxt=lambda d: (d[0], (d[1] + 1) % 4),
                deco=lambda d: d[1] % 2,
                face_of=topo.corner_face.__getitem__)
        return canonical_code(views, self.layout)

    def isomorphic(self, other: "Diagram") -> bool:
        return self.canonical_code() == other.canonical_code()

    # -- text -----------------------------------------------------------------

    def _piece_ref(self, pid: str) -> str:
        return pid

    def to_text(self) -> str:
        lines = [" ".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings)]
        if self.circles:
            lines.append(" ".join(f"O({o})" for o in self.circles))
        for child, cf, parent, pf in self.layout.nesting():
            lines.append(f"nest {child}:{cf} in {parent}:{pf}")
        lines.append(f"outer {self.layout.regions[self.outer][0]}")
        return "\n".join(l for l in lines if l) + "\n"

    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "circles": list(self.circles),
            "nest": [{"child": c, "child_face": cf, "parent": p, "face": pf}
                     for c, cf, p, pf in self.layout.nesting()],
            "outer": self.layout.regions[self.outer][0],
        }

    def __str__(self) -> str:
        return self.to_text().strip()


# -- orientation ----------------------------------------------------------------


@dataclass(frozen=True)
class OrientedDiagram:
    """A diagram plus a direction per component, relative to the reference."""

    diagram: Diagram
    signs: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        n = self.diagram.component_trace()
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * n)
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise DiagramError(f"need {n} orientation signs of +1/-1")

    @cached_property
    def _in_slots(self) -> Dict[int, Tuple[int, int]]:
        """crossing -> (under in-slot, over in-slot)."""
        d = self.diagram
        under, over = {}, {}
        for i, (kind, data) in enumerate(d._components[0]):
            if kind != "x":
                continue
            for c, k in data:
                kk = k if self.signs[i] == 1 else (k + 2) % 4
                (under if k % 2 == 0 else over)[c] = kk
        return {c: (under[c], over[c]) for c in range(d.n_crossings)}

    def in_slots(self, c: int) -> Tuple[int, int]:
        return self._in_slots[c]

    def writhe(self, c: int) -> int:
        """+1 when the over direction is the under direction turned clockwise."""
        if not 0 <= c < self.diagram.n_crossings:
            raise DiagramError(f"unknown crossing {c}")
        u, o = self._in_slots[c]
        return 1 if (o - u) % 4 == 3 else -1

    def checkerboard_writhe(self, sigma: Shading, c: int) -> GaussianInt:
        return eta_or(self.diagram.goeritz_index(sigma, c), self.writhe(c))

    def reverse(self, components: Iterable[int]) -> "OrientedDiagram":
        comps = set(components)
        signs = tuple(-s if i in comps else s for i, s in enumerate(self.signs))
        return OrientedDiagram(self.diagram, signs)

    def to_text(self) -> str:
        return " ".join("+" if s == 1 else "-" for s in self.signs) + "\n"


def eta_or(eta: int, w: int) -> GaussianInt:
    """Checkerboard writhe from Goeritz index and writhe."""
    return GaussianInt(eta) if eta == w else GaussianInt(eta) * I


def crossing_writhe(od: OrientedDiagram, c: int) -> int:
    return od.writhe(c)


def checkerboard_writhe(od: OrientedDiagram, sigma: Shading, c: int) -> GaussianInt:
    return od.checkerboard_writhe(sigma, c)


def parse_orientation(text: str, d: Diagram) -> OrientedDiagram:
    """Per-component flags: ``+ - +`` or a JSON list of +1/-1."""
    s = text.strip()
    if s.startswith("["):
        signs = tuple(int(x) for x in json.loads(s))
    else:
        toks = s.replace(",", " ").split()
        table = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}
        try:
            signs = tuple(table[t] for t in toks)
        except KeyError as e:
            raise DiagramError(f"bad orientation flag {e.args[0]!r}") from None
    return OrientedDiagram(d, signs)


# -- parsing ------------------------------------------------------------------

_CROSS = re.compile(r"X\s*[\(\[]\s*([^\)\]]*)[\)\]]")
_CIRCLE = re.compile(r"\bO(?:\s*\(\s*(-?\d+)\s*\))?")
_NEST = re.compile(r"^nest\s+(-?\d+)(?::(\S+))?\s+in\s+(-?\d+):(\S+)$")


def parse_pd(text: str) -> Diagram:
    """Parse PD text (or its JSON form) into a validated Diagram."""
    s = text.strip()
    if s.startswith("{"):
        return _from_json(json.loads(s))
    crossings: List[Tuple[int, ...]] = []
    circles: List[Optional[int]] = []
    nests: List[Tuple[int, Optional[str], int, str]] = []
    outer = None
    for raw in s.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("nest"):
            m = _NEST.match(line)
            if not m:
                raise DiagramError(f"malformed nest directive: {line!r}")
            nests.append((int(m.group(1)), m.group(2), int(m.group(3)), m.group(4)))
            continue
        if line.startswith("outer"):
            parts = line.split()
            if len(parts) != 2:
                raise DiagramError(f"malformed outer directive: {line!r}")
            outer = parts[1]
            continue
        for m in _CROSS.finditer(line):
            try:
                vals = tuple(int(v) for v in m.group(1).split(","))
            except ValueError:
                raise DiagramError(f"malformed crossing {m.group(0)!r}") from None
            if len(vals) != 4:
                raise DiagramError(f"malformed crossing {m.group(0)!r}")
            crossings.append(vals)
        rest = _CROSS.sub(" ", line)
        for m in _CIRCLE.finditer(rest):
            circles.append(int(m.group(1)) if m.group(1) else None)
        rest = _CIRCLE.sub(" ", rest)
        if re.sub(r"PD|[\s,\[\]]", "", rest):
            raise DiagramError(f"unrecognized text: {rest.strip()!r}")
    return assemble(crossings, circles, nests, outer)


def _from_json(obj: dict) -> Diagram:
    circles = obj.get("circles", [])
    if isinstance(circles, int):
        circles = [None] * circles
    nests = [(int(n["child"]), n.get("child_face"), int(n["parent"]), n["face"])
             for n in obj.get("nest", [])]
    return assemble([tuple(x) for x in obj.get("crossings", [])], circles, nests,
                    obj.get("outer"))


def assemble(crossings, circles, nests, outer: Optional[str]) -> Diagram:
    """Resolve circle labels, nesting directives and defaults."""
    crossings = [tuple(int(a) for a in x) for x in crossings]
    used = {a for x in crossings for a in x} | {o for o in circles if o is not None}
    nxt = max(used, default=0) + 1
    labels = []
    for o in circles:
        if o is None:
            o, nxt = nxt, nxt + 1
        labels.append(o)
    topo = _Topology(tuple(crossings), tuple(labels))
    if not topo.piece_faces:
        raise DiagramError("empty diagram")

    def piece(ref: int) -> str:
        if ref not in topo.piece_of_label:
            raise DiagramError(f"unknown piece reference {ref}")
        return topo.piece_of_label[ref]

    uf = UnionFind(topo.piece_faces)
    groups = []
    children = set()
    for child_ref, cface, parent_ref, pface in nests:
        cp, pp = piece(child_ref), piece(parent_ref)
        cf = topo.resolve_face(cp, cface) if cface else topo.default_face(cp)
        pf = topo.resolve_face(pp, pface)
        if not uf.union(cp, pp):
            raise DiagramError("nesting cycle")
        groups.append((cf, pf))
        children.add(cp)

    by_root: Dict[str, List[str]] = {}
    for p in topo.piece_faces:
        by_root.setdefault(uf.find(p), []).append(p)

    def top_of(members):
        tops = [p for p in members if p not in children] or members
        return min(tops, key=lambda p: label_key(p))

    outer_face = None
    if outer is not None:
        for f in outer.split("|"):
            if f not in topo.face_arcs and not any(f in fs for fs in topo.piece_faces.values()):
                raise DiagramError(f"unknown region {outer!r}")
        outer_face = outer.split("|")[0]
        main = uf.find(next(p for p, fs in topo.piece_faces.items() if outer_face in fs))
    else:
        main = uf.find(min(topo.piece_faces, key=lambda p: label_key(p)))
        sub = {p: topo.piece_faces[p] for p in by_root[main]}
        try:
            probe = SphereLayout(sub, groups, next(iter(sub.values()))[0])
        except ValueError as e:
            raise DiagramError(str(e)) from None
        outer_face = min(probe.regions, key=label_key).split("|")[0]
    for root, members in by_root.items():
        if root == main:
            continue
        t = top_of(members)
        groups.append((topo.default_face(t), outer_face))
    return Diagram.make(crossings, labels, groups, outer if outer is not None else outer_face)
