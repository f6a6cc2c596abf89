"""Elementary mutations of four-ended tangles.

A tangle is a set of crossings joined to the rest of its piece by exactly
four arcs. The cut arcs are listed counterclockwise around the tangle
boundary starting from the least label, and read as the corners NE, NW,
SW, SE. Kind 1 turns the tangle over about the horizontal axis, kind 2
about the vertical axis, kind 3 rotates it by a half turn in the plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .diagram import Diagram, DiagramError, OrientedDiagram, Shading
from .unionfind import UnionFind

Slot = Tuple[int, int]

# position permutations; each is an involution
PERMS = {1: (3, 2, 1, 0), 2: (1, 0, 3, 2), 3: (2, 3, 0, 1)}
CORNERS = ("NE", "NW", "SW", "SE")


class TangleError(DiagramError):
    """The crossing set or arcs do not describe a four-ended tangle."""


class NotDetachedError(DiagramError):
    """The components to reverse share crossings with the rest of the link."""


@dataclass(frozen=True)
class TangleSpec:
    crossings: FrozenSet[int]
    ports: Tuple[int, int, int, int]

    def corner_map(self) -> Dict[str, int]:
        return dict(zip(CORNERS, self.ports))


def _cut_arcs(d: Diagram, inside: Set[int]) -> List[int]:
    topo = d._topo
    out = []
    for a, (s, t) in topo.arc_slots.items():
        if (s[0] in inside) != (t[0] in inside):
            out.append(a)
    return sorted(out)


def _connected(d: Diagram, cs: Set[int]) -> bool:
    if not cs:
        return False
    topo = d._topo
    uf = UnionFind(cs)
    for s, t in topo.arc_slots.values():
        if s[0] in cs and t[0] in cs:
            uf.union(s[0], t[0])
    return len(uf.classes()) == 1


def _face_pred(d: Diagram) -> Dict[Slot, Slot]:
    topo = d._topo
    pred = {}
    for c in range(d.n_crossings):
        for k in range(4):
            c2, k2 = topo.twin[(c, k)]
            pred[(c2, (k2 - 1) % 4)] = (c, k)
    return pred


def _inside_slot(d: Diagram, inside: Set[int], a: int) -> Slot:
    s, t = d._topo.arc_slots[a]
    return s if s[0] in inside else t


def _order_ports(d: Diagram, inside: Set[int], cut: Sequence[int]) -> Tuple[int, ...]:
    """Cut arcs counterclockwise around the tangle, from the least label."""
    pred = _face_pred(d)
    cutset = set(cut)

    def ccw_next(a: int) -> int:
        # the inside face to the left of a, walked back to the previous cut arc
        c, k = _inside_slot(d, inside, a)
        corner = (c, k)
        for _ in range(4 * d.n_crossings + 1):
            c2, k2 = corner
            b = d.crossings[c2][(k2 + 1) % 4]
            if b in cutset and _inside_slot(d, inside, b) == (c2, (k2 + 1) % 4):
                return b
            corner = pred[corner]
        raise TangleError("tangle boundary walk did not close")

    ports = [min(cut)]
    while len(ports) < 4:
        ports.append(ccw_next(ports[-1]))
    if len(set(ports)) != 4 or ccw_next(ports[-1]) != ports[0]:
        raise TangleError("cut arcs do not bound a disk")
    return tuple(ports)


def _complement(d: Diagram, inside: Set[int]) -> Set[int]:
    topo = d._topo
    piece = topo.piece_of_label[d.crossings[min(inside)][0]]
    return set(topo.piece_crossings[piece]) - inside


def tangle_from_crossings(d: Diagram, crossings: Iterable[int]) -> TangleSpec:
    inside = set(crossings)
    if not inside or any(not 0 <= c < d.n_crossings for c in inside):
        raise TangleError("tangle needs known crossings")
    if not _connected(d, inside):
        raise TangleError("tangle crossings are not connected")
    cut = _cut_arcs(d, inside)
    if len(cut) != 4:
        raise TangleError(f"tangle has {len(cut)} boundary arcs, not 4")
    rest = _complement(d, inside)
    if not _connected(d, rest):
        raise TangleError("outside of the tangle is empty or disconnected")
    return TangleSpec(frozenset(inside), _order_ports(d, inside, cut))


def tangle_from_arcs(d: Diagram, arcs: Sequence[int]) -> TangleSpec:
    """The side of a 4-arc cut with fewer crossings (ties: the least crossing)."""
    arcs = set(int(a) for a in arcs)
    if len(arcs) != 4 or not arcs <= set(d.arcs):
        raise TangleError("need four distinct arc labels")
    topo = d._topo
    pieces = {topo.piece_of_label[a] for a in arcs}
    if len(pieces) != 1:
        raise TangleError("arcs lie on different pieces")
    cs = set(topo.piece_crossings[pieces.pop()])
    uf = UnionFind(cs)
    for a, (s, t) in topo.arc_slots.items():
        if a not in arcs and s[0] in cs:
            uf.union(s[0], t[0])
    sides = uf.classes()
    if len(sides) != 2:
        raise TangleError("arcs do not split the diagram into two sides")
    side = min(sides, key=lambda s: (len(s), min(s)))
    t = tangle_from_crossings(d, side)
    if set(t.ports) != arcs:
        raise TangleError("arcs are not the boundary of one side")
    return t


def find_tangles(d: Diagram, max_size: int = 3) -> List[TangleSpec]:
    """Every connected crossing set up to max_size with a four-arc boundary."""
    topo = d._topo
    nbrs: Dict[int, Set[int]] = {c: set() for c in range(d.n_crossings)}
    for s, t in topo.arc_slots.values():
        if s[0] != t[0]:
            nbrs[s[0]].add(t[0])
            nbrs[t[0]].add(s[0])
    seen: Set[FrozenSet[int]] = set()
    frontier = [frozenset([c]) for c in range(d.n_crossings)]
    while frontier:
        nxt = []
        for s in frontier:
            if s in seen:
                continue
            seen.add(s)
            if len(s) < max_size:
                for c in s:
                    for y in nbrs[c] - s:
                        nxt.append(s | {y})
        frontier = nxt
    out = []
    for s in seen:
        try:
            out.append(tangle_from_crossings(d, s))
        except TangleError:
            pass
    return sorted(out, key=lambda t: (len(t.crossings), sorted(t.crossings), t.ports))


def validate(d: Diagram, t: TangleSpec) -> TangleSpec:
    fresh = tangle_from_crossings(d, t.crossings)
    if fresh.ports != tuple(t.ports):
        raise TangleError("tangle ports do not match the diagram")
    return fresh


def boundary_regions(d: Diagram, t: TangleSpec) -> Dict[str, str]:
    """Regions N, W, S, E touching the tangle between consecutive ports."""
    inside = set(t.crossings)
    out = {}
    for name, a in zip("NWSE", t.ports):
        c, k = _inside_slot(d, inside, a)
        out[name] = d.region_of_corner(c, k)
    return out


def preserving_shading(d: Diagram, t: TangleSpec, kind: int) -> Optional[Shading]:
    """Shading whose G^adj a mutation of this kind keeps: E and W unshaded
    for kind 1, N and S unshaded for kind 2. None for kind 3."""
    if kind == 3:
        return None
    b = boundary_regions(d, t)
    want = b["E"] if kind == 1 else b["N"]
    for s in d.shadings():
        if want not in s.shaded:
            return s
    raise TangleError("no shading leaves the boundary region unshaded")


def _old_slot(kind: int, k: int) -> int:
    """Slot of the old inside crossing that lands in new slot k."""
    return k if kind == 3 else 3 - k


def mutate(d: Diagram, t: TangleSpec, kind: int) -> Diagram:
    if kind not in PERMS:
        raise ValueError("kind must be 1, 2 or 3")
    t = validate(d, t)
    perm = PERMS[kind]
    relabel = {t.ports[i]: t.ports[perm[i]] for i in range(4)}
    inside = set(t.crossings)
    crossings = []
    for c, x in enumerate(d.crossings):
        if c in inside:
            x = tuple(relabel.get(a, a) for a in x)
            if kind != 3:
                x = (x[3], x[2], x[1], x[0])
        crossings.append(x)
    topo = d._topo
    boundary_faces = {f for f, cs in topo.face_corners.items()
                      if any(c in inside for c, _ in cs) and any(c not in inside for c, _ in cs)}

    def sources(s: Slot):
        c, k = s
        if c not in inside:
            return [d.region_of_corner(c, k)]
        old = (c, (_old_slot(kind, k) - (0 if kind == 3 else 1)) % 4)
        if topo.corner_face[old] in boundary_faces:
            return []
        return [d.region_of_corner(*old)]

    circ = {}
    for o in d.circles:
        for side in "io":
            circ[f"{o}{side}"] = [d.region_of_face(f"{o}{side}")]
    return d.rebuild(crossings, d.circles, sources, circ)


def _in_slot_set(od: OrientedDiagram) -> Set[Slot]:
    out = set()
    for c in range(od.diagram.n_crossings):
        u, o = od.in_slots(c)
        out.update([(c, u), (c, o)])
    return out


def mutate_oriented(od: OrientedDiagram, t: TangleSpec, kind: int) -> Tuple[OrientedDiagram, bool]:
    """Mutate carrying orientations along. Returns (result, reversed_inside)."""
    d = od.diagram
    t = validate(d, t)
    new = mutate(d, t, kind)
    inside = set(t.crossings)
    old_in = _in_slot_set(od)
    want: Set[Slot] = set()
    for c, k in old_in:
        if c in inside:
            want.add((c, k if kind == 3 else 3 - k))
        else:
            want.add((c, k))
    ntopo = new._topo
    verdicts = set()
    for a in t.ports:
        s1, s2 = ntopo.arc_slots[a]
        verdicts.add((s1 in want) != (s2 in want))
    if len(verdicts) != 1:
        raise TangleError("boundary orientations cannot be matched")
    flip = verdicts == {False}
    if flip:
        want = {(c, (k + 2) % 4) if c in inside else (c, k) for c, k in want}
    old_circle_sign = {data: s for (kind_, data), s in zip(d._components[0], od.signs)
                       if kind_ == "o"}
    signs = []
    for kind_, data in new._components[0]:
        if kind_ == "o":
            signs.append(old_circle_sign[data])
        else:
            signs.append(1 if data[0] in want else -1)
    return OrientedDiagram(new, tuple(signs)), flip


def reverse_detached(od: OrientedDiagram, sublink: Iterable[int]) -> OrientedDiagram:
    comps = set(sublink)
    n = od.diagram.component_trace()
    if not comps or any(not 0 <= c < n for c in comps):
        raise DiagramError("unknown component index")
    for cls in od.diagram.detached_sublinks():
        inter = comps & set(cls)
        if inter and inter != set(cls):
            raise NotDetachedError(f"components {sorted(comps)} do not form a detached sublink")
    return od.reverse(comps)
