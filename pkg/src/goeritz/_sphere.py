"""Connected pieces glued along faces on the sphere.

A split drawing is a set of connected pieces, each with its own faces. A
region of the whole drawing is a group of faces merged across pieces. On the
sphere, the bipartite incidence graph between pieces and regions is a tree;
designating an outer region roots it. Both link diagrams and plane graphs use
this layer.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

from .unionfind import UnionFind

_NUM = re.compile(r"-?\d+")


def label_key(label: str):
    """Natural sort key for face / region labels."""
    parts = []
    for piece in str(label).split("|"):
        nums = tuple(int(x) for x in _NUM.findall(piece))
        parts.append((nums, piece))
    return tuple(parts)


def region_label(faces: Iterable[str]) -> str:
    return "|".join(sorted(faces, key=label_key))


class SphereLayout:
    """Regions and nesting of a set of pieces glued in a tree."""

    def __init__(self, piece_faces: Mapping[Hashable, Sequence[str]],
                 groups: Iterable[Iterable[str]], outer: str):
        self.piece_faces = {p: tuple(fs) for p, fs in piece_faces.items()}
        self.face_piece = {f: p for p, fs in self.piece_faces.items() for f in fs}
        uf = UnionFind(self.face_piece)
        for g in groups:
            g = list(g)
            for f in g:
                if f not in self.face_piece:
                    raise ValueError(f"unknown face {f!r}")
            for f in g[1:]:
                uf.union(g[0], f)
        self.regions: Dict[str, Tuple[str, ...]] = {}
        self.face_region: Dict[str, str] = {}
        for cls in uf.classes():
            lab = region_label(cls)
            self.regions[lab] = tuple(sorted(cls, key=label_key))
            for f in cls:
                self.face_region[f] = lab
        self._check_tree()
        self.outer = self.resolve_region(outer)

    def resolve_region(self, name: str) -> str:
        if name in self.regions:
            return name
        if name in self.face_region:
            return self.face_region[name]
        raise ValueError(f"unknown region {name!r}")

    def _check_tree(self):
        n_nodes = len(self.piece_faces) + len(self.regions)
        n_edges = len(self.face_piece)
        if n_edges != n_nodes - 1:
            raise ValueError("pieces and regions do not form a tree "
                             "(nesting cycle or faces glued twice)")
        seen_p, seen_r = set(), set()
        if not self.piece_faces:
            return
        start = next(iter(self.piece_faces))
        queue = deque([("p", start)])
        seen_p.add(start)
        while queue:
            kind, node = queue.popleft()
            if kind == "p":
                for f in self.piece_faces[node]:
                    r = self.face_region[f]
                    if r not in seen_r:
                        seen_r.add(r)
                        queue.append(("r", r))
            else:
                for f in self.regions[node]:
                    p = self.face_piece[f]
                    if p not in seen_p:
                        seen_p.add(p)
                        queue.append(("p", p))
        if len(seen_p) != len(self.piece_faces):
            raise ValueError("pieces are not all reachable from one another")

    @property
    def groups(self) -> Tuple[Tuple[str, ...], ...]:
        """Regions made of more than one face, sorted."""
        gs = [fs for fs in self.regions.values() if len(fs) > 1]
        return tuple(sorted(gs, key=lambda g: label_key(g[0])))

    def nesting(self) -> List[Tuple[Hashable, str, Hashable, str]]:
        """(child piece, child face, parent piece, parent face) rooted at outer.

        The root piece is the piece owning the least face of the outer region;
        every other piece hangs from the face through which it is reached.
        """
        out = []
        outer_faces = self.regions[self.outer]
        root_face = outer_faces[0]
        root = self.face_piece[root_face]
        seen_p = {root}
        seen_r = set()
        queue = deque([(root, None)])
        anchor = {self.outer: root_face}  # region -> parent face it is reached through
        seen_r.add(self.outer)
        for f in outer_faces[1:]:
            p = self.face_piece[f]
            if p not in seen_p:
                seen_p.add(p)
                out.append((p, f, root, root_face))
                queue.append((p, f))
        while queue:
            piece, entry_face = queue.popleft()
            for f in self.piece_faces[piece]:
                r = self.face_region[f]
                if r in seen_r:
                    continue
                seen_r.add(r)
                anchor[r] = f
                for g in self.regions[r]:
                    q = self.face_piece[g]
                    if q not in seen_p:
                        seen_p.add(q)
                        out.append((q, g, piece, f))
                        queue.append((q, g))
        return out


def reglue(new_piece_faces: Mapping[Hashable, Sequence[str]],
           sources: Mapping[str, Iterable[str]],
           old_outer: str) -> Tuple[List[List[str]], str]:
    """Regroup the faces of a rebuilt drawing.

    ``sources[f]`` lists the old region labels a new face ``f`` inherits
    from. New faces sharing an old region end up in one new region. Returns
    the groups and a face of the new outer region.
    """
    uf = UnionFind()
    for fs in new_piece_faces.values():
        for f in fs:
            uf.add(("new", f))
            for r in sources.get(f, ()):
                uf.union(("new", f), ("old", r))
    classes: Dict[Hashable, List[str]] = {}
    for fs in new_piece_faces.values():
        for f in fs:
            classes.setdefault(uf.find(("new", f)), []).append(f)
    groups = list(classes.values())
    key = ("old", old_outer)
    if key not in uf.parent:
        raise ValueError("outer region did not survive the rebuild")
    outer_faces = classes.get(uf.find(key))
    if not outer_faces:
        raise ValueError("outer region did not survive the rebuild")
    return groups, min(outer_faces, key=label_key)


class PieceView:
    """Uniform view of one connected piece for canonical coding.

    ``darts`` is empty for special pieces (a crossing-free circle or an
    isolated vertex); those are described by ``special`` and their faces.
    """

    def __init__(self, faces: Sequence[str], darts=(), twin=None, nxt=None,
                 deco=None, face_of=None, special=None):
        self.faces = tuple(faces)
        self.darts = tuple(darts)
        self.twin = twin
        self.nxt = nxt
        self.deco = deco
        self.face_of = face_of
        self.special = special


def canonical_code(pieces: Mapping[Hashable, PieceView], layout: SphereLayout):
    """Isomorphism-invariant code of a glued drawing with a marked outer region.

    Two drawings get equal codes exactly when an orientation-preserving
    homeomorphism of the sphere carries one onto the other, respecting dart
    decorations, nesting, and the outer region.
    """
    def region_code(region: str, exclude):
        codes = []
        for f in layout.regions[region]:
            p = layout.face_piece[f]
            if p == exclude:
                continue
            codes.append(piece_code(p, f))
        return tuple(sorted(codes))

    def piece_code(p, root_face: str):
        view = pieces[p]
        if view.special is not None:
            rest = tuple(region_code(layout.face_region[f], p)
                         for f in view.faces if f != root_face)
            return (0, view.special, rest)
        best = None
        starts = [d for d in view.darts if view.face_of(d) == root_face]
        for s in starts:
            idx = {s: 0}
            order = [s]
            i = 0
            while i < len(order):
                d = order[i]
                i += 1
                for e in (view.nxt(d), view.twin(d)):
                    if e not in idx:
                        idx[e] = len(order)
                        order.append(e)
            dart_code = tuple((idx[view.twin(d)], idx[view.nxt(d)], view.deco(d))
                              for d in order)
            face_first: Dict[str, int] = {}
            for d in order:
                face_first.setdefault(view.face_of(d), idx[d])
            child = tuple(region_code(layout.face_region[f], p)
                          for f in sorted(face_first, key=face_first.get)
                          if f != root_face)
            cand = (dart_code, child)
            if best is None or cand < best:
                best = cand
        return (1, best)

    return region_code(layout.outer, None)


def orbit(start, step: Callable):
    out = [start]
    x = step(start)
    while x != start:
        out.append(x)
        x = step(x)
    return out
