"""Checkerboard (Tait) graphs and Whitney twists."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

from ._sphere import label_key
from .diagram import Diagram, DiagramError, Shading
from .unionfind import UnionFind


@dataclass(frozen=True)
class Multigraph:
    """Abstract multigraph; edges are ``(id, u, v)`` with loops allowed."""

    vertices: Tuple[Hashable, ...]
    edges: Tuple[Tuple[Hashable, Hashable, Hashable], ...]

    @property
    def beta(self) -> int:
        uf = UnionFind(self.vertices)
        for _, u, v in self.edges:
            uf.union(u, v)
        return len(uf.classes())

    def degree(self, x) -> int:
        return sum((u == x) + (v == x) for _, u, v in self.edges)

    def dump(self) -> str:
        lines = ["vertices: " + " ".join(str(v) for v in self.vertices)]
        for e, u, v in self.edges:
            lines.append(f"edge {e}: {u} -- {v}")
        lines.append(f"components: {self.beta}")
        return "\n".join(lines)


TaitGraph = Multigraph


def tait_graph(d: Diagram, sigma: Shading, color: str) -> Multigraph:
    """Graph on shaded (``color='s'``) or unshaded regions, one edge per crossing."""
    if color not in ("s", "u"):
        raise ValueError("color must be 's' or 'u'")
    want_shaded = color == "s"
    verts = [r for r in d.regions if (r in sigma.shaded) == want_shaded]
    edges = []
    for c in range(d.n_crossings):
        k0 = d.unshaded_corner(sigma, c) + (1 if want_shaded else 0)
        ends = sorted((d.region_of_corner(c, k0), d.region_of_corner(c, k0 + 2)), key=label_key)
        edges.append((c, ends[0], ends[1]))
    return Multigraph(tuple(sorted(verts, key=label_key)), tuple(edges))


def betas(d: Diagram, sigma: Shading) -> Tuple[int, int]:
    """(beta_s, beta_u)."""
    return tait_graph(d, sigma, "s").beta, tait_graph(d, sigma, "u").beta


@dataclass(frozen=True)
class WhitneyTwistSpec:
    """Gamma_2 given by its edge ids (and optionally extra vertices); v, w the cut pair."""

    gamma2_edges: FrozenSet[Hashable]
    v: Hashable
    w: Hashable
    gamma2_vertices: FrozenSet[Hashable] = frozenset()


def _split(g: Multigraph, spec: WhitneyTwistSpec):
    ids = {e for e, _, _ in g.edges}
    if not spec.gamma2_edges <= ids:
        raise ValueError("Gamma_2 names unknown edges")
    if spec.v not in g.vertices or spec.w not in g.vertices:
        raise ValueError("cut vertices not in graph")
    e2 = [x for x in g.edges if x[0] in spec.gamma2_edges]
    e1 = [x for x in g.edges if x[0] not in spec.gamma2_edges]
    v2 = {spec.v, spec.w} | set(spec.gamma2_vertices)
    for _, a, b in e2:
        v2.update((a, b))
    v1 = {a for _, a, b in e1} | {b for _, a, b in e1}
    v1 |= set(g.vertices) - v2
    v1 |= {spec.v, spec.w}
    if v1 & v2 != {spec.v, spec.w}:
        raise ValueError("Gamma_1 and Gamma_2 share vertices other than v, w")
    return e1, e2


def whitney_twist(g: Multigraph, spec: WhitneyTwistSpec) -> Multigraph:
    """Exchange the v/w incidences of the Gamma_2 edges."""
    e1, e2 = _split(g, spec)
    swap = {spec.v: spec.w, spec.w: spec.v}
    twisted = [(e, swap.get(a, a), swap.get(b, b)) for e, a, b in e2]
    order = {e: i for i, (e, _, _) in enumerate(g.edges)}
    edges = sorted(e1 + twisted, key=lambda x: order[x[0]])
    return Multigraph(g.vertices, tuple(edges))


def random_twist_spec(g: Multigraph, rng) -> WhitneyTwistSpec:
    """A valid spec: Gamma_2 is a random union of pieces of g - {v, w}."""
    verts = list(g.vertices)
    v = rng.choice(verts)
    w = v if rng.random() < 0.15 else rng.choice(verts)
    cut = {v, w}
    uf = UnionFind(x for x in verts if x not in cut)
    for _, a, b in g.edges:
        if a not in cut and b not in cut:
            uf.union(a, b)
    chosen = {cls[0] for cls in uf.classes() if rng.random() < 0.5}
    chosen_roots = {uf.find(x) for x in chosen}
    e2 = set()
    for e, a, b in g.edges:
        inner = [x for x in (a, b) if x not in cut]
        if inner:
            if uf.find(inner[0]) in chosen_roots:
                e2.add(e)
        elif rng.random() < 0.5:  # edges among {v, w} go either way
            e2.add(e)
    extra = frozenset(x for x in verts if x not in cut and uf.find(x) in chosen_roots)
    return WhitneyTwistSpec(frozenset(e2), v, w, extra)
