"""Union-find, plain and with parity labels."""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Tuple


class UnionFind:
    def __init__(self, items=()):
        self.parent: Dict[Hashable, Hashable] = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def classes(self) -> List[list]:
        out: Dict[Hashable, list] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


class ParityUnionFind:
    """Union-find over variables x_v in GF(2) with constraints x_a + x_b = p.

    ``constrain`` returns None when consistent, otherwise the list of
    constraints ``(a, b, p)`` forming the contradicting cycle.
    """

    def __init__(self):
        self.parent: Dict[Hashable, Hashable] = {}
        self.parity: Dict[Hashable, int] = {}  # parity to parent
        # edge through which each node was attached, for cycle reports
        self.via: Dict[Hashable, Optional[Tuple[Hashable, Hashable, int]]] = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            self.via[x] = None

    def find(self, x) -> Tuple[Hashable, int]:
        self.add(x)
        p = 0
        node = x
        while self.parent[node] != node:
            p ^= self.parity[node]
            node = self.parent[node]
        return node, p

    def _path(self, x) -> list:
        out = []
        while self.parent[x] != x:
            out.append(self.via[x])
            x = self.parent[x]
        return out

    def constrain(self, a, b, p: int):
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb == p:
                return None
            cycle = [(a, b, p)]
            pa_path, pb_path = self._path(a), self._path(b)
            # drop the common tail shared by both root paths
            while pa_path and pb_path and pa_path[-1] == pb_path[-1]:
                pa_path.pop()
                pb_path.pop()
            return cycle + pa_path + pb_path
        # no path compression, so recorded attachment edges stay meaningful
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ p
        self.via[rb] = (a, b, p)
        return None

    def value(self, x) -> int:
        return self.find(x)[1]
