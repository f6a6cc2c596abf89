"""Goeritz-type matrices on unordered label sets, over Z or Z[i]."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ._sphere import label_key
from .diagram import Diagram, OrientedDiagram, Shading
from .gaussian import GaussianInt, entry_key
from .tait import tait_graph

PAD = "#pad"


@dataclass(frozen=True)
class LabeledSymMatrix:
    labels: Tuple[str, ...]
    rows: Tuple[tuple, ...]

    @classmethod
    def from_entries(cls, labels: Sequence[str], entries: Mapping[Tuple[str, str], object]):
        labels = tuple(sorted(labels, key=label_key))
        rows = tuple(tuple(entries.get((a, b), 0) for b in labels) for a in labels)
        return cls(labels, rows)

    @classmethod
    def from_rows(cls, rows, labels: Optional[Sequence[str]] = None):
        n = len(rows)
        labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        m = cls(labels, tuple(tuple(r) for r in rows))
        if not m.is_symmetric():
            raise ValueError("matrix is not symmetric")
        return m

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def entry(self, a: str, b: str):
        return self.rows[self.index(a)][self.index(b)]

    def is_symmetric(self) -> bool:
        n = len(self.rows)
        return all(len(r) == n for r in self.rows) and all(
            self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def row_sums_zero(self) -> bool:
        return all(sum(r, 0) == 0 for r in self.rows)

    def is_gaussian(self) -> bool:
        return any(isinstance(x, GaussianInt) and x.im for r in self.rows for x in r)

    def map_entries(self, fn) -> "LabeledSymMatrix":
        return LabeledSymMatrix(self.labels, tuple(tuple(fn(x) for x in r) for r in self.rows))

    # -- rendering -------------------------------------------------------------

    def to_text(self) -> str:
        if not self.labels:
            return "(empty)"
        cells = [[""] + list(self.labels)] + [
            [lab] + [str(x) for x in row] for lab, row in zip(self.labels, self.rows)]
        width = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def to_json(self) -> dict:
        return {"labels": list(self.labels),
                "rows": [[_json_entry(x) for x in r] for r in self.rows]}

    def digest(self) -> str:
        """Short hash of the canonical form, stable under relabeling."""
        _, rows = canonical_form(self)
        keys = tuple(tuple(entry_key(x) for x in r) for r in rows)
        return hashlib.sha256(repr(keys).encode()).hexdigest()[:12]


def _json_entry(x):
    if isinstance(x, GaussianInt):
        return x.re if not x.im else {"re": x.re, "im": x.im}
    return int(x)


def _parse_entry(x):
    if isinstance(x, dict):
        return GaussianInt(int(x.get("re", 0)), int(x.get("im", 0)))
    if isinstance(x, str):
        g = GaussianInt.parse(x)
        return g if g.im else g.re
    return int(x)


def matrix_from_json(obj) -> LabeledSymMatrix:
    """Accept ``{"labels": [...], "rows": [...]}`` or a bare list of rows."""
    if isinstance(obj, list):
        obj = {"rows": obj}
    rows = [[_parse_entry(x) for x in r] for r in obj["rows"]]
    return LabeledSymMatrix.from_rows(rows, obj.get("labels"))


# -- constructors ------------------------------------------------------------------


def _weighted_matrix(d: Diagram, sigma: Shading, weight) -> LabeledSymMatrix:
    labels = d.unshaded_regions(sigma)
    ent: Dict[Tuple[str, str], object] = {}
    for c in range(d.n_crossings):
        k0 = d.unshaded_corner(sigma, c)
        r1, r2 = d.region_of_corner(c, k0), d.region_of_corner(c, k0 + 2)
        if r1 == r2:
            continue
        x = weight(c)
        ent[(r1, r2)] = ent.get((r1, r2), 0) - x
        ent[(r2, r1)] = ent.get((r2, r1), 0) - x
    for a in labels:
        ent[(a, a)] = -sum((ent.get((a, b), 0) for b in labels if b != a), 0)
    return LabeledSymMatrix.from_entries(labels, ent)


def goeritz_matrix(d: Diagram, sigma: Shading) -> LabeledSymMatrix:
    return _weighted_matrix(d, sigma, lambda c: d.goeritz_index(sigma, c))


def oriented_goeritz_matrix(od: OrientedDiagram, sigma: Shading) -> LabeledSymMatrix:
    m = _weighted_matrix(od.diagram, sigma, lambda c: od.checkerboard_writhe(sigma, c))
    return m.map_entries(GaussianInt.coerce)


def reduce(m: LabeledSymMatrix, drop: str) -> LabeledSymMatrix:
    if drop not in m.labels:
        raise KeyError(f"unknown label {drop!r}")
    i = m.index(drop)
    labels = m.labels[:i] + m.labels[i + 1:]
    rows = tuple(r[:i] + r[i + 1:] for j, r in enumerate(m.rows) if j != i)
    return LabeledSymMatrix(labels, rows)


def adjust(m: LabeledSymMatrix, beta_s: int) -> LabeledSymMatrix:
    """Pad with beta_s - 1 zero rows and columns."""
    if beta_s < 1:
        raise ValueError("beta_s must be at least 1")
    k = beta_s - 1
    if k == 0:
        return m
    zero = GaussianInt(0) if m.rows and isinstance(m.rows[0][0], GaussianInt) else 0
    labels = m.labels + tuple(f"{PAD}{i + 1}" for i in range(k))
    n = len(labels)
    rows = tuple(tuple(r) + (zero,) * k for r in m.rows) + tuple((zero,) * n for _ in range(k))
    return LabeledSymMatrix(labels, rows)


def adjusted_goeritz_matrix(d: Diagram, sigma: Shading) -> LabeledSymMatrix:
    return adjust(goeritz_matrix(d, sigma), tait_graph(d, sigma, "s").beta)


def adjusted_oriented_goeritz_matrix(od: OrientedDiagram, sigma: Shading) -> LabeledSymMatrix:
    return adjust(oriented_goeritz_matrix(od, sigma), tait_graph(od.diagram, sigma, "s").beta)


# -- canonical form -------------------------------------------------------------------


def _refine(n: int, key, colors: List[int]) -> List[int]:
    while True:
        sigs = []
        for v in range(n):
            nb = sorted((colors[u], key[v][u]) for u in range(n) if u != v and key[v][u] != (0, 0))
            sigs.append((colors[v], key[v][v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _twins(key, u: int, v: int) -> bool:
    if key[u][u] != key[v][v] or key[u][v] != key[v][u]:
        return False
    return all(key[u][x] == key[v][x] for x in range(len(key)) if x != u and x != v)


def canonical_form(m: LabeledSymMatrix) -> Tuple[Tuple[str, ...], tuple]:
    """Lexicographically least relabeled matrix and the label order achieving it.

    Search by equitable refinement and individualization; mutually
    interchangeable rows (twins) are tried once per cell.
    """
    n = len(m.labels)
    key = [[entry_key(x) for x in r] for r in m.rows]
    best: List[Optional[tuple]] = [None, None]

    def leaf(colors):
        order = sorted(range(n), key=lambda v: colors[v])
        mat = tuple(tuple(key[a][b] for b in order) for a in order)
        if best[0] is None or mat < best[0]:
            best[0], best[1] = mat, order

    def search(colors):
        colors = _refine(n, key, colors)
        counts: Dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        split = [c for c, k in counts.items() if k > 1]
        if not split:
            leaf(colors)
            return
        target = min(split)
        cell = [v for v in range(n) if colors[v] == target]
        tried: List[int] = []
        for v in cell:
            if any(_twins(key, u, v) for u in tried):
                continue
            tried.append(v)
            search([2 * c + (0 if x == v or c != target else 1) for x, c in enumerate(colors)])

    if n:
        search([0] * n)
        order = best[1]
    else:
        order = []
    labels = tuple(m.labels[i] for i in order)
    rows = tuple(tuple(m.rows[a][b] for b in order) for a in order)
    return labels, rows


def bijection_equal(a: LabeledSymMatrix, b: LabeledSymMatrix):
    """(True, label map a -> b) when a relabeling carries a onto b, else (False, None)."""
    if len(a) != len(b):
        return False, None
    la, ra = canonical_form(a)
    lb, rb = canonical_form(b)
    if ra != rb:
        return False, None
    return True, dict(zip(la, lb))


# -- exact linear algebra --------------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [[int(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _as_int_rows(m) -> List[List[int]]:
    rows = m.rows if isinstance(m, LabeledSymMatrix) else m
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, GaussianInt):
                if x.im:
                    raise ValueError("integer matrix required")
                x = x.re
            row.append(int(x))
        out.append(row)
    return out


def reduced_determinant(m: LabeledSymMatrix) -> int:
    """|det| after deleting any one row and column (1 for a 1x1 matrix)."""
    if not m.labels:
        raise ValueError("empty matrix")
    return abs(bareiss_det(_as_int_rows(reduce(m, m.labels[0]))))


def gf2_nullity(m) -> int:
    rows = _as_int_rows(m)
    n = len(rows)
    vecs = [sum(1 << j for j, x in enumerate(r) if x % 2) for r in rows]
    rank = 0
    for bit in range(len(rows[0]) if rows else 0):
        mask = 1 << bit
        piv = next((i for i in range(rank, n) if vecs[i] & mask), None)
        if piv is None:
            continue
        vecs[rank], vecs[piv] = vecs[piv], vecs[rank]
        for i in range(n):
            if i != rank and vecs[i] & mask:
                vecs[i] ^= vecs[rank]
        rank += 1
    return n - rank


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def congruence_verify(U, a, b) -> bool:
    """U a U^T == b with det U = +-1, in exact integers."""
    u = _as_int_rows(U)
    ar, br = _as_int_rows(a), _as_int_rows(b)
    n = len(u)
    if any(len(r) != n for r in u) or len(ar) != n or len(br) != n:
        raise ValueError("dimension mismatch")
    if abs(bareiss_det(u)) != 1:
        return False
    return matmul(matmul(u, ar), transpose(u)) == br
