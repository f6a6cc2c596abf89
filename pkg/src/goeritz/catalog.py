"""Bundled example diagrams with their expected data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .diagram import Diagram, parse_pd


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pd: str
    regions: int
    mu: int
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None   # adjusted G under `shading`
    shading: str = "s"
    note: str = ""

    def diagram(self) -> Diagram:
        return parse_pd(self.pd)


TREFOIL_MATRIX = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))

# The congruence of the pretzel example: U M U^T = R.
CONGRUENCE_U = ((1, 2, 0, 2, 0), (0, 1, 0, 0, 0), (0, -2, 1, 0, 0),
                (0, 0, 0, 1, 0), (0, 0, 0, -2, 1))
UNKNOT5_MATRIX = ((0, 0, 1, 0, -1), (0, 1, -1, 0, 0), (1, -1, 0, 0, 0),
                  (0, 0, 0, -1, 1), (-1, 0, 0, 1, 0))
PRETZEL_SUM_MATRIX = ((0, 2, -5, -2, 5), (2, 1, -3, 0, 0), (-5, -3, 8, 0, 0),
                      (-2, 0, 0, -1, 3), (5, 0, 0, 3, -8))

# Weighted plane graphs the two five-region diagrams were drawn from. The
# unknot is a weighted path; the pretzel sum is two triangles sharing a vertex.
UNKNOT5_GRAPH = {
    "vertices": [1, 2, 3, 4, 5],
    "edges": [[2, 3, 1], [1, 3, -1], [1, 5, 1], [4, 5, -1]],
    "rotation": {"1": [3, 5], "2": [3], "3": [2, 1], "4": [5], "5": [1, 4]},
}
PRETZEL_SUM_GRAPH = {
    "vertices": [1, 2, 3, 4, 5],
    "edges": [[1, 2, -2], [1, 3, 5], [2, 3, 3], [1, 4, 2], [1, 5, -5], [4, 5, -3]],
    "rotation": {"1": [2, 3, 4, 5], "2": [3, 1], "3": [1, 2], "4": [5, 1], "5": [1, 4]},
}

_ENTRIES = [
    CatalogEntry("unknot", "O", 2, 1, ((0,),)),
    CatalogEntry("hopf", "X(1,3,2,4) X(3,1,4,2)", 4, 2),
    CatalogEntry("trefoil", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", 5, 1, TREFOIL_MATRIX,
                 note="the mirror whose shaded-outer matrix is the positive Laplacian"),
    CatalogEntry("figure-eight", "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)", 6, 1),
    CatalogEntry("unlink2", "O O", 3, 2),
    CatalogEntry(
        "unknot5",
        "X(3,3,4,5) X(4,1,2,5) X(2,1,7,8) X(7,6,6,8)\nouter 1.2.3.4.5.6.7.8",
        6, 1, UNKNOT5_MATRIX, note="trivial knot with five unshaded regions"),
    CatalogEntry(
        "pretzel-sum",
        "X(18,1,14,19) X(17,2,1,18) X(3,2,24,23) X(4,3,23,22) X(5,4,22,21) "
        "X(6,5,21,20) X(7,6,20,27) X(15,19,27,26) X(16,15,26,25) X(17,16,25,24) "
        "X(8,7,32,31) X(9,8,31,30) X(36,10,9,37) X(35,11,10,36) X(34,12,11,35) "
        "X(33,13,12,34) X(40,14,13,33) X(39,28,32,40) X(38,29,28,39) X(37,30,29,38)"
        "\nouter 2.17.24",
        22, 1, PRETZEL_SUM_MATRIX,
        note="connected sum of the (5,3,-2) and (-5,-3,2) pretzel knots"),
]

CATALOG: Dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"no catalog entry {name!r}; known: {', '.join(CATALOG)}") from None
