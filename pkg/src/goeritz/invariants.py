"""Mutation invariants read off the adjusted Goeritz matrices."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict

from .diagram import Diagram
from .matrices import adjusted_goeritz_matrix, gf2_nullity, goeritz_matrix, reduced_determinant
from .tait import betas


class InvariantMismatch(RuntimeError):
    """GF(2) nullity and strand tracing disagree on the component count."""


@dataclass
class ShadingReport:
    beta_s: int
    beta_u: int
    size: int           # unshaded regions
    adjusted_size: int
    nullity: int
    det: int            # reduced determinant of the unadjusted matrix
    adjusted_det: int   # the same for the adjusted matrix


@dataclass
class InvariantReport:
    mu: int
    mu_trace: int
    det: int
    shadings: Dict[str, ShadingReport] = field(default_factory=dict)

    def invariant_part(self):
        return self.mu, self.det

    def to_json(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [f"mu: {self.mu} (nullity), {self.mu_trace} (traced)", f"det: {self.det}"]
        for k, r in self.shadings.items():
            lines.append(f"shading {k}: beta_s={r.beta_s} beta_u={r.beta_u} "
                         f"size={r.size} adjusted={r.adjusted_size} nullity={r.nullity} "
                         f"det={r.det} adjusted_det={r.adjusted_det}")
        return "\n".join(lines)


def link_invariants(d: Diagram) -> InvariantReport:
    mu_trace = d.component_trace()
    reps = {}
    for s in d.shadings():
        g = goeritz_matrix(d, s)
        adj = adjusted_goeritz_matrix(d, s)
        bs, bu = betas(d, s)
        nul = gf2_nullity(adj)
        if nul != mu_trace:
            raise InvariantMismatch(
                f"shading {s.kind}: nullity {nul} but {mu_trace} traced components")
        reps[s.kind] = ShadingReport(bs, bu, len(g), len(adj), nul, reduced_determinant(g),
                                     reduced_determinant(adj))
    # the padding makes this 0 for split diagrams, so both shadings agree
    dets = {r.adjusted_det for r in reps.values()}
    if len(dets) != 1:
        raise InvariantMismatch(f"shadings disagree on the determinant: {sorted(dets)}")
    return InvariantReport(mu_trace, mu_trace, dets.pop(), reps)
