import json

import pytest

from goeritz import parse_pd
from goeritz.catalog import CATALOG, entry
from goeritz.generate import random_diagram
from goeritz.invariants import InvariantMismatch, link_invariants
from goeritz.matrices import LabeledSymMatrix, adjusted_goeritz_matrix, bijection_equal
from goeritz.mutate import find_tangles, mutate
from goeritz.normalize import normalize

from conftest import rng_for


@pytest.mark.parametrize("name,mu,det", [("unknot", 1, 1), ("hopf", 2, 2), ("trefoil", 1, 3),
                                         ("figure-eight", 1, 5), ("unlink2", 2, 0)])
def test_catalog_values(name, mu, det):
    r = link_invariants(entry(name).diagram())
    assert r.mu == r.mu_trace == mu
    assert r.det == det
    assert set(r.shadings) == {"s", "u"}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_entries(name):
    e = CATALOG[name]
    d = e.diagram()
    assert len(d.regions) == e.regions
    assert link_invariants(d).mu == e.mu
    if e.matrix is not None:
        m = adjusted_goeritz_matrix(d, d.shading(e.shading))
        assert bijection_equal(m, LabeledSymMatrix.from_rows(e.matrix))[0]


def test_split_diagram_unadjusted_dets():
    r = link_invariants(entry("unlink2").diagram())
    assert sorted(x.det for x in r.shadings.values()) == [0, 1]
    assert all(x.adjusted_det == 0 for x in r.shadings.values())


def test_unknown_entry():
    with pytest.raises(KeyError):
        entry("nope")


def test_report_renderings():
    r = link_invariants(entry("trefoil").diagram())
    obj = json.loads(json.dumps(r.to_json()))
    assert obj["mu"] == 1 and obj["det"] == 3
    assert "det: 3" in r.to_text()


def test_mismatch_is_an_error(monkeypatch):
    import goeritz.invariants as inv
    monkeypatch.setattr(inv, "gf2_nullity", lambda m: 99)
    with pytest.raises(InvariantMismatch):
        inv.link_invariants(parse_pd("O"))


def test_invariant_under_mutation_and_normalize():
    rng = rng_for("invariants")
    for _ in range(30):
        d = random_diagram(rng, max_edges=5)
        base = link_invariants(d).invariant_part()
        for t in find_tangles(d, 2)[:3]:
            for k in (1, 2, 3):
                assert link_invariants(mutate(d, t, k)).invariant_part() == base
        for s in d.shadings():
            assert link_invariants(normalize(d, s)[0]).invariant_part() == base
