import pytest

from goeritz.gaussian import I, GaussianInt, entry_key
from goeritz.unionfind import ParityUnionFind, UnionFind


def test_gaussian_arithmetic():
    a = GaussianInt(2, -1)
    assert a + 1 == GaussianInt(3, -1)
    assert a * I == GaussianInt(1, 2)
    assert I * I == -1
    assert -a == GaussianInt(-2, 1)


@pytest.mark.parametrize("text,value", [("3", GaussianInt(3)), ("-i", GaussianInt(0, -1)),
                                        ("2-3i", GaussianInt(2, -3)), ("4i", GaussianInt(0, 4))])
def test_gaussian_parse_round_trip(text, value):
    assert GaussianInt.parse(text) == value
    assert GaussianInt.parse(str(value)) == value


def test_entry_key_treats_int_and_real_gaussian_alike():
    assert entry_key(3) == entry_key(GaussianInt(3))


def test_union_find_classes():
    uf = UnionFind(range(5))
    uf.union(0, 1)
    uf.union(3, 4)
    assert sorted(map(sorted, uf.classes())) == [[0, 1], [2], [3, 4]]


def test_parity_union_find_detects_odd_cycle():
    p = ParityUnionFind()
    for x in "abc":
        p.add(x)
    assert p.constrain("a", "b", 1) is None
    assert p.constrain("b", "c", 1) is None
    assert p.value("a") == p.value("c")
    assert p.constrain("a", "c", 1) is not None


def test_parity_union_find_consistent_constraints():
    p = ParityUnionFind()
    for x in range(4):
        p.add(x)
    assert p.constrain(0, 1, 0) is None
    assert p.constrain(1, 2, 1) is None
    assert p.constrain(0, 2, 1) is None
    assert p.value(0) ^ p.value(2) == 1
