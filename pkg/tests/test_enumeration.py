import pytest

from latkit.core_order import canonical_form, is_isomorphic
from latkit.enumeration import (Catalog, catalog_audit, enumerate_lattices, enumerate_pointed,
                                lattices_up_to, naive_lattice_count, pointed_up_to, threads)
from latkit.errors import CapacityExceeded

LATTICE_COUNTS = [1, 1, 1, 2, 5, 15, 53]
POINTED_COUNTS = [1, 2, 3, 7, 21, 75]


def test_lattice_counts():
    assert [len(enumerate_lattices(n)) for n in range(1, 8)] == LATTICE_COUNTS


@pytest.mark.parametrize("n", range(1, 7))
def test_oracle_matches(n):
    assert naive_lattice_count(n) == LATTICE_COUNTS[n - 1]


def test_pointed_counts():
    assert [len(enumerate_pointed(n)) for n in range(1, 7)] == POINTED_COUNTS
    assert len(pointed_up_to(6)) == sum(POINTED_COUNTS)


def test_no_duplicates():
    for n in range(1, 7):
        keys = [canonical_form(A.lattice, A.unit)[0] for A in enumerate_pointed(n)]
        assert len(set(keys)) == len(keys)
        Ls = enumerate_lattices(n).algebras
        for i, A in enumerate(Ls):
            for B in Ls[i + 1:]:
                assert is_isomorphic(A, B) is None


def test_capacity():
    with pytest.raises(CapacityExceeded):
        enumerate_lattices(9)
    with pytest.raises(ValueError):
        enumerate_lattices(0)


def test_catalog_add():
    c = lattices_up_to(3) + lattices_up_to(2)
    assert isinstance(c, Catalog) and len(c) == 5 and c.max_size == 3


def test_catalog_audit_reports_failures():
    cat = pointed_up_to(3)
    res = catalog_audit(cat, [("unit_is_top", lambda A: A.unit == A.top), "fact_semiconic"])
    r = res["unit_is_top"]
    assert r.passed == 3 and r.failed == 3 and not r.ok
    assert r.failures[0].startswith("kind pointed")
    assert res["fact_semiconic"].ok


def test_threads_env(monkeypatch):
    monkeypatch.delenv("LATKIT_THREADS", raising=False)
    assert threads() == 1
    monkeypatch.setenv("LATKIT_THREADS", "3")
    assert threads() == 3
    monkeypatch.setenv("LATKIT_THREADS", "x")
    assert threads() == 1
