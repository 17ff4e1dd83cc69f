import pytest

from latkit.constructions import boolean_square, chain, diamond, fixture, ideal_completion, pentagon
from latkit.core_order import (PointedLattice, automorphisms, canonical_form, cone, element_class,
                               enumerate_one_filters, enumerate_one_proper_ideals, is_isomorphic,
                               lattice_from_leq, lattice_from_relation, mask_of, members,
                               structural_class)
from latkit.errors import NotALattice, NotAPartialOrder


def test_two_chain_tables():
    L = lattice_from_relation(2, [(0, 1)])
    assert L.meet == ((0, 0), (0, 1))
    assert L.join == ((0, 1), (1, 1))
    assert (L.bottom, L.top) == (0, 1)


def test_pentagon_tables(n5):
    bot, a, b, c, top = range(5)
    assert n5.meet[a][c] == bot
    assert n5.join[a][b] == top
    assert n5.leq(b, c) and not n5.leq(a, c)


def test_bowtie_is_not_a_lattice():
    with pytest.raises(NotALattice) as e:
        lattice_from_relation(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert e.value.witness is not None


def test_cycle_rejected():
    with pytest.raises(NotAPartialOrder):
        lattice_from_relation(3, [(0, 1), (1, 2), (2, 1)])


def test_leq_matrix_roundtrip(n5):
    assert lattice_from_leq(n5.leq_matrix).up == n5.up


def test_lattice_axioms_on_catalog(pointed6):
    for A in pointed6:
        L, n = A.lattice, A.size
        m, j = L.meet, L.join
        for x in range(n):
            assert m[x][x] == x == j[x][x]
            for y in range(n):
                assert m[x][y] == m[y][x] and j[x][y] == j[y][x]
                assert m[x][j[x][y]] == x and j[x][m[x][y]] == x
                for z in range(n):
                    assert m[x][m[y][z]] == m[m[x][y]][z]
                    assert j[x][j[y][z]] == j[j[x][y]][z]


def test_element_classes(n5_left):
    assert element_class(n5_left, 1, "join_prime")
    assert element_class(fixture("m3_plus_one"), 5, "join_prime")
    for A in (n5_left, fixture("m3_unital"), chain(3)):
        assert element_class(A, A.bottom, "join_irreducible")
        assert element_class(A, A.bottom, "join_prime")


def test_join_prime_implies_irreducible(pointed6):
    for A in pointed6:
        dist = structural_class(A, "distributive")
        for a in range(A.size):
            p = element_class(A, a, "join_prime")
            i = element_class(A, a, "join_irreducible")
            assert not p or i
            if dist:
                assert p == i


def test_conic_prime_iff_irreducible(pointed6):
    for A in pointed6:
        if structural_class(A, "conic"):
            assert structural_class(A, "prime_pointed") == structural_class(A, "irreducible_pointed")


def test_structural_classes(n5_left, n5_unital):
    assert not structural_class(n5_left, "conic")
    assert structural_class(n5_unital, "integral")
    assert not structural_class(n5_unital, "distributive")
    assert structural_class(PointedLattice(chain(3).lattice, 0), "dually_integral")
    assert structural_class(chain(4, 1), "linear")


def test_cones(n5_left):
    neg = cone(n5_left, "negative")
    assert neg.size == 2 and neg.unit == neg.top
    assert cone(chain(2), "positive").size == 1
    assert cone(chain(2, 0), "negative").size == 1


def test_one_filters(n5_left):
    assert enumerate_one_filters(chain(2), prime_only=True) == [0b10, 0b11]
    up_a = n5_left.lattice.up[1]
    assert sorted(enumerate_one_filters(n5_left, prime_only=True)) == sorted([up_a, 0b11111])
    assert enumerate_one_filters(chain(2, 0)) == [0b11]


def test_one_proper_ideals(n5_left):
    assert enumerate_one_proper_ideals(chain(2)) == [0b01]
    assert enumerate_one_proper_ideals(fixture("m3_unital"), prime_only=True) == []
    assert enumerate_one_proper_ideals(n5_left, prime_only=True) == [n5_left.lattice.down[3]]


def test_prime_ideals_complement_prime_filters(pointed6):
    for A in pointed6:
        full = (1 << A.size) - 1
        ideals = enumerate_one_proper_ideals(A, prime_only=True)
        filters = [F for F in enumerate_one_filters(A, prime_only=True) if F != full]
        assert sorted(full & ~I for I in ideals) == sorted(filters)


def test_isomorphism():
    assert is_isomorphic(chain(2), chain(2)) == {0: 0, 1: 1}
    assert is_isomorphic(chain(2), chain(2, 0)) is None
    A = fixture("n5_unital")
    assert is_isomorphic(ideal_completion(A)[0], A) is not None


def test_canonical_form_invariant_under_relabelling(pointed6):
    import random
    rng = random.Random(7)
    for A in pointed6:
        order = list(range(A.size))
        rng.shuffle(order)
        B = A.relabel(order)
        assert canonical_form(A.lattice, A.unit)[0] == canonical_form(B.lattice, B.unit)[0]
        iso = is_isomorphic(A, B)
        assert iso is not None and all(B.lattice.meet[iso[x]][iso[y]] == iso[A.lattice.meet[x][y]]
                                       for x in range(A.size) for y in range(A.size))


def test_automorphisms():
    assert len(automorphisms(diamond())) == 6
    assert len(automorphisms(fixture("m3_unital"))) == 6
    assert len(automorphisms(boolean_square())) == 2
    assert len(automorphisms(PointedLattice(boolean_square(), 1))) == 1


def test_mask_helpers():
    assert members(mask_of([0, 3, 5])) == [0, 3, 5]
