import pytest

from latkit.constructions import (adjoin_bottom, adjoin_top_unit, boolean_square, chain,
                                  diamond, direct_product, double_at_one, fep_envelope, fixture,
                                  ideal_completion, pentagon, prime_cover)
from latkit.core_order import PointedLattice, is_isomorphic, mask_of, structural_class
from latkit.errors import UnknownFixture


def test_adjoin_top_unit():
    assert is_isomorphic(adjoin_top_unit(chain(2)), chain(3)) is not None
    B = adjoin_top_unit(diamond())
    assert B.size == 6 and B.unit == B.top
    assert structural_class(B, "prime_pointed")
    assert is_isomorphic(adjoin_top_unit(chain(1)), chain(2)) is not None


def test_adjoin_bottom(n5_left):
    B = adjoin_bottom(n5_left)
    assert B.size == 6 and B.unit == 1 and B.bottom == 5
    assert is_isomorphic(adjoin_bottom(chain(2)), chain(3)) is not None


def test_double_at_one(n5_left):
    D, emb = double_at_one(chain(2))
    assert is_isomorphic(D, chain(3)) is not None and emb.verify()
    D, emb = double_at_one(n5_left)
    assert D.size == 6 and emb.verify()
    lower = [x for x in range(6) if D.lattice.leq(x, D.unit) and x != D.unit]
    assert len(lower) == 2
    assert is_isomorphic(double_at_one(chain(1))[0], chain(2)) is not None


def test_prime_cover(m3_unital):
    B, _ = prime_cover(chain(1))
    assert is_isomorphic(B, chain(2)) is not None
    B, _ = prime_cover(m3_unital)
    assert B.size == 6 and structural_class(B, "prime_pointed")
    P, _ = prime_cover(PointedLattice(boolean_square(), 1))
    assert P.size == 6 and structural_class(P, "prime_pointed")


def test_ideal_completion(n5):
    C, emb = ideal_completion(chain(2))
    assert emb.verify() and C.size == 2
    A = PointedLattice(n5, 1)
    C, emb = ideal_completion(A)
    assert emb.verify() and is_isomorphic(C, A) is not None


def test_fep_envelope(n5_unital, m3_unital):
    B, pos = fep_envelope(n5_unital, mask_of([2, 4]))
    assert B.size == 2 and set(pos) == {2, 4}
    B, _ = fep_envelope(n5_unital, 0b11111)
    assert is_isomorphic(B, n5_unital) is not None
    B, pos = fep_envelope(m3_unital, mask_of([1, 2]))
    assert B.size == 4 and set(pos) == {0, 1, 2, 4}
    with pytest.raises(ValueError):
        fep_envelope(n5_unital, 0)


def test_direct_product():
    P = direct_product([chain(2), chain(2)])
    assert is_isomorphic(P, fixture("boolean_square_unital")) is not None
    assert is_isomorphic(direct_product([fixture("n5_unital"), chain(1)]), fixture("n5_unital"))
    P = direct_product([chain(2), chain(2, 0)])
    assert P.unit not in (P.top, P.bottom)


def test_fixtures():
    A = fixture("n5_left_pointed")
    assert A.unit == 1 and A.lattice.meet[1][3] == 0
    assert fixture("n5_unital").unit == 4
    B = fixture("m3_plus_one")
    assert B.size == 6 and B.unit == B.top
    assert fixture("chain(4, 1)").unit == 1
    with pytest.raises(UnknownFixture):
        fixture("nope")
    with pytest.raises(UnknownFixture):
        fixture("chain(3, 5)")
