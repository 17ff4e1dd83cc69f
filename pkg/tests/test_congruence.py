import pytest

from latkit.congruence import (Congruence, all_congruences, alpha_n_counterexample, alpha_n_holds,
                               decomposability_counterexample, decomposable_at_1,
                               generated_congruence, is_semi_K, join_semidistributive_at_1,
                               pointed_n5_embedding, positive_kernel, principal_congruence,
                               quotient, relatively_subdirectly_irreducible, semiconic_profile,
                               theorem_semiconic_spp_profile, theorem_spp_profile, theta_conic,
                               theta_plus, up_distributive_at_1)
from latkit.constructions import adjoin_top_unit, chain, diamond, fixture
from latkit.core_order import PointedLattice, is_isomorphic, mask_of
from latkit.errors import NotAPrimeOneFilter

BOT, A, B, C, TOP = range(5)


def blocks(th):
    return sorted(map(sorted, th.blocks()))


def test_principal_examples(n5_unital):
    assert principal_congruence(n5_unital, A, A).is_identity()
    assert blocks(principal_congruence(chain(3), 1, 2)) == [[0], [1, 2]]
    assert blocks(principal_congruence(n5_unital, B, C)) == [[BOT], [A], [B, C], [TOP]]


def test_all_congruences():
    assert all_congruences(chain(1)) == [Congruence.identity(1)]
    assert len(all_congruences(chain(2))) == 2
    assert len(all_congruences(fixture("m3_unital"))) == 2
    assert len(all_congruences(chain(3))) == 4


def test_quotient(n5_unital):
    Q, _ = quotient(n5_unital, Congruence.identity(5))
    assert is_isomorphic(Q, n5_unital) is not None
    assert quotient(n5_unital, Congruence.total(5))[0].size == 1
    th = principal_congruence(n5_unital, C, TOP)
    assert blocks(th) == [[BOT, A], [B, C, TOP]]
    Q, qmap = quotient(n5_unital, th)
    assert Q.size == 2 and qmap[TOP] == Q.unit == Q.top
    assert positive_kernel(n5_unital, th) == mask_of([B, C, TOP])


def test_positive_kernel_extremes(n5_unital):
    assert positive_kernel(n5_unital, Congruence.identity(5)) == mask_of([TOP])
    assert positive_kernel(n5_unital, Congruence.total(5)) == 0b11111


def test_theta_plus(n5_left):
    up1 = n5_left.lattice.up[n5_left.unit]
    assert theta_plus(n5_left, up1).is_identity()
    assert theta_plus(chain(2), 0b11).is_total()
    with pytest.raises(NotAPrimeOneFilter):
        theta_plus(fixture("m3_unital"), 0b11111 & ~1)


def test_theta_plus_prime_filter_of_left_pointed(n5_left):
    F = n5_left.lattice.up[B]
    # up-set of b is not a 1-filter here, so use a genuine prime 1-filter
    with pytest.raises(NotAPrimeOneFilter):
        theta_plus(n5_left, F)
    th = theta_plus(n5_left, 0b11111)
    assert blocks(th) == [[BOT, A], [B, C, TOP]]
    assert positive_kernel(n5_left, th) == 0b11111


def test_theta_conic(n5_left):
    up_a = n5_left.lattice.up[A]
    th = theta_conic(n5_left, up_a)
    assert blocks(th) == [[BOT, B, C], [A, TOP]]
    Q, _ = quotient(n5_left, th)
    assert Q.size == 2
    assert theta_conic(chain(3, 1), chain(3, 1).lattice.up[1]).is_identity()
    assert theta_conic(chain(2), 0b11).is_total()


def test_quasi_conditions(n5_unital, m3_unital, square):
    assert up_distributive_at_1(n5_unital)
    assert not up_distributive_at_1(m3_unital)
    assert join_semidistributive_at_1(n5_unital)
    assert not join_semidistributive_at_1(m3_unital)
    assert join_semidistributive_at_1(chain(2, 0))
    assert decomposable_at_1(square)
    assert decomposable_at_1(fixture("m3_plus_one"))
    S = decomposability_counterexample(n5_unital)
    assert len(S) == 2 and n5_unital.lattice.join_all(S) == TOP
    assert alpha_n_counterexample(n5_unital) is not None
    assert alpha_n_holds(square)


def test_prime_pointed_is_up_distributive(pointed6):
    from latkit.core_order import structural_class
    for A_ in pointed6:
        if structural_class(A_, "prime_pointed"):
            assert up_distributive_at_1(A_) and decomposable_at_1(A_)


def test_semi_prime_pointed(square, n5_unital, n5_left):
    r = is_semi_K(square, "prime_pointed")
    assert r.holds and len(r.witness) == 2
    assert not is_semi_K(n5_unital, "prime_pointed").holds
    assert not is_semi_K(n5_left, "conic").holds


def test_profiles(square, m3_unital, n5_unital, n5_left):
    assert all(theorem_spp_profile(square).values())
    assert not any(theorem_spp_profile(m3_unital).values())
    assert not any(theorem_spp_profile(n5_unital).values())
    assert all(theorem_semiconic_spp_profile(chain(3, 1)).values())
    assert not any(theorem_semiconic_spp_profile(n5_left).values())
    assert all(theorem_semiconic_spp_profile(square).values())
    assert not any(semiconic_profile(n5_left).values())
    assert pointed_n5_embedding(n5_left) == {"o": BOT, "a": A, "b": B, "c": C, "t": TOP}
    assert not any(semiconic_profile(PointedLattice(diamond(), 1)).values())


def test_rsi():
    assert relatively_subdirectly_irreducible(chain(2))
    assert relatively_subdirectly_irreducible(fixture("m3_plus_one"))
    assert not relatively_subdirectly_irreducible(chain(3))
    assert not relatively_subdirectly_irreducible(chain(1))


def test_generated_is_least(pointed6):
    for A_ in pointed6[:60]:
        cons = all_congruences(A_)
        for a in range(A_.size):
            for b in range(A_.size):
                th = generated_congruence(A_, [(a, b)])
                assert th.same(a, b)
                assert th in cons
                assert all(th <= c for c in cons if c.same(a, b))


def test_congruence_lattice_ops():
    I, T = Congruence.identity(4), Congruence.total(4)
    th = Congruence.from_blocks(4, [[0, 2]])
    assert I <= th <= T and th < T
    assert th.meet(T) == th and th.join(I) == th
    assert th.pairs() == [(0, 2)]
