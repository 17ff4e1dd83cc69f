import pytest

from latkit.constructions import chain, fixture
from latkit.core_order import mask_of
from latkit.errors import (NoSplittingPair, NotAssociative, NotMonotone, NotNormal, NotResiduated,
                           UnitFails)
from latkit.logic_terms import builtin_kclass, holds, parse_sentence
from latkit.residuated import (SIDES, drastic_crl, enumerate_all_rls, enumerate_rls, fg_star,
                               find_splitting_pair, is_mult_filter, is_normal, is_semi_K_rl,
                               left_pre_K, left_theta_by_products, make_rl, mult_filters,
                               normal_by_conjugates, normal_by_thetas, normal_filters,
                               prelinear_profile, preconic_profile, principal_sided,
                               quotient_rl, residuation_violation, rl_product, sided_congruences,
                               sided_positive_kernel, sided_theta, simplicity_profile,
                               theorem_pre_k_profile, verify_theta_iso)

C0, C1, C2, C3 = range(4)


@pytest.fixture(scope="module")
def drastic4():
    """Four-chain with the unit at the third element; 1bar is the second."""
    return drastic_crl(chain(4, 2))


@pytest.fixture(scope="module")
def drastic_m3():
    return drastic_crl(fixture("m3_plus_one"))


def test_boolean_rl(boolean2):
    assert boolean2.mul == ((0, 0), (0, 1))
    assert boolean2.ldiv[1][0] == 0 and boolean2.ldiv[0][0] == 1
    assert residuation_violation(boolean2) is None


def test_three_chain_rl():
    mul = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    R = make_rl(chain(3), mul)
    assert R.ldiv[1][0] == 1 and R.commutative


def test_make_rl_errors():
    with pytest.raises(ValueError):
        make_rl(chain(2), [[0, 0]])
    with pytest.raises(UnitFails):
        make_rl(chain(3), [[0, 0, 0], [0, 1, 0], [0, 1, 2]])
    with pytest.raises(NotMonotone) as e:
        make_rl(chain(3), [[1, 0, 0], [0, 0, 1], [0, 1, 2]])
    assert e.value.witness is not None
    with pytest.raises(NotAssociative):
        make_rl(chain(3, 1), [[0, 0, 1], [0, 1, 2], [1, 2, 2]])


def test_not_residuated():
    # join-preservation fails: p*(q v r) differs from p*q v p*r
    from latkit.core_order import PointedLattice
    from latkit.constructions import diamond
    D = PointedLattice(diamond(), 4)
    L = D.lattice
    n = 5
    mul = [[L.meet[a][b] for b in range(n)] for a in range(n)]
    with pytest.raises((NotResiduated, NotAssociative)):
        make_rl(D, mul)


def test_splitting_pairs(square):
    assert find_splitting_pair(chain(2)) == (1, 0)
    m3p = fixture("m3_plus_one")
    u, bar = find_splitting_pair(m3p)
    assert u == m3p.unit and bar == 4
    assert find_splitting_pair(square) is None
    assert find_splitting_pair(chain(3, 0)) is None
    with pytest.raises(NoSplittingPair):
        drastic_crl(square)


def test_drastic(drastic4, drastic_m3):
    assert drastic4.ldiv[C3][C1] == C1
    assert drastic4.mul[C1][C1] == C0
    assert drastic4.commutative and drastic_m3.commutative
    for R in (drastic4, drastic_m3):
        assert len(sided_congruences(R, "two_sided")) == 2
        assert holds(R, parse_sentence("x * x = x * x * x")).holds
        p = simplicity_profile(R)
        assert p["simple"] and p["strongly_simple"]


def test_mult_filters(boolean2, drastic4, drastic_m3):
    assert mult_filters(boolean2) == [0b10, 0b11]
    assert mult_filters(drastic4) == [mask_of([C2, C3]), 0b1111]
    full = (1 << drastic_m3.size) - 1
    assert mult_filters(drastic_m3) == [1 << drastic_m3.unit, full]
    assert not is_mult_filter(drastic4, mask_of([C1, C2, C3]))


def test_fg_star(drastic4):
    assert fg_star(drastic4, C2) == mask_of([C2, C3])
    assert fg_star(drastic4, C1) == 0b1111
    assert fg_star(drastic4, C3) == fg_star(drastic4, C2)
    assert fg_star(drastic4, [C3, C1]) == fg_star(drastic4, C1)


def test_sided_theta(drastic4, boolean2):
    assert sided_theta(drastic4, mask_of([C2, C3]), "left").is_identity()
    assert sided_theta(drastic4, 0b1111, "two_sided").is_total()
    for side in SIDES:
        assert len(sided_congruences(boolean2, side)) == 2
    with pytest.raises(ValueError):
        sided_theta(boolean2, 0b11, "middle")


def test_commutative_sides_agree(rls4):
    for R in rls4:
        if R.commutative:
            L = sided_congruences(R, "left")
            assert L == sided_congruences(R, "right") == sided_congruences(R, "two_sided")


def test_not_normal_raises():
    for R in enumerate_all_rls(4):
        bad = [F for F in mult_filters(R) if not is_normal(R, F)]
        if bad:
            with pytest.raises(NotNormal):
                sided_theta(R, bad[0], "two_sided")
            return
    pytest.skip("no non-normal filter among the small RLs")


def test_cross_checks(rls4):
    for R in rls4:
        for F in mult_filters(R):
            assert left_theta_by_products(R, F) == sided_theta(R, F, "left")
            assert is_normal(R, F) == normal_by_conjugates(R, F) == normal_by_thetas(R, F)
        for a in range(R.size):
            for b in range(R.size):
                L = R.lattice
                alt = L.meet[R.unit][R.ldiv[b][a]]
                alt = L.meet[alt][R.ldiv[a][b]]
                assert principal_sided(R, a, b, "left") == principal_sided(R, R.unit, alt, "left")


def test_theta_iso_examples(boolean2, drastic4):
    assert verify_theta_iso(boolean2).ok
    r = verify_theta_iso(drastic4)
    assert r.ok and r.details["filters"] == 2


def test_simplicity(boolean2):
    assert all(simplicity_profile(boolean2).values())
    P = rl_product([boolean2, boolean2])
    p = simplicity_profile(P)
    assert not p["simple"] and p["semisimple"]
    assert all(simplicity_profile(enumerate_rls(chain(1))[0]).values())


def test_pre_k(drastic4, drastic_m3, boolean2):
    linear = builtin_kclass("linear")
    assert left_pre_K(drastic4, linear)
    assert not left_pre_K(drastic_m3, linear)
    assert left_pre_K(drastic_m3, builtin_kclass("all"))
    assert all(theorem_pre_k_profile(drastic4, builtin_kclass("conic")).values())
    assert not any(theorem_pre_k_profile(drastic_m3, linear).values())
    assert all(theorem_pre_k_profile(boolean2, builtin_kclass("integral")).values())


def test_prelinear_preconic(boolean2, drastic_m3):
    assert all(prelinear_profile(boolean2).values())
    p = prelinear_profile(drastic_m3)
    assert not (p["i"] or p["ii"] or p["iii"])
    assert all(preconic_profile(boolean2).values())


def test_semi_K_rl(drastic4, drastic_m3):
    assert is_semi_K_rl(drastic4, builtin_kclass("conic"))
    assert not is_semi_K_rl(drastic_m3, builtin_kclass("linear"))


def test_quotient_rl(boolean2):
    P = rl_product([boolean2, boolean2])
    th = sided_congruences(P, "two_sided")[1]
    Q, qmap = quotient_rl(P, th)
    assert Q.size == 2 and residuation_violation(Q) is None


def test_kernel_of_left_congruence(rls4):
    for R in rls4:
        for th in sided_congruences(R, "left"):
            assert is_mult_filter(R, sided_positive_kernel(R, th))


def test_enumeration_counts():
    assert len(enumerate_rls(chain(1))) == 1
    assert len(enumerate_rls(chain(2))) == 1
    assert enumerate_rls(chain(2, 0)) == []
    sizes = [0] * 5
    for R in enumerate_all_rls(4):
        sizes[R.size] += 1
    assert sizes[1:] == [1, 1, 3, 20]


@pytest.mark.slow
def test_enumeration_size_five():
    from latkit.residuated import enumerate_rls as er
    from latkit.enumeration import enumerate_pointed
    total = sum(len(er(A, allow_five=True)) for A in enumerate_pointed(5))
    assert total == 149


def test_normal_filters_are_mult(rls4):
    for R in rls4:
        assert all(is_mult_filter(R, F) for F in normal_filters(R))
