"""Named per-algebra checks run by the catalog audits and the CLI ``audit`` command."""
from __future__ import annotations

from itertools import product

from .congruence import (all_congruences, generated_congruence, intersect_all, is_semi_K,
                         positive_kernel, prime_one_filters, quotient, semiconic_profile,
                         theorem_semiconic_spp_profile, theorem_spp_profile, theta_conic,
                         theta_plus)
from .core_order import PointedLattice, members, structural_class
from .errors import NoSplittingPair
from .logic_terms import builtin_kclass, holds, parse_sentence
from .residuated import (FiniteRL, drastic_crl, fg_star, find_splitting_pair, mult_filters,
                         prelinear_profile, preconic_profile, sided_congruences,
                         simplicity_profile, theorem_pre_k_profile, verify_theta_iso)


def agree(profile: dict, keys=None) -> bool:
    vals = [v for k, v in profile.items() if keys is None or k in keys]
    return len(set(vals)) <= 1


def check_fact_semiconic(A: PointedLattice) -> bool:
    return agree(semiconic_profile(A))


def check_theorem_spp(A: PointedLattice) -> bool:
    return agree(theorem_spp_profile(A))


def check_theorem_semiconic_spp(A: PointedLattice) -> bool:
    return agree(theorem_semiconic_spp_profile(A))


def check_theta_minimality(A: PointedLattice) -> bool:
    """Theta+(F) and Theta_C(F) have kernel F and are least with that kernel (and conic quotient)."""
    cons = all_congruences(A)
    for F in prime_one_filters(A):
        tp, tc = theta_plus(A, F), theta_conic(A, F)
        if positive_kernel(A, tp) != F or positive_kernel(A, tc) != F:
            return False
        same_kernel = [th for th in cons if positive_kernel(A, th) == F]
        if not all(tp <= th for th in same_kernel):
            return False
        if not structural_class(quotient(A, tc)[0], "conic"):
            return False
        conic = [th for th in same_kernel if structural_class(quotient(A, th)[0], "conic")]
        if not all(tc <= th for th in conic):
            return False
    return True


def check_congruence_oracle(A: PointedLattice) -> bool:
    cons = all_congruences(A)
    n = A.size
    for a in range(n):
        for b in range(a + 1, n):
            above = [th for th in cons if th.same(a, b)]
            if generated_congruence(A, [(a, b)]) != intersect_all(above, n):
                return False
    return True


_SQUARE = parse_sentence("x * x = x * x * x", "rl")
_CONE_MUL = parse_sentence("1 ^ (x * y) = (1 ^ x) * (1 ^ y)", "rl")


def drastic_applies(A: PointedLattice) -> bool:
    return find_splitting_pair(A) is not None


def check_drastic(A: PointedLattice) -> bool:
    """Drastic product: valid, commutative, simple, ``x^2 = x^3`` and multiplicative negative cone."""
    try:
        R = drastic_crl(A)
    except NoSplittingPair:
        return False
    return (R.commutative and len(sided_congruences(R, "two_sided")) == 2
            and holds(R, _SQUARE).holds and holds(R, _CONE_MUL).holds)


def check_theta_iso(A: FiniteRL) -> bool:
    return verify_theta_iso(A).ok


def _filter_join(A: FiniteRL, F: int, G: int) -> int:
    out = (1 << A.size) - 1
    for H in mult_filters(A):
        if H & (F | G) == F | G:
            out &= H
    return out


def check_fg_star(A: FiniteRL) -> bool:
    L, u = A.lattice, A.unit
    for a, b in product(range(A.size), repeat=2):
        Fa, Fb = fg_star(A, a), fg_star(A, b)
        if Fa & Fb != fg_star(A, L.join[L.meet[u][a]][L.meet[u][b]]):
            return False
        if _filter_join(A, Fa, Fb) != fg_star(A, L.meet[a][b]):
            return False
    return True


def check_reduct_soundness(A: FiniteRL) -> bool:
    if not is_semi_K(A.base, "irreducible_pointed").holds:
        return False
    if A.commutative and simplicity_profile(A)["fsi"]:
        return structural_class(A.base, "irreducible_pointed")
    return True


PRE_K_CLASSES = ("integral", "conic", "linear")


def check_pre_k(A: FiniteRL) -> bool:
    return all(agree(theorem_pre_k_profile(A, builtin_kclass(k))) for k in PRE_K_CLASSES)


def check_prelinear(A: FiniteRL) -> bool:
    p = prelinear_profile(A)
    if not agree(p, ("i", "ii", "iii")):
        return False
    if p["i"]:
        return structural_class(A.base, "distributive") and p["ldiv_distributes"]
    return True


def check_preconic(A: FiniteRL) -> bool:
    return agree(preconic_profile(A))


POINTED_CHECKS = {
    "fact_semiconic": check_fact_semiconic,
    "theorem_spp": check_theorem_spp,
    "theorem_semiconic_spp": check_theorem_semiconic_spp,
    "theta_minimality": check_theta_minimality,
    "congruence_oracle": check_congruence_oracle,
    "drastic": check_drastic,
}

RL_CHECKS = {
    "theta_iso": check_theta_iso,
    "fg_star": check_fg_star,
    "reduct_soundness": check_reduct_soundness,
    "pre_k": check_pre_k,
    "prelinear": check_prelinear,
    "preconic": check_preconic,
}

CHECKS = {**POINTED_CHECKS, **RL_CHECKS}
