"""Finite residuated lattices: validation, drastic products, filters and sided congruences."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

from .congruence import (Congruence, close_under, intersect_all, is_semi_K, join_closure,
                         lattice_translations, memo, positive_kernel, quotient)
from .core_order import (ElementSet, FiniteLattice, PointedLattice, automorphisms,
                         element_class, mask_of, members, popcount, structural_class)
from .errors import (CapacityExceeded, NoSplittingPair, NotAssociative, NotMonotone, NotNormal,
                     NotResiduated, UnitFails)
from .logic_terms import KClass, holds, parse_sentence, pre_transform
from .report import Report

MAX_SIDED_SIZE = 8
SIDES = ("left", "right", "two_sided")

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteRL:
    """A residuated lattice; ``ldiv[a][z] = a\\z`` and ``rdiv[z][y] = z/y`` are derived."""

    base: PointedLattice
    mul: Table
    ldiv: Table = field(compare=False, repr=False)
    rdiv: Table = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def unit(self) -> int:
        return self.base.unit

    @property
    def lattice(self) -> FiniteLattice:
        return self.base.lattice

    def leq(self, a: int, b: int) -> bool:
        return self.base.leq(a, b)

    def name(self, a: int) -> str:
        return self.base.name(a)

    @cached_property
    def commutative(self) -> bool:
        n = self.size
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a + 1, n))

    def power(self, a: int, k: int) -> int:
        r = self.unit
        for _ in range(k):
            r = self.mul[r][a]
        return r


def _check_shape(n: int, mul):
    if len(mul) != n or any(len(row) != n for row in mul):
        raise ValueError(f"multiplication table must be {n}x{n}")
    if any(not 0 <= v < n for row in mul for v in row):
        raise ValueError("multiplication table entries out of range")


def make_rl(base: PointedLattice, mul: Sequence[Sequence[int]]) -> FiniteRL:
    """Validate a multiplication table and derive both residuals."""
    L, u, n = base.lattice, base.unit, base.size
    _check_shape(n, mul)
    mul = tuple(tuple(r) for r in mul)
    for x in range(n):
        if mul[u][x] != x or mul[x][u] != x:
            raise UnitFails(f"unit fails at {L.name(x)}", (x,))
    for a, b in L.cover_pairs:
        for c in range(n):
            if not L.leq(mul[a][c], mul[b][c]):
                raise NotMonotone(f"{L.name(a)} <= {L.name(b)} but not "
                                  f"{L.name(a)}*{L.name(c)} <= {L.name(b)}*{L.name(c)}", (a, b, c))
            if not L.leq(mul[c][a], mul[c][b]):
                raise NotMonotone(f"{L.name(a)} <= {L.name(b)} but not "
                                  f"{L.name(c)}*{L.name(a)} <= {L.name(c)}*{L.name(b)}", (c, a, b))
    for x in range(n):
        mx = mul[x]
        for y in range(n):
            xy = mx[y]
            for z in range(n):
                if mul[xy][z] != mx[mul[y][z]]:
                    raise NotAssociative(f"({L.name(x)}*{L.name(y)})*{L.name(z)} differs from "
                                         f"{L.name(x)}*({L.name(y)}*{L.name(z)})", (x, y, z))
    down = L.down
    ldiv = [[0] * n for _ in range(n)]
    rdiv = [[0] * n for _ in range(n)]
    for z in range(n):
        for a in range(n):
            S = mask_of(y for y in range(n) if L.leq(mul[a][y], z))
            m = _greatest(S, down)
            if m is None:
                raise NotResiduated(f"{{y : {L.name(a)}*y <= {L.name(z)}}} has no greatest element",
                                    (a, z))
            ldiv[a][z] = m
            S = mask_of(x for x in range(n) if L.leq(mul[x][a], z))
            m = _greatest(S, down)
            if m is None:
                raise NotResiduated(f"{{x : x*{L.name(a)} <= {L.name(z)}}} has no greatest element",
                                    (a, z))
            rdiv[z][a] = m
    return FiniteRL(base, mul, tuple(map(tuple, ldiv)), tuple(map(tuple, rdiv)))


def _greatest(S: int, down: Sequence[int]) -> Optional[int]:
    for m in members(S):
        if down[m] == S:
            return m
    return None


def residuation_violation(A: FiniteRL) -> Optional[tuple[int, int, int]]:
    """A triple breaking ``x <= z/y <=> x*y <= z <=> y <= x\\z``, or None."""
    n, leq = A.size, A.leq
    for x, y, z in product(range(n), repeat=3):
        m = leq(A.mul[x][y], z)
        if leq(x, A.rdiv[z][y]) != m or leq(y, A.ldiv[x][z]) != m:
            return (x, y, z)
    return None


def reduct(A: FiniteRL) -> PointedLattice:
    return A.base


# ---------------------------------------------------------------------------
# drastic multiplication


def find_splitting_pair(A: PointedLattice) -> Optional[tuple[int, int]]:
    """``(1, 1bar)`` with ``1bar`` the join of everything not above 1, when 1 is join prime."""
    L, u = A.lattice, A.unit
    if not element_class(A, u, "join_prime"):
        return None
    bar = L.join_all(x for x in range(A.size) if not L.leq(u, x))
    if L.leq(u, bar):
        return None
    if not all(L.leq(u, a) or L.leq(a, bar) for a in range(A.size)):
        raise AssertionError("computed pair does not split the lattice")
    return u, bar


def drastic_crl(A: PointedLattice) -> FiniteRL:
    pair = find_splitting_pair(A)
    if pair is None:
        raise NoSplittingPair("the unit has no splitting partner (it must be join prime and not the bottom)")
    u, bar = pair
    L, n = A.lattice, A.size
    up = [L.leq(u, x) for x in range(n)]

    def mul(a, b):
        if not up[a] and not up[b]:
            return L.bottom
        if not up[a]:
            return a
        if not up[b]:
            return b
        return L.join[a][b]

    R = make_rl(A, [[mul(a, b) for b in range(n)] for a in range(n)])
    for a in range(n):
        for b in range(n):
            if not up[a]:
                expected = L.top if L.leq(a, b) else bar
            elif not up[b] or L.leq(a, b):
                expected = b
            else:
                expected = L.meet[b][bar]
            if R.ldiv[a][b] != expected:
                raise AssertionError(f"residual of drastic product differs at ({a}, {b})")
    return R


# ---------------------------------------------------------------------------
# multiplicative filters


def is_mult_filter(A: FiniteRL, F: ElementSet) -> bool:
    L = A.lattice
    if not (F >> A.unit) & 1:
        return False
    els = members(F)
    return all(L.up[a] & F == L.up[a] for a in els) and \
        all((F >> L.meet[a][b]) & 1 and (F >> A.mul[a][b]) & 1 for a in els for b in els)


def mult_filters(A: FiniteRL) -> list[ElementSet]:
    """All multiplicative 1-filters, smallest first."""
    L = A.lattice
    cands = {L.up[f] for f in members(L.down[A.unit])}
    return sorted((F for F in cands if is_mult_filter(A, F)), key=lambda F: (popcount(F), F))


def fg_star(A: FiniteRL, seed) -> ElementSet:
    """Multiplicative 1-filter generated by ``seed`` (an element or iterable of elements)."""
    L = A.lattice
    els = [seed] if isinstance(seed, int) else list(seed)
    if not els:
        raise ValueError("seed must be non-empty")
    c = L.meet[A.unit][L.meet_all(els)]
    p = c
    while True:
        q = A.mul[p][c]
        if q == p:
            return L.up[p]
        p = q


def is_normal(A: FiniteRL, F: ElementSet) -> bool:
    n = A.size
    return all(((F >> A.ldiv[x][y]) & 1) == ((F >> A.rdiv[y][x]) & 1)
               for x in range(n) for y in range(n))


def normal_by_conjugates(A: FiniteRL, F: ElementSet) -> bool:
    """``a\\(f a)`` and ``(a f)/a`` stay in ``F`` for every ``f`` in ``F``."""
    return all((F >> A.ldiv[a][A.mul[f][a]]) & 1 and (F >> A.rdiv[A.mul[a][f]][a]) & 1
               for f in members(F) for a in range(A.size))


def normal_by_thetas(A: FiniteRL, F: ElementSet) -> bool:
    return sided_theta(A, F, "left") == sided_theta(A, F, "right")


def left_theta_by_products(A: FiniteRL, F: ElementSet) -> Congruence:
    """``x ~ y`` iff ``x*f <= y`` and ``y*f <= x`` for some ``f`` in ``F`` (cross-check form)."""
    n, leq = A.size, A.leq
    fs = members(F)
    labels = tuple(next(y for y in range(n)
                        if any(leq(A.mul[x][f], y) and leq(A.mul[y][f], x) for f in fs))
                   for x in range(n))
    return Congruence(labels, "left")


def normal_filters(A: FiniteRL) -> list[ElementSet]:
    return [F for F in mult_filters(A) if is_normal(A, F)]


# ---------------------------------------------------------------------------
# sided congruences


def sided_theta(A: FiniteRL, F: ElementSet, side: str) -> Congruence:
    """``x ~ y`` iff both residuals between ``x`` and ``y`` (on the given side) lie in ``F``."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    if side == "two_sided" and not is_normal(A, F):
        raise NotNormal(f"{sorted(members(F))} is not a normal filter")
    n = A.size
    if side == "right":
        rel = lambda x, y: (F >> A.rdiv[x][y]) & 1 and (F >> A.rdiv[y][x]) & 1
    else:
        rel = lambda x, y: (F >> A.ldiv[x][y]) & 1 and (F >> A.ldiv[y][x]) & 1
    labels = []
    for x in range(n):
        labels.append(next(y for y in range(n) if rel(x, y)))
    theta = Congruence(tuple(labels), side)
    if any(bool(rel(x, y)) != theta.same(x, y) for x in range(n) for y in range(n)):
        raise AssertionError("residual relation is not an equivalence")
    return theta


def sided_translations(A: FiniteRL, side: str) -> list[tuple[int, ...]]:
    m = memo(A)
    key = ("maps", side)
    if key not in m:
        n = A.size
        maps = set(lattice_translations(A.lattice))
        if side in ("left", "two_sided"):
            maps |= {A.mul[a] for a in range(n)} | {A.ldiv[a] for a in range(n)}
        if side in ("right", "two_sided"):
            maps |= {tuple(A.mul[x][a] for x in range(n)) for a in range(n)}
            maps |= {tuple(A.rdiv[x][a] for x in range(n)) for a in range(n)}
        m[key] = sorted(maps)
    return m[key]


def sided_generated(A: FiniteRL, pairs, side: str) -> Congruence:
    return close_under(A.size, pairs, sided_translations(A, side), side)


def principal_sided(A: FiniteRL, a: int, b: int, side: str) -> Congruence:
    return sided_generated(A, [(a, b)], side)


def sided_congruences(A: FiniteRL, side: str) -> list[Congruence]:
    n = A.size
    if n > MAX_SIDED_SIZE:
        raise CapacityExceeded(f"sided congruence enumeration is capped at {MAX_SIDED_SIZE} elements")
    m = memo(A)
    key = ("all", side)
    if key not in m:
        gens = [sided_generated(A, [(a, b)], side) for a in range(n) for b in range(a + 1, n)]
        m[key] = join_closure(n, gens, side)
    return m[key]


def sided_positive_kernel(A: FiniteRL, theta: Congruence) -> ElementSet:
    return positive_kernel(A.base, theta)


def _check_iso(A, filters, cons, side, report: Report):
    images = [sided_theta(A, F, side) for F in filters]
    if sorted(c.labels for c in images) != sorted(c.labels for c in cons):
        report.fail(f"{side}: filter images do not match the congruence list")
    for F, th in zip(filters, images):
        if sided_positive_kernel(A, th) != F:
            report.fail(f"{side}: kernel of theta({sorted(members(F))}) differs")
    for th in cons:
        if sided_theta(A, sided_positive_kernel(A, th), side) != th:
            report.fail(f"{side}: theta(kernel) differs for {th.describe()}")
    for (F, a), (G, b) in product(zip(filters, images), repeat=2):
        if (F & G == F) != (a <= b):
            report.fail(f"{side}: order not reflected between {sorted(members(F))} and {sorted(members(G))}")


def verify_theta_iso(A: FiniteRL) -> Report:
    """Filters versus sided congruences, in both directions and for all three sides."""
    if A.size > MAX_SIDED_SIZE:
        raise CapacityExceeded(f"theta-iso audit is capped at {MAX_SIDED_SIZE} elements")
    rep = Report()
    Fi = mult_filters(A)
    NFi = normal_filters(A)
    _check_iso(A, Fi, sided_congruences(A, "left"), "left", rep)
    _check_iso(A, Fi, sided_congruences(A, "right"), "right", rep)
    _check_iso(A, NFi, sided_congruences(A, "two_sided"), "two_sided", rep)
    L = sided_congruences(A, "left")
    R = sided_congruences(A, "right")
    C = sided_congruences(A, "two_sided")
    if sorted(c.labels for c in C) != sorted(c.labels for c in L if c in set(R)):
        rep.fail("two-sided congruences are not the common left and right ones")
    # theta -> R-theta(kernel(theta)) is an isomorphism fixing Con pointwise
    image = [sided_theta(A, sided_positive_kernel(A, th), "right") for th in L]
    if sorted(c.labels for c in image) != sorted(c.labels for c in R):
        rep.fail("left-to-right correspondence is not onto")
    for th, im in zip(L, image):
        if th in set(C) and im != th:
            rep.fail(f"correspondence moves the congruence {th.describe()}")
    rep.details.update(filters=len(Fi), normal=len(NFi), left=len(L), right=len(R), two_sided=len(C))
    return rep


# ---------------------------------------------------------------------------
# simplicity


def _coatoms(cons: list[Congruence]) -> list[Congruence]:
    nontotal = [c for c in cons if not c.is_total()]
    return [c for c in nontotal if not any(c < d for d in nontotal)]


def _delta_irreducible(cons, n, finitely):
    proper = [c for c in cons if not c.is_identity()]
    if finitely:
        return all(not a.meet(b).is_identity() for a in proper for b in proper)
    return not intersect_all(proper, n).is_identity()


def simplicity_profile(A: FiniteRL) -> dict[str, bool]:
    n = A.size
    if n > MAX_SIDED_SIZE:
        raise CapacityExceeded(f"simplicity profile is capped at {MAX_SIDED_SIZE} elements")
    if n == 1:
        keys = ("simple", "strongly_simple", "fsi", "strongly_fsi", "si", "strongly_si",
                "semisimple", "strongly_semisimple")
        return dict.fromkeys(keys, True)
    con = sided_congruences(A, "two_sided")
    lcon = sided_congruences(A, "left")
    con_set = set(con)
    return {
        "simple": len(con) == 2,
        "strongly_simple": len(lcon) == 2,
        "fsi": _delta_irreducible(con, n, True),
        "strongly_fsi": _delta_irreducible(lcon, n, True),
        "si": _delta_irreducible(con, n, False),
        "strongly_si": _delta_irreducible(lcon, n, False),
        "semisimple": intersect_all(_coatoms(con), n).is_identity(),
        "strongly_semisimple": intersect_all([c for c in _coatoms(lcon) if c in con_set],
                                             n).is_identity(),
    }


# ---------------------------------------------------------------------------
# left pre-K


def left_pre_K(A: FiniteRL, K: KClass) -> bool:
    return all(holds(A, pre_transform(ax)).holds for ax in K.axioms)


def is_left_K_filter(A: FiniteRL, F: ElementSet, K: KClass) -> bool:
    return K.contains(quotient(A.base, sided_theta(A, F, "left"))[0])


def meet_irreducible_filters(A: FiniteRL) -> list[ElementSet]:
    """Members of the filter lattice with exactly one upper cover (so never the total filter)."""
    Fi = mult_filters(A)
    out = []
    for F in Fi:
        above = [G for G in Fi if G != F and G & F == F]
        covers = [G for G in above if not any(H != G and H & G == H for H in above)]
        if len(covers) == 1:
            out.append(F)
    return out


def theorem_pre_k_profile(A: FiniteRL, K: KClass) -> dict[str, bool]:
    if A.size > MAX_SIDED_SIZE:
        raise CapacityExceeded(f"pre-K profile is capped at {MAX_SIDED_SIZE} elements")
    Fi = mult_filters(A)
    full = (1 << A.size) - 1
    kf = [F for F in Fi if is_left_K_filter(A, F, K)]

    def meet_of(fs):
        r = full
        for G in fs:
            r &= G
        return r

    return {
        "i": left_pre_K(A, K),
        "ii": all(is_left_K_filter(A, F, K) for F in meet_irreducible_filters(A)),
        "iii": meet_of(kf) == A.lattice.up[A.unit],
        "iv": all(meet_of(G for G in kf if G & F == F) == F for F in Fi),
    }


def _s(text):
    return parse_sentence(text, "rl")


def prelinear_profile(A: FiniteRL) -> dict[str, bool]:
    weak = holds(A, _s("(x\\y) v (y\\x) >= 1")).holds
    return {
        "i": holds(A, _s("(1 ^ x\\y) v (1 ^ y\\x) = 1")).holds,
        "ii": holds(A, _s("1 ^ (x v y) = (1 ^ x) v (1 ^ y)")).holds and weak,
        "iii": structural_class(A.base, "distributive") and weak,
        "ldiv_distributes": holds(A, _s("x\\(y v z) = (x\\y) v (x\\z)")).holds,
    }


def preconic_profile(A: FiniteRL) -> dict[str, bool]:
    weak = holds(A, _s("(x\\1) v x >= 1")).holds
    return {
        "i": holds(A, _s("(1 ^ x\\1) v (1 ^ x) = 1")).holds,
        "ii": holds(A, _s("1 ^ (x v y) = (1 ^ x) v (1 ^ y)")).holds and weak,
        "iii": is_semi_K(A.base, "conic").holds and weak,
    }


def rl_product(As: Sequence[FiniteRL]) -> FiniteRL:
    """Componentwise product, elements in the lexicographic order of ``direct_product``."""
    from .constructions import direct_product
    base = direct_product([A.base for A in As])
    elems = list(product(*(range(A.size) for A in As)))
    idx = {e: i for i, e in enumerate(elems)}
    mul = [[idx[tuple(A.mul[x][y] for A, x, y in zip(As, e, f))] for f in elems] for e in elems]
    return make_rl(base, mul)


def quotient_rl(A: FiniteRL, theta: Congruence) -> tuple[FiniteRL, list[int]]:
    Q, qmap = quotient(A.base, theta)
    reps = sorted(set(theta.labels))
    mul = [[qmap[A.mul[a][b]] for b in reps] for a in reps]
    return make_rl(Q, mul), qmap


def is_semi_K_rl(A: FiniteRL, K: KClass) -> bool:
    """Do the two-sided congruences with quotient reduct in ``K`` meet in the identity?"""
    if A.size > MAX_SIDED_SIZE:
        raise CapacityExceeded(f"semi-K decision for RLs is capped at {MAX_SIDED_SIZE} elements")
    good = [th for th in sided_congruences(A, "two_sided") if K.contains(quotient(A.base, th)[0])]
    return intersect_all(good, A.size).is_identity()


# ---------------------------------------------------------------------------
# enumeration of multiplication tables


def _table_key(mul, sigma) -> tuple:
    n = len(mul)
    inv = [0] * n
    for a, b in enumerate(sigma):
        inv[b] = a
    return tuple(sigma[mul[inv[x]][inv[y]]] for x in range(n) for y in range(n))


def enumerate_rls(base: PointedLattice, allow_five: bool = False) -> list[FiniteRL]:
    """All residuated multiplications on ``base`` up to base automorphisms fixing the unit."""
    n = base.size
    cap = 5 if allow_five else 4
    if n > cap:
        raise CapacityExceeded(f"RL enumeration is capped at {cap} elements"
                               + ("" if allow_five else " (pass allow_five for 5)"))
    L, u, bot = base.lattice, base.unit, base.bottom
    if n == 1:
        return [make_rl(base, [[0]])]
    if u == bot:
        return []  # x*bot = bot contradicts the unit law at bot
    mul = [[None] * n for _ in range(n)]
    for x in range(n):
        mul[u][x] = mul[x][u] = x
        mul[bot][x] = mul[x][bot] = bot
    order = sorted(range(n), key=lambda x: popcount(L.down[x]))
    cells = [(x, y) for x in order for y in order if mul[x][y] is None]
    leq = L.leq
    found = []

    def consistent(x, y, v):
        for a in range(n):
            w = mul[a][y]
            if w is not None:
                if leq(a, x) and not leq(w, v):
                    return False
                if leq(x, a) and not leq(v, w):
                    return False
            w = mul[x][a]
            if w is not None:
                if leq(a, y) and not leq(w, v):
                    return False
                if leq(y, a) and not leq(v, w):
                    return False
        return True

    def joins_ok(x, y):
        # multiplication distributes over binary joins in row x and column y
        J = L.join
        row = mul[x]
        col = [mul[a][y] for a in range(n)]
        for vec in (row, col):
            for a in range(n):
                if vec[a] is None:
                    continue
                for b in range(a + 1, n):
                    c = vec[J[a][b]]
                    if vec[b] is not None and c is not None and c != J[vec[a]][vec[b]]:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            try:
                found.append(make_rl(base, [list(r) for r in mul]))
            except (NotAssociative, NotResiduated, NotMonotone, UnitFails):
                pass
            return
        x, y = cells[k]
        for v in range(n):
            if consistent(x, y, v):
                mul[x][y] = v
                if joins_ok(x, y):
                    fill(k + 1)
                mul[x][y] = None

    fill(0)
    autos = automorphisms(base)
    seen = set()
    out = []
    for R in found:
        key = min(_table_key(R.mul, s) for s in autos)
        if key not in seen:
            seen.add(key)
            out.append(R)
    return out


def enumerate_all_rls(max_size: int = 4):
    """Every RL with at most ``max_size`` elements, up to isomorphism."""
    from .enumeration import Catalog, enumerate_pointed
    out = []
    for n in range(1, max_size + 1):
        for A in enumerate_pointed(n).algebras:
            out.extend(enumerate_rls(A, allow_five=max_size >= 5))
    return Catalog(max_size, out, "rl")
