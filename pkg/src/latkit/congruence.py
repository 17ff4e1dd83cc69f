"""Lattice congruences of pointed lattices and the decision procedures built on them.

Congruences are generated by union-find closure under unary translations
(``x -> x ^ c`` and ``x -> x v c``), which by Maltsev's description of
congruence generation yields the least congruence containing the seeds.
The same engine serves left/right/two-sided congruences of residuated
lattices, which only add more translations.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence, Union

from .core_order import (ElementSet, FiniteLattice, PointedLattice, enumerate_one_filters,
                         is_one_filter, is_prime_filter, mask_of, members, structural_class)
from .errors import CapacityExceeded, NotAPrimeOneFilter
from .logic_terms import KClass, holds, parse_sentence

MAX_CONGRUENCE_SIZE = 12
MAX_DECISION_SIZE = 10


@dataclass(frozen=True)
class Congruence:
    """An equivalence relation stored as ``labels[x]`` = least element of the block of ``x``.

    ``side`` records which translations it is closed under; it does not take
    part in equality.
    """

    labels: tuple[int, ...]
    side: str = field(default="lattice", compare=False)

    @classmethod
    def identity(cls, n: int, side: str = "lattice") -> "Congruence":
        return cls(tuple(range(n)), side)

    @classmethod
    def total(cls, n: int, side: str = "lattice") -> "Congruence":
        return cls((0,) * n, side)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]], side: str = "lattice"):
        labels = list(range(n))
        for b in blocks:
            b = sorted(b)
            for x in b:
                labels[x] = b[0]
        return cls(tuple(labels), side)

    @property
    def size(self) -> int:
        return len(self.labels)

    def same(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def block_of(self, a: int) -> ElementSet:
        la = self.labels[a]
        return mask_of(x for x, l in enumerate(self.labels) if l == la)

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, l in enumerate(self.labels):
            out.setdefault(l, []).append(x)
        return [out[k] for k in sorted(out)]

    @property
    def num_blocks(self) -> int:
        return len(set(self.labels))

    def is_identity(self) -> bool:
        return all(l == x for x, l in enumerate(self.labels))

    def is_total(self) -> bool:
        return all(l == 0 for l in self.labels)

    def pairs(self) -> list[tuple[int, int]]:
        n = self.size
        return [(a, b) for a in range(n) for b in range(a + 1, n) if self.same(a, b)]

    def __le__(self, other: "Congruence") -> bool:
        return all(other.labels[x] == other.labels[l] for x, l in enumerate(self.labels))

    def __lt__(self, other: "Congruence") -> bool:
        return self <= other and self != other

    def meet(self, other: "Congruence") -> "Congruence":
        first: dict[tuple[int, int], int] = {}
        labels = []
        for x, key in enumerate(zip(self.labels, other.labels)):
            labels.append(first.setdefault(key, x))
        return Congruence(tuple(labels), self.side)

    def join(self, other: "Congruence") -> "Congruence":
        # the equivalence join; joins of congruences are never re-closed
        uf = _UnionFind(self.size)
        for x in range(self.size):
            uf.union(x, self.labels[x])
            uf.union(x, other.labels[x])
        return Congruence(uf.labels(), self.side)

    def describe(self, names: Optional[Sequence[str]] = None) -> str:
        nm = (lambda x: names[x]) if names else str
        return "{" + ", ".join("{" + ",".join(nm(x) for x in b) + "}" for b in self.blocks()) + "}"


def intersect_all(cons: Iterable[Congruence], n: int) -> Congruence:
    out = Congruence.total(n)
    for c in cons:
        out = out.meet(c)
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def labels(self) -> tuple[int, ...]:
        # the root is always the least element of its block
        return tuple(self.find(x) for x in range(len(self.parent)))


def close_under(n: int, seeds: Iterable[tuple[int, int]], maps: Sequence[Sequence[int]],
                side: str = "lattice") -> Congruence:
    """Least equivalence containing ``seeds`` and compatible with each unary map."""
    uf = _UnionFind(n)
    work = []
    for a, b in seeds:
        if uf.union(a, b):
            work.append((a, b))
    while work:
        a, b = work.pop()
        for f in maps:
            fa, fb = f[a], f[b]
            if fa != fb and uf.union(fa, fb):
                work.append((fa, fb))
    return Congruence(uf.labels(), side)


def lattice_translations(L: FiniteLattice) -> list[tuple[int, ...]]:
    maps = {L.meet[c] for c in range(L.size)} | {L.join[c] for c in range(L.size)}
    return sorted(maps)


# ---------------------------------------------------------------------------
# per-algebra memo tables

_MEMO: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def memo(obj) -> dict:
    try:
        return _MEMO.setdefault(obj, {})
    except TypeError:
        return {}


def _lattice_of(A) -> FiniteLattice:
    return A.lattice if isinstance(A, PointedLattice) else A


def _maps(A) -> list[tuple[int, ...]]:
    m = memo(A)
    if "maps" not in m:
        m["maps"] = lattice_translations(_lattice_of(A))
    return m["maps"]


def generated_congruence(A: Union[PointedLattice, FiniteLattice],
                         pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least lattice congruence of ``A`` identifying every given pair."""
    n = _lattice_of(A).size
    pairs = list(pairs)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) out of range")
    return close_under(n, pairs, _maps(A))


def principal_congruence(A, a: int, b: int) -> Congruence:
    if a > b:
        a, b = b, a
    m = memo(A).setdefault("principal", {})
    if (a, b) not in m:
        m[(a, b)] = generated_congruence(A, [(a, b)])
    return m[(a, b)]


def join_closure(n: int, generators: Iterable[Congruence], side: str = "lattice") -> list[Congruence]:
    """All joins of subsets of ``generators`` (plus the identity), sorted finest first."""
    gens = list(dict.fromkeys(generators))
    seen = {Congruence.identity(n, side)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                j = c.join(g)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    out = [Congruence(c.labels, side) for c in seen]
    return sorted(out, key=lambda c: (-c.num_blocks, c.labels))


def all_congruences(A: Union[PointedLattice, FiniteLattice]) -> list[Congruence]:
    n = _lattice_of(A).size
    if n > MAX_CONGRUENCE_SIZE:
        raise CapacityExceeded(f"congruence lattice enumeration is capped at {MAX_CONGRUENCE_SIZE} elements")
    m = memo(A)
    if "all" not in m:
        gens = [principal_congruence(A, a, b) for a in range(n) for b in range(a + 1, n)]
        m["all"] = join_closure(n, gens)
    return m["all"]


def quotient(A: PointedLattice, theta: Congruence) -> tuple[PointedLattice, list[int]]:
    """``A/theta`` with blocks numbered by least element, and the quotient map."""
    L = A.lattice
    reps = sorted(set(theta.labels))
    idx = {r: i for i, r in enumerate(reps)}
    qmap = [idx[theta.labels[x]] for x in range(A.size)]
    up = []
    for r in reps:
        mask = 0
        for s in reps:
            # r/theta <= s/theta iff (r v s, s) in theta
            if theta.same(L.join[r][s], s):
                mask |= 1 << idx[s]
        up.append(mask)
    names = None
    if L.names:
        names = tuple("/".join(L.names[x] for x in members(theta.block_of(r))) for r in reps)
    Q = PointedLattice(FiniteLattice.from_up_masks(up, names), qmap[A.unit])
    return Q, qmap


def positive_kernel(A: PointedLattice, theta: Congruence) -> ElementSet:
    """``{a : 1 <=_theta a}``."""
    L, u = A.lattice, A.unit
    return mask_of(a for a in range(A.size) if theta.same(L.join[u][a], a))


def _require_prime_one_filter(A: PointedLattice, F: ElementSet):
    if not (is_one_filter(A, F) and is_prime_filter(A, F)):
        raise NotAPrimeOneFilter(f"{sorted(members(F))} is not a prime 1-filter")


def theta_plus(A: PointedLattice, F: ElementSet) -> Congruence:
    """Least congruence whose positive kernel is the prime 1-filter ``F``."""
    _require_prime_one_filter(A, F)
    L, u = A.lattice, A.unit
    theta = generated_congruence(A, [(L.meet[f][u], u) for f in members(F)])
    if positive_kernel(A, theta) != F:
        raise AssertionError("positive kernel of the generated congruence differs from F")
    return theta


def theta_conic(A: PointedLattice, F: ElementSet) -> Congruence:
    """Least congruence with positive kernel ``F`` and conic quotient."""
    _require_prime_one_filter(A, F)
    L, u = A.lattice, A.unit
    seeds = [(L.meet[f][u], u) for f in members(F)]
    seeds += [(L.meet[i][u], i) for i in range(A.size) if not (F >> i) & 1]
    theta = generated_congruence(A, seeds)
    if positive_kernel(A, theta) != F:
        raise AssertionError("positive kernel of the generated congruence differs from F")
    return theta


# ---------------------------------------------------------------------------
# quasi-equational conditions at the unit


def up_distributive_at_1(A: PointedLattice) -> bool:
    L, U = A.lattice, A.lattice.up[A.unit]
    n = A.size
    for x in range(n):
        good = [y for y in range(n) if (U >> L.join[x][y]) & 1]
        for i, y in enumerate(good):
            for z in good[i + 1:]:
                if not (U >> L.join[x][L.meet[y][z]]) & 1:
                    return False
    return True


def join_semidistributive_at_1(A: PointedLattice) -> bool:
    L, u, n = A.lattice, A.unit, A.size
    for x in range(n):
        good = [y for y in range(n) if L.join[x][y] == u]
        for i, y in enumerate(good):
            for z in good[i + 1:]:
                if L.join[x][L.meet[y][z]] != u:
                    return False
    return True


def decomposability_counterexample(A: PointedLattice) -> Optional[list[int]]:
    """A set ``S`` with join 1 whose principal congruences ``Cg(x, 1)`` meet above Δ."""
    n, u, L = A.size, A.unit, A.lattice
    if n > MAX_DECISION_SIZE:
        raise CapacityExceeded(f"decomposability check is capped at {MAX_DECISION_SIZE} elements")
    below = [x for x in members(L.down[u]) if x != u]
    cg = {x: principal_congruence(A, x, u) for x in below}
    # smallest sets first, so a reported witness is as small as possible
    for r in range(2, len(below) + 1):
        for S in combinations(below, r):
            if L.join_all(S) == u and not intersect_all((cg[x] for x in S), n).is_identity():
                return list(S)
    return None


def decomposable_at_1(A: PointedLattice) -> bool:
    return decomposability_counterexample(A) is None


def alpha_n_counterexample(A: PointedLattice, n: int = 2) -> Optional[tuple[int, ...]]:
    """Falsifying ``(x1, ..., xn, z)`` for the quasi-equation (alpha_n), or None."""
    if n < 2:
        raise ValueError("alpha_n needs n >= 2")
    if n > 4:
        raise CapacityExceeded("alpha_n is checked for n <= 4")
    L, u, size = A.lattice, A.unit, A.size
    U = L.up[u]
    from itertools import combinations_with_replacement
    # the condition is symmetric in x1..xn, so multisets suffice
    for xs in combinations_with_replacement(range(size), n):
        if not (U >> L.join_all(xs)) & 1:
            continue
        for z in range(size):
            lhs = L.join_all(L.meet[x][z] for x in xs)
            if not L.leq(L.meet[u][z], lhs):
                return tuple(xs) + (z,)
    return None


def alpha_n_holds(A: PointedLattice, n: int = 2) -> bool:
    return alpha_n_counterexample(A, n) is None


# ---------------------------------------------------------------------------
# semi-K decisions

KLike = Union[KClass, str, Callable[[PointedLattice], bool]]


def _k_predicate(K: KLike) -> Callable[[PointedLattice], bool]:
    if isinstance(K, KClass):
        return K.contains
    if isinstance(K, str):
        return lambda B: structural_class(B, K)
    return K


@dataclass
class SemiKResult:
    holds: bool
    witness: Optional[list[Congruence]] = None

    def __bool__(self):
        return self.holds


def k_congruences(A: PointedLattice, K: KLike) -> list[Congruence]:
    pred = _k_predicate(K)
    return [th for th in all_congruences(A) if pred(quotient(A, th)[0])]


def is_semi_K(A: PointedLattice, K: KLike) -> SemiKResult:
    """Is ``A`` a subdirect product of quotients lying in ``K``?"""
    n = A.size
    if n > MAX_DECISION_SIZE:
        raise CapacityExceeded(f"semi-K decision is capped at {MAX_DECISION_SIZE} elements")
    family = sorted(k_congruences(A, K), key=lambda c: c.labels)
    if not intersect_all(family, n).is_identity():
        return SemiKResult(False)
    witness = list(family)
    for th in list(family):
        rest = [c for c in witness if c != th]
        if intersect_all(rest, n).is_identity():
            witness = rest
    return SemiKResult(True, witness)


def prime_one_filters(A: PointedLattice) -> list[ElementSet]:
    return enumerate_one_filters(A, prime_only=True)


def _all_families_ok(A: PointedLattice, maker) -> bool:
    """For every family of prime 1-filters meeting in the upset of 1, the congruences meet in Δ."""
    n, up1 = A.size, A.lattice.up[A.unit]
    filters = prime_one_filters(A)
    thetas = [maker(A, F) for F in filters]
    full = (1 << n) - 1
    for r in range(1, len(filters) + 1):
        for fam in combinations(range(len(filters)), r):
            inter = full
            for i in fam:
                inter &= filters[i]
            if inter == up1 and not intersect_all((thetas[i] for i in fam), n).is_identity():
                return False
    return True


def theorem_spp_profile(A: PointedLattice) -> dict[str, bool]:
    """The equivalent characterisations of semi-prime-pointedness, each computed on its own."""
    if A.size > MAX_DECISION_SIZE:
        raise CapacityExceeded(f"profiles are capped at {MAX_DECISION_SIZE} elements")
    ud, dec = up_distributive_at_1(A), decomposable_at_1(A)
    filters = prime_one_filters(A)
    return {
        "i": is_semi_K(A, "prime_pointed").holds,
        "ii": ud and dec,
        "iii": alpha_n_holds(A, 2) and dec,
        "iv": intersect_all((theta_plus(A, F) for F in filters), A.size).is_identity(),
        "v": ud and _all_families_ok(A, theta_plus),
    }


SEMICONIC_EQUATIONS = (
    "1 ^ (x v y) = (1 ^ x) v (1 ^ y)",
    "1 v (x ^ y) = (1 v x) ^ (1 v y)",
    "x ^ (1 v y) = (x ^ 1) v (x ^ y)",
)
SEMICONIC_QUASI = "1 ^ x = 1 ^ y & 1 v x = 1 v y => x = y"


def _sentences(texts):
    return [parse_sentence(t, "lattice") for t in texts]


def satisfies_semiconic_equations(A: PointedLattice, which=(0, 1, 2)) -> bool:
    eqs = _sentences(SEMICONIC_EQUATIONS)
    return all(holds(A, eqs[i]) for i in which)


def _conic_and_prime(B: PointedLattice) -> bool:
    return structural_class(B, "conic") and structural_class(B, "prime_pointed")


def theorem_semiconic_spp_profile(A: PointedLattice) -> dict[str, bool]:
    if A.size > MAX_DECISION_SIZE:
        raise CapacityExceeded(f"profiles are capped at {MAX_DECISION_SIZE} elements")
    ud, dec = up_distributive_at_1(A), decomposable_at_1(A)
    semiconic_eq = satisfies_semiconic_equations(A)
    filters = prime_one_filters(A)
    return {
        "i": is_semi_K(A, "conic").holds and is_semi_K(A, "prime_pointed").holds,
        "ii": is_semi_K(A, _conic_and_prime).holds,
        "iii": semiconic_eq and ud and dec,
        "iv": semiconic_eq and dec and alpha_n_holds(A, 2),
        "v": intersect_all((theta_conic(A, F) for F in filters), A.size).is_identity(),
        "vi": ud and _all_families_ok(A, theta_conic),
    }


def cone_kernels(A: PointedLattice) -> tuple[Optional[Congruence], Optional[Congruence]]:
    """Kernels of ``x -> 1 ^ x`` and ``x -> 1 v x`` when these maps are homomorphisms."""
    L, u, n = A.lattice, A.unit, A.size
    out = []
    for table in (L.meet, L.join):
        h = table[u]
        is_hom = all(h[L.meet[a][b]] == L.meet[h[a]][h[b]] and h[L.join[a][b]] == L.join[h[a]][h[b]]
                     for a in range(n) for b in range(n))
        out.append(Congruence.from_blocks(n, _kernel_blocks(h)) if is_hom else None)
    return out[0], out[1]


def _kernel_blocks(h):
    blocks: dict[int, list[int]] = {}
    for x, y in enumerate(h):
        blocks.setdefault(y, []).append(x)
    return blocks.values()


def pointed_n5_embedding(A: PointedLattice) -> Optional[dict[str, int]]:
    """An embedding of the pentagon pointed at its lone atom side, or None.

    The pattern is ``o < a < t`` and ``o < b < c < t`` with the unit at ``a``.
    """
    L, a = A.lattice, A.unit
    n = A.size
    for o in members(L.down[a]):
        if o == a:
            continue
        for t in members(L.up[a]):
            if t == a:
                continue
            for b in range(n):
                if b in (o, t) or not (L.leq(o, b) and L.leq(b, t)):
                    continue
                if L.meet[a][b] != o or L.join[a][b] != t:
                    continue
                for c in range(n):
                    if c in (b, t) or not (L.leq(b, c) and L.leq(c, t)):
                        continue
                    if L.meet[a][c] == o and L.join[a][c] == t:
                        return {"o": o, "a": a, "b": b, "c": c, "t": t}
    return None


def semiconic_profile(A: PointedLattice) -> dict[str, bool]:
    down, up = cone_kernels(A)
    first_two = satisfies_semiconic_equations(A, (0, 1))
    quasi = parse_sentence(SEMICONIC_QUASI, "lattice")
    return {
        "i": is_semi_K(A, "conic").holds,
        "ii": down is not None and up is not None and down.meet(up).is_identity(),
        "iii": satisfies_semiconic_equations(A),
        "iv": first_two and holds(A, quasi).holds,
        "v": first_two and pointed_n5_embedding(A) is None,
    }


def semi_prime_pointed(A: PointedLattice) -> bool:
    return up_distributive_at_1(A) and decomposable_at_1(A)


def relatively_subdirectly_irreducible(A: PointedLattice, Q: Optional[Callable] = None,
                                       finitely: bool = False) -> bool:
    """Relative subdirect irreducibility with respect to the class decided by ``Q``.

    ``Q`` defaults to semi-prime-pointedness. Trivial algebras are never r.s.i.
    """
    if A.size > MAX_DECISION_SIZE:
        raise CapacityExceeded(f"r.s.i. decision is capped at {MAX_DECISION_SIZE} elements")
    if A.size == 1:
        return False
    Q = Q or semi_prime_pointed
    qcons = [th for th in all_congruences(A)
             if not th.is_identity() and Q(quotient(A, th)[0])]
    if finitely:
        return all(not x.meet(y).is_identity() for x, y in combinations(qcons, 2)) \
            and all(not x.is_identity() for x in qcons)
    return not intersect_all(qcons, A.size).is_identity()
