"""Finite lattices, pointed lattices, element sets and isomorphism.

Elements are always the integers ``0..n-1``. Element sets (filters, ideals,
blocks) are plain ``int`` bitmasks: bit ``i`` set means element ``i`` belongs
to the set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import NotALattice, NotAPartialOrder

ElementSet = int


def members(mask: ElementSet) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int]) -> ElementSet:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice stored by its order (``up[a]`` = mask of ``{x : a <= x}``).

    Meet and join tables, bottom and top are derived at construction time.
    Equality and hashing only look at ``size`` and ``up``.
    """

    size: int
    up: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    join: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    bottom: int = field(compare=False)
    top: int = field(compare=False)
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def leq(self, a: int, b: int) -> bool:
        return bool((self.up[a] >> b) & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.size
        for a in range(self.size):
            for b in members(self.up[a]):
                d[b] |= 1 << a
        return tuple(d)

    @cached_property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.leq(a, b) for b in range(self.size)) for a in range(self.size))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for a in range(self.size):
            strict = self.up[a] & ~(1 << a)
            covers = [b for b in members(strict)
                      if not any(c != b and self.leq(c, b) for c in members(strict))]
            out.append(tuple(covers))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lc: list[list[int]] = [[] for _ in range(self.size)]
        for a in range(self.size):
            for b in self.upper_covers[a]:
                lc[b].append(a)
        return tuple(tuple(x) for x in lc)

    @cached_property
    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a in range(self.size) for b in self.upper_covers[a])

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def join_all(self, elements: Iterable[int]) -> int:
        r = self.bottom
        for e in elements:
            r = self.join[r][e]
        return r

    def meet_all(self, elements: Iterable[int]) -> int:
        r = self.top
        for e in elements:
            r = self.meet[r][e]
        return r

    def upset(self, a: int) -> ElementSet:
        return self.up[a]

    def downset(self, a: int) -> ElementSet:
        return self.down[a]

    @classmethod
    def from_up_masks(cls, up: Sequence[int], names=None) -> "FiniteLattice":
        n = len(up)
        down = [0] * n
        for a in range(n):
            for b in members(up[a]):
                down[b] |= 1 << a
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lb = down[a] & down[b]
                g = _extremal(lb, down)
                if g is None:
                    raise NotALattice(f"elements {a} and {b} have no greatest lower bound", (a, b))
                ub = up[a] & up[b]
                lub = _extremal(ub, up)
                if lub is None:
                    raise NotALattice(f"elements {a} and {b} have no least upper bound", (a, b))
                meet[a][b] = meet[b][a] = g
                join[a][b] = join[b][a] = lub
        full = (1 << n) - 1
        bottom = next(a for a in range(n) if up[a] == full)
        top = next(a for a in range(n) if down[a] == full)
        return cls(n, tuple(up), tuple(map(tuple, meet)), tuple(map(tuple, join)),
                   bottom, top, tuple(names) if names else None)

    def relabel(self, order: Sequence[int]) -> "FiniteLattice":
        """Lattice whose new element ``i`` is the old element ``order[i]``."""
        pos = [0] * self.size
        for i, old in enumerate(order):
            pos[old] = i
        up = [mask_of(pos[b] for b in members(self.up[old])) for old in order]
        names = tuple(self.names[o] for o in order) if self.names else None
        return FiniteLattice.from_up_masks(up, names)


def _extremal(candidates: int, cone: Sequence[int]) -> Optional[int]:
    # element of `candidates` whose cone contains all candidates
    for m in members(candidates):
        if cone[m] & candidates == candidates:
            return m
    return None


def lattice_from_relation(n: int, pairs: Iterable[tuple[int, int]], mode: str = "covers",
                          names=None) -> FiniteLattice:
    """Build a lattice on ``0..n-1`` from cover pairs or order pairs ``(a, b)`` meaning ``a <= b``."""
    if n < 1:
        raise ValueError("a lattice needs at least one element")
    if mode not in ("covers", "leq"):
        raise ValueError(f"unknown relation mode {mode!r}")
    up = [1 << a for a in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) out of range for size {n}")
        up[a] |= 1 << b
    # transitive closure (Warshall on bitmasks)
    for k in range(n):
        bit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= uk
    for a in range(n):
        for b in members(up[a]):
            if b != a and (up[b] >> a) & 1:
                raise NotAPartialOrder(f"cycle through elements {a} and {b}")
    return FiniteLattice.from_up_masks(up, names)


def lattice_from_leq(matrix: Sequence[Sequence[bool]], names=None) -> FiniteLattice:
    n = len(matrix)
    pairs = [(a, b) for a in range(n) for b in range(n) if matrix[a][b]]
    return lattice_from_relation(n, pairs, "leq", names)


@dataclass(frozen=True)
class PointedLattice:
    lattice: FiniteLattice
    unit: int

    def __post_init__(self):
        if not 0 <= self.unit < self.lattice.size:
            raise ValueError(f"unit {self.unit} is not an element")

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def meet(self):
        return self.lattice.meet

    @property
    def join(self):
        return self.lattice.join

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def leq(self, a: int, b: int) -> bool:
        return self.lattice.leq(a, b)

    def name(self, a: int) -> str:
        return self.lattice.name(a)

    def relabel(self, order: Sequence[int]) -> "PointedLattice":
        return PointedLattice(self.lattice.relabel(order), list(order).index(self.unit))


# ---------------------------------------------------------------------------
# element and structural classification


def element_class(A: PointedLattice | FiniteLattice, a: int, prop: str) -> bool:
    L = A.lattice if isinstance(A, PointedLattice) else A
    n = L.size
    if prop == "join_irreducible":
        return all(x == a or y == a for x in range(n) for y in range(n) if L.join[x][y] == a)
    if prop == "join_prime":
        return all(L.leq(a, x) or L.leq(a, y)
                   for x in range(n) for y in range(n) if L.leq(a, L.join[x][y]))
    if prop == "meet_irreducible":
        return all(x == a or y == a for x in range(n) for y in range(n) if L.meet[x][y] == a)
    raise ValueError(f"unknown element property {prop!r}")


STRUCTURAL_PROPS = ("integral", "dually_integral", "conic", "linear", "distributive",
                    "prime_pointed", "irreducible_pointed")


def structural_class(A: PointedLattice, prop: str) -> bool:
    L, u, n = A.lattice, A.unit, A.size
    if prop == "integral":
        return u == L.top
    if prop == "dually_integral":
        return u == L.bottom
    if prop == "conic":
        return all(L.leq(x, u) or L.leq(u, x) for x in range(n))
    if prop == "linear":
        return all(L.leq(x, y) or L.leq(y, x) for x in range(n) for y in range(n))
    if prop == "distributive":
        m, j = L.meet, L.join
        return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]]
                   for x in range(n) for y in range(n) for z in range(n))
    if prop == "prime_pointed":
        return element_class(A, u, "join_prime")
    if prop == "irreducible_pointed":
        return element_class(A, u, "join_irreducible")
    raise ValueError(f"unknown structural property {prop!r}")


def is_sublattice(L: FiniteLattice, mask: ElementSet) -> bool:
    els = members(mask)
    return bool(els) and all((mask >> L.meet[a][b]) & 1 and (mask >> L.join[a][b]) & 1
                             for a in els for b in els)


def sublattice(A: PointedLattice, mask: ElementSet) -> tuple[PointedLattice, list[int]]:
    """Restrict ``A`` to a sublattice containing the unit; returns it with the index map."""
    els = members(mask)
    if not (mask >> A.unit) & 1:
        raise ValueError("pointed sublattice must contain the unit")
    if not is_sublattice(A.lattice, mask):
        raise ValueError("element set is not closed under meet and join")
    pos = {e: i for i, e in enumerate(els)}
    up = [mask_of(pos[b] for b in members(A.lattice.up[e] & mask)) for e in els]
    names = tuple(A.lattice.names[e] for e in els) if A.lattice.names else None
    return PointedLattice(FiniteLattice.from_up_masks(up, names), pos[A.unit]), els


def cone(A: PointedLattice, sign: str, with_map: bool = False):
    """Negative cone (downset of the unit) or positive cone (upset of the unit)."""
    if sign == "negative":
        mask = A.lattice.down[A.unit]
    elif sign == "positive":
        mask = A.lattice.up[A.unit]
    else:
        raise ValueError(f"cone sign must be 'negative' or 'positive', got {sign!r}")
    C, els = sublattice(A, mask)
    return (C, els) if with_map else C


# ---------------------------------------------------------------------------
# filters and ideals


def is_one_filter(A: PointedLattice, F: ElementSet) -> bool:
    L = A.lattice
    if not (F >> A.unit) & 1:
        return False
    els = members(F)
    return all(L.up[a] & F == L.up[a] for a in els) and \
        all((F >> L.meet[a][b]) & 1 for a in els for b in els)


def is_prime_filter(A: PointedLattice, F: ElementSet) -> bool:
    L, n = A.lattice, A.size
    return all((F >> x) & 1 or (F >> y) & 1
               for x in range(n) for y in range(n) if (F >> L.join[x][y]) & 1)


def is_prime_ideal(A: PointedLattice, I: ElementSet) -> bool:
    L, n = A.lattice, A.size
    return all((I >> x) & 1 or (I >> y) & 1
               for x in range(n) for y in range(n) if (I >> L.meet[x][y]) & 1)


def enumerate_one_filters(A: PointedLattice, prime_only: bool = False) -> list[ElementSet]:
    """All 1-filters (optionally only the prime ones), sorted by bitmask.

    In a finite lattice every filter is principal, so the 1-filters are
    exactly the upsets of elements below the unit.
    """
    L = A.lattice
    out = sorted({L.up[f] for f in members(L.down[A.unit])})
    if prime_only:
        out = [F for F in out if is_prime_filter(A, F)]
    return out


def enumerate_one_proper_ideals(A: PointedLattice, prime_only: bool = False) -> list[ElementSet]:
    L = A.lattice
    out = sorted({L.down[i] for i in range(A.size) if not L.leq(A.unit, i)})
    if prime_only:
        out = [I for I in out if is_prime_ideal(A, I)]
    return out


# ---------------------------------------------------------------------------
# canonical forms and isomorphism


def _heights(L: FiniteLattice) -> list[int]:
    h = [0] * L.size
    # longest chain from bottom; elements processed in order of downset size
    for a in sorted(range(L.size), key=lambda x: popcount(L.down[x])):
        h[a] = max((h[b] + 1 for b in L.lower_covers[a]), default=0)
    return h


def _depths(L: FiniteLattice) -> list[int]:
    d = [0] * L.size
    for a in sorted(range(L.size), key=lambda x: popcount(L.up[x])):
        d[a] = max((d[b] + 1 for b in L.upper_covers[a]), default=0)
    return d


def _refine(L: FiniteLattice, colors: list[int]) -> list[int]:
    while True:
        sigs = [(colors[a],
                 tuple(sorted(colors[b] for b in L.lower_covers[a])),
                 tuple(sorted(colors[b] for b in L.upper_covers[a])))
                for a in range(L.size)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _initial_colors(L: FiniteLattice, unit: Optional[int]) -> list[int]:
    h, d = _heights(L), _depths(L)
    sigs = [(a == unit, h[a], d[a], len(L.lower_covers[a]), len(L.upper_covers[a]),
             popcount(L.down[a]), popcount(L.up[a])) for a in range(L.size)]
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranks[s] for s in sigs]


def canonical_form(L: FiniteLattice, unit: Optional[int] = None) -> tuple[tuple, list[int]]:
    """Canonical key and a canonical ordering of the elements.

    Two (pointed) lattices are isomorphic iff their keys are equal; mapping
    ``order_A[i] -> order_B[i]`` is then an isomorphism. Colours come from
    height/degree invariants refined over the cover graph, and ties are
    broken by individualisation, keeping the lexicographically least
    relabelled order matrix.
    """
    colors = _refine(L, _initial_colors(L, unit))
    best: list = [None, None]

    def key_for(order):
        pos = [0] * L.size
        for i, old in enumerate(order):
            pos[old] = i
        return tuple(mask_of(pos[b] for b in members(L.up[old])) for old in order)

    def search(cols):
        if len(set(cols)) == L.size:
            order = sorted(range(L.size), key=lambda a: cols[a])
            k = key_for(order)
            if best[0] is None or k < best[0]:
                best[0], best[1] = k, order
            return
        # individualise each member of the first smallest non-singleton class
        counts: dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c in counts if counts[c] > 1), key=lambda c: (counts[c], c))
        for a in range(L.size):
            if cols[a] == target:
                split = [2 * c + (1 if c > target or (c == target and x != a) else 0)
                         for x, c in enumerate(cols)]
                search(_refine(L, split))

    search(colors)
    key, order = best
    unit_pos = order.index(unit) if unit is not None else None
    return (L.size, unit_pos, key), order


def is_isomorphic(A: PointedLattice | FiniteLattice, B: PointedLattice | FiniteLattice
                  ) -> Optional[dict[int, int]]:
    """A unit-preserving isomorphism ``A -> B`` as a dict, or None."""
    LA, uA = (A.lattice, A.unit) if isinstance(A, PointedLattice) else (A, None)
    LB, uB = (B.lattice, B.unit) if isinstance(B, PointedLattice) else (B, None)
    if LA.size != LB.size:
        return None
    kA, oA = canonical_form(LA, uA)
    kB, oB = canonical_form(LB, uB)
    if kA != kB:
        return None
    return {a: b for a, b in zip(oA, oB)}


def is_homomorphism(A: PointedLattice, B: PointedLattice, h: Sequence[int]) -> bool:
    n = A.size
    if h[A.unit] != B.unit:
        return False
    return all(h[A.meet[a][b]] == B.meet[h[a]][h[b]] and h[A.join[a][b]] == B.join[h[a]][h[b]]
               for a in range(n) for b in range(n))


def automorphisms(A: PointedLattice | FiniteLattice) -> list[tuple[int, ...]]:
    """All (unit-preserving) automorphisms, by brute force over colour classes."""
    L, u = (A.lattice, A.unit) if isinstance(A, PointedLattice) else (A, None)
    colors = _refine(L, _initial_colors(L, u))
    classes: dict[int, list[int]] = {}
    for a, c in enumerate(colors):
        classes.setdefault(c, []).append(a)
    groups = list(classes.values())
    out = []
    from itertools import permutations
    for choice in product(*(permutations(g) for g in groups)):
        f = [0] * L.size
        for g, img in zip(groups, choice):
            for a, b in zip(g, img):
                f[a] = b
        if all(L.up[f[a]] == mask_of(f[b] for b in members(L.up[a])) for a in range(L.size)):
            out.append(tuple(f))
    return out
