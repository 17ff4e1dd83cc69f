"""Constructions on pointed lattices and the named fixtures used throughout the tests."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Union

from .core_order import (ElementSet, FiniteLattice, PointedLattice, is_homomorphism,
                         lattice_from_relation, mask_of, members, popcount)
from .errors import CapacityExceeded, UnknownFixture

MAX_PRODUCT_SIZE = 4096


@dataclass(frozen=True)
class Embedding:
    source: PointedLattice
    target: PointedLattice
    map: tuple[int, ...]

    def verify(self) -> bool:
        """Injective and preserving meet, join and the unit."""
        return len(set(self.map)) == len(self.map) and \
            is_homomorphism(self.source, self.target, self.map)


def _lattice(A: Union[PointedLattice, FiniteLattice]) -> FiniteLattice:
    return A.lattice if isinstance(A, PointedLattice) else A


def _with_new_element(L: FiniteLattice, up_of_new: ElementSet, below_new: ElementSet,
                      new_name: str) -> FiniteLattice:
    """Append element ``n``; ``up_of_new`` are old elements above it, ``below_new`` old ones below."""
    n = L.size
    up = [L.up[a] | ((1 << n) if (below_new >> a) & 1 else 0) for a in range(n)]
    up.append(up_of_new | (1 << n))
    names = (L.names or tuple(str(i) for i in range(n))) + (new_name,)
    return FiniteLattice.from_up_masks(up, names)


def adjoin_top_unit(L: Union[FiniteLattice, PointedLattice]) -> PointedLattice:
    """``L (+) 1``: a new top element that serves as the unit."""
    L = _lattice(L)
    full = (1 << L.size) - 1
    return PointedLattice(_with_new_element(L, 0, full, "1"), L.size)


def adjoin_bottom(A: PointedLattice) -> PointedLattice:
    """``0 (+) A`` with the unit kept in place."""
    L = A.lattice
    n = L.size
    up = [L.up[a] for a in range(n)] + [(1 << (n + 1)) - 1]
    names = (L.names or tuple(str(i) for i in range(n))) + ("0",)
    return PointedLattice(FiniteLattice.from_up_masks(up, names), A.unit)


def double_at_one(A: PointedLattice) -> tuple[PointedLattice, Embedding]:
    """Insert a new element ``1-`` directly below the unit."""
    L, u = A.lattice, A.unit
    below = L.down[u] & ~(1 << u)
    above = L.up[u]
    D = PointedLattice(_with_new_element(L, above, below, f"{L.name(u)}-"), u)
    return D, Embedding(A, D, tuple(range(A.size)))


def prime_cover(A: PointedLattice) -> tuple[PointedLattice, list[int]]:
    """The subalgebra ``{(a,0)} u {(p,1) : p >= 1}`` of ``A x 2`` and its first projection."""
    L, u = A.lattice, A.unit
    n = L.size
    tops = members(L.up[u])
    elems = [(a, 0) for a in range(n)] + [(p, 1) for p in tops]
    idx = {e: i for i, e in enumerate(elems)}
    up = []
    for a, s in elems:
        up.append(mask_of(idx[(b, t)] for b, t in elems if L.leq(a, b) and s <= t))
    names = tuple(f"{L.name(a)}.{s}" for a, s in elems)
    B = PointedLattice(FiniteLattice.from_up_masks(up, names), idx[(u, 1)])
    proj = [a for a, _ in elems]
    if not is_homomorphism(B, A, proj) or set(proj) != set(range(n)):
        raise AssertionError("first projection is not a surjective homomorphism")
    return B, proj


def _downsets(L: FiniteLattice) -> list[ElementSet]:
    seen = {0}
    stack = [0]
    while stack:
        D = stack.pop()
        for x in range(L.size):
            if not (D >> x) & 1 and (L.down[x] & ~(1 << x)) & ~D == 0:
                E = D | (1 << x)
                if E not in seen:
                    seen.add(E)
                    stack.append(E)
    return sorted(seen)


def ideals(L: FiniteLattice) -> list[ElementSet]:
    """All non-empty ideals (down-closed, join-closed), found without assuming principality."""
    out = []
    for D in _downsets(L):
        els = members(D)
        if els and all((D >> L.join[a][b]) & 1 for a in els for b in els):
            out.append(D)
    return out


def ideal_completion(A: PointedLattice) -> tuple[PointedLattice, Embedding]:
    """``Idl A`` ordered by inclusion with constant ``down(1)``, and ``a -> down(a)``."""
    L = A.lattice
    ids = ideals(L)
    pos = {I: i for i, I in enumerate(ids)}
    up = [mask_of(j for j, J in enumerate(ids) if I & J == I) for I in ids]
    names = tuple("{" + ",".join(L.name(x) for x in members(I)) + "}" for I in ids)
    C = PointedLattice(FiniteLattice.from_up_masks(up, names), pos[L.down[A.unit]])
    emb = Embedding(A, C, tuple(pos[L.down[a]] for a in range(A.size)))
    if not emb.verify():
        raise AssertionError("a -> down(a) is not an embedding")
    if len(ids) != A.size:
        raise AssertionError("finite ideal completion is not isomorphic to the lattice")
    return C, emb


def fep_envelope(A: PointedLattice, X: ElementSet) -> tuple[PointedLattice, dict[int, int]]:
    """Join-closure of ``X u {1, meet(X) ^ 1}`` inside ``A``.

    Returns the finite lattice ``B`` (order inherited from ``A``) and the map
    from elements of ``A`` lying in ``B`` to their index in ``B``.
    """
    L, u = A.lattice, A.unit
    xs = members(X)
    if not xs:
        raise ValueError("X must be non-empty")
    seed = set(xs) | {u, L.meet[L.meet_all(xs)][u]}
    closed = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                j = L.join[a][b]
                if j not in closed:
                    closed.add(j)
                    nxt.append(j)
        frontier = nxt
    els = sorted(closed)
    pos = {e: i for i, e in enumerate(els)}
    mask = mask_of(els)
    up = [mask_of(pos[b] for b in members(L.up[e] & mask)) for e in els]
    names = tuple(L.name(e) for e in els) if L.names else None
    B = PointedLattice(FiniteLattice.from_up_masks(up, names), pos[u])
    for a in els:
        for b in els:
            if B.join[pos[a]][pos[b]] != pos[L.join[a][b]]:
                raise AssertionError("joins of the envelope disagree with the ambient lattice")
            m = L.meet[a][b]
            if (X >> m) & 1 and B.meet[pos[a]][pos[b]] != pos[m]:
                raise AssertionError("meet inside X is not preserved")
    return B, pos


def direct_product(As: Sequence[PointedLattice]) -> PointedLattice:
    """Componentwise product; elements are tuples in lexicographic order."""
    size = 1
    for A in As:
        size *= A.size
    if size > MAX_PRODUCT_SIZE:
        raise CapacityExceeded(f"product has {size} elements (cap {MAX_PRODUCT_SIZE})")
    elems = list(product(*(range(A.size) for A in As)))
    idx = {e: i for i, e in enumerate(elems)}

    def combine(tables):
        return tuple(tuple(idx[tuple(t[x][y] for t, x, y in zip(tables, e, f))] for f in elems)
                     for e in elems)

    meet = combine([A.meet for A in As])
    join = combine([A.join for A in As])
    up = tuple(mask_of(idx[f] for f in elems if all(A.leq(x, y) for A, x, y in zip(As, e, f)))
               for e in elems)
    bottom = idx[tuple(A.bottom for A in As)]
    top = idx[tuple(A.top for A in As)]
    names = tuple(",".join(A.name(x) for A, x in zip(As, e)) for e in elems)
    L = FiniteLattice(size, up, meet, join, bottom, top, names)
    return PointedLattice(L, idx[tuple(A.unit for A in As)])


# ---------------------------------------------------------------------------
# fixtures


def chain(k: int, unit_pos: Optional[int] = None) -> PointedLattice:
    """The ``k``-element chain ``0 < 1 < ... < k-1`` with the unit at ``unit_pos`` (default top)."""
    if k < 1:
        raise ValueError("a chain needs at least one element")
    unit_pos = k - 1 if unit_pos is None else unit_pos
    L = lattice_from_relation(k, [(i, i + 1) for i in range(k - 1)], "covers",
                              tuple(f"c{i}" for i in range(k)))
    return PointedLattice(L, unit_pos)


def pentagon() -> FiniteLattice:
    # bot < a < top, bot < b < c < top
    return lattice_from_relation(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)], "covers",
                                 ("bot", "a", "b", "c", "top"))


def diamond() -> FiniteLattice:
    return lattice_from_relation(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], "covers",
                                 ("bot", "p", "q", "r", "top"))


def boolean_square() -> FiniteLattice:
    return lattice_from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)], "covers",
                                 ("bot", "p", "q", "top"))


def _fixtures():
    return {
        "n5_left_pointed": lambda: PointedLattice(pentagon(), 1),
        "n5_unital": lambda: PointedLattice(pentagon(), 4),
        "m3_unital": lambda: PointedLattice(diamond(), 4),
        "m3_plus_one": lambda: adjoin_top_unit(diamond()),
        "boolean_square_unital": lambda: PointedLattice(boolean_square(), 3),
    }


FIXTURE_NAMES = tuple(_fixtures()) + ("chain(k, unit_pos)",)

_CHAIN = re.compile(r"chain\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)$")


def fixture(name: str, *args) -> PointedLattice:
    """Named algebras; chains are written ``chain(k, unit_pos)`` or passed as ``("chain", k, pos)``."""
    if name == "chain":
        return chain(*args)
    m = _CHAIN.match(name.strip())
    if m:
        k = int(m.group(1))
        pos = int(m.group(2)) if m.group(2) is not None else None
        if pos is not None and not 0 <= pos < k:
            raise UnknownFixture(f"unit position {pos} out of range for chain({k})")
        return chain(k, pos)
    table = _fixtures()
    if name not in table:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return table[name]()
