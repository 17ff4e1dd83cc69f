"""Catalogs of small lattices, pointed lattices and residuated lattices up to isomorphism."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence, Union

from .core_order import (FiniteLattice, PointedLattice, automorphisms, canonical_form, mask_of,
                         members)
from .errors import CapacityExceeded, NotALattice

MAX_LATTICE_SIZE = 8
PROVENANCE = "latkit-enum/1"


@dataclass
class Catalog:
    max_size: int
    algebras: list
    kind: str = "lattice"
    provenance: str = PROVENANCE

    def __len__(self):
        return len(self.algebras)

    def __iter__(self):
        return iter(self.algebras)

    def __add__(self, other: "Catalog") -> "Catalog":
        return Catalog(max(self.max_size, other.max_size), self.algebras + other.algebras,
                       self.kind, self.provenance)


def _check_size(n: int):
    if n < 1:
        raise ValueError("size must be positive")
    if n > MAX_LATTICE_SIZE:
        raise CapacityExceeded(f"lattice enumeration is capped at {MAX_LATTICE_SIZE} elements")


def _with_top(up: Sequence[int]) -> list[int]:
    k = len(up)
    return [u | (1 << k) for u in up] + [1 << k]


def _antichains(up: Sequence[int]) -> Iterable[tuple[int, ...]]:
    k = len(up)
    for r in range(1, k + 1):
        for C in combinations(range(k), r):
            if all(not (up[a] >> b) & 1 and not (up[b] >> a) & 1 for a, b in combinations(C, 2)):
                yield C


@lru_cache(maxsize=None)
def _semilattices(k: int) -> tuple[tuple[int, ...], ...]:
    """Meet-semilattices on ``k`` elements (as up-masks), one per isomorphism type.

    Each is grown from a smaller one by adding a new maximal element whose
    lower covers form an antichain; adjoining a top gives a lattice, which is
    what the canonical form is computed on.
    """
    if k == 1:
        return ((1,),)
    seen = {}
    for up in _semilattices(k - 1):
        m = k - 1
        down = [mask_of(b for b in range(m) if (up[b] >> a) & 1) for a in range(m)]
        for C in _antichains(up):
            below = 0
            for c in C:
                below |= down[c]
            new_up = [u | ((1 << m) if (below >> a) & 1 else 0) for a, u in enumerate(up)]
            new_up.append(1 << m)
            try:
                L = FiniteLattice.from_up_masks(_with_top(new_up))
            except NotALattice:
                continue
            key, order = canonical_form(L)
            if key not in seen:
                seen[key] = L.relabel(order)
    out = []
    for key in sorted(seen):
        L = seen[key]
        top = L.top
        out.append(tuple(L.up[a] & ~(1 << top) for a in range(L.size) if a != top))
    return tuple(out)


@lru_cache(maxsize=None)
def _lattices(n: int) -> tuple[FiniteLattice, ...]:
    if n == 1:
        return (FiniteLattice.from_up_masks([1]),)
    out = []
    for up in _semilattices(n - 1):
        L = FiniteLattice.from_up_masks(_with_top(up))
        key, order = canonical_form(L)
        out.append((key, L.relabel(order)))
    return tuple(L for _, L in sorted(out, key=lambda t: t[0]))


def enumerate_lattices(n: int) -> Catalog:
    """All lattices with exactly ``n`` elements up to isomorphism, in canonical labelling."""
    _check_size(n)
    return Catalog(n, list(_lattices(n)), "lattice")


def _unit_orbits(L: FiniteLattice) -> list[int]:
    autos = automorphisms(L)
    reps, covered = [], set()
    for u in range(L.size):
        if u not in covered:
            reps.append(u)
            covered |= {f[u] for f in autos}
    return reps


def enumerate_pointed(n: int) -> Catalog:
    """Each lattice with each choice of unit, up to unit-preserving isomorphism."""
    _check_size(n)
    out = []
    for L in _lattices(n):
        for u in _unit_orbits(L):
            key, order = canonical_form(L, u)
            A = PointedLattice(L.relabel(order), order.index(u))
            out.append(A)
    return Catalog(n, out, "pointed")


def pointed_up_to(max_size: int) -> Catalog:
    cat = Catalog(max_size, [], "pointed")
    for n in range(1, max_size + 1):
        cat.algebras.extend(enumerate_pointed(n).algebras)
    return cat


def lattices_up_to(max_size: int) -> Catalog:
    cat = Catalog(max_size, [], "lattice")
    for n in range(1, max_size + 1):
        cat.algebras.extend(enumerate_lattices(n).algebras)
    return cat


# ---------------------------------------------------------------------------
# independent oracle: naturally labelled bounded posets, lattice filter, brute-force iso


def _labelled_bounded_posets(n: int) -> Iterable[list[int]]:
    """Down-masks of every bounded poset on ``0..n-1`` whose order extends the integer order
    restricted to a natural labelling: 0 is the bottom, ``n-1`` the top."""
    if n == 1:
        yield [1]
        return
    mid = n - 2

    def extend(downs):
        j = len(downs)
        if j == mid + 1:
            yield downs + [(1 << n) - 1]
            return
        for r in range(j):
            for S in combinations(range(1, j), r):
                inner = mask_of(S)
                if all(downs[s] & ~1 & ~(1 << s) & ~inner == 0 for s in S):
                    yield from extend(downs + [1 | inner | (1 << j)])

    yield from extend([1])


def _iso_brute(A_up: Sequence[int], B_up: Sequence[int]) -> bool:
    n = len(A_up)
    for perm in permutations(range(n)):
        if all(mask_of(perm[b] for b in members(A_up[a])) == B_up[perm[a]] for a in range(n)):
            return True
    return False


def _invariant(up: Sequence[int]) -> tuple:
    n = len(up)
    down_counts = [sum(1 for b in range(n) if (up[b] >> a) & 1) for a in range(n)]
    return tuple(sorted((bin(up[a]).count("1"), down_counts[a]) for a in range(n)))


def naive_lattice_count(n: int) -> int:
    """Count n-element lattices from scratch, without the canonical form."""
    reps: dict[tuple, list[list[int]]] = {}
    total = 0
    for downs in _labelled_bounded_posets(n):
        up = [mask_of(b for b in range(n) if (downs[b] >> a) & 1) for a in range(n)]
        try:
            FiniteLattice.from_up_masks(up)
        except NotALattice:
            continue
        inv = _invariant(up)
        bucket = reps.setdefault(inv, [])
        if not any(_iso_brute(up, other) for other in bucket):
            bucket.append(up)
            total += 1
    return total


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditResult:
    check: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def threads() -> int:
    try:
        return max(1, int(os.environ.get("LATKIT_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(args):
    name, alg = args
    from .audits import CHECKS
    return CHECKS[name](alg)


CheckItem = Union[str, tuple[str, Callable]]


def catalog_audit(cat: Union[Catalog, Iterable], checks: Sequence[CheckItem]) -> dict[str, AuditResult]:
    """Run every check on every algebra; failing algebras are dumped in the file format."""
    from .audits import CHECKS
    from .cli_io import write_algebra_text
    algebras = list(cat)
    out = {}
    for item in checks:
        name, fn = (item, CHECKS[item]) if isinstance(item, str) else item
        res = AuditResult(name)
        if threads() > 1 and isinstance(item, str):
            from multiprocessing import Pool
            with Pool(threads()) as pool:
                verdicts = pool.map(_run_one, [(name, A) for A in algebras])
        else:
            verdicts = [fn(A) for A in algebras]
        for A, v in zip(algebras, verdicts):
            if v:
                res.passed += 1
            else:
                res.failed += 1
                res.failures.append(write_algebra_text(A))
        out[name] = res
    return out
