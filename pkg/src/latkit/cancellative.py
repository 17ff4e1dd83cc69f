"""Embedding a finite unital lattice into a simple integral cancellative CRL.

The algebra ``M`` lives inside the non-positive integer vectors indexed by the
meet-irreducible elements of ``L`` (top excluded). It consists of the zero
vector, the image ``phi(L)`` inside ``{-2,-1}^X`` and every vector ``<= -2``.
Multiplication is addition; ``tau`` is the interior operator onto ``M``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Optional, Union

import numpy as np

from .core_order import FiniteLattice, PointedLattice, element_class
from .errors import TrivialLattice
from .report import Report

IntVector = tuple[int, ...]

DEFAULT_BOUND = 8
DEFAULT_SEED = 20240601
DEFAULT_SAMPLES = 10_000


@dataclass(frozen=True, eq=False)
class ConeElement:
    """An element of ``M``. Equality is by the underlying vector; the tag is only a label."""

    tag: str
    coords: IntVector
    element: Optional[int] = None

    def __eq__(self, other):
        return isinstance(other, ConeElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.tag == "Zero":
            return "Zero"
        if self.tag == "Lat":
            return f"Lat({self.element})"
        return f"Low({self.coords})"


@dataclass
class Encoding:
    L: FiniteLattice
    X: list[int]
    phi: list[IntVector]
    _index: dict[IntVector, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.X)

    def sigma(self, w: IntVector) -> IntVector:
        """Largest ``phi(a)`` below ``w`` (``w`` in ``{-2,-1}^X``)."""
        return self.phi[self.sigma_element(w)]

    def sigma_element(self, w: IntVector) -> int:
        L = self.L
        return L.join_all(a for a in range(L.size) if _vle(self.phi[a], w))

    @cached_property
    def sigma_table(self) -> np.ndarray:
        """``sigma`` as an array indexed by the bitmask of ``-1`` coordinates."""
        out = np.zeros(1 << self.dim, dtype=np.int64)
        for mask in range(1 << self.dim):
            w = tuple(-1 if (mask >> k) & 1 else -2 for k in range(self.dim))
            out[mask] = self.sigma_element(w)
        return out

    @cached_property
    def phi_array(self) -> np.ndarray:
        return np.array(self.phi, dtype=np.int64).reshape(self.L.size, self.dim)

    def zero(self) -> ConeElement:
        return ConeElement("Zero", (0,) * self.dim)

    def lat(self, a: int) -> ConeElement:
        return ConeElement("Lat", self.phi[a], a)

    def low(self, v) -> ConeElement:
        return self.classify(tuple(v))

    def classify(self, v: IntVector) -> ConeElement:
        """Canonical tag for a vector that lies in ``M``."""
        v = tuple(int(c) for c in v)
        if all(c == 0 for c in v):
            return self.zero()
        a = self._index.get(v)
        if a is not None:
            return self.lat(a)
        if all(c <= -2 for c in v):
            return ConeElement("Low", v)
        raise ValueError(f"{v} is not an element of M")


def _vle(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _vmin(u, v) -> IntVector:
    return tuple(min(a, b) for a, b in zip(u, v))


def _lattice(L) -> FiniteLattice:
    return L.lattice if isinstance(L, PointedLattice) else L


def build_encoding(L: Union[FiniteLattice, PointedLattice]) -> Encoding:
    L = _lattice(L)
    if L.size < 2:
        raise TrivialLattice("the encoding needs a non-trivial lattice")
    X = [m for m in range(L.size) if m != L.top and element_class(L, m, "meet_irreducible")]
    phi = [tuple(-2 if L.leq(a, m) else -1 for m in X) for a in range(L.size)]
    enc = Encoding(L, X, phi, {v: a for a, v in enumerate(phi)})
    if len(enc._index) != L.size:
        raise AssertionError("phi is not injective")
    for a in range(L.size):
        for b in range(L.size):
            if L.leq(a, b) != _vle(phi[a], phi[b]):
                raise AssertionError("phi is not an order embedding")
            if phi[L.join[a][b]] != tuple(map(max, phi[a], phi[b])):
                raise AssertionError("phi does not preserve joins")
    if phi[L.top] != (-1,) * len(X) or phi[L.bottom] != (-2,) * len(X):
        raise AssertionError("phi does not send top/bottom to the constants -1/-2")
    cube = list(product((-2, -1), repeat=len(X)))
    for w in cube:
        s = enc.sigma(w)
        if not _vle(s, w) or enc.sigma(s) != s:
            raise AssertionError(f"sigma is not an interior operator at {w}")
        for w2 in cube:
            if _vle(w, w2) and not _vle(s, enc.sigma(w2)):
                raise AssertionError("sigma is not monotone")
    if {enc.sigma(w) for w in cube} != set(phi):
        raise AssertionError("sigma's image is not phi(L)")
    return enc


def tau(enc: Encoding, v) -> ConeElement:
    v = tuple(int(c) for c in v)
    if any(c > 0 for c in v):
        raise ValueError("vectors must be non-positive")
    if all(c == 0 for c in v):
        return enc.zero()
    if all(c >= -2 for c in v):
        return enc.lat(enc.sigma_element(tuple(min(c, -1) for c in v)))
    return enc.classify(tuple(min(c, -2) for c in v))


def m_mul(enc: Encoding, x: ConeElement, y: ConeElement) -> ConeElement:
    return enc.classify(tuple(a + b for a, b in zip(x.coords, y.coords)))


def m_lattice_ops(enc: Encoding, x: ConeElement, y: ConeElement) -> tuple[ConeElement, ConeElement]:
    """(meet, join): the join is pointwise max, the meet is ``tau`` of the pointwise min."""
    join = enc.classify(tuple(map(max, x.coords, y.coords)))
    return tau(enc, _vmin(x.coords, y.coords)), join


def m_meet(enc, x, y) -> ConeElement:
    return m_lattice_ops(enc, x, y)[0]


def m_join(enc, x, y) -> ConeElement:
    return m_lattice_ops(enc, x, y)[1]


def m_residual(enc: Encoding, x: ConeElement, z: ConeElement) -> ConeElement:
    return tau(enc, tuple(min(c - a, 0) for a, c in zip(x.coords, z.coords)))


def m_leq(x: ConeElement, y: ConeElement) -> bool:
    return _vle(x.coords, y.coords)


def verify_embedding(enc: Encoding) -> Report:
    """``L (+) 1`` into ``M``: the new top goes to Zero, ``a`` to ``Lat(a)``."""
    L = enc.L
    n = L.size
    rep = Report()
    image = [enc.lat(a) for a in range(n)] + [enc.zero()]

    def meet(a, b):
        if a == n:
            return b
        if b == n:
            return a
        return L.meet[a][b]

    def join(a, b):
        return n if n in (a, b) else L.join[a][b]

    if len(set(image)) != n + 1:
        rep.fail("map is not injective")
    for a in range(n + 1):
        for b in range(n + 1):
            mm, jj = m_lattice_ops(enc, image[a], image[b])
            if mm != image[meet(a, b)]:
                rep.fail(f"meet of {a} and {b} not preserved")
            if jj != image[join(a, b)]:
                rep.fail(f"join of {a} and {b} not preserved")
    if image[n] != enc.zero():
        rep.fail("unit not preserved")
    rep.details["pairs"] = (n + 1) ** 2
    return rep


# ---------------------------------------------------------------------------
# vectorised audit


def _tau_array(enc: Encoding, V: np.ndarray) -> np.ndarray:
    V = np.asarray(V, dtype=np.int64)
    out = np.minimum(V, -2)
    upper = (V >= -2).all(axis=-1)
    zero = (V == 0).all(axis=-1)
    if upper.any():
        W = np.minimum(V[upper], -1)
        weights = 1 << np.arange(enc.dim, dtype=np.int64)
        masks = ((W == -1) * weights).sum(axis=-1)
        out[upper] = enc.phi_array[enc.sigma_table[masks]]
    out[zero] = 0
    return out


def _in_m(enc: Encoding, V: np.ndarray) -> np.ndarray:
    low = (V <= -2).all(axis=-1)
    zero = (V == 0).all(axis=-1)
    lat = (V[:, None, :] == enc.phi_array[None, :, :]).all(axis=-1).any(axis=-1)
    return low | zero | lat


def fragment(enc: Encoding, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """Zero, every ``phi(a)`` and every vector with coordinates in ``[-bound, -2]``."""
    lows = np.array(list(product(range(-bound, -1), repeat=enc.dim)), dtype=np.int64)
    lows = lows.reshape(-1, enc.dim)
    rows = np.concatenate([np.zeros((1, enc.dim), dtype=np.int64), enc.phi_array, lows])
    return np.unique(rows, axis=0)


def _leq_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``out[i, j] = A[i] <= B[j]`` pointwise."""
    A = A.astype(np.int8)
    B = B.astype(np.int8)
    out = A[:, None, 0] <= B[None, :, 0]
    for k in range(1, A.shape[1]):
        out &= A[:, None, k] <= B[None, :, k]
    return out


def simplicity_witness(f: ConeElement, g: ConeElement) -> int:
    """Least ``k >= 1`` with ``k*f <= g`` (``f`` must be non-zero)."""
    if all(c == 0 for c in f.coords):
        raise ValueError("f must differ from the unit")
    return max([1] + [-(-b // a) for a, b in zip(f.coords, g.coords)])


def property_audit(enc: Encoding, sample_budget: int = DEFAULT_SAMPLES, bound: int = DEFAULT_BOUND,
                   seed: int = DEFAULT_SEED) -> Report:
    """Residuation, cancellativity, integrality, commutativity and simplicity on fragments of ``M``.

    Every triple of the fragment with coordinates ``>= -bound`` is checked for
    residuation, then ``sample_budget`` seeded random triples drawn from a
    wider range are checked for all laws.
    """
    rep = Report()
    S = fragment(enc, bound)
    N = len(S)
    rep.details["fragment"] = N

    # integrality: Zero is the top
    if (S > 0).any():
        rep.fail("fragment element above Zero")

    # residuation over all triples: x+y <= z  iff  y <= tau(min(z-x, 0))
    bad = 0
    for i in range(N):
        x = S[i]
        R = _tau_array(enc, np.minimum(S - x, 0))          # residuals x -> z for every z
        lhs = _leq_matrix(S + x, S)                         # [y, z]
        rhs = _leq_matrix(S, R)                             # [y, z]
        mism = lhs != rhs
        if mism.any():
            y, z = np.argwhere(mism)[0]
            bad += int(mism.sum())
            if len(rep.problems) < 10:
                rep.fail(f"residuation fails at x={tuple(x)}, y={tuple(S[y])}, z={tuple(S[z])}")
        # cancellativity: y -> x + y injective on the fragment
        if len(np.unique(S + x, axis=0)) != N:
            rep.fail(f"translation by {tuple(x)} is not injective")
        # closure of M under + and the residual
        if not _in_m(enc, S + x).all() or not _in_m(enc, R).all():
            rep.fail(f"operations with {tuple(x)} leave M")
    rep.details["exhaustive_triples"] = N ** 3
    rep.details["residuation_violations"] = bad

    # tau is a conucleus on sampled vectors
    rng = np.random.default_rng(seed)
    wide = 3 * bound
    U = -rng.integers(0, wide + 1, size=(sample_budget, enc.dim))
    V = -rng.integers(0, wide + 1, size=(sample_budget, enc.dim))
    TU, TV = _tau_array(enc, U), _tau_array(enc, V)
    if not (TU <= U).all():
        rep.fail("tau is not decreasing")
    if not (_tau_array(enc, TU) == TU).all():
        rep.fail("tau is not idempotent")
    lo = np.minimum(U, V)
    if not (_tau_array(enc, lo) <= np.minimum(TU, TV)).all():
        rep.fail("tau is not monotone")
    if not (TU + TV <= _tau_array(enc, U + V)).all():
        rep.fail("tau(u) + tau(v) <= tau(u + v) fails")

    # random triples of M
    X, Y, Z = (_tau_array(enc, -rng.integers(0, wide + 1, size=(sample_budget, enc.dim)))
               for _ in range(3))
    lhs = (X + Y <= Z).all(axis=1)
    rhs = (Y <= _tau_array(enc, np.minimum(Z - X, 0))).all(axis=1)
    if (lhs != rhs).any():
        rep.fail(f"residuation fails on {int((lhs != rhs).sum())} random triples")
    if not ((X + Y) == (Y + X)).all():
        rep.fail("commutativity fails")
    if not (((X + Y) + Z) == (X + (Y + Z))).all():
        rep.fail("associativity fails")
    same = ((X + Y) == (X + Z)).all(axis=1)
    if (same & ~(Y == Z).all(axis=1)).any():
        rep.fail("cancellativity fails on random triples")
    if (X > 0).any() or not _in_m(enc, X + Y).all():
        rep.fail("random products leave M or exceed Zero")
    rep.details["random_triples"] = sample_budget

    # simplicity: k*f <= g with k = max ceil(g_i / f_i)
    F = S[(S != 0).any(axis=1)]
    if (F > -1).any():
        rep.fail("a non-unit element has a zero coordinate")
    K = np.maximum(1, np.ceil(S[None, :, :] / F[:, None, :]).max(axis=2)).astype(np.int64)
    ok = (K[:, :, None] * F[:, None, :] <= S[None, :, :]).all(axis=2)
    if not ok.all():
        rep.fail("simplicity witness fails")
    rep.details["simplicity_pairs"] = int(K.size)
    rep.details["max_k"] = int(K.max()) if K.size else 0
    rep.details["seed"] = seed
    rep.details["bound"] = bound
    return rep
