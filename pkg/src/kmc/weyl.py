"""Weyl reflections, their action on graded pieces, finite Weyl subgroups, Molien series.

Convention: a 3x3 integer matrix ``g`` acts on the weights by right
multiplication of the row vector, ``(w1, w2, w3) -> (w1, w2, w3) g``, so
column ``j`` of ``g`` holds the image of ``w_j``.  The induced substitution
on polynomials then satisfies ``sub(g @ h) = sub(g) @ sub(h)``, and on the
linear piece (basis w1, w2, w3) the substitution matrix is ``g`` itself.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from .cartan import CartanMatrix, INDICES, as_cartan
from .errors import InfiniteGroup, ModularNotSupported
from .linalg import FieldSpec, monomial_basis, monomial_count, _index_table
from .series import TruncatedSeries

IntMatrix = Tuple[Tuple[int, int, int], ...]

GROUP_CEILING = 64


def _key(g) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(g))


def reflection_matrix(m, j: int) -> np.ndarray:
    """``I - A_j``: identity except column j, which becomes ``e_j - alpha_j``."""
    m = as_cartan(m)
    g = np.eye(3, dtype=np.int64)
    for i in INDICES:
        g[i - 1, j - 1] -= m.a(i, j)
    return g


def simple_root(m, j: int) -> Tuple[int, int, int]:
    """Coordinates of alpha_j = sum_i a_ij w_i."""
    m = as_cartan(m)
    return tuple(m.a(i, j) for i in INDICES)


@dataclass(frozen=True)
class ReflectionAction:
    cartan: CartanMatrix
    matrix_per_generator: Dict[int, IntMatrix]
    simple_roots: Dict[int, Tuple[int, int, int]]

    @classmethod
    def of(cls, m) -> "ReflectionAction":
        m = as_cartan(m)
        return cls(
            m,
            {j: _key(reflection_matrix(m, j)) for j in INDICES},
            {j: simple_root(m, j) for j in INDICES},
        )

    def generator(self, j: int) -> np.ndarray:
        return np.array(self.matrix_per_generator[j], dtype=np.int64)

    def is_degenerate(self, j: int, p: int) -> bool:
        """True when sigma_j reduces to the identity modulo p."""
        return p > 0 and all(x % p == 0 for x in self.simple_roots[j])


# substitution matrices ------------------------------------------------------

_chain_lock = threading.Lock()
_chains: Dict[Tuple[IntMatrix, int], list] = {}


@lru_cache(maxsize=None)
def _raise_map(k: int, i: int) -> np.ndarray:
    """Index in degree k+1 of (monomial r of degree k) * w_i."""
    idx = _index_table(k + 1)
    out = []
    for e in monomial_basis(k).monomials:
        f = list(e)
        f[i] += 1
        out.append(idx[tuple(f)])
    return np.array(out, dtype=np.int64)


@lru_cache(maxsize=None)
def _parents(k: int):
    """For each degree-k monomial: the variable split off and the parent's index."""
    idx = _index_table(k - 1)
    var, par = [], []
    for e in monomial_basis(k).monomials:
        j = next(i for i in range(3) if e[i] > 0)
        f = list(e)
        f[j] -= 1
        var.append(j)
        par.append(idx[tuple(f)])
    return np.array(var), np.array(par)


def _next_power(prev: np.ndarray, g: IntMatrix, k: int, p: int) -> np.ndarray:
    n = monomial_count(k)
    dtype = object if p == 0 else np.int64
    out = np.zeros((n, n), dtype=dtype)
    var, par = _parents(k)
    for j in range(3):
        cols = np.nonzero(var == j)[0]
        if cols.size == 0:
            continue
        src = prev[:, par[cols]]
        block = np.zeros((n, cols.size), dtype=dtype)
        for i in range(3):
            c = g[i][j]
            if c:
                block[_raise_map(k - 1, i), :] += c * src
        out[:, cols] = block
    if p:
        out %= p
    return out


def _substitution_array(g: IntMatrix, k: int, p: int) -> np.ndarray:
    key = (g, p)
    with _chain_lock:
        chain = _chains.get(key)
        if chain is None:
            one = np.ones((1, 1), dtype=object if p == 0 else np.int64)
            chain = _chains[key] = [one]
        while len(chain) <= k:
            chain.append(_next_power(chain[-1], g, len(chain), p))
        return chain[k]


@lru_cache(maxsize=4096)
def _substitution_cached(g: IntMatrix, k: int, p: int):
    arr = _substitution_array(g, k, p)
    n = arr.shape[0]
    return FieldSpec(p).matrix(n, n, arr.ravel().tolist())


def substitution_matrix(g, k: int, f: FieldSpec = FieldSpec()):
    """Matrix of the substitution induced by ``g`` on the degree-k monomial basis.

    Column ``c`` holds the coordinates of the image of monomial ``c``.
    """
    if k < 0:
        raise ValueError("polynomial degree must be non-negative")
    return _substitution_cached(_key(g), k, f.p)


def substitution_array(g, k: int, p: int = 0) -> np.ndarray:
    """Same as :func:`substitution_matrix` but as a numpy array (object dtype over Q)."""
    return _substitution_array(_key(g), k, p).copy()


# finite Weyl subgroups ------------------------------------------------------

_ORDER_BY_PRODUCT = {0: 4, 1: 6, 2: 8, 3: 12}


@dataclass(frozen=True)
class FiniteWeylGroup:
    generating_indices: Tuple[int, ...]
    elements: Tuple[IntMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def expected_order(self, m: CartanMatrix) -> int:
        J = self.generating_indices
        if len(J) == 0:
            return 1
        if len(J) == 1:
            return 2
        if len(J) == 2:
            return _ORDER_BY_PRODUCT[m.pair_product(*J)]
        raise ValueError("rank-3 Weyl groups of infinite type are infinite")


def enumerate_group(r: ReflectionAction, J, ceiling: int = GROUP_CEILING) -> FiniteWeylGroup:
    """Close the generators indexed by ``J`` under multiplication."""
    J = tuple(sorted(J))
    for i, j in itertools.combinations(J, 2):
        if r.cartan.rank2_type(i, j).coxeter_order is None:
            raise InfiniteGroup(f"pair {{{i},{j}}} has a_ij*a_ji = {r.cartan.pair_product(i, j)} >= 4")
    if len(J) == 3:
        raise InfiniteGroup("the full Weyl group of an infinite-type matrix is infinite")
    gens = [r.generator(j) for j in J]
    ident = _key(np.eye(3, dtype=np.int64))
    seen = {ident: None}
    frontier = [np.eye(3, dtype=np.int64)]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x @ s
                ky = _key(y)
                if ky not in seen:
                    seen[ky] = None
                    nxt.append(y)
                    if len(seen) > ceiling:
                        raise InfiniteGroup(f"more than {ceiling} elements generated")
        frontier = nxt
    return FiniteWeylGroup(J, tuple(sorted(seen)))


def coxeter_relation_holds(r: ReflectionAction, k: int, j: int) -> bool:
    """(s_k s_j)^m = 1 for the tabulated finite order m."""
    order = r.cartan.rank2_type(k, j).coxeter_order
    if order is None:
        raise InfiniteGroup(f"pair {{{k},{j}}} has infinite order")
    prod = r.generator(k) @ r.generator(j)
    return bool((np.linalg.matrix_power(prod, order) == np.eye(3, dtype=np.int64)).all())


# Molien series --------------------------------------------------------------

def _inverse_series(c1: int, c2: int, c3: int, K: int):
    """Power-series coefficients of 1/(1 + c1 s + c2 s^2 + c3 s^3) up to s^K."""
    out = [0] * (K + 1)
    out[0] = 1
    for n in range(1, K + 1):
        acc = 0
        for i, c in ((1, c1), (2, c2), (3, c3)):
            if n - i >= 0:
                acc -= c * out[n - i]
        out[n] = acc
    return out


def _char_coeffs(g: IntMatrix):
    """det(I - s g) = 1 - tr s + e2 s^2 - det s^3."""
    a = np.array(g, dtype=object)
    tr = a[0, 0] + a[1, 1] + a[2, 2]
    e2 = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
          + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
          + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    det = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
           - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
           + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    return -int(tr), int(e2), -int(det)


def molien_series(g: FiniteWeylGroup, f: FieldSpec = FieldSpec(), N: int = 40) -> TruncatedSeries:
    """(1/|G|) * sum_g 1/det(I - t^2 g), truncated at t^N."""
    if not f.is_rational:
        raise ModularNotSupported("Molien averaging is only used in characteristic 0")
    K = N // 2
    total = [0] * (K + 1)
    for x in g.elements:
        for n, c in enumerate(_inverse_series(*_char_coeffs(x), K)):
            total[n] += c
    order = g.order
    if any(c % order for c in total):
        raise ArithmeticError("Molien average is not integral")
    return TruncatedSeries.from_even([c // order for c in total], N)
