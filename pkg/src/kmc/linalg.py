"""Exact linear algebra over Q and prime fields on graded monomial bases.

Matrices are FLINT matrices: ``fmpz_mat`` for the rationals (subspaces are
spanned by integer columns, denominators cleared) and ``nmod_mat`` for a
prime field.  A :class:`GradedSubspace` stores, for every even
cohomological degree ``2k <= N``, a full-column-rank matrix whose columns
are coordinate vectors in the degree-``k`` monomial basis.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Callable, List, Sequence, Tuple

import flint
import numpy as np

from .errors import FieldMismatch, NotASubspace, NotPrime, TruncationMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``p == 0`` means the rationals, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        if p == 0:
            raise NotPrime("0 is not prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``q``, ``Q``, ``0``, ``fp3``, ``F3``, ``F_3`` or ``3``."""
        t = str(text).strip().lower().replace("_", "")
        if t in ("q", "0", "rationals", "qq"):
            return cls(0)
        for prefix in ("fp", "f", "gf"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls.prime(int(t[len(prefix):]))
        if t.isdigit():
            return cls.prime(int(t))
        raise ValueError(f"unknown coefficient field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    # matrix construction ---------------------------------------------------

    @property
    def dtype(self):
        return object if self.p == 0 else np.int64

    def array(self, rows, ncols: int = None) -> np.ndarray:
        """Normalized numpy matrix: Python ints over Q, residues in [0, p) over F_p."""
        arr = np.array(rows, dtype=object)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, ncols or 0)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return self.normalize(arr)

    def normalize(self, arr) -> np.ndarray:
        arr = np.asarray(arr)
        if self.p:
            return (arr % self.p).astype(np.int64)
        out = np.empty(arr.shape, dtype=object)
        out[...] = [[int(x) for x in row] for row in arr.tolist()] if arr.size else out
        return out

    def zeros(self, nrows: int, ncols: int) -> np.ndarray:
        if self.p:
            return np.zeros((nrows, ncols), dtype=np.int64)
        return np.full((nrows, ncols), 0, dtype=object)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1
        return out

    def matrix(self, nrows: int, ncols: int, entries=None):
        """FLINT matrix from a flat list of integers."""
        if entries is None or len(entries) == 0:
            entries = [0] * (nrows * ncols)
        if self.p == 0:
            return flint.fmpz_mat(nrows, ncols, entries)
        return flint.nmod_mat(flint.fmpz_mat(nrows, ncols, entries), self.p)

    def from_rows(self, rows: Sequence[Sequence[int]], ncols: int = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return self.matrix(len(rows), ncols, [int(x) for r in rows for x in r])

    def from_columns(self, cols: Sequence[Sequence[int]], nrows: int):
        cols = [list(c) for c in cols]
        return self.from_rows([[c[i] for c in cols] for i in range(nrows)], len(cols))

    def from_array(self, arr):
        """FLINT matrix from a 2-d numpy array of integers (any integer or object dtype)."""
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        r, c = arr.shape
        if r == 0 or c == 0:
            return self.matrix(r, c)
        if self.p:
            arr = arr % self.p
        return self.matrix(r, c, arr.ravel().tolist())


# matrix helpers -------------------------------------------------------------
#
# Subspace bases are numpy arrays; FLINT only sees a matrix when an
# elimination is needed, and only small results are copied back.

def _field_of(mat) -> FieldSpec:
    if isinstance(mat, flint.fmpz_mat):
        return FieldSpec(0)
    return FieldSpec(int(mat.modulus()))


def _is_flint(mat) -> bool:
    return isinstance(mat, (flint.fmpz_mat, flint.nmod_mat))


def to_array(mat) -> np.ndarray:
    """Entries as a numpy array: object dtype over Q, int64 over F_p."""
    if not _is_flint(mat):
        return np.asarray(mat)
    r, c = mat.nrows(), mat.ncols()
    if isinstance(mat, flint.fmpz_mat):
        out = np.empty((r, c), dtype=object)
        if r and c:
            out[:, :] = [[int(x) for x in row] for row in mat.tolist()]
        return out
    return np.fromiter(map(int, mat.entries()), dtype=np.int64, count=r * c).reshape(r, c)


def to_rows(mat) -> List[List[int]]:
    return [[int(x) for x in row] for row in to_array(mat).tolist()]


def columns(mat) -> List[List[int]]:
    return [[int(x) for x in col] for col in to_array(mat).T.tolist()]


def _shape(mat):
    return (mat.nrows(), mat.ncols()) if _is_flint(mat) else mat.shape


def ncols(mat) -> int:
    return _shape(mat)[1]


def _with_field(mat, field):
    if _is_flint(mat):
        return _field_of(mat)
    if field is None:
        raise ValueError("a numpy matrix needs an explicit field")
    return field


def _as_flint(mat, field):
    return mat if _is_flint(mat) else field.from_array(mat)


def take_columns(mat, idx: Sequence[int]):
    idx = list(idx)
    if _is_flint(mat):
        return _field_of(mat).from_array(to_array(mat)[:, idx])
    return mat[:, idx]


def take_rows(mat, idx):
    idx = list(idx)
    if _is_flint(mat):
        return _field_of(mat).from_array(to_array(mat)[idx, :])
    return mat[idx, :]


def hstack(*mats):
    n = _shape(mats[0])[0]
    if any(_shape(m)[0] != n for m in mats):
        raise ValueError("row counts differ")
    out = np.hstack([to_array(m) for m in mats])
    return _field_of(mats[0]).from_array(out) if _is_flint(mats[0]) else out


def vstack(*mats):
    out = np.vstack([to_array(m) for m in mats])
    return _field_of(mats[0]).from_array(out) if _is_flint(mats[0]) else out


def rank(mat, field: FieldSpec = None) -> int:
    r, c = _shape(mat)
    if r == 0 or c == 0:
        return 0
    f = _with_field(mat, field)
    return int(_as_flint(mat, f).rank())


def _selector(f: FieldSpec, n: int, idx: Sequence[int]):
    sel = np.zeros((n, len(idx)), dtype=np.int64)
    for j, i in enumerate(idx):
        sel[i, j] = 1
    return f.from_array(sel)


def kernel(mat, field: FieldSpec = None):
    """Columns forming a basis of ``{x : mat * x = 0}``.

    An injective map gives a matrix with zero columns.  FLINT input gives
    FLINT output; numpy input (with ``field``) gives numpy output.
    """
    flint_in = _is_flint(mat)
    f = _with_field(mat, field)
    r, n = _shape(mat)
    if n == 0:
        out = f.zeros(0, 0)
    elif r == 0:
        out = f.identity(n)
    else:
        X, nullity = _as_flint(mat, f).nullspace()
        nullity = int(nullity)
        if nullity == 0:
            out = f.zeros(n, 0)
        elif nullity == n:
            out = f.normalize(to_array(X))
        else:
            out = f.normalize(to_array(X * _selector(f, n, range(nullity))))
    return f.from_array(out) if flint_in else out


def pivot_columns(mat, field: FieldSpec = None) -> List[int]:
    r, c = _shape(mat)
    if r == 0 or c == 0:
        return []
    f = _with_field(mat, field)
    out = _as_flint(mat, f).rref()
    R, rk = out[0], int(out[-1])
    if rk == 0:
        return []
    top = R if rk == r else _selector(f, r, range(rk)).transpose() * R
    nz = to_array(top) != 0
    return [int(np.argmax(row)) for row in nz]


def column_basis(mat, field: FieldSpec = None):
    """Independent columns of ``mat`` spanning its column space."""
    if ncols(mat) == 0:
        return mat
    return take_columns(mat, pivot_columns(mat, field))


# monomial bases -------------------------------------------------------------

@dataclass(frozen=True)
class MonomialBasis:
    """Exponent triples of total degree ``poly_degree`` in graded-lex order."""

    poly_degree: int
    monomials: Tuple[Tuple[int, int, int], ...]

    @property
    def cohomological_degree(self) -> int:
        return 2 * self.poly_degree

    def __len__(self):
        return len(self.monomials)

    def index(self, e) -> int:
        return _index_table(self.poly_degree)[tuple(e)]


@lru_cache(maxsize=None)
def monomial_basis(k: int) -> MonomialBasis:
    mons = [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]
    return MonomialBasis(k, tuple(mons))


@lru_cache(maxsize=None)
def _index_table(k: int):
    return {e: i for i, e in enumerate(monomial_basis(k).monomials)}


def monomial_count(k: int) -> int:
    return comb(k + 2, 2)


# graded subspaces -----------------------------------------------------------

def map_degrees(fn: Callable[[int], object], ks: Sequence[int], workers: int = 1) -> list:
    """Evaluate ``fn`` on each polynomial degree, optionally in threads.

    Results are returned in the order of ``ks`` regardless of scheduling.
    """
    ks = list(ks)
    if workers <= 1 or len(ks) <= 1:
        return [fn(k) for k in ks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, ks))


@dataclass(frozen=True)
class GradedSubspace:
    field: FieldSpec
    truncation: int
    bases: Tuple[np.ndarray, ...]  # index k -> basis columns for cohomological degree 2k

    def __post_init__(self):
        if len(self.bases) != self.truncation // 2 + 1:
            raise ValueError("one basis per even degree up to the truncation is required")

    @property
    def max_poly_degree(self) -> int:
        return self.truncation // 2

    def basis(self, degree: int) -> np.ndarray:
        """Basis matrix at the even cohomological ``degree``."""
        if degree % 2:
            raise ValueError("odd degrees carry no polynomial content")
        return self.bases[degree // 2]

    @property
    def dims(self) -> Tuple[int, ...]:
        """Dimensions indexed by polynomial degree k (cohomological degree 2k)."""
        return tuple(b.shape[1] for b in self.bases)

    def dim(self, degree: int) -> int:
        return 0 if degree % 2 else self.bases[degree // 2].shape[1]

    def degree_dims(self) -> List[int]:
        """Dimensions indexed by cohomological degree 0..N (odd entries zero)."""
        out = [0] * (self.truncation + 1)
        for k, b in enumerate(self.bases):
            out[2 * k] = b.shape[1]
        return out

    def is_full(self, k: int) -> bool:
        return self.bases[k].shape[1] == monomial_count(k)


def full_ring(field: FieldSpec, N: int) -> GradedSubspace:
    return GradedSubspace(field, N, tuple(field.identity(monomial_count(k)) for k in range(N // 2 + 1)))


def zero_subspace(field: FieldSpec, N: int) -> GradedSubspace:
    return GradedSubspace(field, N, tuple(field.zeros(monomial_count(k), 0) for k in range(N // 2 + 1)))


def _check_compatible(a: GradedSubspace, b: GradedSubspace):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.truncation != b.truncation:
        raise TruncationMismatch(f"{a.truncation} vs {b.truncation}")


def _sum_basis(f: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if y.shape[1] == 0:
        return x
    if x.shape[1] == 0:
        return y
    n = x.shape[0]
    if x.shape[1] == n:
        return x
    if y.shape[1] == n:
        return y
    both = np.hstack([x, y])
    piv = pivot_columns(both, f)
    if len(piv) == n:
        return f.identity(n)
    return both[:, piv]


def subspace_sum(a: GradedSubspace, b: GradedSubspace, workers: int = 1) -> GradedSubspace:
    _check_compatible(a, b)
    f = a.field

    def one(k):
        return _sum_basis(f, a.bases[k], b.bases[k])

    return GradedSubspace(f, a.truncation, tuple(map_degrees(one, range(len(a.bases)), workers)))


def subspace_sum_all(parts: Sequence[GradedSubspace], workers: int = 1) -> GradedSubspace:
    out = parts[0]
    for p in parts[1:]:
        out = subspace_sum(out, p, workers)
    return out


def _matmul(f: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if f.p:
        return (x @ y) % f.p
    return x.dot(y)


def _meet_basis(f: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    if x.shape[1] == 0 or y.shape[1] == 0:
        return f.zeros(n, 0)
    if x.shape[1] == n:
        return y
    if y.shape[1] == n:
        return x
    K = kernel(np.hstack([x, f.normalize(-y)]), f)
    if K.shape[1] == 0:
        return f.zeros(n, 0)
    return _primitive(f, _matmul(f, x, K[: x.shape[1], :]))


def _primitive(f: FieldSpec, B: np.ndarray) -> np.ndarray:
    """Over Q, divide each column by the gcd of its entries to curb coefficient growth."""
    if f.p or B.size == 0:
        return B
    for j in range(B.shape[1]):
        g = 0
        for x in B[:, j]:
            g = gcd(g, int(x))
        if g > 1:
            B[:, j] = [int(x) // g for x in B[:, j]]
    return B


def subspace_intersect(a: GradedSubspace, b: GradedSubspace, workers: int = 1) -> GradedSubspace:
    _check_compatible(a, b)
    f = a.field

    def one(k):
        return _meet_basis(f, a.bases[k], b.bases[k])

    return GradedSubspace(f, a.truncation, tuple(map_degrees(one, range(len(a.bases)), workers)))


def contains(big: GradedSubspace, small: GradedSubspace) -> Tuple[bool, int]:
    """``(True, -1)`` if ``small`` lies in ``big`` at every degree, else the first failing degree."""
    _check_compatible(big, small)
    f = big.field
    for k, (x, y) in enumerate(zip(big.bases, small.bases)):
        if y.shape[1] == 0 or big.is_full(k):
            continue
        if x.shape[1] == 0 or rank(np.hstack([x, y]), f) != x.shape[1]:
            return False, 2 * k
    return True, -1


def quotient_dims(big: GradedSubspace, small: GradedSubspace) -> List[int]:
    """``dim big - dim small`` per even degree (indexed by polynomial degree)."""
    ok, deg = contains(big, small)
    if not ok:
        raise NotASubspace(deg)
    return [x - y for x, y in zip(big.dims, small.dims)]
