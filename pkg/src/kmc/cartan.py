"""Rank-3 generalized Cartan matrices and their parabolic structure.

Indices are 1-based throughout the public API, so the subset ``{1, 2}``
refers to the first two simple roots exactly as in the usual notation.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from .errors import (
    AxiomViolation,
    DecomposableInput,
    FiniteTypeInput,
    MatrixSyntaxError,
    NotRank3,
)

INDICES = (1, 2, 3)
Subset = FrozenSet[int]


class MatrixType(str, enum.Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"


class ClassLabel(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


REFINED_LABELS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x")

# refined class -> coarse class
REFINED_TO_CLASS = {
    "i": ClassLabel.I,
    "ii": ClassLabel.II, "iii": ClassLabel.II,
    "iv": ClassLabel.III, "v": ClassLabel.III, "vi": ClassLabel.III,
    "vii": ClassLabel.IV, "viii": ClassLabel.IV, "ix": ClassLabel.IV, "x": ClassLabel.IV,
}

_COXETER = {0: 2, 1: 3, 2: 4, 3: 6}
_RANK2_NAMES = {0: "A1xA1", 1: "A2", 2: "B2", 3: "G2"}


def subset(*idx) -> Subset:
    return frozenset(idx)


def subset_label(J) -> str:
    """``{1, 2}`` -> ``"12"``; the empty set renders as ``"0"``."""
    return "".join(str(i) for i in sorted(J)) or "0"


@dataclass(frozen=True)
class Rank2Type:
    product: int
    coxeter_order: Optional[int]  # None encodes infinity
    is_g2: bool

    @classmethod
    def from_product(cls, product: int) -> "Rank2Type":
        return cls(product, _COXETER.get(product), product == 3)

    @property
    def finite(self) -> bool:
        return self.coxeter_order is not None

    @property
    def name(self) -> str:
        return _RANK2_NAMES.get(self.product, "infinite")


@dataclass(frozen=True)
class CartanMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    indecomposable: bool = field(init=False)
    matrix_type: Optional[MatrixType] = field(init=False)
    symmetrizable: bool = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise NotRank3(f"expected a 3x3 matrix, got shape {[len(r) for r in rows]}")
        _check_axioms(rows)
        object.__setattr__(self, "entries", rows)
        indec = _connected(rows)
        object.__setattr__(self, "indecomposable", indec)
        object.__setattr__(self, "matrix_type", _principal_minor_type(rows) if indec else None)
        a = rows
        sym = a[0][1] * a[1][2] * a[2][0] == a[0][2] * a[2][1] * a[1][0]
        object.__setattr__(self, "symmetrizable", sym)

    def a(self, i: int, j: int) -> int:
        """Entry a_ij with 1-based indices."""
        return self.entries[i - 1][j - 1]

    def pair_product(self, i: int, j: int) -> int:
        return self.a(i, j) * self.a(j, i)

    def rank2_type(self, i: int, j: int) -> Rank2Type:
        return Rank2Type.from_product(self.pair_product(i, j))

    def permuted(self, perm) -> "CartanMatrix":
        """Matrix with new index c carrying old index ``perm[c-1]``."""
        return CartanMatrix(tuple(tuple(self.a(pi, pj) for pj in perm) for pi in perm))

    def to_text(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.entries)

    @property
    def infinite_type(self) -> bool:
        return self.matrix_type in (MatrixType.AFFINE, MatrixType.INDEFINITE)

    def __str__(self):
        return self.to_text()


def _check_axioms(a) -> None:
    for i in range(3):
        if a[i][i] != 2:
            raise AxiomViolation(f"diagonal entry a_{i+1}{i+1} = {a[i][i]}, must equal 2")
    for i, j in itertools.permutations(range(3), 2):
        if a[i][j] > 0:
            raise AxiomViolation(f"off-diagonal entry a_{i+1}{j+1} = {a[i][j]} is positive")
        if a[i][j] == 0 and a[j][i] != 0:
            raise AxiomViolation(
                f"a_{i+1}{j+1} = 0 but a_{j+1}{i+1} = {a[j][i]} (zero entries must pair)")


def _connected(a) -> bool:
    adj = {i: {j for j in range(3) if j != i and a[i][j] != 0} for i in range(3)}
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == 3


def _det3(a) -> int:
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def _principal_minor_type(a) -> MatrixType:
    proper = [a[i][i] * a[j][j] - a[i][j] * a[j][i] for i, j in itertools.combinations(range(3), 2)]
    proper += [a[i][i] for i in range(3)]
    det = _det3(a)
    if all(m > 0 for m in proper):
        if det > 0:
            return MatrixType.FINITE
        if det == 0:
            return MatrixType.AFFINE
    return MatrixType.INDEFINITE


_ROW_SPLIT = re.compile(r"\s*;\s*")


def parse_matrix(text: str) -> CartanMatrix:
    """Parse ``"2,-1,-3;-3,2,-1;-2,-4,2"`` into a validated :class:`CartanMatrix`."""
    if not isinstance(text, str) or not text.strip():
        raise MatrixSyntaxError("empty matrix literal")
    rows = []
    for chunk in _ROW_SPLIT.split(text.strip().strip(";")):
        try:
            rows.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise MatrixSyntaxError(f"cannot read row {chunk!r}") from None
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        if len({len(r) for r in rows}) > 1:
            raise MatrixSyntaxError("rows have different lengths")
        raise NotRank3(f"expected 3 rows of 3 entries, got {len(rows)}x{len(rows[0])}")
    return CartanMatrix(tuple(rows))


def as_cartan(m) -> CartanMatrix:
    if isinstance(m, CartanMatrix):
        return m
    if isinstance(m, str):
        return parse_matrix(m)
    return CartanMatrix(tuple(tuple(r) for r in m))


def classify_type(m) -> MatrixType:
    m = as_cartan(m)
    if not m.indecomposable:
        raise DecomposableInput("the finite/affine/indefinite trichotomy needs an indecomposable matrix")
    return m.matrix_type


# canonical forms, written as the set of finite pairs together with the G2 pairs
_PAIR12, _PAIR13, _PAIR23 = subset(1, 2), subset(1, 3), subset(2, 3)
_CANONICAL_REFINED = {
    "i": (frozenset(), frozenset()),
    "ii": (frozenset({_PAIR12}), frozenset()),
    "iii": (frozenset({_PAIR12}), frozenset({_PAIR12})),
    "iv": (frozenset({_PAIR12, _PAIR13}), frozenset()),
    "v": (frozenset({_PAIR12, _PAIR13}), frozenset({_PAIR12})),
    "vi": (frozenset({_PAIR12, _PAIR13}), frozenset({_PAIR12, _PAIR13})),
    "vii": (frozenset({_PAIR12, _PAIR13, _PAIR23}), frozenset()),
    "viii": (frozenset({_PAIR12, _PAIR13, _PAIR23}), frozenset({_PAIR12})),
    "ix": (frozenset({_PAIR12, _PAIR13, _PAIR23}), frozenset({_PAIR12, _PAIR13})),
    "x": (frozenset({_PAIR12, _PAIR13, _PAIR23}), frozenset({_PAIR12, _PAIR13, _PAIR23})),
}

# maximal finite subsets of each coarse canonical form
CANONICAL_P = {
    ClassLabel.I: (subset(1), subset(2), subset(3)),
    ClassLabel.II: (subset(1, 2), subset(3)),
    ClassLabel.III: (subset(1, 2), subset(1, 3)),
    ClassLabel.IV: (subset(1, 2), subset(1, 3), subset(2, 3)),
}


@dataclass(frozen=True)
class ParabolicProfile:
    finite_subsets: FrozenSet[Subset]
    maximal_finite: FrozenSet[Subset]
    class_label: ClassLabel
    refined_label: str
    rank2_types: Dict[Subset, Rank2Type]
    permutation: Tuple[int, int, int]

    def to_user(self, J) -> Subset:
        """Map a subset written in canonical labels to the input's labels."""
        return frozenset(self.permutation[c - 1] for c in J)

    def to_canonical(self, J) -> Subset:
        inv = {u: c + 1 for c, u in enumerate(self.permutation)}
        return frozenset(inv[u] for u in J)

    @property
    def g2_pairs(self) -> Tuple[Subset, ...]:
        return tuple(sorted((J for J, t in self.rank2_types.items() if t.is_g2), key=sorted))

    def pasting_order(self) -> Tuple[Subset, ...]:
        """Maximal finite subsets in the pasting order, in the input's labels."""
        return tuple(self.to_user(J) for J in CANONICAL_P[self.class_label])


def _finite_subsets(m: CartanMatrix):
    subs = {frozenset()} | {subset(i) for i in INDICES}
    for i, j in itertools.combinations(INDICES, 2):
        if m.pair_product(i, j) <= 3:
            subs.add(subset(i, j))
    return frozenset(subs)


def parabolic_profile(m) -> ParabolicProfile:
    m = as_cartan(m)
    mtype = classify_type(m)
    if mtype is MatrixType.FINITE:
        raise FiniteTypeInput("finite-type matrix: no infinite-type classification applies")
    finite = _finite_subsets(m)
    maximal = frozenset(J for J in finite if J and not any(J < K for K in finite))
    pairs = {J: m.rank2_type(*sorted(J)) for J in finite if len(J) == 2}
    for perm in itertools.permutations(INDICES):
        inv = {u: c + 1 for c, u in enumerate(perm)}
        cfinite = frozenset(frozenset(inv[u] for u in J) for J in pairs)
        cg2 = frozenset(frozenset(inv[u] for u in J) for J, t in pairs.items() if t.is_g2)
        for label, form in _CANONICAL_REFINED.items():
            if form == (cfinite, cg2):
                return ParabolicProfile(finite, maximal, REFINED_TO_CLASS[label], label, pairs, perm)
    raise AssertionError("no canonical form matched")  # unreachable for rank 3
