"""Bundled matrices: every coarse and refined class, symmetrizable and not, a few affine."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .cartan import CartanMatrix, parse_matrix


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    class_label: str
    refined_label: str
    symmetrizable: bool
    matrix_type: str = "Indefinite"

    @property
    def matrix(self) -> CartanMatrix:
        return parse_matrix(self.text)


EXAMPLE = Fixture("example", "2,-1,-3;-3,2,-1;-2,-4,2", "II", "iii", False)

CORPUS: Tuple[Fixture, ...] = (
    Fixture("i-nonsym", "2,-4,-4;-4,2,-4;-4,-3,2", "I", "i", False),
    Fixture("i-sym", "2,-4,-4;-4,2,-4;-4,-4,2", "I", "i", True),
    Fixture("i-even", "2,-2,-2;-2,2,-2;-2,-2,2", "I", "i", True),
    Fixture("ii-nonsym", "2,-4,-4;-4,2,-2;-4,-1,2", "II", "ii", False),
    Fixture("ii-sym", "2,-4,-4;-4,2,-2;-2,-1,2", "II", "ii", True),
    Fixture("iii-nonsym", "2,-4,-4;-4,2,-3;-4,-1,2", "II", "iii", False),
    Fixture("iii-sym", "2,-4,-4;-3,2,-3;-1,-1,2", "II", "iii", True),
    EXAMPLE,
    Fixture("iv-nonsym", "2,-4,-2;-4,2,-1;-1,-2,2", "III", "iv", False),
    Fixture("iv-sym", "2,-4,-2;-4,2,-2;-1,-1,2", "III", "iv", True),
    Fixture("iv-relabel", "2,-1,-1;-1,2,-1;-4,-1,2", "III", "iv", False),
    Fixture("v-nonsym", "2,-4,-3;-4,2,-2;-1,-1,2", "III", "v", False),
    Fixture("vi-nonsym", "2,-4,-3;-4,2,-1;-1,-3,2", "III", "vi", False),
    Fixture("vi-sym", "2,-4,-3;-4,2,-3;-1,-1,2", "III", "vi", True),
    Fixture("vii-nonsym", "2,-2,-2;-1,2,-2;-1,-1,2", "IV", "vii", False),
    Fixture("vii-sym", "2,-2,-2;-1,2,-1;-1,-1,2", "IV", "vii", True),
    Fixture("vii-affine", "2,-1,-1;-1,2,-1;-1,-1,2", "IV", "vii", True, "Affine"),
    Fixture("viii-nonsym", "2,-3,-2;-1,2,-2;-1,-1,2", "IV", "viii", False),
    Fixture("viii-affine", "2,-3,-1;-1,2,0;-1,0,2", "IV", "viii", True, "Affine"),
    Fixture("ix-nonsym", "2,-3,-3;-1,2,-2;-1,-1,2", "IV", "ix", False),
    Fixture("x-nonsym", "2,-3,-3;-1,2,-3;-1,-1,2", "IV", "x", False),
)

# a12*a21 >= 4 and neither alpha_1 nor alpha_2 vanishes mod 2 or mod 3
SUM_IDENTITY_SAMPLES: Tuple[str, ...] = (
    "2,-4,-1;-1,2,-1;-1,-1,2",
    "2,-2,-1;-3,2,-1;-1,-1,2",
    "2,-1,-3;-4,2,-1;-1,-2,2",
    "2,-4,-3;-4,2,-2;-1,-1,2",
    "2,-2,-2;-2,2,-1;-1,-1,2",
)


def by_name(name: str) -> Fixture:
    for fx in CORPUS:
        if fx.name == name:
            return fx
    raise KeyError(name)
