"""Truncated integer power series and rational functions with (1 - t^d) denominators.

All series are indexed by cohomological degree, so a generator of the
polynomial ring contributes ``1/(1 - t^2)`` and a suspension is a shift by
one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import TruncationMismatch


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of t^0 .. t^N."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def zero(cls, N: int) -> "TruncatedSeries":
        return cls((0,) * (N + 1))

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        return cls((1,) + (0,) * N)

    @classmethod
    def monomial(cls, d: int, N: int, c: int = 1) -> "TruncatedSeries":
        out = [0] * (N + 1)
        if d <= N:
            out[d] = c
        return cls(out)

    @classmethod
    def from_even(cls, dims: Sequence[int], N: int) -> "TruncatedSeries":
        """Place ``dims[k]`` at t^(2k)."""
        out = [0] * (N + 1)
        for k, d in enumerate(dims):
            if 2 * k <= N:
                out[2 * k] = d
        return cls(out)

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other: "TruncatedSeries"):
        if self.N != other.N:
            raise TruncationMismatch(f"t^{self.N} vs t^{other.N}")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(a - b for a, b in zip(self, other))

    def __neg__(self):
        return TruncatedSeries(-a for a in self)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(other * a for a in self)
        self._check(other)
        N = self.N
        out = [0] * (N + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other.coefficients[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k, keeping the truncation."""
        if k < 0:
            raise ValueError("negative shifts are not series")
        return TruncatedSeries(((0,) * k + self.coefficients)[: self.N + 1])

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.N:
            raise TruncationMismatch(f"cannot extend t^{self.N} to t^{N}")
        return TruncatedSeries(self.coefficients[: N + 1])

    def times_one_minus(self, d: int) -> "TruncatedSeries":
        """Multiply by (1 - t^d)."""
        c = list(self.coefficients)
        return TruncatedSeries(c[i] - (c[i - d] if i >= d else 0) for i in range(len(c)))

    def divide_one_minus(self, d: int) -> "TruncatedSeries":
        """Multiply by 1/(1 - t^d) = 1 + t^d + t^2d + ..."""
        c = list(self.coefficients)
        for i in range(d, len(c)):
            c[i] += c[i - d]
        return TruncatedSeries(c)

    def odd_part(self) -> "TruncatedSeries":
        return TruncatedSeries(c if i % 2 else 0 for i, c in enumerate(self))

    def even_part(self) -> "TruncatedSeries":
        return TruncatedSeries(0 if i % 2 else c for i, c in enumerate(self))

    def first_difference(self, other: "TruncatedSeries") -> Optional[int]:
        self._check(other)
        return next((i for i, (a, b) in enumerate(zip(self, other)) if a != b), None)

    def to_list(self) -> List[int]:
        return list(self.coefficients)

    def __str__(self):
        return render_polynomial(self.coefficients) + f" + O(t^{self.N + 1})"


@dataclass(frozen=True)
class FactoredRational:
    """numerator(t) / prod_d (1 - t^d)."""

    numerator: Tuple[int, ...]
    denominator_exponents: Tuple[int, ...] = ()

    def __post_init__(self):
        num = list(int(c) for c in self.numerator) or [0]
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num))
        dens = tuple(sorted(int(d) for d in self.denominator_exponents))
        if any(d <= 0 for d in dens):
            raise ValueError("denominator degrees must be positive")
        object.__setattr__(self, "denominator_exponents", dens)

    def expand(self, N: int) -> TruncatedSeries:
        return expand(self, N)

    def __str__(self):
        return render_rational(self)


def expand(fr: FactoredRational, N: int) -> TruncatedSeries:
    coeffs = list(fr.numerator[: N + 1]) + [0] * max(0, N + 1 - len(fr.numerator))
    s = TruncatedSeries(coeffs)
    for d in fr.denominator_exponents:
        s = s.divide_one_minus(d)
    return s


def poincare(*degrees: int, N: int, numerator: Sequence[int] = (1,)) -> TruncatedSeries:
    """Series of a polynomial algebra on generators of the given degrees."""
    return expand(FactoredRational(tuple(numerator), degrees), N)


def reconstruct_numerator(s: TruncatedSeries, denominator_exponents: Iterable[int]) -> Optional[Tuple[int, ...]]:
    """Numerator q with s = q / prod(1 - t^d), or ``None`` when the truncation is too short.

    The product s * prod(1 - t^d) must vanish on the last ``sum(d)``
    coefficients (the degree of the denominator) before the polynomial is
    trusted; a shorter window lets unrelated denominators fit by accident.
    """
    dens = tuple(denominator_exponents)
    p = s
    for d in dens:
        p = p.times_one_minus(d)
    guard = sum(dens) if dens else 1
    if guard > s.N:
        return None
    tail = p.coefficients[s.N - guard + 1:]
    if any(tail):
        return None
    num = list(p.coefficients[: s.N - guard + 1])
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def render_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{mag}{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def render_rational(fr: FactoredRational) -> str:
    num = render_polynomial(fr.numerator)
    if not fr.denominator_exponents:
        return num
    den = "".join(f"(1-t^{d})" if d != 1 else "(1-t)" for d in fr.denominator_exponents)
    if len([c for c in fr.numerator if c]) > 1:
        num = f"({num})"
    return f"{num}/({den})" if len(fr.denominator_exponents) > 1 else f"{num}/{den}"
