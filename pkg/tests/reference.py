"""Schoolbook Gaussian elimination, used as an oracle for the flint-backed routines."""
from fractions import Fraction


def _entries(rows, p):
    if p:
        return [[x % p for x in r] for r in rows]
    return [[Fraction(x) for x in r] for r in rows]


def _inv(x, p):
    return pow(x, -1, p) if p else 1 / x


def rref(rows, p=0):
    a = _entries(rows, p)
    pivots, r = [], 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = _inv(a[r][c], p)
        a[r] = [(x * s) % p if p else x * s for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [((x - k * y) % p) if p else x - k * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows, p=0):
    return len(rref(rows, p)[1])


def in_kernel(rows, vec, p=0):
    for row in rows:
        s = sum(x * y for x, y in zip(row, vec))
        if (s % p if p else s) != 0:
            return False
    return True
