"""Hypothesis strategies shared by the test modules."""
import itertools

from hypothesis import assume
from hypothesis import strategies as st

from kmc.cartan import MatrixType, classify_type, parse_matrix
from kmc.errors import KMCError


def _text(a):
    return ";".join(",".join(str(x) for x in row) for row in a)


@st.composite
def cartan_texts(draw, low=-4, allow_affine=True):
    """Valid connected rank-3 matrices of infinite type."""
    a = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    for i, j in itertools.combinations(range(3), 2):
        x = draw(st.integers(low, 0))
        y = 0 if x == 0 else draw(st.integers(low, -1))
        a[i][j], a[j][i] = x, y
    text = _text(a)
    try:
        m = parse_matrix(text)
        kind = classify_type(m)
    except KMCError:
        assume(False)
    assume(kind is not MatrixType.FINITE)
    if not allow_affine:
        assume(kind is MatrixType.INDEFINITE)
    return text


permutations = st.permutations((1, 2, 3))
