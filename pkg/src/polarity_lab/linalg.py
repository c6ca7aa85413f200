"""Small dense linear algebra over exact rationals (and floats).

Matrices are lists of rows. Every routine works on ``Fraction`` entries
without rounding; float entries are accepted too and then use partial
pivoting with a relative zero threshold.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Sequence

FLOAT_EPS = 1e-12


def to_scalar(value):
    """Coerce user input to a ``Fraction`` (exact) or ``float``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "dtype"):
        # numpy scalars
        if value.dtype.kind in "iu":
            return Fraction(int(value))
        return float(value)
    return float(value)


def to_vector(values) -> tuple:
    vec = tuple(to_scalar(v) for v in values)
    if any(isinstance(v, float) for v in vec):
        vec = tuple(float(v) for v in vec)
    return vec


def is_exact(values) -> bool:
    """True unless some entry is a float (ints and Fractions are exact)."""
    return not any(isinstance(v, float) for v in values)


def is_zero(x, scale=1.0) -> bool:
    if isinstance(x, float):
        return abs(x) <= FLOAT_EPS * max(1.0, scale)
    return x == 0


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(m, v):
    return [dot(row, v) for row in m]


def matmul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def _scale(rows, exact=None) -> float:
    if exact is None:
        exact = is_exact(x for row in rows for x in row)
    if exact:
        return 1.0
    try:
        return max((abs(float(x)) for row in rows for x in row), default=1.0)
    except OverflowError:
        return 1.0


def rref(m: Sequence[Sequence], exact=None):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [list(row) for row in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    if exact is None:
        exact = is_exact(x for row in a for x in row)
    scale = _scale(a, exact)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        if exact:
            best = next((i for i in range(r, rows) if a[i][c] != 0), None)
            if best is None:
                continue
        else:
            best = max(range(r, rows), key=lambda i: abs(a[i][c]))
            if is_zero(a[best][c], scale):
                continue
        a[r], a[best] = a[best], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and not (a[i][c] == 0):
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column."""
    exact = is_exact(x for row in m for x in row)
    a, pivots = rref(m, exact)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    one = Fraction(1) if exact else 1.0
    basis = []
    for f in free:
        v = [one * 0] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def det(m):
    a = [list(row) for row in m]
    n = len(a)
    exact = is_exact(x for row in a for x in row)
    scale = _scale(a, exact)
    result = Fraction(1) if exact else 1.0
    for c in range(n):
        if exact:
            best = next((i for i in range(c, n) if a[i][c] != 0), None)
            if best is None:
                return result * 0
        else:
            best = max(range(c, n), key=lambda i: abs(a[i][c]))
            if is_zero(a[best][c], scale):
                return result * 0
        if best != c:
            a[c], a[best] = a[best], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def solve(m, b):
    """Solve the square system m x = b; raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    a, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [a[i][n] for i in range(n)]


def inverse(m):
    n = len(m)
    exact = is_exact(x for row in m for x in row)
    one = Fraction(1) if exact else 1.0
    aug = [list(row) + [one if i == j else one * 0 for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug, exact)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in a]
