"""Small exact linear algebra over any field type (Fraction, QSqrt3).

Matrices are lists of rows.  Nothing here is fast; it is meant for the
d <= 16 matrices this package deals with.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def _is_zero(x) -> bool:
    return x == 0


def _exact(x):
    # plain ints would turn into floats under division
    return Fraction(x) if isinstance(x, int) else x


def rref(rows):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [[_exact(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def independent_int_rows(rows, ncols):
    """Independent rows spanning the same space, for integer input.

    Fraction-free elimination: each kept row is reduced against the
    earlier ones and divided by its content, so entries stay small ints.
    """
    kept = []  # (pivot column, row)
    for r in rows:
        r = list(r)
        for pc, base in kept:
            if r[pc]:
                a, b = base[pc], r[pc]
                r = [a * x - b * y for x, y in zip(r, base)]
        pc = next((c for c in range(ncols) if r[c]), None)
        if pc is None:
            continue
        g = 0
        for x in r:
            g = gcd(g, x)
        kept.append((pc, [x // g for x in r]))
        if len(kept) == ncols:
            break
    return [row for _, row in kept]


def rank(rows) -> int:
    return len(rref(rows)[1])


def row_space(rows):
    """Echelonised basis of the span of ``rows``."""
    return rref(rows)[0]


def nullspace(rows, ncols=None):
    """Basis of ``{x : A x = 0}`` for ``A`` given by ``rows``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(a):
    n = len(a)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a):
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[_exact(x) for x in r] for r in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def solve(a, b):
    """Solve ``a x = b`` for a single right-hand side; ``None`` if inconsistent."""
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x
