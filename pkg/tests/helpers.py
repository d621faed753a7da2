"""Exact random isometries and small oracles shared by the tests."""
import random
from fractions import Fraction
from itertools import combinations

import sympy as sp

from orthoplucker import linalg
from orthoplucker.exterior import MetricSpace, contract_blade


def _identity(d):
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _pythagorean(rng):
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    while m == n:
        n = rng.randint(1, 6)
    h = m * m + n * n
    return Fraction(m * m - n * n, h), Fraction(2 * m * n, h)


def random_isometry(space: MetricSpace, rng: random.Random, steps: int = 4):
    """Product of signed permutations, rational rotations and rational boosts.

    Every factor satisfies M^T eta M = eta exactly.
    """
    d, t = space.dim, space.time_dims
    M = _identity(d)
    for _ in range(steps):
        kind = rng.choice(("perm", "rotation", "boost") if t == 1 and d > 1 else ("perm", "rotation"))
        G = _identity(d)
        if kind == "perm":
            perm = list(range(t)) + rng.sample(range(t, d), d - t)
            G = [[Fraction(0)] * d for _ in range(d)]
            for i, j in enumerate(perm):
                G[i][j] = Fraction(rng.choice((-1, 1)))
        elif kind == "rotation" and d - t >= 2:
            i, j = rng.sample(range(t, d), 2)
            c, s = _pythagorean(rng)
            G[i][i], G[i][j], G[j][i], G[j][j] = c, -s, s, c
        elif kind == "boost":
            j = rng.randrange(1, d)
            s, c = _pythagorean(rng)
            # c^2 + s^2 = 1, so 1/s and c/s satisfy cosh^2 - sinh^2 = 1
            ch, sh = 1 / c, s / c
            G[0][0], G[0][j], G[j][0], G[j][j] = ch, sh, sh, ch
        M = _matmul(G, M)
    return M


def is_isometry(space: MetricSpace, M) -> bool:
    eta = space.metric_diag
    d = space.dim
    return all(
        sum(M[k][i] * eta[k] * M[k][j] for k in range(d)) == (eta[i] if i == j else 0)
        for i in range(d)
        for j in range(d)
    )


def support_rank_oracle(F) -> int:
    """Rank of the matrix of all contractions of F by (p-1)-blades, via sympy."""
    d, p = F.space.dim, F.degree
    rows = []
    for xi in combinations(range(1, d + 1), p - 1):
        v = contract_blade(F, xi).as_vector()
        rows.append([sp.Rational(c.numerator, c.denominator) for c in v])
    return sp.Matrix(rows).rank() if rows else 0


def plane_intersection(P1, P2):
    """Basis of the intersection of two planes of the same space."""
    r1, r2 = len(P1.basis), len(P2.basis)
    if not r1 or not r2:
        return []
    d = P1.space.dim
    # columns u_1..u_r1, -v_1..-v_r2; kernel gives the coefficient pairs
    rows = [[P1.basis[i][k] for i in range(r1)] + [-P2.basis[j][k] for j in range(r2)] for k in range(d)]
    out = []
    for sol in linalg.nullspace(rows):
        out.append([sum((sol[i] * P1.basis[i][k] for i in range(r1)), Fraction(0)) for k in range(d)])
    return out
