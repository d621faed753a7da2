"""Dense exact evaluation of the orthogonal relation residuals.

The residual for a fixed (p-2)-blade Xi is, in components,

    R_J = sum_m (-1)^(m-1) sum_b F_{Xi j_m b} g^{bb} F_{b, J minus j_m}

so all of them come out of one matrix product P = (A g) B with
A[(Xi, j), b] = F_{Xi j b} and B[b, K] = F_{b K}.  Everything is reduced
modulo several primes below 2^24, with enough primes that the integer
residuals are recovered exactly by CRT.  A dot product of d <= 16 residues
stays below 2^52, so the product runs exactly in float64 BLAS and the
signed sum over m fits int64 before the single final reduction.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm

import numpy as np
from sympy import prevprime

from .exterior import blade_sign

_PRIME_CEILING = 1 << 24


@lru_cache(maxsize=1)
def _primes(count: int = 96) -> tuple:
    out = []
    q = _PRIME_CEILING
    for _ in range(count):
        q = prevprime(q)
        out.append(q)
    return tuple(out)


@lru_cache(maxsize=None)
def _layout(d: int, p: int):
    """Index tables for the gather/product/scatter steps, cached per (d, p)."""
    J_list = list(combinations(range(1, d + 1), p))
    J_index = {J: n for n, J in enumerate(J_list)}
    zero_slot = len(J_list)
    Xi_list = list(combinations(range(1, d + 1), p - 2))
    K_list = list(combinations(range(1, d + 1), p - 1))
    K_index = {K: n for n, K in enumerate(K_list)}

    def lookup(indices):
        s, key = blade_sign(indices)
        if s == 0:
            return zero_slot, 0
        return J_index[key], s

    idxA = np.full((len(Xi_list), d, d), zero_slot, dtype=np.int64)
    sgnA = np.zeros((len(Xi_list), d, d), dtype=np.int64)
    for x, Xi in enumerate(Xi_list):
        for j in range(1, d + 1):
            for b in range(1, d + 1):
                idxA[x, j - 1, b - 1], sgnA[x, j - 1, b - 1] = lookup(Xi + (j, b))
    idxB = np.full((d, len(K_list)), zero_slot, dtype=np.int64)
    sgnB = np.zeros((d, len(K_list)), dtype=np.int64)
    for b in range(1, d + 1):
        for k, K in enumerate(K_list):
            idxB[b - 1, k], sgnB[b - 1, k] = lookup((b,) + K)
    jm = np.zeros((len(J_list), p), dtype=np.int64)
    km = np.zeros((len(J_list), p), dtype=np.int64)
    for n, J in enumerate(J_list):
        for m in range(p):
            jm[n, m] = J[m] - 1
            km[n, m] = K_index[J[:m] + J[m + 1:]]
    sgnM = np.array([1 if m % 2 == 0 else -1 for m in range(p)], dtype=np.int64)
    return J_list, J_index, Xi_list, idxA, sgnA, idxB, sgnB, jm, km, sgnM


def integerize(terms: dict) -> tuple[int, dict]:
    """Write rational ``terms`` as ``ints / scale`` with primitive integers."""
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    ints = {k: int(c * den) for k, c in terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    g = g or 1
    return Fraction(den, g), {k: v // g for k, v in ints.items()}


def _residues(layout, vec_mod: np.ndarray, g: np.ndarray, q: int) -> np.ndarray:
    J_list, _, Xi_list, idxA, sgnA, idxB, sgnB, jm, km, sgnM = layout
    d = g.shape[0]
    A = (sgnA * g[None, None, :] * vec_mod[idxA]) % q
    B = (sgnB * vec_mod[idxB]) % q
    P = (A.reshape(len(Xi_list) * d, d).astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    P = P.reshape(len(Xi_list), d, -1)
    R = np.zeros((len(Xi_list), len(J_list)), dtype=np.int64)
    for m in range(jm.shape[1]):
        R += sgnM[m] * P[:, jm[:, m], km[:, m]]
    return R % q


def orthogonal_residuals(d: int, time_dims: int, p: int, terms: dict, *, stop_at_nonzero=False):
    """Exact residuals of the relation for a rational form.

    Returns ``(Xi_list, J_list, nonzero)`` where ``nonzero`` maps
    ``(x, n)`` index pairs to the nonzero ``Fraction`` residual of blade
    ``J_list[n]`` in the entry for ``Xi_list[x]``.  With
    ``stop_at_nonzero`` the map may be partial (only useful for verdicts).
    """
    layout = _layout(d, p)
    J_list, J_index, Xi_list = layout[0], layout[1], layout[2]
    if not terms:
        return Xi_list, J_list, {}
    scale, ints = integerize(terms)
    bound_max = max(abs(v) for v in ints.values())
    bound = 2 * p * d * bound_max * bound_max + 1
    g = np.array([-1 if i < time_dims else 1 for i in range(d)], dtype=np.int64)
    primes = []
    residues = []
    modulus = 1
    for q in _primes():
        vec = np.zeros(len(J_list) + 1, dtype=np.int64)
        for k, v in ints.items():
            vec[J_index[k]] = v % q
        R = _residues(layout, vec, g, q)
        primes.append(q)
        residues.append(R)
        modulus *= q
        if stop_at_nonzero and R.any():
            break
        if modulus > bound:
            break
    else:  # pragma: no cover - 96 primes cover coefficients up to ~2^1100
        raise OverflowError("coefficients too large for the prime table")
    if modulus <= bound:
        # early exit on a nonzero residue: report those positions only
        pos = np.argwhere(residues[-1])
        return Xi_list, J_list, {(int(x), int(n)): None for x, n in pos}
    mask = np.zeros_like(residues[0], dtype=bool)
    for R in residues:
        mask |= R != 0
    nonzero = {}
    positions = np.argwhere(mask)
    if len(positions) == 0:
        return Xi_list, J_list, nonzero
    # Garner/CRT on the nonzero positions only, with Python integers
    values = [0] * len(positions)
    mod = 1
    for q, R in zip(primes, residues):
        r = R[mask].tolist()
        inv = pow(mod, -1, q) if mod > 1 else 1
        for i in range(len(values)):
            t = ((r[i] - values[i]) * inv) % q
            values[i] += mod * t
        mod *= q
    half = mod // 2
    s2 = scale * scale
    for (x, n), v in zip(positions.tolist(), values):
        if v > half:
            v -= mod
        nonzero[(x, n)] = Fraction(v) / s2
    return Xi_list, J_list, nonzero
