"""Metric n-Lie algebras: brackets from forms and back, axiom residuals,
double extensions and small catalogs of metric Lie algebras.

Structure constants ``f_{i1..in}^k`` are stored on sorted lower index
tuples.  A bracket built from a (n+1)-form F over a metric g is

    [e_{i1}, ..., e_{in}] = sum_k g^{kk} F_{i1..in k} e_k,

and conversely ``F(X1..X_{n+1}) = <[X1..Xn], X_{n+1}>``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DegreeError, InvalidAction, NotMetricInvariant, Unsupported
from .exterior import Form, MetricSpace, blade_sign, coerce_scalar, transform
from .scalars import QSqrt3

__all__ = [
    "NBracket",
    "MetricLieAlgebra",
    "JacobiViolation",
    "InvarianceViolation",
    "bracket_from_form",
    "form_from_bracket",
    "invariant_tensor",
    "orthonormal_frame",
    "jacobi_residual",
    "metric_invariance_residual",
    "double_extension",
    "change_basis",
    "direct_sum",
    "abelian",
    "so3",
    "so12",
    "su3",
    "su3_form",
    "null_shift",
    "oscillator",
    "catalog",
]


@dataclass(frozen=True)
class NBracket:
    """Totally antisymmetric n-ary bracket on R^dim via structure constants."""

    arity: int
    dim: int
    constants: tuple = ()  # ((sorted lower tuple, (c_1..c_dim)), ...)

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        for lower, vec in self.constants:
            if len(lower) != self.arity or list(lower) != sorted(set(lower)):
                raise ValueError(f"lower indices {lower} must be strictly increasing of length {self.arity}")
            if len(vec) != self.dim:
                raise ValueError("structure constant vector has wrong length")

    @classmethod
    def from_entries(cls, arity: int, dim: int, entries):
        """Build from ``(lower indices, upper index, coeff)`` triples (1-based).

        Lower indices may come in any order; the permutation sign is folded in.
        """
        acc: dict = {}
        for lower, upper, coeff in entries:
            s, key = blade_sign(lower)
            if s == 0:
                continue
            vec = acc.setdefault(key, [Fraction(0)] * dim)
            vec[upper - 1] = vec[upper - 1] + s * coerce_scalar(coeff)
        return cls._canonical(arity, dim, acc)

    @classmethod
    def _canonical(cls, arity, dim, acc):
        items = tuple(
            (k, tuple(v)) for k, v in sorted(acc.items()) if any(not c == 0 for c in v)
        )
        return cls(arity, dim, items)

    def as_dict(self) -> dict:
        return {k: v for k, v in self.constants}

    def bracket(self, *indices: int) -> list:
        """Coordinates of ``[e_{i1}, ..., e_{in}]``."""
        s, key = blade_sign(indices)
        zero = [Fraction(0)] * self.dim
        if s == 0:
            return zero
        vec = self.as_dict().get(key)
        if vec is None:
            return zero
        return list(vec) if s == 1 else [-c for c in vec]

    def entries(self):
        for lower, vec in self.constants:
            for k, c in enumerate(vec, start=1):
                if not c == 0:
                    yield lower, k, c

    def tensor(self) -> np.ndarray:
        """Dense object array ``C[i1, ..., in, k]`` (0-based), fully antisymmetric."""
        d, n = self.dim, self.arity
        C = np.empty((d,) * n + (d,), dtype=object)
        C.fill(Fraction(0))
        for lower, vec in self.constants:
            for perm in permutations(range(n)):
                s, _ = blade_sign(perm)
                idx = tuple(lower[i] - 1 for i in perm)
                for k, c in enumerate(vec):
                    C[idx + (k,)] = c if s == 1 else -c
        return C


@dataclass(frozen=True)
class MetricLieAlgebra:
    """A bracket together with a symmetric invertible bilinear form."""

    bracket: NBracket
    metric: tuple  # d x d symmetric matrix, rational entries
    name: str = ""

    def __post_init__(self):
        d = self.bracket.dim
        if len(self.metric) != d or any(len(r) != d for r in self.metric):
            raise ValueError("metric has the wrong shape")
        if any(self.metric[i][j] != self.metric[j][i] for i in range(d) for j in range(i)):
            raise ValueError("metric must be symmetric")
        if d and linalg.det([list(r) for r in self.metric]) == 0:
            raise ValueError("metric must be invertible")

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def is_orthonormal(self) -> bool:
        """Diagonal +-1 metric with the minus signs first."""
        d = self.dim
        diag = [self.metric[i][i] for i in range(d)]
        if any(self.metric[i][j] != 0 for i in range(d) for j in range(d) if i != j):
            return False
        if any(c not in (1, -1) for c in diag):
            return False
        t = sum(1 for c in diag if c == -1)
        return all(c == -1 for c in diag[:t])

    @property
    def time_dims(self) -> int:
        """Number of negative directions of the metric."""
        frame, t = orthonormal_frame(self.metric)
        return t


def _diag_metric(space: MetricSpace):
    d = space.dim
    return tuple(
        tuple(Fraction(space.g(i + 1)) if i == j else Fraction(0) for j in range(d)) for i in range(d)
    )


def bracket_from_form(F: Form) -> NBracket:
    """``f_I^k = g^{kk} F_{I k}`` for sorted n-tuples I, n = deg F - 1."""
    if F.degree < 3:
        raise DegreeError("brackets come from forms of degree >= 3")
    n = F.degree - 1
    d = F.space.dim
    acc: dict = {}
    for blade, c in F.items():
        for m, k in enumerate(blade):
            lower = blade[:m] + blade[m + 1:]
            # F_{lower, k} = (-1)^(p-1-m) F_blade
            val = c if (len(blade) - 1 - m) % 2 == 0 else -c
            if F.space.g(k) == -1:
                val = -val
            vec = acc.setdefault(lower, [Fraction(0)] * d)
            vec[k - 1] = vec[k - 1] + val
    return NBracket._canonical(n, d, acc)


def invariant_tensor(bracket: NBracket, metric) -> dict:
    """``T(I, k) = <[e_I], e_k>`` on sorted tuples, checked for total antisymmetry.

    Returns the values on sorted (n+1)-tuples.  Raises NotMetricInvariant
    when the tensor fails to be alternating.
    """
    B = _metric_matrix(metric, bracket.dim)
    d = bracket.dim
    consts = bracket.as_dict()
    values: dict = {}

    def pairing(lower, k):
        vec = consts.get(lower)
        if vec is None:
            return Fraction(0)
        total = Fraction(0)
        for l, c in enumerate(vec):
            if not c == 0 and B[l][k - 1] != 0:
                total = total + c * B[l][k - 1]
        return total

    for lower, vec in bracket.constants:
        for k in range(1, d + 1):
            val = pairing(lower, k)
            if val == 0:
                continue
            if k in lower:
                raise NotMetricInvariant(f"<[e_{lower}], e_{k}> = {val} but must vanish")
            s, key = blade_sign(lower + (k,))
            values.setdefault(key, set())
    out = {}
    for key in values:
        reference = None
        for m, k in enumerate(key):
            lower = key[:m] + key[m + 1:]
            val = pairing(lower, k)
            sign = 1 if (len(key) - 1 - m) % 2 == 0 else -1
            val = val if sign == 1 else -val
            if reference is None:
                reference = val
            elif not val == reference:
                raise NotMetricInvariant(
                    f"<[X..,Y],Z> differs from -<[X..,Z],Y> on basis tuple {key}"
                )
        if not reference == 0:
            out[key] = reference
    return out


def _metric_matrix(metric, d):
    if isinstance(metric, MetricSpace):
        if metric.dim != d:
            raise ValueError("metric dimension mismatch")
        return _diag_metric(metric)
    return tuple(tuple(coerce_scalar(c) for c in row) for row in metric)


def _rational_sqrt(q: Fraction):
    q = Fraction(q)
    if q < 0:
        return None
    from math import isqrt

    n, m = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and m * m == q.denominator:
        return Fraction(n, m)
    return None


def orthonormal_frame(metric):
    """Rational basis (columns) in which ``metric`` becomes diag(-1..-1, 1..1).

    Gram-Schmidt in the given order.  A null vector x is paired with the
    first later vector y with <x, y> = c != 0: after making y null, the
    vectors x -+ y/(2c) have norms -1 and +1.  A vector whose norm is not
    plus or minus a rational square is first shifted along a null partner
    to become null.  Returns ``(P, t)``; raises Unsupported when neither
    works.
    """
    B = [[coerce_scalar(c) for c in row] for row in metric]
    d = len(B)

    def ip(u, v):
        return sum(
            (u[i] * B[i][j] * v[j] for i in range(d) if u[i] != 0 for j in range(d) if v[j] != 0),
            Fraction(0),
        )

    remaining = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
    done = []  # (unit vector, sign)

    def emit(v, sign):
        nonlocal remaining
        done.append((v, sign))
        remaining = [[wi - sign * ip(w, v) * vi for wi, vi in zip(w, v)] for w in remaining]

    while remaining:
        x = remaining.pop(0)
        q = ip(x, x)
        if q != 0:
            r = _rational_sqrt(abs(q))
            if r is not None:
                emit([c / r for c in x], 1 if q > 0 else -1)
                continue
            k = next((k for k, y in enumerate(remaining) if ip(y, y) == 0 and ip(x, y) != 0), None)
            if k is None:
                raise Unsupported(f"norm {q} is not a rational square; no rational orthonormal frame")
            c = ip(x, remaining[k])
            x = [xi - q / (2 * c) * yi for xi, yi in zip(x, remaining[k])]
        if all(c == 0 for c in x):
            raise ValueError("metric is degenerate")
        k = next((k for k, y in enumerate(remaining) if ip(x, y) != 0), None)
        if k is None:
            raise ValueError("metric is degenerate")
        y = remaining.pop(k)
        c = ip(x, y)
        y = [yi - ip(y, y) / (2 * c) * xi for xi, yi in zip(x, y)]
        emit([xi - yi / (2 * c) for xi, yi in zip(x, y)], -1)
        emit([xi + yi / (2 * c) for xi, yi in zip(x, y)], 1)
    done.sort(key=lambda item: item[1])  # timelike first, stable
    t = sum(1 for _, s in done if s == -1)
    P = [[done[j][0][i] for j in range(d)] for i in range(d)]
    return P, t


def form_from_bracket(L, metric=None) -> Form:
    """The alternating form ``<[X1..Xn], X_{n+1}>``.

    For an orthonormal metric the form is over ``MetricSpace(d, t)`` in
    the same basis; otherwise it is expressed in the rational orthonormal
    frame of :func:`orthonormal_frame` (its columns are the new basis).
    """
    if isinstance(L, MetricLieAlgebra):
        bracket, metric = L.bracket, L.metric
    else:
        bracket = L
        if metric is None:
            raise ValueError("a metric is required")
    d = bracket.dim
    B = _metric_matrix(metric, d)
    values = invariant_tensor(bracket, B)
    P, t = orthonormal_frame(B)
    space = MetricSpace(d, t)
    F = Form(space, bracket.arity + 1, values)
    if all(P[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d)):
        return F
    return transform(F, P)


# ---------------------------------------------------------------- residuals


@dataclass(frozen=True)
class JacobiViolation:
    x: tuple  # sorted (n-1)-tuple
    y: tuple  # sorted n-tuple
    residual: tuple  # coordinate vector


@dataclass(frozen=True)
class InvarianceViolation:
    x: tuple  # sorted (n-1)-tuple
    a: int
    b: int
    residual: object


def _split_tensor(C: np.ndarray, factor_bound: int):
    """Write ``C`` as ``(A + B sqrt(3)) / scale`` with integer arrays A, B.

    Entries must be Fraction or QSqrt3; returns None otherwise.  Arrays are
    int64 when the products needed downstream cannot overflow.
    """
    flat = C.ravel()
    rat, irr = [], []
    for c in flat:
        if type(c) is Fraction:
            rat.append(c)
            irr.append(Fraction(0))
        elif isinstance(c, QSqrt3):
            rat.append(c.a)
            irr.append(c.b)
        else:
            return None
    den = 1
    for c in rat + irr:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    A = np.array([int(c * den) for c in rat], dtype=object).reshape(C.shape)
    B = np.array([int(c * den) for c in irr], dtype=object).reshape(C.shape)
    biggest = max((abs(v) for v in list(A.ravel()) + list(B.ravel())), default=0)
    if 4 * biggest * biggest * factor_bound < 2 ** 62:
        A, B = A.astype(np.int64), B.astype(np.int64)
    has_irr = any(v != 0 for v in B.ravel())
    return den, A, (B if has_irr else None)


def _td(X, Y, axes):
    """tensordot on (rational, sqrt3) pairs."""
    (a1, b1), (a2, b2) = X, Y
    a = np.tensordot(a1, a2, axes=axes)
    if b1 is None and b2 is None:
        return a, None
    b = 0
    if b1 is not None and b2 is not None:
        a = a + 3 * np.tensordot(b1, b2, axes=axes)
    if b2 is not None:
        b = b + np.tensordot(a1, b2, axes=axes)
    if b1 is not None:
        b = b + np.tensordot(b1, a2, axes=axes)
    return a, b


def jacobi_residual(L) -> list:
    """Violations of the fundamental identity on sorted basis tuples.

    ``[X_1..X_{n-1}, [Y_1..Y_n]] = sum_i [Y_1.., [X_1..X_{n-1}, Y_i], ..Y_n]``;
    an empty list means an n-Lie algebra.
    """
    bracket = L.bracket if isinstance(L, MetricLieAlgebra) else L
    d, n = bracket.dim, bracket.arity
    C0 = bracket.tensor()
    split = _split_tensor(C0, (n + 1) * d)
    if split is None:
        scale, pair = 1, (C0, None)
    else:
        scale, A, B = split
        pair = (A, B)
    # [X, [Y]]: sum_l C[x.., l, k] C[y.., l], axes ordered (x.., k, y..)
    la, lb = _td(pair, pair, ([n - 1], [n]))
    res = [np.moveaxis(la, n - 1, -1), None if lb is None else np.moveaxis(lb, n - 1, -1)]
    for i in range(n):
        # sum_j C[x.., y_i, j] C[y1.. j(at i) .. yn, k]
        ta, tb = _td(pair, pair, ([n], [i]))
        res[0] = res[0] - np.moveaxis(ta, n - 1, n - 1 + i)
        if tb is not None:
            t = np.moveaxis(tb, n - 1, n - 1 + i)
            res[1] = -t if res[1] is None else res[1] - t
    ra, rb = res
    out = []
    for x in combinations(range(d), n - 1):
        for y in combinations(range(d), n):
            va = ra[x + y]
            vb = None if rb is None else rb[x + y]
            if any(not c == 0 for c in va) or (vb is not None and any(c != 0 for c in vb)):
                if split is None:
                    vals = tuple(va)
                elif vb is None:
                    vals = tuple(Fraction(int(c), scale * scale) for c in va)
                else:
                    vals = tuple(
                        QSqrt3(Fraction(int(a), scale * scale), Fraction(int(b), scale * scale))
                        for a, b in zip(va, vb)
                    )
                out.append(JacobiViolation(tuple(i + 1 for i in x), tuple(i + 1 for i in y), vals))
    return out


def metric_invariance_residual(L, metric=None) -> list:
    """Violations of ``<[X.., a], b> = -<[X.., b], a>`` on basis tuples."""
    if isinstance(L, MetricLieAlgebra):
        bracket, metric = L.bracket, L.metric if metric is None else metric
    else:
        bracket = L
    if metric is None:
        raise ValueError("a metric is required")
    d, n = bracket.dim, bracket.arity
    B = _metric_matrix(metric, d)
    Bm = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            Bm[i, j] = B[i][j]
    C = bracket.tensor()
    T = np.tensordot(C, Bm, axes=([n], [0]))  # (i1..in, k)
    out = []
    for x in combinations(range(d), n - 1):
        for a in range(d):
            for b in range(a, d):
                r = T[x + (a, b)] + T[x + (b, a)]
                if not r == 0:
                    out.append(InvarianceViolation(tuple(i + 1 for i in x), a + 1, b + 1, r))
    return out


# ---------------------------------------------------------------- constructions


def _bracket_matrix(bracket: NBracket, u, v):
    """Bilinear bracket of coordinate vectors for arity 2."""
    d = bracket.dim
    out = [Fraction(0)] * d
    for (i, j), vec in bracket.constants:
        c = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
        if c == 0:
            continue
        out = [o + c * w for o, w in zip(out, vec)]
    return out


def change_basis(L: MetricLieAlgebra, P, name=None) -> MetricLieAlgebra:
    """Same algebra in the basis given by the columns of ``P``."""
    if L.bracket.arity != 2:
        raise ValueError("change_basis handles Lie algebras only")
    d = L.dim
    P = [[coerce_scalar(c) for c in row] for row in P]
    Pinv = linalg.inverse(P)
    cols = [[P[i][a] for i in range(d)] for a in range(d)]
    entries = []
    for a, b in combinations(range(d), 2):
        w = _bracket_matrix(L.bracket, cols[a], cols[b])
        coords = [sum((Pinv[k][i] * w[i] for i in range(d)), Fraction(0)) for k in range(d)]
        for k, c in enumerate(coords):
            if c != 0:
                entries.append(((a + 1, b + 1), k + 1, c))
    Bm = linalg.matmul(linalg.matmul(linalg.transpose(P), [list(r) for r in L.metric]), P)
    return MetricLieAlgebra(
        NBracket.from_entries(2, d, entries), tuple(tuple(r) for r in Bm), name or L.name
    )


def direct_sum(*algebras: MetricLieAlgebra, name: str = "") -> MetricLieAlgebra:
    d = sum(a.dim for a in algebras)
    entries = []
    metric = [[Fraction(0)] * d for _ in range(d)]
    off = 0
    for a in algebras:
        for lower, k, c in a.bracket.entries():
            entries.append((tuple(i + off for i in lower), k + off, c))
        for i in range(a.dim):
            for j in range(a.dim):
                metric[off + i][off + j] = coerce_scalar(a.metric[i][j])
        off += a.dim
    name = name or " + ".join(a.name for a in algebras)
    return MetricLieAlgebra(NBracket.from_entries(2, d, entries), tuple(map(tuple, metric)), name)


def abelian(d: int, time_dims: int = 0, name: str | None = None) -> MetricLieAlgebra:
    space = MetricSpace(d, time_dims)
    default = f"R^{d}" if time_dims == 0 else f"E^(1,{d - 1})"
    return MetricLieAlgebra(NBracket(2, d, ()), _diag_metric(space), name or default)


def _from_volume(space: MetricSpace, name):
    F = Form.blade(space, 1, 2, 3)
    return MetricLieAlgebra(bracket_from_form(F), _diag_metric(space), name)


def so3() -> MetricLieAlgebra:
    """su(2) = so(3): [e1,e2] = e3 and cyclic, identity metric."""
    return _from_volume(MetricSpace(3, 0), "su(2)")


def so12() -> MetricLieAlgebra:
    """so(1,2) from the volume form of E^(1,2); index 1 timelike."""
    return _from_volume(MetricSpace(3, 1), "so(1,2)")


_HALF = Fraction(1, 2)
_GELL_MANN = (
    ((1, 2, 3), Fraction(1)),
    ((1, 4, 7), _HALF),
    ((1, 5, 6), -_HALF),
    ((2, 4, 6), _HALF),
    ((2, 5, 7), _HALF),
    ((3, 4, 5), _HALF),
    ((3, 6, 7), -_HALF),
    ((4, 5, 8), QSqrt3(0, _HALF)),
    ((6, 7, 8), QSqrt3(0, _HALF)),
)


def su3_form(extra: int = 0) -> Form:
    """Structure 3-form of su(3) (Gell-Mann constants) on E^(8+extra)."""
    space = MetricSpace(8 + extra, 0)
    return Form(space, 3, {k: QSqrt3(v) if isinstance(v, Fraction) else v for k, v in _GELL_MANN})


def su3(extra: int = 0) -> MetricLieAlgebra:
    """su(3) with the positive multiple of minus the Killing form that makes
    the Gell-Mann basis orthonormal, plus an abelian summand of dimension ``extra``.
    """
    F = su3_form(extra)
    name = "su(3)" if extra == 0 else f"su(3) + R^{extra}"
    return MetricLieAlgebra(bracket_from_form(F), _diag_metric(F.space), name)


def _rho_matrix(rho, d):
    """Endomorphism (columns = images) from a 2-form on E^d or a matrix."""
    if isinstance(rho, Form):
        if rho.degree != 2 or rho.space.dim != d:
            raise InvalidAction("rho must be a 2-form on the extended algebra")
        D = [[Fraction(0)] * d for _ in range(d)]
        for (i, j), c in rho.items():
            # D e_i = sum_j omega_ij g^jj e_j
            D[j - 1][i - 1] += c * rho.space.g(j)
            D[i - 1][j - 1] -= c * rho.space.g(i)
        return D
    D = [[coerce_scalar(c) for c in row] for row in rho]
    if len(D) != d or any(len(r) != d for r in D):
        raise InvalidAction("rho has the wrong shape")
    return D


def double_extension(g: MetricLieAlgebra, rho, b=0, name: str = "") -> MetricLieAlgebra:
    """Double extension of ``g`` by a one-dimensional algebra acting through ``rho``.

    Basis order: e_- (index 1), e_+ (index 2), then the basis of g.
    Brackets: [e_-, X] = D X, [X, Y] = [X, Y]_g + <D X, Y> e_+, e_+ central.
    Metric: <e_+, e_-> = 1, <e_-, e_-> = b, g block unchanged.
    """
    d = g.dim
    D = _rho_matrix(rho, d)
    B = [[coerce_scalar(c) for c in row] for row in g.metric]
    cols = [[D[i][a] for i in range(d)] for a in range(d)]
    unit = [[Fraction(int(i == a)) for i in range(d)] for a in range(d)]

    def ip(u, v):
        return sum((u[i] * B[i][j] * v[j] for i in range(d) for j in range(d)), Fraction(0))

    for a in range(d):
        for c in range(d):
            if ip(cols[a], unit[c]) + ip(unit[a], cols[c]) != 0:
                raise InvalidAction("rho(e_-) is not skew for the metric")
    for a, c in combinations(range(d), 2):
        lhs = [sum((D[i][j] * w for j, w in enumerate(_bracket_matrix(g.bracket, unit[a], unit[c]))), Fraction(0)) for i in range(d)]
        rhs = [x + y for x, y in zip(_bracket_matrix(g.bracket, cols[a], unit[c]), _bracket_matrix(g.bracket, unit[a], cols[c]))]
        if lhs != rhs:
            raise InvalidAction("rho(e_-) is not a derivation")
    n = d + 2
    entries = []
    for a in range(d):
        for i, c in enumerate(cols[a]):
            if c != 0:
                entries.append(((1, a + 3), i + 3, c))
    for lower, k, c in g.bracket.entries():
        entries.append((tuple(i + 2 for i in lower), k + 2, c))
    for a, c in combinations(range(d), 2):
        val = ip(cols[a], unit[c])
        if val != 0:
            entries.append(((a + 3, c + 3), 2, val))
    metric = [[Fraction(0)] * n for _ in range(n)]
    metric[0][0] = coerce_scalar(b)
    metric[0][1] = metric[1][0] = Fraction(1)
    for i in range(d):
        for j in range(d):
            metric[i + 2][j + 2] = B[i][j]
    return MetricLieAlgebra(
        NBracket.from_entries(2, n, entries), tuple(map(tuple, metric)), name or f"d({g.name}, R)"
    )


def null_shift(L: MetricLieAlgebra) -> MetricLieAlgebra:
    """Basis change e_- -> e_- - (b/2) e_+ on a double extension, making e_- null."""
    b = L.metric[0][0]
    n = L.dim
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    P[1][0] = -b / 2
    return change_basis(L, P, L.name)


def oscillator(alpha, beta, b=0, extra: int = 0) -> MetricLieAlgebra:
    """d(E^4, R): rho(e_-) = alpha e12 + beta e34, plus E^extra."""
    E4 = abelian(4)
    rho = Form(MetricSpace(4), 2, {(1, 2): alpha, (3, 4): beta})
    L = double_extension(E4, rho, b, name="d(E^4,R)")
    if extra:
        L = direct_sum(L, abelian(extra), name=f"d(E^4,R) + E^{extra}")
    return L


def catalog(signature: str, max_dim: int, *, exact: bool = False, seed: int = 0, samples: int = 1):
    """Metric Lie algebras of dimension <= ``max_dim`` (== with ``exact``).

    Euclidean: R^d, su(2)+R^k, su(2)+su(2)+R^k.  Lorentzian: E^(1,d-1),
    E^(1,k)+so(3), so(1,2)+E^k, so(1,2)+so(3)+E^k and the oscillator
    family d(E^4,R)+E^k with ``samples`` random (alpha, beta, b).
    """
    if max_dim > 7:
        raise Unsupported("catalogs are listed up to dimension 7")
    out = []
    if signature == "euclidean":
        for d in range(1, max_dim + 1):
            out.append(abelian(d))
        for k in range(0, 5):
            if 3 + k <= max_dim:
                out.append(so3() if k == 0 else direct_sum(so3(), abelian(k), name=f"su(2) + R^{k}"))
        for k in range(0, 2):
            if 6 + k <= max_dim:
                parts = [so3(), so3()] + ([abelian(k)] if k else [])
                out.append(direct_sum(*parts, name="su(2) + su(2)" + (f" + R^{k}" if k else "")))
    elif signature == "lorentzian":
        for d in range(1, max_dim + 1):
            out.append(abelian(d, 1))
        for k in range(0, 4):
            if 4 + k <= max_dim:
                out.append(direct_sum(abelian(1 + k, 1), so3(), name=f"E^(1,{k}) + so(3)"))
        for k in range(0, 5):
            if 3 + k <= max_dim:
                out.append(so12() if k == 0 else direct_sum(so12(), abelian(k), name=f"so(1,2) + E^{k}"))
        for k in range(0, 2):
            if 6 + k <= max_dim:
                parts = [so12(), so3()] + ([abelian(k)] if k else [])
                out.append(direct_sum(*parts, name="so(1,2) + so(3)" + (f" + E^{k}" if k else "")))
        rng = random.Random(seed)
        for k in range(0, 2):
            if 6 + k <= max_dim:
                for _ in range(samples):
                    alpha, beta, b = (_nonzero_rational(rng) for _ in range(3))
                    out.append(oscillator(alpha, beta, b, extra=k))
    else:
        raise Unsupported(f"signature {signature!r}; use 'euclidean' or 'lorentzian'")
    if exact:
        out = [a for a in out if a.dim == max_dim]
    return out


def _nonzero_rational(rng, height=10):
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q != 0:
            return q
