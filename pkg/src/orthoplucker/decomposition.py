"""Splitting forms into mutually orthogonal simple parts.

Verification (:func:`verify_orthogonal_sum`) is the contract; discovery
(:func:`decompose`) is a best-effort search that only ever returns a
splitting it has verified.

Search strategy, for F = F1 + F2 with F_k simple on orthogonal planes:

* the one-form endomorphisms ``a -> i_{a#} (i_Xi F)`` and the Gram
  operator all preserve both planes, so rational eigenspaces of the Gram
  operator, or of a random element of the commutant of these operators,
  are unions of the planes;
* a nondegenerate candidate plane U of dimension p yields the part
  ``<F, vol_U> / <vol_U, vol_U> vol_U``;
* when both planes share a null direction n, F = n ^ Theta, and Theta is
  split inside a complement of n instead.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import sympy

from . import linalg
from .errors import DegreeError, RelationViolated, SpaceMismatch
from .exterior import (
    Form,
    MetricSpace,
    Plane,
    Polyvector,
    blades,
    contract,
    contract_blade,
    form_inner,
    support_plane,
    vector_inner,
    wedge,
)
from .plucker import is_simple, relation_holds

__all__ = [
    "SimplePart",
    "Decomposition",
    "Indeterminate",
    "GramOperator",
    "gram_operator",
    "plane_orthogonal",
    "verify_orthogonal_sum",
    "simple_factors",
    "simple_part",
    "decompose",
]


@dataclass(frozen=True)
class SimplePart:
    factors: tuple  # one-forms whose wedge is ``form``
    form: Form
    plane: Plane


@dataclass(frozen=True)
class Decomposition:
    parts: tuple
    method: str = ""

    def total(self, space: MetricSpace, degree: int) -> Form:
        acc = Form.zero(space, degree)
        for part in self.parts:
            acc = acc + part.form
        return acc


@dataclass(frozen=True)
class Indeterminate:
    """No verified splitting was found; not an error."""

    reason: str
    support_rank: int
    dimension_bound: bool = False  # support rank exceeds 2p


@dataclass(frozen=True)
class GramOperator:
    """Symmetric matrix ``T[i][j] = <i_{e_i} F, i_{e_j} F>``."""

    matrix: tuple

    def is_symmetric(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))


def _wedge_vectors(space, vectors):
    out = Form.from_vector(space, vectors[0])
    for v in vectors[1:]:
        out = wedge(out, Form.from_vector(space, v))
    return out


def gram_operator(F: Form) -> GramOperator:
    if F.degree < 1:
        raise DegreeError("gram operator needs degree >= 1")
    d = F.space.dim
    cs = [contract_blade(F, (i,)) for i in range(1, d + 1)]
    m = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            v = form_inner(cs[i], cs[j])
            m[i][j] = m[j][i] = v
    return GramOperator(tuple(tuple(r) for r in m))


def plane_orthogonal(P1: Plane, P2: Plane) -> bool:
    if P1.space != P2.space:
        raise SpaceMismatch(f"{P1.space} vs {P2.space}")
    return all(vector_inner(P1.space, u, v) == 0 for u in P1.basis for v in P2.basis)


def simple_factors(F: Form) -> tuple:
    """One-forms whose wedge is the simple form ``F``.

    Taken from the echelon basis of the support plane, with the first
    factor rescaled to match ``F``.
    """
    plane = support_plane(F)
    if plane.rank != F.degree:
        raise ValueError("form is not simple")
    vecs = [list(v) for v in plane.basis]
    w = _wedge_vectors(F.space, vecs)
    key, coeff = next(iter(F.items()))
    lam = coeff / w._terms[key]
    vecs[0] = [lam * c for c in vecs[0]]
    return tuple(Form.from_vector(F.space, v) for v in vecs)


def simple_part(F: Form) -> SimplePart:
    factors = simple_factors(F)
    return SimplePart(factors, F, Plane.span(F.space, [f.as_vector() for f in factors]))


def _smallest_blade(part: SimplePart):
    return min(part.form._terms)


def verify_orthogonal_sum(F: Form, D: Decomposition) -> bool:
    """True iff every part is simple, the parts sum to F and their planes are orthogonal.

    Planes may share null directions.
    """
    total = Form.zero(F.space, F.degree)
    planes = []
    for part in D.parts:
        G = part.form
        if G.space != F.space:
            raise SpaceMismatch(f"{G.space} vs {F.space}")
        if G.degree != F.degree:
            raise SpaceMismatch(f"part of degree {G.degree} in a sum of degree {F.degree}")
        if G.is_zero():
            return False
        plane = support_plane(G)
        if plane.rank != F.degree:
            return False
        if part.factors:
            if len(part.factors) != F.degree or _wedge_factors(part.factors) != G:
                return False
        planes.append(plane)
        total = total + G
    if total != F:
        return False
    return all(plane_orthogonal(a, b) for a, b in combinations(planes, 2))


def _wedge_factors(factors):
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


# ---------------------------------------------------------------- search


def _covector_ops(F: Form, xis):
    """Matrices (columns = images of e_i) of a -> i_{a#}(i_Xi F)."""
    space = F.space
    d = space.dim
    ops = []
    for xi in xis:
        omega = contract_blade(F, xi)
        if omega.is_zero():
            continue
        cols = []
        for i in range(1, d + 1):
            col = contract_blade(omega, (i,)).as_vector()
            if space.g(i) == -1:
                col = [-c for c in col]
            cols.append(col)
        ops.append(linalg.transpose(cols))
    return ops


def _gram_covector_op(F: Form):
    T = gram_operator(F).matrix
    space = F.space
    d = space.dim
    cols = [[T[j][i] * space.g(j + 1) for i in range(d)] for j in range(d)]
    return linalg.transpose(cols)


def _restrict(op, basis, pivots):
    """Matrix of ``op`` on span(basis) in the basis coordinates (columns)."""
    cols = []
    for b in basis:
        img = [sum((op[i][j] * b[j] for j in range(len(b))), Fraction(0)) for i in range(len(op))]
        cols.append([img[c] for c in pivots])
    return linalg.transpose(cols)


def _rational_components(mat):
    """Generalised eigenspaces of ``mat`` for its rational eigenvalues."""
    n = len(mat)
    if n == 0:
        return []
    M = sympy.Matrix(n, n, lambda i, j: sympy.Rational(mat[i][j].numerator, mat[i][j].denominator))
    lam = sympy.Symbol("lam")
    _, factors = sympy.factor_list(M.charpoly(lam).as_expr(), lam)
    comps = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, lam)
        if poly.degree() != 1:
            continue
        a, b = poly.all_coeffs()
        root = _root(a, b)
        shifted = [[mat[i][j] - (root if i == j else 0) for j in range(n)] for i in range(n)]
        power = shifted
        for _ in range(mult - 1):
            power = linalg.matmul(power, shifted)
        comps.append((root, linalg.nullspace(power)))
    return comps


def _root(a, b) -> Fraction:
    a = Fraction(int(sympy.numer(a)), int(sympy.denom(a)))
    b = Fraction(int(sympy.numer(b)), int(sympy.denom(b)))
    return -b / a


def _commutant_element(ops, rng):
    """A random element of the commutant of ``ops`` (square, same size)."""
    n = len(ops[0])
    rows = []
    for A in ops:
        # (X A - A X)_{ik} = sum_j X_ij A_jk - A_ij X_jk ; unknown X_ab at a*n+b
        for i in range(n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for j in range(n):
                    if A[j][k] != 0:
                        row[i * n + j] += A[j][k]
                    if A[i][j] != 0:
                        row[j * n + k] -= A[i][j]
                if any(c != 0 for c in row):
                    rows.append(row)
    if not rows:
        return None
    basis = linalg.nullspace(rows)
    if len(basis) <= 1:
        return None
    x = [Fraction(0)] * (n * n)
    for b in basis:
        r = rng.randint(-20, 20)
        x = [u + r * v for u, v in zip(x, b)]
    return [x[i * n:(i + 1) * n] for i in range(n)]


def _part_on(F: Form, U_vectors):
    """The component of F on the nondegenerate p-plane U, or None."""
    space = F.space
    vol = _wedge_vectors(space, U_vectors)
    nrm = form_inner(vol, vol)
    if nrm == 0:
        return None
    lam = form_inner(F, vol) / nrm
    if lam == 0:
        return None
    return vol * lam


def _try_split(F: Form, U_vectors, method):
    part = _part_on(F, U_vectors)
    if part is None:
        return None
    rest = F - part
    if rest.is_zero() or not is_simple(rest):
        return None
    D = _make(F, [part, rest], method)
    return D if verify_orthogonal_sum(F, D) else None


def _make(F, forms, method):
    parts = sorted((simple_part(G) for G in forms), key=_smallest_blade)
    return Decomposition(tuple(parts), method)


def _split_from_components(F, comps, basis, method):
    """Try all unions of components whose dimension is p."""
    p = F.degree
    dims = [len(vs) for _, vs in comps]
    for size in range(1, len(comps) + 1):
        for subset in combinations(range(len(comps)), size):
            if sum(dims[i] for i in subset) != p:
                continue
            coords = [v for i in subset for v in comps[i][1]]
            U = [[sum((c * b[k] for c, b in zip(v, basis)), Fraction(0)) for k in range(F.space.dim)] for v in coords]
            D = _try_split(F, U, method)
            if D is not None:
                return D
    return None


def _krylov_split(F, comps, basis, op_s):
    """Degree 2 with repeated Gram eigenvalue: span(v, A v) is invariant."""
    for _, vs in comps:
        for v in vs:
            Av = [sum((op_s[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(v))]
            if all(c == 0 for c in Av):
                continue
            U = [[sum((c * b[k] for c, b in zip(w, basis)), Fraction(0)) for k in range(F.space.dim)] for w in (v, Av)]
            D = _try_split(F, U, "krylov")
            if D is not None:
                return D
    return None


def _null_split(F: Form, plane: Plane, max_parts: int, seed: int):
    """F = n ^ Theta with n spanning the radical of the support plane."""
    space = F.space
    basis = [list(b) for b in plane.basis]
    gram = [[vector_inner(space, u, v) for v in basis] for u in basis]
    rad = linalg.nullspace(gram)
    if len(rad) != 1:
        return None
    n = [sum((c * b[k] for c, b in zip(rad[0], basis)), Fraction(0)) for k in range(space.dim)]
    i0 = next(i for i, c in enumerate(rad[0]) if c != 0)
    others = [b for i, b in enumerate(basis) if i != i0]
    # vector N with n(N) = 1 and w(N) = 0 on the complement spanned by ``others``
    N = linalg.solve([n] + others, [Fraction(1)] + [Fraction(0)] * len(others))
    if N is None:
        return None
    n_form = Form.from_vector(space, n)
    theta = contract(F, Polyvector.from_vector(space, N))
    if wedge(n_form, theta) != F:
        return None
    if theta.degree < 2:
        return None
    inner = decompose(theta, max_parts, seed=seed, _check_relation=False)
    if not isinstance(inner, Decomposition) or len(inner.parts) < 2:
        return None
    forms = [wedge(n_form, part.form) for part in inner.parts]
    D = _make(F, forms, "null-direction")
    return D if verify_orthogonal_sum(F, D) else None


def decompose(F: Form, max_parts: int = 2, *, seed: int = 0, _check_relation: bool = True):
    """Split F into at most ``max_parts`` orthogonal simple forms.

    Returns a verified :class:`Decomposition` or an :class:`Indeterminate`.
    Raises :class:`RelationViolated` when F fails the orthogonal relation.
    """
    if max_parts not in (1, 2):
        raise ValueError("max_parts must be 1 or 2")
    if F.degree < 1:
        raise DegreeError("decompose needs degree >= 1")
    if F.is_zero():
        return Decomposition((), "zero")
    if is_simple(F):
        return Decomposition((simple_part(F),), "simple")
    if _check_relation and F.degree >= 2 and not relation_holds(F):
        raise RelationViolated("the form does not satisfy the orthogonal relation")
    plane = support_plane(F)
    p = F.degree
    if plane.rank > 2 * p:
        return Indeterminate(
            f"indecomposable by dimension count: support rank {plane.rank} > {2 * p}",
            plane.rank,
            dimension_bound=True,
        )
    if max_parts == 1:
        return Indeterminate("form is not simple", plane.rank)
    rng = random.Random(seed)
    basis = [list(b) for b in plane.basis]
    pivots = [next(i for i, c in enumerate(b) if c != 0) for b in basis]

    N = _restrict(_gram_covector_op(F), basis, pivots)
    comps = _rational_components(N)
    if len(comps) >= 2:
        D = _split_from_components(F, comps, basis, "gram")
        if D is not None:
            return D

    xis = list(blades(F.space.dim, p - 2))
    ops = [_restrict(A, basis, pivots) for A in _covector_ops(F, xis)]
    if p == 2 and ops:
        D = _krylov_split(F, comps or [(None, linalg.identity(len(basis)))], basis, ops[0])
        if D is not None:
            return D

    if ops:
        for _ in range(3):
            combos = []
            for _k in range(min(3, len(ops))):
                acc = [[Fraction(0)] * len(basis) for _ in basis]
                for A in ops:
                    r = rng.randint(-9, 9)
                    if r:
                        acc = [[a + r * b for a, b in zip(ra, rb)] for ra, rb in zip(acc, A)]
                combos.append(acc)
            X = _commutant_element(combos + [N], rng)
            if X is None:
                break
            comps2 = _rational_components(X)
            if len(comps2) >= 2:
                D = _split_from_components(F, comps2, basis, "commutant")
                if D is not None:
                    return D

    if F.space.time_dims >= 1:
        D = _null_split(F, plane, max_parts, seed)
        if D is not None:
            return D
    return Indeterminate("no verified orthogonal splitting found", plane.rank)
