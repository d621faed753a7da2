"""Floating-point normal forms of 2-forms.

Euclidean signature: an orthonormal basis in which
``omega = sum_k a_k e_{2k-1,2k}`` with ``a_1 >= a_2 >= ... >= 0``.

Lorentzian signature (index 1 timelike): the endomorphism ``M = eta W``
decides the type.

* hyperbolic: a real eigenvalue pair +-b, normal form ``b e12 + rotations``;
* parabolic: a nilpotent 3x3 block, normal form ``(e1 + e2) ^ e3 + rotations``;
* elliptic: otherwise, a fixed timelike vector and rotations on e2, e3, ...

Every normal form is a sum of simple 2-forms on mutually orthogonal
planes.  This is the only module working in floating point;
:meth:`SkewNormalForm.to_decomposition` snaps the block parameters to
rationals (denominators up to 10**6) and re-verifies exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from .decomposition import Decomposition, simple_part, verify_orthogonal_sum
from .errors import AmbiguousCase, DegreeError, Unsupported
from .exterior import Form, MetricSpace

__all__ = [
    "NormalKind",
    "SkewNormalForm",
    "skew_normal_form",
    "classify_case",
    "case_slots",
    "DENOMINATOR_BOUND",
]

DENOMINATOR_BOUND = 10 ** 6


class NormalKind(enum.Enum):
    EUCLIDEAN_BLOCKS = "euclidean-blocks"
    LORENTZIAN_ELLIPTIC = "lorentzian-elliptic"
    LORENTZIAN_HYPERBOLIC = "lorentzian-hyperbolic"
    LORENTZIAN_PARABOLIC = "lorentzian-parabolic"
    ZERO = "zero"


@dataclass(frozen=True)
class SkewNormalForm:
    """Normal form of a 2-form.

    ``basis`` has the new basis vectors as columns.  ``angles`` are the
    rotation rates, preceded by the boost rate (hyperbolic) or the
    parabolic unit 1.0.  ``normal`` is the antisymmetric matrix of the
    form in the new basis.
    """

    kind: NormalKind
    angles: tuple
    basis: np.ndarray
    normal: np.ndarray
    residual: float
    isometry_error: float
    space: MetricSpace

    def blocks(self):
        """Index pairs (1-based) and coefficients of the simple summands.

        The parabolic block is reported as ``((1, 2), 3)``: the part
        ``(e1 + e2) ^ e3``.
        """
        out = []
        kind = self.kind
        a = list(self.angles)
        if kind is NormalKind.LORENTZIAN_PARABOLIC:
            out.append((((1, 2), 3), a.pop(0)))
            start = 4
        elif kind is NormalKind.LORENTZIAN_HYPERBOLIC:
            out.append(((1, 2), a.pop(0)))
            start = 3
        elif kind is NormalKind.LORENTZIAN_ELLIPTIC:
            start = 2
        else:
            start = 1
        for k, x in enumerate(a):
            out.append(((start + 2 * k, start + 2 * k + 1), x))
        return out

    def to_decomposition(self, bound: int = DENOMINATOR_BOUND):
        """Rational normal form and its verified orthogonal simple parts.

        Returns ``(G, D, ok)`` where G is the normal form with snapped
        parameters, D splits it into simple parts and ``ok`` is the exact
        verdict of :func:`verify_orthogonal_sum`.
        """
        space = self.space
        forms = []
        for key, x in self.blocks():
            c = Fraction(x).limit_denominator(bound)
            if c == 0:
                continue
            if isinstance(key[0], tuple):
                (i, j), k = key
                forms.append(Form(space, 2, {(i, k): c, (j, k): c}))
            else:
                forms.append(Form(space, 2, {key: c}))
        G = Form.zero(space, 2)
        for f in forms:
            G = G + f
        parts = tuple(sorted((simple_part(f) for f in forms), key=lambda p: min(p.form._terms)))
        D = Decomposition(parts, "normal-form")
        return G, D, verify_orthogonal_sum(G, D)


def _matrix(omega: Form) -> np.ndarray:
    d = omega.space.dim
    W = np.zeros((d, d))
    for (i, j), c in omega.items():
        W[i - 1, j - 1] = float(c)
        W[j - 1, i - 1] = -float(c)
    return W


def _eta(space: MetricSpace) -> np.ndarray:
    return np.diag([float(s) for s in space.metric_diag])


def _euclidean_blocks(W: np.ndarray):
    """Orthogonal Z with Z^T W Z block diagonal; blocks sorted descending.

    Returns ``(Z, angles)`` where the first ``2 * len(angles)`` columns
    carry the blocks and the rest span the kernel.  Small angles are
    kept; deciding what counts as zero is left to the caller.
    """
    m = W.shape[0]
    if m == 0:
        return np.zeros((0, 0)), []
    T, Z = scipy.linalg.schur(W, output="real")
    blocks = []
    kernel = []
    i = 0
    while i < m:
        if i + 1 < m and T[i + 1, i] != 0.0:
            a = T[i, i + 1]
            u, v = Z[:, i].copy(), Z[:, i + 1].copy()
            if a < 0:
                u, v, a = v, u, -a
            blocks.append((a, u, v))
            i += 2
        else:
            kernel.append(Z[:, i].copy())
            i += 1
    blocks.sort(key=lambda b: -b[0])
    cols = [c for _, u, v in blocks for c in (u, v)] + kernel
    Zs = np.column_stack(cols) if cols else np.zeros((m, 0))
    return Zs, [b[0] for b in blocks]


def _eta_orthonormal(C: np.ndarray, eta: np.ndarray):
    """eta-orthonormal basis of span(C); timelike columns first."""
    if C.shape[1] == 0:
        return C, np.zeros(0)
    G = C.T @ eta @ C
    lam, V = np.linalg.eigh((G + G.T) / 2)
    order = np.argsort(lam)
    lam, V = lam[order], V[:, order]
    Q = C @ V / np.sqrt(np.abs(lam))
    return Q, np.sign(lam)


def _eta_complement(A: np.ndarray, eta: np.ndarray, d: int):
    if A.shape[1] == 0:
        return np.eye(d)
    return scipy.linalg.null_space(A.T @ eta)


def _rotations(Q: np.ndarray, W: np.ndarray):
    """Skew-diagonalise W on the positive definite span of Q (eta-orthonormal)."""
    Z, angles = _euclidean_blocks(Q.T @ W @ Q)
    return Q @ Z, angles


def skew_normal_form(omega: Form, tol: float = 1e-9) -> SkewNormalForm:
    """Normal form of a 2-form over a euclidean or lorentzian space.

    The lorentzian type is decided with a threshold relative to the
    largest entry, ``tol ** (1/3) / 10`` times that scale (1e-4 at the
    default), because rounding spreads the eigenvalues of a nilpotent
    3x3 block by the cube root of machine precision.  Kernel vectors are
    separated at ``1e-12`` relative, far below any rotation rate of
    interest.
    """
    if omega.degree != 2:
        raise DegreeError("normal forms are for 2-forms")
    space = omega.space
    if space.time_dims >= 2:
        raise Unsupported("signatures with two or more timelike directions are not classified")
    d = space.dim
    W = _matrix(omega)
    eta = _eta(space)
    scale = float(np.max(np.abs(W))) if d else 0.0
    if scale == 0.0:
        kind = NormalKind.ZERO
        n_angles = d // 2 if space.time_dims == 0 else (d - 1) // 2
        return SkewNormalForm(kind, tuple([0.0] * n_angles), np.eye(d), np.zeros((d, d)), 0.0, 0.0, space)
    thr = max(tol, 1e-12) ** (1.0 / 3.0) * 0.1 * scale

    if space.time_dims == 0:
        B, angles = _euclidean_blocks(W)
        angles = angles + [0.0] * (d // 2 - len(angles))
        return _finish(NormalKind.EUCLIDEAN_BLOCKS, angles, B, W, eta, space, d // 2)

    M = eta @ W
    ev = np.linalg.eigvals(M)
    real_big = [x.real for x in ev if abs(x.real) > thr]
    if real_big:
        b = max(real_big)
        vals, vecs = np.linalg.eig(M)
        iu = int(np.argmin(np.abs(vals - b)))
        iw = int(np.argmin(np.abs(vals + b)))
        u, w = np.real(vecs[:, iu]), np.real(vecs[:, iw])
        c = u @ eta @ w
        w = -w / c  # <u, w> = -1
        f0 = (u + w) / np.sqrt(2.0)
        f1 = (u - w) / np.sqrt(2.0)
        A = np.column_stack([f0, f1])
        comp, _ = _eta_orthonormal(_eta_complement(A, eta, d), eta)
        R, angles = _rotations(comp, W)
        B = np.column_stack([f0, f1, R])
        if (B.T @ W @ B)[0, 1] < 0:
            B[:, 1] = -B[:, 1]
        beta = float((B.T @ W @ B)[0, 1])
        angles = [beta] + angles + [0.0] * ((d - 2) // 2 - len(angles))
        return _finish(NormalKind.LORENTZIAN_HYPERBOLIC, angles, B, W, eta, space, None)

    # elliptic: a timelike vector in the kernel
    kernel = scipy.linalg.null_space(W, rcond=1e-12)
    if kernel.shape[1]:
        G = kernel.T @ eta @ kernel
        lam, V = np.linalg.eigh((G + G.T) / 2)
        if lam[0] < -1e-6:
            t = kernel @ V[:, 0]
            t = t / np.sqrt(-(t @ eta @ t))
            comp, _ = _eta_orthonormal(_eta_complement(t[:, None], eta, d), eta)
            R, angles = _rotations(comp, W)
            B = np.column_stack([t, R])
            angles = angles + [0.0] * ((d - 1) // 2 - len(angles))
            return _finish(NormalKind.LORENTZIAN_ELLIPTIC, angles, B, W, eta, space, None)

    # parabolic: split off the invariant subspace of the nonzero eigenvalues,
    # then take a Jordan chain x, Mx, M^2 x in the generalised kernel
    T, Z, sdim = scipy.linalg.schur(M, output="real", sort=lambda x, y: np.hypot(x, y) > thr)
    U = Z[:, :sdim]
    K = _eta_complement(U, eta, d)
    MK = M @ K
    M2K = M @ MK
    j = int(np.argmax(np.linalg.norm(M2K, axis=0)))
    x = K[:, j]
    n = M @ (M @ x)
    s = M @ x
    s = s / np.sqrt(s @ eta @ s)
    x = x - (x @ eta @ s) * s
    xn = x @ eta @ n
    a = -2.0 / xn
    bcoef = -a * (x @ eta @ x) / (2.0 * xn)
    nt = a * x + bcoef * n
    f0, f1 = (n + nt) / 2.0, (n - nt) / 2.0
    B3 = np.column_stack([f0, f1, s])
    N3 = B3.T @ W @ B3
    if N3[0, 2] * N3[1, 2] < 0:
        B3[:, 1] = -B3[:, 1]
        N3 = B3.T @ W @ B3
    if N3[0, 2] < 0:
        B3[:, 2] = -B3[:, 2]
        N3 = B3.T @ W @ B3
    kappa = N3[0, 2]
    # boost: n -> n / kappa, nt -> kappa nt turns the coefficient into 1
    n, nt = (B3[:, 0] + B3[:, 1]) / kappa, (B3[:, 0] - B3[:, 1]) * kappa
    B3 = np.column_stack([(n + nt) / 2.0, (n - nt) / 2.0, B3[:, 2]])
    N3 = B3.T @ W @ B3
    if abs(N3[0, 2] - 1.0) > 1e-6:
        n, nt = (B3[:, 0] + B3[:, 1]) * kappa * kappa, (B3[:, 0] - B3[:, 1]) / (kappa * kappa)
        B3 = np.column_stack([(n + nt) / 2.0, (n - nt) / 2.0, B3[:, 2]])
    comp, _ = _eta_orthonormal(_eta_complement(B3, eta, d), eta)
    R, angles = _rotations(comp, W)
    B = np.column_stack([B3, R])
    angles = [1.0] + angles + [0.0] * ((d - 3) // 2 - len(angles))
    return _finish(NormalKind.LORENTZIAN_PARABOLIC, angles, B, W, eta, space, None)


def _finish(kind, angles, B, W, eta, space, _n):
    d = space.dim
    sf = SkewNormalForm(kind, tuple(float(a) for a in angles), B, np.zeros((d, d)), 0.0, 0.0, space)
    N = np.zeros((d, d))
    for key, x in sf.blocks():
        if isinstance(key[0], tuple):
            (i, j), k = key
            for a in (i, j):
                N[a - 1, k - 1] = x
                N[k - 1, a - 1] = -x
        else:
            i, j = key
            N[i - 1, j - 1] = x
            N[j - 1, i - 1] = -x
    Binv = eta @ B.T @ eta  # inverse of an isometry
    recon = Binv.T @ N @ Binv
    residual = float(np.max(np.abs(recon - W)))
    iso = float(np.max(np.abs(B.T @ eta @ B - eta)))
    return SkewNormalForm(kind, sf.angles, B, N, residual, iso, space)


# ---------------------------------------------------------------- case labels


def case_slots(d: int, p: int) -> int:
    """Number of rotation parameters of a contraction by a (p-2)-blade."""
    return (d - p + 2) // 2


def _angles_of(two_form, slots, tol):
    """Nonnegative angles, exact when the form is already block diagonal."""
    if isinstance(two_form, Form):
        if two_form.degree != 2:
            raise DegreeError("case labels are for 2-forms")
        used = set()
        exact = True
        for (i, j) in two_form._terms:
            if i in used or j in used:
                exact = False
                break
            used.update((i, j))
        if exact and all(type(c) is Fraction for c in two_form._terms.values()):
            vals = [abs(c) for c in two_form._terms.values()]
        else:
            nf = skew_normal_form(two_form, tol)
            if nf.kind not in (NormalKind.EUCLIDEAN_BLOCKS, NormalKind.LORENTZIAN_ELLIPTIC, NormalKind.ZERO):
                raise ValueError(f"{nf.kind.value} elements have no rotation case label")
            vals = [a for a in nf.angles]
            exact = False
    else:
        vals = [abs(v) for v in two_form]
        exact = all(isinstance(v, (int, Fraction)) for v in two_form)
    vals = sorted(vals, reverse=True)
    nonzero = [v for v in vals if v != 0]
    if len(nonzero) > slots:
        raise ValueError(f"{len(nonzero)} nonzero angles do not fit {slots} slots")
    vals = (vals + [0] * slots)[:slots]
    return vals, exact


def classify_case(two_form, family: tuple, tol: float = 1e-9) -> str:
    """Case label of a contraction ``i_Xi F`` from its rotation angles.

    ``family`` is the ``(d, p)`` context, which fixes the number of
    angles (2 or 3).  ``two_form`` is a 2-form or a sequence of angles.
    Exact comparisons for rational input, otherwise relative tolerance.
    Labels: so(4), su(2), so(2) for two angles; so(6), su(2)xu(1),
    u(1)-diagonal, su(3), so(4), su(2), so(2) for three; "zero" when all vanish.
    """
    d, p = family
    slots = case_slots(d, p)
    if slots not in (2, 3):
        raise ValueError(f"no case list for {slots} rotation parameters")
    vals, exact = _angles_of(two_form, slots, tol)
    top = vals[0]
    if exact:
        eq = lambda x, y: x == y  # noqa: E731
    else:
        eps = max(tol, 1e-12) * (float(top) if top else 1.0) * 1e3
        eq = lambda x, y: abs(float(x) - float(y)) <= eps  # noqa: E731

    def zero(x):
        return eq(x, 0)

    if all(zero(v) for v in vals):
        return "zero"
    labels = []
    if slots == 2:
        a, b = vals
        if zero(b):
            labels.append("so(2)")
        elif eq(a, b):
            labels.append("su(2)")
        else:
            labels.append("so(4)")
    else:
        a, b, c = vals
        if zero(b) and zero(c):
            labels.append("so(2)")
        elif zero(c):
            labels.append("su(2)" if eq(a, b) else "so(4)")
        else:
            if eq(a, b) and eq(b, c):
                labels.append("u(1)-diagonal")
            else:
                if eq(a, b + c):
                    labels.append("su(3)")
                if eq(a, b) or eq(b, c):
                    labels.append("su(2)xu(1)")
                if not labels:
                    labels.append("so(6)")
    if len(labels) > 1:
        raise AmbiguousCase(f"angles {vals} match several cases", labels)
    return labels[0]
