"""Sparse exterior algebra over a diagonal (pseudo-)orthonormal frame.

A form is stored as a map from strictly increasing index tuples (1-based)
to scalars.  Scalars are anything closed under ``+ - *`` with an exact
``== 0`` test: ``Fraction``, :class:`~orthoplucker.scalars.QSqrt3`, or
sympy expressions when exploring parametrised families.  Python ints and
rational strings are coerced to ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DegreeError, SpaceMismatch
from .linalg import independent_int_rows, rref
from .scalars import parse_scalar

__all__ = [
    "MetricSpace",
    "Form",
    "Polyvector",
    "Plane",
    "blade_sign",
    "coerce_scalar",
    "wedge",
    "contract",
    "sharp",
    "flat",
    "form_inner",
    "vector_inner",
    "hodge",
    "so_action",
    "support_plane",
    "volume_form",
    "transform",
    "blades",
]


def coerce_scalar(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return parse_scalar(c)
    if isinstance(c, float):
        raise TypeError("floats are not exact scalars; pass a Fraction or a string")
    return c


def blade_sign(indices: Sequence[int]):
    """Sort ``indices`` and return ``(sign, sorted_tuple)``; sign 0 on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle taking the concatenation ``a + b`` to sorted order.

    ``a`` and ``b`` are sorted and disjoint.
    """
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return -1 if inversions & 1 else 1


@dataclass(frozen=True)
class MetricSpace:
    """R^d with metric diag(-1,...,-1,+1,...,+1), ``time_dims`` minus signs first."""

    dim: int
    time_dims: int = 0

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if not 0 <= self.time_dims <= self.dim:
            raise ValueError(f"time_dims must lie in [0, {self.dim}], got {self.time_dims}")

    @classmethod
    def euclidean(cls, d: int) -> "MetricSpace":
        return cls(d, 0)

    @classmethod
    def lorentzian(cls, d: int) -> "MetricSpace":
        return cls(d, 1)

    @property
    def metric_diag(self) -> tuple:
        return tuple(-1 if i < self.time_dims else 1 for i in range(self.dim))

    def g(self, i: int) -> int:
        """Metric entry for the 1-based index ``i`` (its own inverse)."""
        return -1 if i <= self.time_dims else 1

    @property
    def outside_hypothesis(self) -> bool:
        """More than one timelike direction."""
        return self.time_dims >= 2

    def __str__(self):
        if self.time_dims == 0:
            return f"E^{self.dim}"
        return f"E^({self.time_dims},{self.dim - self.time_dims})"


def blades(d: int, p: int) -> Iterator[tuple]:
    """All basis blades of degree ``p`` in dimension ``d``, lexicographic."""
    return combinations(range(1, d + 1), p)


class Form:
    """Homogeneous element of the exterior algebra of degree ``degree``.

    ``terms`` maps index tuples to coefficients.  Unsorted keys are
    accepted and folded with their permutation sign.  Instances are
    treated as immutable.
    """

    __slots__ = ("space", "degree", "_terms", "_hash")

    def __init__(self, space: MetricSpace, degree: int, terms: Mapping | Iterable = ()):
        if degree < 0:
            raise DegreeError(f"negative degree {degree}")
        self.space = space
        self.degree = degree
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, c in items:
            key = tuple(key)
            if len(key) != degree:
                raise DegreeError(f"blade {key} does not have degree {degree}")
            if any(not 1 <= i <= space.dim for i in key):
                raise ValueError(f"blade {key} has an index outside 1..{space.dim}")
            s, k = blade_sign(key)
            if s == 0:
                continue
            c = coerce_scalar(c)
            acc[k] = acc[k] + s * c if k in acc else s * c
        self._terms = {k: v for k, v in sorted(acc.items()) if not v == 0}
        self._hash = None

    @classmethod
    def _raw(cls, space, degree, terms: dict):
        """Construct from an already canonical dict (sorted keys, no zeros)."""
        obj = cls.__new__(cls)
        obj.space = space
        obj.degree = degree
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, space: MetricSpace, degree: int):
        return cls._raw(space, degree, {})

    @classmethod
    def blade(cls, space: MetricSpace, *indices: int, coeff=1):
        """``coeff * e_{i1} ^ ... ^ e_{ik}``, indices in any order."""
        return cls(space, len(indices), {tuple(indices): coeff})

    @classmethod
    def from_vector(cls, space: MetricSpace, vec: Sequence):
        """Degree-1 element with the given coordinate vector."""
        if len(vec) != space.dim:
            raise ValueError("vector length does not match dimension")
        return cls(space, 1, {(i + 1,): c for i, c in enumerate(vec)})

    @classmethod
    def scalar(cls, space: MetricSpace, c):
        return cls(space, 0, {(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def as_vector(self) -> list:
        if self.degree != 1:
            raise DegreeError("only degree-1 elements have a coordinate vector")
        return [self._terms.get((i,), Fraction(0)) for i in range(1, self.space.dim + 1)]

    def as_scalar(self):
        if self.degree != 0:
            raise DegreeError("not a degree-0 element")
        return self._terms.get((), Fraction(0))

    def component(self, *indices: int):
        """Component ``F_{i1...ip}`` with antisymmetry in the indices."""
        if len(indices) != self.degree:
            raise DegreeError("wrong number of indices")
        s, k = blade_sign(indices)
        if s == 0:
            return Fraction(0)
        c = self._terms.get(k)
        if c is None:
            return Fraction(0)
        return c if s == 1 else -c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def map_coeffs(self, fn):
        return type(self)(self.space, self.degree, {k: fn(v) for k, v in self._terms.items()})

    def _check(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeError(f"cannot add degree {self.degree} and {other.degree}")
        acc = dict(self._terms)
        for k, v in other._terms.items():
            if k in acc:
                s = acc[k] + v
                if s == 0:
                    del acc[k]
                else:
                    acc[k] = s
            else:
                acc[k] = v
        return type(self)._raw(self.space, self.degree, acc)

    def __neg__(self):
        return type(self)._raw(self.space, self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Form):
            return NotImplemented
        c = coerce_scalar(c)
        if c == 0:
            return type(self).zero(self.space, self.degree)
        return type(self)._raw(self.space, self.degree, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = coerce_scalar(c)
        return type(self)._raw(self.space, self.degree, {k: v / c for k, v in self._terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.space == other.space
            and self.degree == other.degree
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, self.degree, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.space}, {self.degree}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, v in self._terms.items():
            name = "e" + "_".join(map(str, k)) if self.space.dim >= 10 else "e" + "".join(map(str, k))
            if not k:
                name = "1"
            parts.append(f"({v})*{name}")
        return " + ".join(parts)


class Polyvector(Form):
    """Contravariant counterpart of :class:`Form`; same storage, different role."""

    __slots__ = ()


@dataclass(frozen=True)
class Plane:
    """Linear span of coordinate vectors, stored as an echelon basis."""

    space: MetricSpace
    basis: tuple = field(default=())

    @classmethod
    def span(cls, space: MetricSpace, vectors: Iterable[Sequence]) -> "Plane":
        rows = [[coerce_scalar(c) for c in v] for v in vectors]
        if any(len(r) != space.dim for r in rows):
            raise ValueError("vector length does not match dimension")
        red, _ = rref(rows) if rows else ([], [])
        return cls(space, tuple(tuple(r) for r in red))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence) -> bool:
        red, _ = rref([list(r) for r in self.basis] + [[coerce_scalar(c) for c in vec]])
        return len(red) == self.rank


def _same_space(a: Form, b: Form):
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")


def wedge(F: Form, G: Form) -> Form:
    _same_space(F, G)
    deg = F.degree + G.degree
    cls = type(F)
    acc: dict = {}
    for a, x in F._terms.items():
        sa = set(a)
        for b, y in G._terms.items():
            if sa.intersection(b):
                continue
            key = tuple(sorted(a + b))
            c = x * y
            if _merge_sign(a, b) < 0:
                c = -c
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
    return cls._raw(F.space, deg, {k: v for k, v in acc.items() if not v == 0})


def _contract_index(terms: dict, i: int) -> dict:
    """iota_{e_i} on a term dict: e_J -> (-1)^m e_{J minus i}, m = position of i."""
    out = {}
    for k, v in terms.items():
        try:
            m = k.index(i)
        except ValueError:
            continue
        key = k[:m] + k[m + 1:]
        out[key] = -v if m & 1 else v
    return out


def contract(F: Form, Xi: Form) -> Form:
    """Interior product of ``F`` by the polyvector ``Xi``.

    For a blade ``e_{i1} ^ ... ^ e_{ik}`` the contraction by ``e_{i1}`` is
    applied first, so ``contract(e1234, e1^e2) = e34``.  No metric is used.
    """
    _same_space(F, Xi)
    if Xi.degree > F.degree:
        raise DegreeError(f"cannot contract degree {F.degree} by degree {Xi.degree}")
    acc: dict = {}
    for blade, x in Xi._terms.items():
        cur = F._terms
        for i in blade:
            cur = _contract_index(cur, i)
            if not cur:
                break
        for k, v in cur.items():
            c = v * x
            acc[k] = acc[k] + c if k in acc else c
    return type(F)._raw(F.space, F.degree - Xi.degree, {k: v for k, v in acc.items() if not v == 0})


def contract_blade(F: Form, blade: Sequence[int]) -> Form:
    """Contraction by a single basis blade given as an index sequence."""
    cur = F._terms
    for i in blade:
        cur = _contract_index(cur, i)
        if not cur:
            break
    return type(F)._raw(F.space, F.degree - len(blade), cur)


def sharp(alpha: Form) -> Polyvector:
    if alpha.degree != 1:
        raise DegreeError("sharp acts on one-forms")
    g = alpha.space.g
    return Polyvector._raw(alpha.space, 1, {k: (v if g(k[0]) == 1 else -v) for k, v in alpha._terms.items()})


def flat(X: Form) -> Form:
    if X.degree != 1:
        raise DegreeError("flat acts on vectors")
    g = X.space.g
    return Form._raw(X.space, 1, {k: (v if g(k[0]) == 1 else -v) for k, v in X._terms.items()})


def _blade_norm_sign(space: MetricSpace, blade: tuple) -> int:
    t = space.time_dims
    neg = sum(1 for i in blade if i <= t)
    return -1 if neg & 1 else 1


def form_inner(F: Form, G: Form):
    """Induced inner product on forms of equal degree."""
    _same_space(F, G)
    if F.degree != G.degree:
        raise DegreeError(f"degrees {F.degree} and {G.degree} differ")
    if len(G._terms) < len(F._terms):
        F, G = G, F
    total = Fraction(0)
    for k, v in F._terms.items():
        w = G._terms.get(k)
        if w is not None:
            c = v * w
            total = total + c if _blade_norm_sign(F.space, k) == 1 else total - c
    return total


def vector_inner(space: MetricSpace, u: Sequence, v: Sequence):
    """Metric pairing of two coordinate vectors."""
    total = Fraction(0)
    for i, (a, b) in enumerate(zip(u, v)):
        if a == 0 or b == 0:
            continue
        total = total - a * b if i < space.time_dims else total + a * b
    return total


def volume_form(space: MetricSpace) -> Form:
    return Form.blade(space, *range(1, space.dim + 1))


def hodge(F: Form) -> Form:
    """Hodge dual fixed by ``alpha ^ hodge(beta) = <alpha, beta> vol``.

    ``vol = e_1 ^ ... ^ e_d`` in every signature.
    """
    d = F.space.dim
    full = range(1, d + 1)
    out = {}
    for k, v in F._terms.items():
        comp = tuple(i for i in full if i not in k)
        s = _merge_sign(k, comp) * _blade_norm_sign(F.space, k)
        out[comp] = v if s == 1 else -v
    return type(F)._raw(F.space, d - F.degree, out)


def so_action(omega: Form, Omega: Form) -> Form:
    """Infinitesimal rotation of ``Omega`` by the 2-form ``omega``.

    On simple 2-forms, ``[a ^ b, W] = a ^ i(b#) W - b ^ i(a#) W``.  In
    components this reads ``sum_{a,b} omega_ab g^bb e_a ^ i_{e_b} W``.
    """
    _same_space(omega, Omega)
    if omega.degree != 2:
        raise DegreeError("so_action needs a 2-form")
    space = Omega.space
    acc: dict = {}
    for (a, b), w in omega._terms.items():
        # omega_ab e_a ^ i_b  and  omega_ba = -omega_ab  for e_b ^ i_a
        for src, tgt, coeff in ((b, a, w), (a, b, -w)):
            if space.g(src) == -1:
                coeff = -coeff
            for k, v in _contract_index(Omega._terms, src).items():
                if tgt in k:
                    continue
                # e_tgt ^ e_k: insert tgt, sign = (-1)^(number of entries below tgt)
                pos = sum(1 for i in k if i < tgt)
                key = k[:pos] + (tgt,) + k[pos:]
                c = v * coeff
                if pos & 1:
                    c = -c
                acc[key] = acc[key] + c if key in acc else c
    return type(Omega)._raw(space, Omega.degree, {k: v for k, v in acc.items() if not v == 0})


def support_plane(F: Form) -> Plane:
    """Span of all one-forms ``i_Xi F`` over basis blades ``Xi`` of degree p-1."""
    if F.degree < 1:
        raise DegreeError("support plane needs degree >= 1")
    d = F.space.dim
    p = F.degree
    # e_key = (-1)^(p-1-m) e_xi ^ e_j for j = key[m], so i_xi e_key = (-1)^(p-1-m) e_j
    acc: dict = {}
    for key, c in F._terms.items():
        for m, j in enumerate(key):
            row = acc.setdefault(key[:m] + key[m + 1:], {})
            row[j] = -c if (p - 1 - m) & 1 else c
    if all(type(c) is Fraction for c in F._terms.values()):
        den = 1
        for c in F._terms.values():
            den = lcm(den, c.denominator)
        vecs = []
        for row in acc.values():
            vec = [0] * d
            for j, c in row.items():
                vec[j - 1] = int(c * den)
            vecs.append(vec)
        # same span, at most d rows, before the exact reduction
        rows = independent_int_rows(vecs, d)
    else:
        rows = []
        for row in acc.values():
            vec = [0] * d
            for j, c in row.items():
                vec[j - 1] = c
            rows.append(vec)
    return Plane.span(F.space, rows) if rows else Plane(F.space, ())


def transform(F: Form, M: Sequence[Sequence]) -> Form:
    """Pull ``F`` back along the linear map sending ``e_j`` to ``sum_i M[i][j] e_i``.

    Each basis one-form ``e_i`` is replaced by ``sum_j M[i][j] e_j``; for an
    isometry (``M^T eta M = eta``) this is the action of the orthogonal group.
    """
    space = F.space
    d = space.dim
    images = []
    for i in range(d):
        images.append({j + 1: coerce_scalar(M[i][j]) for j in range(d) if not coerce_scalar(M[i][j]) == 0})
    acc: dict = {}
    for k, v in F._terms.items():
        partial = {(): v}
        for i in k:
            nxt: dict = {}
            for key, c in partial.items():
                for j, mij in images[i - 1].items():
                    if j in key:
                        continue
                    pos = sum(1 for x in key if x > j)
                    newkey = tuple(sorted(key + (j,)))
                    val = c * mij
                    if pos & 1:
                        val = -val
                    nxt[newkey] = nxt[newkey] + val if newkey in nxt else val
            partial = nxt
        for key, c in partial.items():
            acc[key] = acc[key] + c if key in acc else c
    return type(F)._raw(space, F.degree, {k: v for k, v in acc.items() if not v == 0})
