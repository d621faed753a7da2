"""Plücker-type tests on forms.

``classical_plucker_check`` is the usual simplicity criterion
``i_Xi F ^ F = 0`` over (p-1)-blades.  ``orthogonal_relation_check`` tests
``[i_Xi F, F] = 0`` over (p-2)-blades, where the bracket is the so(V)
action of the 2-form ``i_Xi F``.  Both relations are linear in ``Xi``, so
running over basis blades is a complete test.

``coordinate_residual`` evaluates the same relation from the index
formula with an explicit antisymmetrisation and serves as an independent
cross-check.
"""
from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, lcm

from . import _kernel
from .errors import DegreeError
from .exterior import Form, _contract_index, blade_sign, blades, contract_blade, so_action, wedge

__all__ = [
    "ResidualKind",
    "ResidualReport",
    "classical_plucker_check",
    "orthogonal_relation_check",
    "coordinate_residual",
    "is_simple",
    "relation_holds",
]


class ResidualKind(enum.Enum):
    CLASSICAL = "classical"
    ORTHOGONAL = "orthogonal"


@dataclass(frozen=True)
class ResidualReport:
    kind: ResidualKind
    entries: tuple  # ((Xi blade, residual Form), ...)
    is_zero: bool
    max_abs_coeff: object = Fraction(0)
    outside_hypothesis: bool = False
    route: str = "sparse"

    def violations(self):
        """Entries with a nonzero residual."""
        return [(xi, r) for xi, r in self.entries if not r.is_zero()]

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "route": self.route,
            "is_zero": self.is_zero,
            "max_abs_coeff": str(self.max_abs_coeff),
            "outside_hypothesis": self.outside_hypothesis,
            "violations": [
                {
                    "contraction": list(xi),
                    "residual": [{"indices": list(k), "coeff": str(v)} for k, v in r.items()],
                }
                for xi, r in self.violations()
            ],
        }


def _max_abs(entries):
    best = Fraction(0)
    for _, r in entries:
        for v in r._terms.values():
            try:
                a = abs(v)
                if a > best:
                    best = a
            except TypeError:
                # symbolic coefficients have no order
                return None
    return best


def _report(kind, entries, space, route):
    entries = tuple(entries)
    zero = all(r.is_zero() for _, r in entries)
    return ResidualReport(
        kind=kind,
        entries=entries,
        is_zero=zero,
        max_abs_coeff=Fraction(0) if zero else _max_abs(entries),
        outside_hypothesis=space.outside_hypothesis,
        route=route,
    )


def classical_plucker_check(F: Form) -> ResidualReport:
    """Residuals ``i_Xi F ^ F`` for all basis (p-1)-blades ``Xi``."""
    p = F.degree
    if p < 1:
        raise DegreeError("classical test needs degree >= 1")
    entries = []
    for xi in blades(F.space.dim, p - 1):
        one = contract_blade(F, xi)
        res = wedge(one, F) if one else Form.zero(F.space, p + 1)
        entries.append((xi, res))
    return _report(ResidualKind.CLASSICAL, entries, F.space, "sparse")


def is_simple(F: Form) -> bool:
    """Verdict of the classical test, wedging only contractions new in span.

    ``i_Xi F ^ F`` is linear in the one-form ``i_Xi F``, so a contraction
    in the span of ones already checked cannot give a new residue.  At
    most ``d`` wedges are formed, in integer arithmetic for rational forms.
    """
    p = F.degree
    if p < 1:
        raise DegreeError("classical test needs degree >= 1")
    if not _all_rational(F):
        return classical_plucker_check(F).is_zero
    den = 1
    for v in F._terms.values():
        den = lcm(den, v.denominator)
    terms = {k: int(v * den) for k, v in F._terms.items()}
    d = F.space.dim
    echelon: dict = {}  # pivot -> row with a 1 at the pivot
    for xi in blades(d, p - 1):
        alpha = _contract_all(terms, xi)
        if not alpha:
            continue
        row = [Fraction(0)] * (d + 1)
        for (j,), c in alpha.items():
            row[j] = Fraction(c)
        for piv, base in echelon.items():
            if row[piv]:
                f = row[piv]
                row = [a - f * b for a, b in zip(row, base)]
        piv = next((j for j in range(1, d + 1) if row[j]), None)
        if piv is None:
            continue
        echelon[piv] = [c / row[piv] for c in row]
        if _wedge_one(alpha, terms):
            return False
    return True


def _contract_all(terms: dict, blade) -> dict:
    cur = terms
    for i in blade:
        cur = _contract_index(cur, i)
        if not cur:
            break
    return cur


def _wedge_one(alpha: dict, terms: dict) -> bool:
    """Whether ``alpha ^ F`` is nonzero, for a one-form ``alpha``."""
    acc: dict = {}
    for (j,), a in alpha.items():
        for key, c in terms.items():
            if j in key:
                continue
            m = bisect_left(key, j)
            k = key[:m] + (j,) + key[m:]
            acc[k] = acc.get(k, 0) + (-a * c if m & 1 else a * c)
    return any(acc.values())


def _all_rational(F: Form) -> bool:
    return all(type(v) is Fraction for v in F._terms.values())


def _sparse_entries(F: Form):
    for xi in blades(F.space.dim, F.degree - 2):
        omega = contract_blade(F, xi)
        if omega:
            yield xi, so_action(omega, F)
        else:
            yield xi, Form.zero(F.space, F.degree)


def _dense_entries(F: Form):
    d, p = F.space.dim, F.degree
    Xi_list, J_list, nonzero = _kernel.orthogonal_residuals(d, F.space.time_dims, p, F._terms)
    per_xi: dict = {}
    for (x, n), v in nonzero.items():
        per_xi.setdefault(x, {})[J_list[n]] = v
    return [(xi, Form._raw(F.space, p, per_xi.get(x, {}))) for x, xi in enumerate(Xi_list)]


def orthogonal_relation_check(F: Form, method: str = "auto") -> ResidualReport:
    """Residuals ``[i_Xi F, F]`` for all basis (p-2)-blades ``Xi``.

    ``method`` selects the evaluation: ``"sparse"`` applies the so(V)
    action blade by blade with any exact scalar type; ``"dense"`` uses the
    multi-modular integer kernel and needs rational coefficients;
    ``"auto"`` picks dense whenever it applies.
    """
    if F.degree < 2:
        raise DegreeError("the orthogonal relation needs degree >= 2")
    if method not in ("auto", "sparse", "dense"):
        raise ValueError(f"unknown method {method!r}")
    use_dense = method == "dense" or (method == "auto" and _all_rational(F))
    if use_dense:
        if not _all_rational(F):
            raise TypeError("dense route needs rational coefficients")
        return _report(ResidualKind.ORTHOGONAL, _dense_entries(F), F.space, "dense")
    return _report(ResidualKind.ORTHOGONAL, _sparse_entries(F), F.space, "sparse")


def relation_holds(F: Form) -> bool:
    """Verdict only; stops at the first nonzero residue on the dense route."""
    if F.degree < 2:
        raise DegreeError("the orthogonal relation needs degree >= 2")
    if not _all_rational(F):
        return orthogonal_relation_check(F, "sparse").is_zero
    _, _, nonzero = _kernel.orthogonal_residuals(
        F.space.dim, F.space.time_dims, F.degree, F._terms, stop_at_nonzero=True
    )
    return not nonzero


def _antisymmetrised(lhs, rhs, J, exhaustive):
    """sum over permutations s of J of sign(s) lhs(J_s1) rhs(J_s2 ... J_sp).

    With ``exhaustive`` every permutation is visited.  Otherwise the
    permutations are grouped by their first entry; each group of (p-1)!
    permutations contributes the same signed term.
    """
    p = len(J)
    total = Fraction(0)
    if exhaustive:
        for perm in permutations(range(p)):
            s, _ = blade_sign(perm)
            term = lhs(J[perm[0]]) * rhs(tuple(J[i] for i in perm[1:]))
            total = total + term if s == 1 else total - term
        return total
    for m in range(p):
        term = lhs(J[m]) * rhs(J[:m] + J[m + 1:])
        total = total + term if m % 2 == 0 else total - term
    return total * factorial(p - 1)


def coordinate_residual(F: Form, exhaustive: bool | None = None) -> ResidualReport:
    """Index-formula residual ``g^{kl} F_{k Xi [j1} F_{j2 ... jp] l}``.

    The antisymmetrisation is the signed sum over all permutations with
    unit weight, so these residuals are (p-1)! times the bracket residuals.
    ``exhaustive`` defaults to visiting every permutation when p <= 4.
    """
    p = F.degree
    if p < 2:
        raise DegreeError("the orthogonal relation needs degree >= 2")
    if exhaustive is None:
        exhaustive = p <= 4
    space = F.space
    d = space.dim
    comp = F.component
    entries = []
    for xi in blades(d, p - 2):
        acc = {}
        for k in range(1, d + 1):
            if k in xi:
                continue
            gk = space.g(k)
            left = {j: comp(k, *xi, j) for j in range(1, d + 1)}
            if not any(v != 0 for v in left.values()):
                continue
            right_cache = {}

            def rhs(js, k=k, cache=right_cache):
                if js not in cache:
                    cache[js] = comp(*js, k)
                return cache[js]

            for J in combinations(range(1, d + 1), p):
                val = _antisymmetrised(left.__getitem__, rhs, J, exhaustive)
                if val != 0:
                    val = val if gk == 1 else -val
                    acc[J] = acc[J] + val if J in acc else val
        entries.append((xi, Form(space, p, acc)))
    return _report(ResidualKind.ORTHOGONAL, entries, space, "coordinate")
