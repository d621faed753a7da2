"""Parametrised ansatz families for forms satisfying the orthogonal relation.

Each family fixes the 2-form ``i_Xi F`` for one (p-2)-blade ``Xi`` to a
normal form, keeps only the components commuting with it and lists the
polynomial constraints that the remaining relation imposes.  Families
whose analysis ends in a contradiction carry the rational locus of the
residual ideal as constraints: the hypothesis parameters must collapse.

Conventions:

* indices are 1-based; in lorentzian families index 1 is timelike, so a
  basis written ``e0, e1, ...`` elsewhere is shifted by one;
* template coefficients are sympy expressions in the case parameters;
  ``dependents`` are substitutions applied before the constraints;
* a ``Branch`` parametrises one component of the constraint locus and may
  carry an explicit splitting into simple factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from ..exterior import Form, MetricSpace

__all__ = ["AnsatzCase", "Branch", "builtin_cases", "get_case", "evaluate", "euclidean_probe"]


@dataclass(frozen=True)
class Branch:
    """One rational parametrisation of the constraint locus.

    ``assign`` maps case parameters to expressions in the remaining
    parameters or in auxiliary symbols; everything unassigned is drawn at
    random.  ``split`` lists parts ``(scale, factors)`` where each factor
    is a tuple of ``(index, expr)`` pairs describing a one-form.
    """

    label: str
    assign: tuple = ()  # ((symbol, expr), ...)
    split: tuple | None = None


@dataclass(frozen=True)
class AnsatzCase:
    name: str
    citation: str
    dim: int
    time_dims: int
    degree: int
    template: tuple  # ((blade, expr), ...)
    constraints: tuple  # expressions that vanish on the locus
    branches: tuple
    dependents: tuple = ()  # ((symbol, expr), ...) substituted in order
    kind: str = "decomposable"  # or "contradiction" / "simple"
    probe: bool = False  # euclidean rerun of a lorentzian family

    def __post_init__(self):
        in_template = set()
        for _, c in self.template:
            in_template |= sp.sympify(c).free_symbols
        dep = {s for s, _ in self.dependents}
        for _, e in self.dependents:
            in_template |= sp.sympify(e).free_symbols
        for br in self.branches:
            for _, e in br.assign:
                if sp.sympify(e).free_symbols & dep:
                    raise ValueError(f"{self.name}/{br.label}: assignment uses a dependent symbol")
        for c in self.constraints:
            extra = sp.sympify(c).free_symbols - in_template - dep
            if extra:
                raise ValueError(f"{self.name}: constraint symbols {extra} not in the template")

    @property
    def parameters(self) -> tuple:
        """Free parameters: template symbols that are not dependents."""
        syms = set()
        for _, c in self.template:
            syms |= sp.sympify(c).free_symbols
        for _, e in self.dependents:
            syms |= sp.sympify(e).free_symbols
        syms -= {s for s, _ in self.dependents}
        return tuple(sorted(syms, key=lambda s: s.name))

    @property
    def space(self) -> MetricSpace:
        return MetricSpace(self.dim, self.time_dims)

    @property
    def has_split(self) -> bool:
        return any(b.split is not None for b in self.branches)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "citation": self.citation,
            "dim": self.dim,
            "time_dims": self.time_dims,
            "degree": self.degree,
            "kind": self.kind,
            "template": [{"blade": list(b), "coeff": str(c)} for b, c in self.template],
            "dependents": [{"symbol": str(s), "value": str(e)} for s, e in self.dependents],
            "constraints": [f"{c} = 0" for c in self.constraints],
            "branches": [b.label for b in self.branches],
        }


# ---------------------------------------------------------------- evaluation


def evaluate(expr, env: dict) -> Fraction:
    """Exact value of a polynomial/rational sympy expression at Fraction values."""
    if isinstance(expr, (int, Fraction)):
        return Fraction(expr)
    if expr.is_Symbol:
        return env[expr]
    if expr.is_Integer:
        return Fraction(int(expr))
    if expr.is_Rational:
        return Fraction(int(expr.p), int(expr.q))
    if expr.is_Add:
        total = Fraction(0)
        for a in expr.args:
            total += evaluate(a, env)
        return total
    if expr.is_Mul:
        total = Fraction(1)
        for a in expr.args:
            total *= evaluate(a, env)
        return total
    if expr.is_Pow and expr.exp.is_Integer:
        base = evaluate(expr.base, env)
        n = int(expr.exp)
        if n < 0 and base == 0:
            raise ZeroDivisionError("negative power of zero")
        return base ** n
    raise TypeError(f"cannot evaluate {expr!r} exactly")


def instantiate(case: AnsatzCase, env: dict) -> Form:
    """The form of ``case`` at parameter values ``env`` (dependents filled in)."""
    env = complete(case, env)
    terms = []
    for blade, c in case.template:
        v = evaluate(sp.sympify(c), env)
        if v:
            terms.append((blade, v))
    return Form(case.space, case.degree, terms)


def complete(case: AnsatzCase, env: dict) -> dict:
    env = dict(env)
    for s, e in case.dependents:
        env[s] = evaluate(sp.sympify(e), env)
    return env


def split_parts(case: AnsatzCase, branch: Branch, env: dict) -> list:
    """Instantiated parts of ``branch.split``: list of (form, factor forms)."""
    from ..exterior import wedge

    env = complete(case, env)
    space = case.space
    out = []
    for scale, factors in branch.split:
        vecs = []
        for fac in factors:
            v = [Fraction(0)] * space.dim
            for i, e in fac:
                v[i - 1] += evaluate(sp.sympify(e), env)
            vecs.append(v)
        s = evaluate(sp.sympify(scale), env)
        vecs[0] = [s * c for c in vecs[0]]
        fs = [Form.from_vector(space, v) for v in vecs]
        acc = fs[0]
        for f in fs[1:]:
            acc = wedge(acc, f)
        out.append((acc, tuple(fs)))
    return out


# ---------------------------------------------------------------- helpers


def _b(s: str, shift: int = 0) -> tuple:
    return tuple(int(ch) + shift for ch in s)


def _t(shift: int, *pairs) -> tuple:
    return tuple((_b(s, shift), sp.sympify(c)) for s, c in pairs)


def _e(i: int) -> tuple:
    return ((i, 1),)


def _v(*pairs) -> tuple:
    """One-form from (index, coefficient) pairs."""
    return tuple((i, sp.sympify(c)) for i, c in pairs)


def _shift_vec(vec, shift):
    return tuple((i + shift, c) for i, c in vec)


def _wedge1(i: int, pairs, scale=1) -> list:
    """e_i wedge sum of c * e_blade, blades given as strings."""
    return [((i,) + _b(s), sp.sympify(scale) * sp.sympify(c)) for s, c in pairs]


S = sp.symbols


# ---------------------------------------------------------------- p = 3


def _p3_cases() -> list:
    a, b, c, dl, eps, eta = S("alpha beta gamma delta epsilon eta")
    k, m, n = S("k m n")
    out = []

    split_so4 = (
        (1, (_v((1, a), (6, c)), _e(2), _e(3))),
        (1, (_v((1, b), (6, dl)), _e(4), _e(5))),
    )
    tmpl = _t(0, ("123", a), ("145", b), ("236", c), ("456", dl))
    out.append(AnsatzCase(
        "e6-p3-so4", "3-forms on E^6, i_1 F generic in a Cartan subalgebra of so(4)",
        6, 0, 3, tmpl, (a * b + c * dl,),
        (Branch("delta solved", ((dl, -a * b / c),), split_so4),),
    ))
    out.append(AnsatzCase(
        "m6-p3-so4", "3-forms on E^(1,5), i_1 F generic in a Cartan subalgebra of so(4)",
        6, 1, 3, tmpl, (a * b - c * dl,),
        (Branch("delta solved", ((dl, a * b / c),), split_so4),),
    ))

    tmpl = _t(0, ("123", a), ("145", a), ("623", eta + c), ("645", eta - c))
    split_su2 = (
        (1, (_v((1, a), (6, eta + c)), _e(2), _e(3))),
        (1, (_v((1, a), (6, eta - c)), _e(4), _e(5))),
    )
    out.append(AnsatzCase(
        "e6-p3-su2", "3-forms on E^6, i_1 F selfdual, anti-selfdual part rotated away",
        6, 0, 3, tmpl, (a**2 + eta**2 - c**2,),
        (Branch("pythagorean", ((a, k * (m**2 - n**2)), (eta, 2 * k * m * n), (c, k * (m**2 + n**2))), split_su2),),
    ))
    out.append(AnsatzCase(
        "m6-p3-su2", "3-forms on E^(1,5), i_1 F selfdual, anti-selfdual part rotated away",
        6, 1, 3, tmpl, (a**2 + c**2 - eta**2,),
        (Branch("pythagorean", ((c, k * (m**2 - n**2)), (a, 2 * k * m * n), (eta, k * (m**2 + n**2))), split_su2),),
    ))

    tmpl = _t(0, ("123", a), ("234", eta), ("456", eps))
    split_so2 = (
        (1, (_v((1, a), (4, eta)), _e(2), _e(3))),
        (1, (_v((4, eps)), _e(5), _e(6))),
    )
    for name, t, label in (("e6-p3-so2", 0, "E^6"), ("m6-p3-so2", 1, "E^(1,5)")):
        out.append(AnsatzCase(
            name, f"3-forms on {label}, i_1 F of rank two, (456) rotation applied",
            6, t, 3, tmpl, (eta * eps,),
            (Branch("eta = 0", ((eta, 0),), split_so2), Branch("epsilon = 0", ((eps, 0),), split_so2)),
        ))

    # seven dimensions
    tmpl = _t(0, ("127", a), ("347", b), ("567", c))
    out.append(AnsatzCase(
        "e7-p3-so6", "3-forms on E^7, i_7 F generic in so(6): two coefficients must vanish",
        7, 0, 3, tmpl, (a * b, a * c, b * c),
        (Branch("alpha only", ((b, 0), (c, 0))), Branch("beta only", ((a, 0), (c, 0))),
         Branch("gamma only", ((a, 0), (b, 0)))),
        kind="contradiction",
    ))
    tmpl = _t(0, ("127", a), ("347", b), ("567", b), ("734", dl), ("756", -dl))
    out.append(AnsatzCase(
        "e7-p3-su2u1", "3-forms on E^7, i_7 F in su(2) x u(1), anti-selfdual rotation applied",
        7, 0, 3, tmpl, (a * b, a * dl, b**2 - dl**2),
        (Branch("alpha only", ((b, 0), (dl, 0))), Branch("delta = beta", ((a, 0), (dl, b))),
         Branch("delta = -beta", ((a, 0), (dl, -b)))),
        kind="contradiction",
    ))
    tmpl = _t(0, ("127", a), ("347", a), ("567", a))
    out.append(AnsatzCase(
        "e7-p3-u1diag", "3-forms on E^7, i_7 F in the diagonal u(1): the relation forces alpha = 0",
        7, 0, 3, tmpl, (a,), (Branch("alpha = 0", ((a, 0),)),), kind="contradiction",
    ))
    omega1 = (("135", 1), ("146", -1), ("236", -1), ("245", -1))
    tmpl = _t(0, ("127", a), ("347", b), ("567", -a - b)) + _t(0, *[(s, dl * v) for s, v in omega1])
    out.append(AnsatzCase(
        "e7-p3-su3", "3-forms on E^7, i_7 F in su(3) plus the invariant 3-form Omega_1",
        7, 0, 3, tmpl,
        (a * b + 2 * dl**2, b * (-a - b) + 2 * dl**2, (-a - b) * a + 2 * dl**2),
        (Branch("collapse", ((a, 0), (b, 0), (dl, 0))),), kind="contradiction",
    ))
    e1 = S("epsilon1")
    tmpl = _t(0, ("127", a), ("347", b), ("345", e1))
    out.append(AnsatzCase(
        "e7-p3-so4", "3-forms on E^7, i_7 F generic in so(4), (56) and (57) rotations applied",
        7, 0, 3, tmpl, (a * b,),
        (Branch("alpha = 0", ((a, 0),), ((1, (_v((7, b), (5, e1)), _e(3), _e(4))),)),
         Branch("beta = 0", ((b, 0),), ((1, (_v((1, a)), _e(2), _e(7))), (1, (_v((3, e1)), _e(4), _e(5)))))),
    ))
    d_, h1, th1 = S("delta eta1 theta1")
    u2, u3, v2 = S("u2 u3 v2")
    v3 = -(a**2 + u2 * v2) / u3
    tmpl = _t(0, ("712", a), ("512", d_ + h1), ("612", eps + th1), ("734", a), ("534", d_ - h1), ("634", eps - th1))
    out.append(AnsatzCase(
        "e7-p3-su2", "3-forms on E^7, i_7 F selfdual in so(4), eta_1 nonzero branch",
        7, 0, 3, tmpl, (a**2 + d_**2 - h1**2 + eps**2 - th1**2,),
        (Branch(
            "orthogonal pair",
            ((d_, (u2 + v2) / 2), (h1, (u2 - v2) / 2), (eps, (u3 + v3) / 2), (th1, (u3 - v3) / 2)),
            ((1, (_v((7, a), (5, d_ + h1), (6, eps + th1)), _e(1), _e(2))),
             (1, (_v((7, a), (5, d_ - h1), (6, eps - th1)), _e(3), _e(4)))),
        ),),
    ))
    s1, t1, t2, t3 = S("sigma1 tau1 tau2 tau3")
    tmpl = _t(0, ("127", a), ("123", s1), ("345", t1), ("346", t2), ("456", t3))
    out.append(AnsatzCase(
        "e7-p3-so2", "3-forms on E^7, i_7 F of rank two, (3456) rotation applied",
        7, 0, 3, tmpl, (s1 * t1, s1 * t2),
        (Branch("tau_1 = tau_2 = 0", ((t1, 0), (t2, 0)),
                ((1, (_v((7, a), (3, s1)), _e(1), _e(2))), (1, (_v((4, t3)), _e(5), _e(6))))),
         Branch("sigma_1 = 0", ((s1, 0),))),
    ))

    # five dimensions: both generic and selfdual contractions collapse
    tmpl = _t(0, ("123", a), ("145", b))
    for name, t, label in (("e5-p3-so4", 0, "E^5"), ("m5-p3-so4", 1, "E^(1,4)")):
        out.append(AnsatzCase(
            name, f"3-forms on {label}, i_1 F generic in so(4): alpha beta = 0",
            5, t, 3, tmpl, (a * b,),
            (Branch("alpha = 0", ((a, 0),)), Branch("beta = 0", ((b, 0),))), kind="contradiction",
        ))
    tmpl = _t(0, ("123", a), ("145", a))
    out.append(AnsatzCase(
        "e5-p3-su2", "3-forms on E^5, i_1 F selfdual: alpha^2 = 0",
        5, 0, 3, tmpl, (a**2,), (Branch("alpha = 0", ((a, 0),)),), kind="contradiction",
    ))
    return out


# ---------------------------------------------------------------- p = 4


def _p4_cases() -> list:
    a, b, c, dl, eps, eta = S("alpha beta gamma delta epsilon eta")
    m1, m2, m3 = S("mu1 mu2 mu3")
    out = []

    tmpl = _t(0, ("1234", a), ("1256", b), ("1278", c), ("3456", dl), ("3478", eps), ("5678", eta))
    pairs = ((a, eta), (b, eps), (c, dl))
    allp = (a, b, c, dl, eps, eta)
    out.append(AnsatzCase(
        "e8-p4-so6", "4-forms on E^8, i_12 F generic in so(6): only orthogonal pairs survive",
        8, 0, 4, tmpl,
        (a * b, a * c, b * c, a * dl, b * dl, a * eps, c * eps, dl * eps, b * eta, c * eta, dl * eta, eps * eta),
        tuple(Branch(f"{x} and {y}", tuple((z, 0) for z in allp if z not in (x, y))) for x, y in pairs),
        kind="contradiction",
    ))

    lam = S("lambda1:4")
    om1 = (("357", 1), ("368", -1), ("458", -1), ("467", -1))
    om2 = (("358", 1), ("367", 1), ("457", 1), ("468", -1))
    tmpl = _t(0, ("1234", a), ("1256", b), ("1278", -a - b), ("3456", m1), ("3478", m2), ("5678", m3))
    tmpl += tuple(_wedge1(1, om1, lam[0]) + _wedge1(1, om2, lam[1]) + _wedge1(2, om1, lam[2]))
    mus = (m1, m2, m3)
    zero_rest = tuple((z, 0) for z in (a, b) + lam)
    out.append(AnsatzCase(
        "e8-p4-su3", "4-forms on E^8, i_12 F in su(3) with the holomorphic 3-form terms",
        8, 0, 4, tmpl, (a, b) + lam + (m1 * m2, m1 * m3, m2 * m3),
        tuple(Branch(f"{x} only", zero_rest + tuple((z, 0) for z in mus if z is not x)) for x in mus),
        kind="contradiction",
    ))
    tmpl = _t(0, ("1234", a), ("1256", a), ("1278", c), ("3456", m1), ("3478", m2), ("5678", m3))
    out.append(AnsatzCase(
        "e8-p4-su2u1", "4-forms on E^8, i_12 F in su(2) x u(1): alpha must vanish",
        8, 0, 4, tmpl, (a, c * m2, c * m3, m1 * m2, m1 * m3, m2 * m3),
        (Branch("gamma and mu1", ((a, 0), (m2, 0), (m3, 0))),
         Branch("mu2 only", ((a, 0), (c, 0), (m1, 0), (m3, 0))),
         Branch("mu3 only", ((a, 0), (c, 0), (m1, 0), (m2, 0)))),
        kind="contradiction",
    ))
    tmpl = _t(0, ("1234", a), ("1256", a), ("1278", a), ("3456", m1), ("3478", m2), ("5678", m3))
    out.append(AnsatzCase(
        "e8-p4-u1diag", "4-forms on E^8, i_12 F in the diagonal u(1): alpha must vanish",
        8, 0, 4, tmpl, (a, m1 * m2, m1 * m3, m2 * m3),
        tuple(Branch(f"{x} only", ((a, 0),) + tuple((z, 0) for z in mus if z is not x)) for x in mus),
        kind="contradiction",
    ))

    n1, n2, n3 = S("nu1 nu2 nu3")
    tmpl = _t(0, ("1234", a), ("1256", b), ("5678", m3), ("3478", m2), ("1348", n1 * a), ("2567", n1 * m3),
              ("1567", n2 * b), ("2348", -n2 * m2), ("1568", n3 * b), ("2347", n3 * m2))
    out.append(AnsatzCase(
        "e8-p4-so4", "4-forms on E^8, i_12 F generic in so(4)",
        8, 0, 4, tmpl, (n1 * n3 + 1, m3 * m2 - a * b),
        (Branch("nu3 and mu3 solved", ((n3, -1 / n1), (m3, a * b / m2)), (
            (1, (_v((1, a), (7, -m2 * n3), (8, m2 * n2)), _v((2, 1), (8, n1)), _e(3), _e(4))),
            (1, (_v((1, b), (7, -m3 * n1)), _v((2, 1), (7, n2), (8, n3)), _e(5), _e(6))),
        )),),
    ))

    l2, l3, l4 = S("lambda2 lambda3 lambda4")
    tmpl = _t(0, ("1234", 1), ("1256", 1), ("3478", m2), ("5678", m3), ("1348", l2), ("2567", l2 * m3),
              ("1567", l3), ("2348", -l3 * m2), ("1568", l4), ("2347", l4 * m2))
    out.append(AnsatzCase(
        "e8-p4-su2", "4-forms on E^8, i_12 F selfdual, mu2 != mu3 branch",
        8, 0, 4, tmpl, (l2 * l4 + 1, m2 * m3 - 1),
        (Branch("lambda4 and mu3 solved", ((l4, -1 / l2), (m3, 1 / m2)), (
            (1, (_v((1, 1), (7, -m2 * l4), (8, m2 * l3)), _v((2, 1), (8, l2)), _e(3), _e(4))),
            (1, (_v((1, 1), (7, -m3 * l2)), _v((2, 1), (7, l3), (8, l4)), _e(5), _e(6))),
        )),),
    ))

    s1, s3, s4 = S("sigma1 sigma3 sigma4")
    tmpl = _t(0, ("1234", 1), ("1256", 1), ("3478", m2), ("5678", m2),
              ("1348", l2), ("2567", l2 * m2), ("1567", l3), ("2348", -l3 * m2), ("1568", l4), ("2347", l4 * m2),
              ("1357", s1), ("1467", s1), ("2358", s1 * m2), ("2468", s1 * m2),
              ("1358", s3), ("1468", s3), ("2357", -s3 * m2), ("2467", -s3 * m2),
              ("1368", s4), ("1458", -s4), ("2367", -s4 * m2), ("2457", s4 * m2))
    branches = []
    for sign in (1, -1):
        branches.append(Branch(f"mu2 = {sign}, sigma4 = 0", (
            (m2, sign), (s4, 0), (l4, (s1**2 + s3**2 - 1) / l2), (l3, ((s1**2 + s3**2 - 1) / l2 - l2) * s1 / s3))))
        branches.append(Branch(f"mu2 = {sign}, sigma1 = lambda3 = 0", (
            (m2, sign), (s1, 0), (l3, 0), (l4, (s3**2 + s4**2 - 1) / l2))))
    out.append(AnsatzCase(
        "e8-p4-su2-equal", "4-forms on E^8, i_12 F selfdual, mu2 = mu3 branch",
        8, 0, 4, tmpl,
        (m2**2 - 1, l3 * s4, s1 * s4, (l2 - l4) * s1 + l3 * s3, s1**2 + s3**2 + s4**2 - 1 - l2 * l4),
        tuple(branches),
    ))

    s2, s5, s6 = S("sigma2 sigma5 sigma6")
    tmpl = _t(0, ("1234", 1), ("3456", m1), ("1345", s1), ("1346", s2), ("2345", s5), ("2346", s6))
    out.append(AnsatzCase(
        "e8-p4-so2-mu1", "4-forms on E^8, i_12 F of rank two, mu1 nonzero branch",
        8, 0, 4, tmpl, (s1 * s6 - s2 * s5 - m1,),
        (Branch("mu1 solved", ((m1, s1 * s6 - s2 * s5),), (
            (1, (_v((1, 1), (5, -s5), (6, -s6)), _v((2, 1), (5, s1), (6, s2)), _e(3), _e(4))),
        )),),
        kind="simple",
    ))
    l1, l5, l6 = S("lambda1 lambda5 lambda6")
    cc = S("c")
    tmpl = _t(0, ("1234", 1), ("1347", l1), ("1348", l2), ("2347", l5), ("2348", l6),
              ("1345", s1), ("1346", s2), ("2345", s5), ("2346", s6))
    out.append(AnsatzCase(
        "e8-p4-so2-mu0", "4-forms on E^8, i_12 F of rank two, mu1 = mu2 = mu3 = 0 branch",
        8, 0, 4, tmpl,
        (l2 * l5 - l1 * l6, l1 * s5 - l5 * s1, l1 * s6 - l5 * s2, s2 * s5 - s1 * s6, l6 * s2 - l2 * s6,
         l6 * s1 - l2 * s5),
        (Branch("proportional rows", ((s5, cc * s1), (s6, cc * s2), (l5, cc * l1), (l6, cc * l2)), (
            (1, (_v((1, 1), (5, -s5), (6, -s6), (7, -l5), (8, -l6)),
                 _v((2, 1), (5, s1), (6, s2), (7, l1), (8, l2)), _e(3), _e(4))),
        )),),
        kind="simple",
    ))
    tmpl = _t(0, ("1234", 1), ("5678", m3), ("1348", l2), ("2567", l2 * m3), ("2347", l5), ("1568", l5 * m3),
              ("2348", l6), ("1567", -l6 * m3), ("1346", s2), ("2578", s2 * m3), ("2345", s5), ("1678", s5 * m3),
              ("2346", s6), ("1578", -s6 * m3))
    out.append(AnsatzCase(
        "e8-p4-so2-mu3", "4-forms on E^8, i_12 F of rank two, mu3 nonzero branch",
        8, 0, 4, tmpl, (l2 * l5, l2 * s5, s2 * l5, s2 * s5, l6 * s2 - l2 * s6),
        (Branch("lambda2 nonzero", ((l5, 0), (s5, 0), (s6, l6 * s2 / l2)), (
            (1, (_v((1, 1), (6, -s6), (8, -l6)), _v((2, 1), (6, s2), (8, l2)), _e(3), _e(4))),
            (m3, (_e(5), _v((6, 1), (1, s6), (2, -s2)), _e(7), _v((8, 1), (1, l6), (2, -l2)))),
        )),
         Branch("lambda2 = 0, sigma2 nonzero", ((l2, 0), (l5, 0), (s5, 0), (l6, 0)), (
             (1, (_v((1, 1), (6, -s6)), _v((2, 1), (6, s2)), _e(3), _e(4))),
             (m3, (_e(5), _v((6, 1), (1, s6), (2, -s2)), _e(7), _e(8))),
         )),
         Branch("lambda2 = sigma2 = 0", ((l2, 0), (s2, 0)), (
             (1, (_v((1, 1), (5, -s5), (6, -s6), (7, -l5), (8, -l6)), _e(2), _e(3), _e(4))),
             (m3, (_v((5, 1), (1, s5)), _v((6, 1), (1, s6)), _v((7, 1), (1, l5)), _v((8, 1), (1, l6)))),
         ))),
    ))

    for d in (6, 7):
        tmpl = _t(0, ("1234", a), ("1256", b), ("3456", c))
        out.append(AnsatzCase(
            f"e{d}-p4-so4", f"4-forms on E^{d}, i_12 F generic in so(4): pairwise products vanish",
            d, 0, 4, tmpl, (a * b, a * c, b * c),
            (Branch("alpha only", ((b, 0), (c, 0))), Branch("beta only", ((a, 0), (c, 0))),
             Branch("gamma only", ((a, 0), (b, 0)))),
            kind="contradiction",
        ))
    mu = S("mu")
    tmpl = _t(0, ("1234", a), ("1256", a), ("3456", mu))
    out.append(AnsatzCase(
        "e6-p4-su2", "4-forms on E^6, i_12 F selfdual: alpha^2 = 0",
        6, 0, 4, tmpl, (a,), (Branch("alpha = 0", ((a, 0),)),), kind="contradiction",
    ))
    return out


# ---------------------------------------------------------------- p = 5, lorentzian d = 10


def _det3(x, y, z):
    return sp.Matrix([x, y, z]).det()


def _p5_cases() -> list:
    """Lorentzian 5-forms in ten dimensions; written with indices e0..e9, shifted by one."""
    sh = 1
    out = []
    a, b = S("alpha beta")
    m1, m2, m3 = S("mu1 mu2 mu3")
    L = S("lambda1:10")
    R = S("rho1:10")
    Sg = S("sigma1:10")
    T = S("tau1:10")

    def vec(*pairs):
        return tuple((i + sh, sp.sympify(c)) for i, c in pairs)

    def e(i):
        return ((i + sh, sp.Integer(1)),)

    # so(4): everything in terms of lambda_1..9 and mu3
    names_l = ["01347", "02347", "12347", "01348", "02348", "12348", "01349", "02349", "12349"]
    names_s = ["01567", "02567", "12567", "01568", "02568", "12568", "01569", "02569", "12569"]
    names_r = ["03478", "13478", "23478", "03479", "13479", "23479", "03489", "13489", "23489"]
    names_t = ["05678", "15678", "25678", "05679", "15679", "25679", "05689", "15689", "25689"]
    tmpl = _t(sh, ("01234", 1), ("01256", b), ("34789", m2), ("56789", m3))
    tmpl += _t(sh, *zip(names_l, L), *zip(names_s, Sg), *zip(names_r, R), *zip(names_t, T))
    l1, l2, l3, l4, l5, l6, l7, l8, l9 = L
    rho_vals = (l1 * l5 - l2 * l4, l1 * l6 - l3 * l4, l2 * l6 - l3 * l5, l1 * l8 - l2 * l7, l1 * l9 - l3 * l7,
                l2 * l9 - l3 * l8, l4 * l8 - l5 * l7, l4 * l9 - l6 * l7, l5 * l9 - l6 * l8)
    tau_vals = (m3 * l9, m3 * l8, -m3 * l7, -m3 * l6, -m3 * l5, m3 * l4, m3 * l3, m3 * l2, -m3 * l1)
    r1, r2, r3, r4, r5, r6, r7, r8, r9 = R
    sig_vals = (-m3 * r9, m3 * r8, m3 * r7, m3 * r6, -m3 * r5, -m3 * r4, -m3 * r3, m3 * r2, m3 * r1)
    mu2_val = l1 * l5 * l9 - l3 * l5 * l7 + l2 * l6 * l7 + l3 * l4 * l8 - l1 * l6 * l8 - l2 * l4 * l9
    # sigma depends on rho, so rho comes first
    deps = tuple(zip(R, rho_vals)) + tuple(zip(T, tau_vals)) + tuple(zip(Sg, sig_vals)) + ((m2, mu2_val),)
    th0 = vec((0, 1), (7, l3), (8, l6), (9, l9))
    th1 = vec((1, 1), (7, -l2), (8, -l5), (9, -l8))
    th2 = vec((2, 1), (7, l1), (8, l4), (9, l7))
    th7 = vec((7, 1), (0, l3), (1, l2), (2, -l1))
    th8 = vec((8, 1), (0, l6), (1, l5), (2, -l4))
    th9 = vec((9, 1), (0, l9), (1, l8), (2, -l7))
    out.append(AnsatzCase(
        "m10-p5-so4", "5-forms on E^(1,9), i_012 F generic in so(4), alpha = 1, mu1 = 0",
        10, 1, 5, tmpl, (b - m2 * m3,),
        (Branch("beta solved", ((b, mu2_val * m3),), (
            (1, (th0, th1, th2, e(3), e(4))),
            (m3, (e(5), e(6), th7, th8, th9)),
        )),),
        dependents=deps,
    ))

    # su(2), mu2 != mu3: F = e34 ^ G1 + e56 ^ G2
    lam, rho, sig = S("lambda1:7"), S("rho1:7"), S("sigma1:7")
    eta, phi, tau = S("eta2:8"), S("phi2:8"), S("tau2:8")
    l1, l2, l3, l4, l5, l6 = lam
    r1, r2, r3, r4, r5, r6 = rho
    s1, s2, s3, s4, s5, s6 = sig

    def g_terms(prefix, coeffs):
        return [("34" + blade if prefix == "34" else "56" + blade, c) for blade, c in coeffs]

    g1 = [("012", 1), ("789", m2), ("017", l1), ("018", l2), ("019", l3), ("027", r1), ("028", r2), ("029", r3),
          ("127", s1), ("128", s2), ("129", s3), ("078", eta[0]), ("079", eta[1]), ("089", eta[2]),
          ("178", phi[0]), ("179", phi[1]), ("189", phi[2]), ("278", tau[0]), ("279", tau[1]), ("289", tau[2])]
    g2 = [("012", 1), ("789", m3), ("017", l4), ("018", l5), ("019", l6), ("027", r4), ("028", r5), ("029", r6),
          ("127", s4), ("128", s5), ("129", s6), ("078", eta[3]), ("079", eta[4]), ("089", eta[5]),
          ("178", phi[3]), ("179", phi[4]), ("189", phi[5]), ("278", tau[3]), ("279", tau[4]), ("289", tau[5])]
    tmpl = _t(sh, *g_terms("34", g1), *g_terms("56", g2))
    deps = (
        (l4, m3 * (r3 * s2 - r2 * s3)), (l5, m3 * (r1 * s3 - r3 * s1)), (l6, m3 * (r2 * s1 - r1 * s2)),
        (r4, m3 * (l2 * s3 - l3 * s2)), (r5, m3 * (l3 * s1 - l1 * s3)), (r6, m3 * (l1 * s2 - l2 * s1)),
        (s4, m3 * (l2 * r3 - l3 * r2)), (s5, m3 * (l3 * r1 - l1 * r3)), (s6, m3 * (l1 * r2 - l2 * r1)),
        (eta[0], m2 * s6), (eta[1], -m2 * s5), (eta[2], m2 * s4),
        (eta[3], m3 * s3), (eta[4], -m3 * s2), (eta[5], m3 * s1),
        (tau[0], -m2 * l6), (tau[1], m2 * l5), (tau[2], -m2 * l4),
        (tau[3], -m3 * l3), (tau[4], m3 * l2), (tau[5], -m3 * l1),
        (phi[0], m2 * r6), (phi[1], -m2 * r5), (phi[2], m2 * r4),
        (phi[3], m3 * r3), (phi[4], -m3 * r2), (phi[5], m3 * r1),
    )
    det = _det3((l1, l2, l3), (r1, r2, r3), (s1, s2, s3))
    th0 = vec((0, 1), (7, s1), (8, s2), (9, s3))
    th1 = vec((1, 1), (7, -r1), (8, -r2), (9, -r3))
    th2 = vec((2, 1), (7, l1), (8, l2), (9, l3))
    th7 = vec((7, 1), (0, s1), (1, r1), (2, -l1))
    th8 = vec((8, 1), (0, s2), (1, r2), (2, -l2))
    th9 = vec((9, 1), (0, s3), (1, r3), (2, -l3))
    out.append(AnsatzCase(
        "m10-p5-su2", "5-forms on E^(1,9), i_012 F selfdual, mu2 != mu3 branch",
        10, 1, 5, tmpl, (m2 - det, m2 * m3 - 1),
        (Branch("mu2 and mu3 solved", ((m2, det), (m3, 1 / det)), (
            (1, (th0, th1, th2, e(3), e(4))),
            (m3, (e(5), e(6), th7, th8, th9)),
        )),),
        dependents=deps,
    ))

    # so(2) with mu1 != 0: F = e34 ^ G, G simple
    lam, sig, rho = S("lambda1:6"), S("sigma1:6"), S("rho1:6")
    l1, l2, _, _, l5 = lam
    s1, s2, _, _, s5 = sig
    r1, r2, _, _, r5 = rho
    ta1, ta4, ta7, ph1, ph4, ph7, et1, et4, et7 = S("tau1 tau4 tau7 phi1 phi4 phi7 eta1 eta4 eta7")
    g = [("012", 1), ("569", m1), ("015", l1), ("016", l2), ("019", l5), ("025", s1), ("026", s2), ("029", s5),
         ("125", r1), ("126", r2), ("129", r5), ("056", ta1), ("059", ta4), ("069", ta7),
         ("156", ph1), ("159", ph4), ("169", ph7), ("256", et1), ("259", et4), ("269", et7)]
    tmpl = _t(sh, *[("34" + bl, c) for bl, c in g])
    deps = (
        (ta1, l1 * s2 - l2 * s1), (ta4, l1 * s5 - l5 * s1), (ta7, l2 * s5 - l5 * s2),
        (ph1, l1 * r2 - l2 * r1), (ph4, l1 * r5 - l5 * r1), (ph7, l2 * r5 - l5 * r2),
        (et1, s1 * r2 - s2 * r1), (et4, s1 * r5 - s5 * r1), (et7, s2 * r5 - s5 * r2),
    )
    mu1_val = l5 * r2 * s1 - l2 * r5 * s1 - l5 * r1 * s2 + l1 * r5 * s2 + l2 * r1 * s5 - l1 * r2 * s5
    out.append(AnsatzCase(
        "m10-p5-so2-mu1", "5-forms on E^(1,9), i_012 F of rank two, mu1 nonzero branch",
        10, 1, 5, tmpl, (m1 - mu1_val,),
        (Branch("mu1 solved", ((m1, mu1_val),), (
            (1, (e(3), e(4), vec((0, 1), (5, r1), (6, r2), (9, r5)), vec((1, 1), (5, -s1), (6, -s2), (9, -s5)),
                 vec((2, 1), (5, l1), (6, l2), (9, l5)))),
        )),),
        dependents=deps, kind="simple",
    ))

    # so(2) with mu1 = mu2 = 0: F = e34 ^ G (+ mu3 F2)
    lam, sig, rho = S("lambda1:16"), S("sigma1:16"), S("rho1:16")
    tau, phi, eta = S("tau1:16"), S("phi1:16"), S("eta1:16")
    pairs5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    tail = ["5", "6", "7", "8", "9"]
    deps = []
    for n, (i, j) in enumerate(pairs5):
        deps.append((phi[n], lam[i] * rho[j] - lam[j] * rho[i]))
        deps.append((eta[n], sig[i] * rho[j] - sig[j] * rho[i]))
        deps.append((tau[n], lam[i] * sig[j] - lam[j] * sig[i]))
    minors = []
    for i, j, k in [(i, j, k) for i in range(5) for j in range(i + 1, 5) for k in range(j + 1, 5)]:
        minors.append(_det3((lam[i], lam[j], lam[k]), (rho[i], rho[j], rho[k]), (sig[i], sig[j], sig[k])))
    g = [("012", 1)]
    for n in range(5):
        g += [("01" + tail[n], lam[n]), ("02" + tail[n], sig[n]), ("12" + tail[n], rho[n])]
    for n, (i, j) in enumerate(pairs5):
        g += [("0" + tail[i] + tail[j], tau[n]), ("1" + tail[i] + tail[j], phi[n]), ("2" + tail[i] + tail[j], eta[n])]
    tmpl0 = _t(sh, *[("34" + bl, c) for bl, c in g])
    cx, cy = S("c d")
    rank2 = tuple((sig[n], cx * lam[n] + cy * rho[n]) for n in range(5))
    theta0 = vec((0, 1), *[(5 + n, rho[n]) for n in range(5)])
    theta1 = vec((1, 1), *[(5 + n, -sig[n]) for n in range(5)])
    theta2 = vec((2, 1), *[(5 + n, lam[n]) for n in range(5)])
    out.append(AnsatzCase(
        "m10-p5-so2-mu0", "5-forms on E^(1,9), i_012 F of rank two, mu1 = mu2 = mu3 = 0 branch",
        10, 1, 5, tmpl0, tuple(minors),
        (Branch("sigma in span of lambda and rho", rank2[:5], ((1, (e(3), e(4), theta0, theta1, theta2)),)),),
        dependents=tuple(deps), kind="simple",
    ))

    # mu3 != 0: the second part mu3 F2 with F2 as printed
    f2 = [("56789", 1),
          ("01567", -eta[9]), ("01568", eta[8]), ("01569", -eta[7]), ("01578", -eta[6]), ("01579", eta[5]),
          ("01589", -eta[4]), ("01678", eta[3]), ("01679", -eta[2]), ("01689", eta[1]), ("01789", -eta[0]),
          ("02567", phi[9]), ("02568", -phi[8]), ("02569", phi[7]), ("02578", phi[6]), ("02579", -phi[5]),
          ("02589", phi[4]), ("02678", -phi[3]), ("02679", phi[2]), ("02689", -phi[1]), ("02789", phi[0]),
          ("12567", tau[9]), ("12568", -tau[8]), ("12569", tau[7]), ("12578", tau[6]), ("12579", -tau[5]),
          ("12589", tau[4]), ("12678", -tau[3]), ("12679", tau[2]), ("12689", -tau[1]), ("12789", tau[0]),
          ("05678", rho[4]), ("05679", -rho[3]), ("05689", rho[2]), ("05789", -rho[1]), ("06789", rho[0]),
          ("15678", sig[4]), ("15679", -sig[3]), ("15689", sig[2]), ("15789", -sig[1]), ("16789", sig[0]),
          ("25678", -lam[4]), ("25679", lam[3]), ("25689", -lam[2]), ("25789", lam[1]), ("26789", -lam[0])]
    tmpl3 = tmpl0 + _t(sh, *[(bl, m3 * c) for bl, c in f2])
    thetas = [vec((5 + n, 1), (0, rho[n]), (1, sig[n]), (2, -lam[n])) for n in range(5)]
    out.append(AnsatzCase(
        "m10-p5-so2-mu3", "5-forms on E^(1,9), i_012 F of rank two, mu3 nonzero branch",
        10, 1, 5, tmpl3, tuple(minors),
        (Branch("sigma in span of lambda and rho", rank2[:5], (
            (1, (e(3), e(4), theta0, theta1, theta2)),
            (m3, tuple(thetas)),
        )),),
        dependents=tuple(deps),
    ))
    return out


def euclidean_probe(case: AnsatzCase) -> AnsatzCase:
    """The same family over the euclidean space of the same dimension.

    Used to test whether a lorentzian analysis carries over with the
    timelike sign flipped; differences are reported, not treated as
    failures.
    """
    return AnsatzCase(
        case.name.replace("m", "e", 1) + "-probe", case.citation + " (euclidean rerun)",
        case.dim, 0, case.degree, case.template, case.constraints, case.branches,
        case.dependents, case.kind, probe=True,
    )


@lru_cache(maxsize=1)
def builtin_cases() -> tuple:
    return tuple(_p3_cases() + _p4_cases() + _p5_cases())


def get_case(name: str) -> AnsatzCase:
    for case in builtin_cases():
        if case.name == name:
            return case
    for case in builtin_cases():
        if case.time_dims == 1 and case.dim == 10 and euclidean_probe(case).name == name:
            return euclidean_probe(case)
    raise KeyError(name)
