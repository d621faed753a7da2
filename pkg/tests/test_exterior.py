from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import forms_on, spaces, vectors_on
from orthoplucker.errors import DegreeError, SpaceMismatch
from orthoplucker.exterior import (
    Form,
    MetricSpace,
    Plane,
    Polyvector,
    contract,
    contract_blade,
    flat,
    form_inner,
    hodge,
    sharp,
    so_action,
    support_plane,
    volume_form,
    wedge,
)

E4, E6, M4, M3 = MetricSpace(4), MetricSpace(6), MetricSpace(4, 1), MetricSpace(3, 1)


def blade(space, idx, c=1):
    return Form.blade(space, *[int(ch) for ch in idx], coeff=c)


# ---------------------------------------------------------------- fixed examples


def test_metric_space_signs():
    assert MetricSpace(4, 1).metric_diag == (-1, 1, 1, 1)
    assert not MetricSpace(4, 1).outside_hypothesis
    assert MetricSpace(4, 2).outside_hypothesis


def test_wedge_examples():
    assert wedge(blade(E4, "1"), blade(E4, "2")) == blade(E4, "12")
    assert wedge(blade(E4, "12"), blade(E4, "12")).is_zero()
    w = blade(E4, "12") + blade(E4, "34")
    assert wedge(w, w) == blade(E4, "1234", 2)
    assert (blade(E4, "2") ^ blade(E4, "1")) == -blade(E4, "12")


def test_wedge_space_mismatch():
    with pytest.raises(SpaceMismatch):
        wedge(blade(E4, "1"), blade(M4, "2"))


def test_contraction_order_convention():
    xi = Polyvector(E4, 2, {(1, 2): 1})
    assert contract(blade(E4, "1234"), xi) == blade(E4, "34")
    assert contract_blade(blade(E4, "123"), (1,)) == blade(E4, "23")
    assert contract_blade(blade(E4, "12"), (3,)).is_zero()


def test_contraction_by_12_of_so4_ansatz():
    a, b = Fraction(2), Fraction(-5, 3)
    F = blade(E6, "1234", a) + blade(E6, "1256", b)
    assert contract_blade(F, (1, 2)) == blade(E6, "34", a) + blade(E6, "56", b)


def test_contraction_degree_error():
    with pytest.raises(DegreeError):
        contract(blade(E4, "1"), Polyvector(E4, 2, {(1, 2): 1}))


def test_sharp_flat():
    assert sharp(blade(E4, "1")) == Polyvector(E4, 1, {(1,): 1})
    assert sharp(blade(M4, "1")) == Polyvector(M4, 1, {(1,): -1})
    assert sharp(blade(M4, "2")) == Polyvector(M4, 1, {(2,): 1})


def test_form_inner_examples():
    assert form_inner(blade(E4, "12"), blade(E4, "12")) == 1
    assert form_inner(blade(M4, "12"), blade(M4, "12")) == -1
    assert form_inner(blade(E4, "12"), blade(E4, "34")) == 0
    with pytest.raises(DegreeError):
        form_inner(blade(E4, "12"), blade(E4, "1"))


def test_hodge_examples():
    assert hodge(blade(E4, "12")) == blade(E4, "34")
    assert hodge(blade(E4, "13")) == -blade(E4, "24")


def _hodge_oracle(F):
    """Solve alpha ^ G = <alpha, F> vol for G over all basis alpha (brute force)."""
    space, p = F.space, F.degree
    d = space.dim
    vol = volume_form(space)
    out = {}
    for comp in combinations(range(1, d + 1), d - p):
        # coefficient of e_comp in G is fixed by alpha = e_I with I the complement
        I = tuple(i for i in range(1, d + 1) if i not in comp)
        lhs = wedge(blade(space, "".join(map(str, I))), Form.blade(space, *comp))
        target = form_inner(Form.blade(space, *I), F) * vol
        if lhs.is_zero():
            continue
        ratio = target.component(*range(1, d + 1)) / lhs.component(*range(1, d + 1))
        if ratio:
            out[comp] = ratio
    return Form(space, d - p, out)


def test_hodge_e34_in_e6_frozen():
    # frozen from the brute-force oracle above
    assert _hodge_oracle(blade(E6, "34")) == blade(E6, "1256")
    assert hodge(blade(E6, "34")) == blade(E6, "1256")


@given(st.data())
def test_hodge_matches_brute_force_oracle(data):
    space = data.draw(spaces(2, 5))
    p = data.draw(st.integers(0, space.dim))
    F = data.draw(forms_on(space, p))
    assert hodge(F) == _hodge_oracle(F)


def test_so_action_examples():
    assert so_action(blade(E4, "12"), blade(E4, "13")) == -blade(E4, "23")
    assert so_action(blade(E4, "12"), blade(E4, "2")) == blade(E4, "1")
    assert so_action(blade(M4, "12"), blade(M4, "1")) == blade(M4, "2")
    with pytest.raises(DegreeError):
        so_action(blade(E4, "1"), blade(E4, "2"))


def test_support_plane_examples():
    assert support_plane(blade(E6, "123")).rank == 3
    assert support_plane(blade(E6, "123") + blade(E6, "456")).rank == 6
    P = support_plane(blade(E6, "123"))
    assert P.contains([1, 2, 3, 0, 0, 0]) and not P.contains([0, 0, 0, 1, 0, 0])


def test_plane_span_rank():
    assert Plane.span(E4, [[1, 1, 0, 0], [2, 2, 0, 0], [0, 0, 1, 0]]).rank == 2


# ---------------------------------------------------------------- properties


@given(st.data())
def test_graded_anticommutativity(data):
    space = data.draw(spaces(1, 6))
    p, q = data.draw(st.integers(0, space.dim)), data.draw(st.integers(0, space.dim))
    F, G = data.draw(forms_on(space, p)), data.draw(forms_on(space, q))
    sign = -1 if (p * q) % 2 else 1
    assert wedge(F, G) == wedge(G, F) * sign


@given(st.data())
def test_wedge_associative(data):
    space = data.draw(spaces(1, 6))
    F, G, H = (data.draw(forms_on(space, data.draw(st.integers(0, 2)))) for _ in range(3))
    assert wedge(wedge(F, G), H) == wedge(F, wedge(G, H))


@given(st.data())
def test_contraction_is_antiderivation(data):
    space = data.draw(spaces(2, 6))
    p, q = data.draw(st.integers(1, 3)), data.draw(st.integers(0, 2))
    F, G = data.draw(forms_on(space, p)), data.draw(forms_on(space, q))
    X = Polyvector(space, 1, {(i + 1,): c for i, c in enumerate(data.draw(vectors_on(space)))})
    lhs = contract(wedge(F, G), X)
    sign = -1 if p % 2 else 1
    rhs = wedge(contract(F, X), G)
    if q:
        rhs = rhs + wedge(F, contract(G, X)) * sign
    assert lhs == rhs


@given(st.data())
def test_so_action_is_derivation(data):
    space = data.draw(spaces(2, 6))
    omega = data.draw(forms_on(space, 2))
    F, G = data.draw(forms_on(space, data.draw(st.integers(0, 2)))), data.draw(forms_on(space, 1))
    lhs = so_action(omega, wedge(F, G))
    rhs = wedge(so_action(omega, F), G) + wedge(F, so_action(omega, G))
    assert lhs == rhs


@given(st.data())
def test_so_action_skew(data):
    space = data.draw(spaces(2, 6))
    p = data.draw(st.integers(1, min(3, space.dim)))
    omega = data.draw(forms_on(space, 2))
    F, G = data.draw(forms_on(space, p)), data.draw(forms_on(space, p))
    assert form_inner(so_action(omega, F), G) + form_inner(F, so_action(omega, G)) == 0


@given(st.data())
def test_hodge_defining_identity(data):
    space = data.draw(spaces(1, 6))
    p = data.draw(st.integers(0, space.dim))
    a, b = data.draw(forms_on(space, p)), data.draw(forms_on(space, p))
    assert wedge(a, hodge(b)) == volume_form(space) * form_inner(a, b)


@given(st.data())
def test_sharp_flat_round_trip(data):
    space = data.draw(spaces(1, 6))
    a = data.draw(forms_on(space, 1))
    assert flat(sharp(a)) == a
