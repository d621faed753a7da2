import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import forms_on
from helpers import random_isometry
from orthoplucker.errors import AmbiguousCase, DegreeError, Unsupported
from orthoplucker.exterior import Form, MetricSpace, transform
from orthoplucker.normal_forms import NormalKind, case_slots, classify_case, skew_normal_form

E4, E6, M4 = MetricSpace(4), MetricSpace(6), MetricSpace(4, 1)


def two(space, *pairs):
    return Form(space, 2, {tuple(int(ch) for ch in k): c for k, c in pairs})


def scale(F):
    return max([1.0] + [abs(float(c)) for _, c in F.items()])


def test_euclidean_examples():
    nf = skew_normal_form(two(E4, ("12", 1), ("34", 2)))
    assert nf.kind is NormalKind.EUCLIDEAN_BLOCKS
    assert np.allclose(nf.angles, [2, 1], atol=1e-12)
    nf = skew_normal_form(two(E4, ("13", 1)))
    assert np.allclose(nf.angles, [1, 0], atol=1e-12)
    B = np.abs(nf.basis)
    assert np.allclose(B.sum(axis=0), 1) and np.allclose(B.sum(axis=1), 1)
    assert set(np.round(B, 12).ravel()) <= {0.0, 1.0}


def test_parabolic_example_matches_nilpotency_oracle():
    omega = two(M4, ("13", 1), ("23", 1))
    W = np.zeros((4, 4))
    for (i, j), c in omega.items():
        W[i - 1, j - 1], W[j - 1, i - 1] = float(c), -float(c)
    M = np.diag([-1.0, 1, 1, 1]) @ W
    assert np.allclose(np.linalg.matrix_power(M, 3), 0)
    assert not np.allclose(np.linalg.matrix_power(M, 2), 0)
    nf = skew_normal_form(omega)
    assert nf.kind is NormalKind.LORENTZIAN_PARABOLIC
    assert nf.residual <= 1e-9 and nf.isometry_error <= 1e-9


def test_lorentzian_kinds():
    assert skew_normal_form(two(M4, ("12", 3))).kind is NormalKind.LORENTZIAN_HYPERBOLIC
    assert skew_normal_form(two(M4, ("23", 3))).kind is NormalKind.LORENTZIAN_ELLIPTIC
    assert skew_normal_form(Form.zero(M4, 2)).kind is NormalKind.ZERO
    nf = skew_normal_form(two(M4, ("12", 3), ("34", 1)))
    assert nf.kind is NormalKind.LORENTZIAN_HYPERBOLIC
    assert np.allclose(nf.angles, [3, 1])


def test_refusals():
    with pytest.raises(Unsupported):
        skew_normal_form(two(MetricSpace(4, 2), ("12", 1)))
    with pytest.raises(DegreeError):
        skew_normal_form(Form.blade(E4, 1, 2, 3))


@pytest.mark.parametrize(
    "omega",
    [
        two(E4, ("12", 1), ("34", 2)),
        two(M4, ("12", 3), ("34", 1)),
        two(M4, ("23", 2)),
        two(M4, ("13", 1), ("23", 1)),
    ],
)
def test_normal_form_to_decomposition(omega):
    G, D, ok = skew_normal_form(omega).to_decomposition()
    assert ok and len(D.parts) >= 1


def test_classify_examples():
    assert classify_case(two(E6, ("34", 2), ("56", 3)), (6, 3)) == "so(4)"
    assert classify_case(two(E6, ("34", 2), ("56", -2)), (6, 3)) == "su(2)"
    assert classify_case(two(E6, ("34", 2)), (6, 3)) == "so(2)"
    assert classify_case([Fraction(1), Fraction(2), Fraction(-3)], (8, 4)) == "su(3)"
    assert classify_case([1, 2, 4], (8, 4)) == "so(6)"
    assert classify_case([1, 1, 1], (8, 4)) == "u(1)-diagonal"
    assert classify_case([1, 1, 3], (8, 4)) == "su(2)xu(1)"
    assert case_slots(6, 3) == 2 and case_slots(8, 4) == 3


def test_classify_float_path_and_ambiguity():
    # overlapping blades force the float normal form; squared angles are
    # 5/2 +- sqrt(481)/10 by a sympy eigenvalue oracle, so generic
    rot = two(E6, ("34", Fraction(3, 5)), ("35", Fraction(4, 5)), ("56", 2))
    assert classify_case(rot, (6, 3)) == "so(4)"
    M = random_isometry(E6, random.Random(5))
    assert classify_case(transform(two(E6, ("34", 1), ("56", 1)), M), (6, 3)) == "su(2)"
    with pytest.raises(AmbiguousCase) as err:
        classify_case([2, 1, 1], (8, 4))
    assert set(err.value.candidates) == {"su(3)", "su(2)xu(1)"}


# ---------------------------------------------------------------- properties


@given(st.data())
def test_reconstruction_and_isometry(data):
    d = data.draw(st.integers(2, 6))
    space = MetricSpace(d, data.draw(st.integers(0, 1)))
    omega = data.draw(forms_on(space, 2, max_terms=6))
    nf = skew_normal_form(omega)
    tol = 1e-9 * scale(omega)
    assert nf.residual <= tol
    assert nf.isometry_error <= 1e-9
    if space.time_dims == 0:
        assert list(nf.angles) == sorted(nf.angles, reverse=True)
        assert all(a >= 0 for a in nf.angles)


@given(st.data())
def test_euclidean_angles_are_isometry_invariant(data):
    space = MetricSpace(data.draw(st.integers(2, 6)))
    omega = data.draw(forms_on(space, 2, max_terms=6))
    M = random_isometry(space, random.Random(data.draw(st.integers(0, 2**32))))
    a = skew_normal_form(omega).angles
    b = skew_normal_form(transform(omega, M)).angles
    assert np.allclose(a, b, atol=1e-9 * scale(omega) * 10)


@given(st.data())
def test_normal_forms_split_into_orthogonal_simple_parts(data):
    space = MetricSpace(data.draw(st.integers(2, 6)), data.draw(st.integers(0, 1)))
    omega = data.draw(forms_on(space, 2, max_terms=6))
    G, D, ok = skew_normal_form(omega).to_decomposition()
    assert ok
