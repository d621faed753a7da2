import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from conftest import forms_on

from orthoplucker.decomposition import (
    Decomposition,
    Indeterminate,
    decompose,
    gram_operator,
    plane_orthogonal,
    simple_part,
    verify_orthogonal_sum,
)
from orthoplucker.errors import RelationViolated, SpaceMismatch
from orthoplucker.exterior import Form, MetricSpace, Plane, wedge
from orthoplucker.harness.trials import random_orthogonal_sum
from orthoplucker.lie import su3_form
from orthoplucker.plucker import is_simple

E6, M6 = MetricSpace(6), MetricSpace(6, 1)


def e(space, *idx_coeff):
    out = None
    for idx, c in idx_coeff:
        b = Form.blade(space, *[int(ch) for ch in idx], coeff=c)
        out = b if out is None else out + b
    return out


def parts_of(*forms):
    return Decomposition(tuple(simple_part(f) for f in forms))


def test_verify_examples():
    F = e(E6, ("123", 1), ("456", 1))
    assert verify_orthogonal_sum(F, parts_of(e(E6, ("123", 1)), e(E6, ("456", 1))))
    G = e(E6, ("123", 1), ("345", 1))
    assert not verify_orthogonal_sum(G, parts_of(e(E6, ("123", 1)), e(E6, ("345", 1))))


def test_verify_null_overlap():
    n = Form.from_vector(M6, [1, 1, 0, 0, 0, 0])
    A = wedge(wedge(n, Form.blade(M6, 3)), Form.blade(M6, 4))
    B = wedge(wedge(n, Form.blade(M6, 5)), Form.blade(M6, 6))
    assert verify_orthogonal_sum(A + B, parts_of(A, B))


def test_verify_rejects_wrong_sum_and_space():
    F = e(E6, ("123", 1), ("456", 1))
    assert not verify_orthogonal_sum(F, parts_of(e(E6, ("123", 1))))
    with pytest.raises(SpaceMismatch):
        verify_orthogonal_sum(F, parts_of(Form.blade(M6, 1, 2, 3)))


def test_plane_orthogonal_examples():
    E3 = MetricSpace(3)
    assert plane_orthogonal(Plane.span(E3, [[1, 0, 0], [0, 1, 0]]), Plane.span(E3, [[0, 0, 1]]))
    M3 = MetricSpace(3, 1)
    assert plane_orthogonal(Plane.span(M3, [[1, 1, 0]]), Plane.span(M3, [[1, 1, 0], [0, 0, 1]]))
    assert not plane_orthogonal(Plane.span(E3, [[1, 0, 0]]), Plane.span(E3, [[1, 0, 0]]))


def test_gram_examples():
    T = gram_operator(e(E6, ("123", 1))).matrix
    assert [T[i][i] for i in range(6)] == [1, 1, 1, 0, 0, 0]
    T = gram_operator(e(E6, ("123", 2), ("456", 3))).matrix
    assert [list(r) for r in T] == [[4 * (i == j) if i < 3 else 9 * (i == j) for j in range(6)] for i in range(6)]


def _gram_oracle(F):
    """Contract the full antisymmetric component tensor of F with itself, Euclidean only."""
    d, p = F.space.dim, F.degree
    full = {}
    for key, c in F.items():
        for perm in permutations(range(p)):
            sign = Permutation(list(perm)).signature()
            full[tuple(key[k] for k in perm)] = sign * sp.Rational(c.numerator, c.denominator)
    M = sp.zeros(d, d)
    for idx_a, ca in full.items():
        for idx_b, cb in full.items():
            if idx_a[1:] == idx_b[1:]:
                M[idx_a[0] - 1, idx_b[0] - 1] += ca * cb
    return M / sp.factorial(p - 1)


def test_gram_of_so4_split_is_scalar():
    # frozen from the sympy oracle: both summands have equal norm, so T = 2 I
    F = e(E6, ("123", 1), ("145", 1), ("236", 1), ("456", -1))
    assert _gram_oracle(F) == 2 * sp.eye(6)
    T = gram_operator(F)
    assert T.is_symmetric()
    assert [list(r) for r in T.matrix] == [[2 * (i == j) for j in range(6)] for i in range(6)]


@given(st.data())
def test_gram_matches_oracle_euclidean(data):
    space = MetricSpace(data.draw(st.integers(3, 6)))
    F = data.draw(forms_on(space, data.draw(st.integers(1, 3))))
    M = _gram_oracle(F)
    T = gram_operator(F).matrix
    assert all(M[i, j] == T[i][j] for i in range(space.dim) for j in range(space.dim))


def test_decompose_examples():
    D = decompose(e(E6, ("123", 1), ("456", 1)))
    assert isinstance(D, Decomposition) and len(D.parts) == 2
    D = decompose(e(E6, ("123", 5)))
    assert isinstance(D, Decomposition) and len(D.parts) == 1
    assert verify_orthogonal_sum(e(E6, ("123", 5)), D)
    F = e(E6, ("123", 1), ("145", 1), ("236", 1), ("456", -1))
    D = decompose(F)
    assert isinstance(D, Decomposition) and verify_orthogonal_sum(F, D)
    expected = {
        wedge(wedge(Form.from_vector(E6, [1, 0, 0, 0, 0, 1]), Form.blade(E6, 2)), Form.blade(E6, 3)),
        wedge(wedge(Form.from_vector(E6, [1, 0, 0, 0, 0, -1]), Form.blade(E6, 4)), Form.blade(E6, 5)),
    }
    assert {p.form for p in D.parts} == expected


def test_decompose_refuses_relation_violation():
    with pytest.raises(RelationViolated):
        decompose(e(E6, ("123", 1), ("145", 1), ("236", 1), ("456", 1)))


def test_su3_is_indeterminate_by_dimension():
    res = decompose(su3_form())
    assert isinstance(res, Indeterminate) and res.dimension_bound and res.support_rank == 8


@given(st.sampled_from([(6, 3, 0), (6, 3, 1), (7, 3, 0), (8, 4, 0)]), st.integers(0, 2**32))
def test_decompose_is_sound(dpt, seed):
    d, p, t = dpt
    F, _, _ = random_orthogonal_sum(MetricSpace(d, t), p, random.Random(seed), 4)
    res = decompose(F, seed=seed)
    if isinstance(res, Decomposition):
        assert verify_orthogonal_sum(F, res)
        assert all(is_simple(part.form) for part in res.parts)


@given(st.integers(0, 2**32))
def test_decompose_finds_euclidean_coordinate_splits(seed):
    # rational-norm factors: blocks of coordinate vectors with random scales
    rng = random.Random(seed)
    perm = rng.sample(range(1, 7), 6)
    a, b = Fraction(rng.randint(1, 9), rng.randint(1, 9)), Fraction(rng.randint(1, 9), rng.randint(1, 9))
    F = Form.blade(E6, *perm[:3], coeff=a) + Form.blade(E6, *perm[3:], coeff=b)
    res = decompose(F)
    assert isinstance(res, Decomposition) and verify_orthogonal_sum(F, res)


@pytest.mark.slow
@pytest.mark.parametrize("d, p", [(6, 3), (7, 3), (8, 4), (10, 5)])
def test_decompose_is_complete_on_euclidean_sums(d, p):
    # integer spanning vectors make both summand norms, hence the Gram spectrum, rational
    rng = random.Random(d * 100 + p)
    space = MetricSpace(d)
    missed = []
    for i in range(200):
        F = random_orthogonal_sum(space, p, rng, 3)[0]
        res = decompose(F, seed=i)
        if not (isinstance(res, Decomposition) and verify_orthogonal_sum(F, res)):
            missed.append(i)
    assert missed == []
