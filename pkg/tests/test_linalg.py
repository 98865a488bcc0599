"""Field and matrix kernel, checked against enumeration oracles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idxloc.linalg import (
    FqMatrix,
    PrimeField,
    null_space_basis,
    rank,
    rref,
    solve_in_span,
    unit_vector,
)

from helpers import oracle_null_space, oracle_rank, oracle_solve_in_span


def test_prime_field_rejects_composites():
    PrimeField(2)
    PrimeField(13)
    for bad in (0, 1, 4, 6, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert f.add(3, 4) == 2
    assert f.sub(1, 3) == 3
    assert f.mul(2, 4) == 3
    assert f.neg(2) == 3
    for a in range(1, 5):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_matrix_validation():
    with pytest.raises(ValueError):
        FqMatrix(2, 2, 4, (0, 1, 1, 0))  # composite modulus
    with pytest.raises(ValueError):
        FqMatrix(2, 2, 3, (0, 1, 1))  # wrong entry count
    with pytest.raises(ValueError):
        FqMatrix(1, 2, 3, (0, 3))  # entry out of range


def test_rank_identity():
    assert rank(FqMatrix.identity(3, 2)) == 3


def test_rank_duplicate_rows():
    assert rank(FqMatrix.from_rows([[1, 1], [1, 1]], 2)) == 1


def test_rank_cycle_encoder_rows():
    # Rows of the length-3 encoder for the 4-receiver cycle instance.
    m = FqMatrix.from_rows([[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
    assert oracle_rank(m) == 3
    assert rank(m) == 3


def test_rank_equals_transpose_rank():
    m = FqMatrix.from_rows([[1, 2, 0], [2, 4, 0]], 5)
    assert rank(m) == rank(m.transpose()) == 1


def test_null_space_full_rank_is_empty():
    assert null_space_basis(FqMatrix.identity(3, 3)) == []


def test_null_space_two_equations():
    m = FqMatrix.from_rows([[1, 1, 0], [0, 1, 1]], 2)
    assert oracle_null_space(m) == {(0, 0, 0), (1, 1, 1)}
    assert null_space_basis(m) == [(1, 1, 1)]


def test_null_space_zero_matrix():
    basis = null_space_basis(FqMatrix.zeros(2, 2, 2))
    assert len(basis) == 2


def test_solve_in_span_standard_basis():
    gens = [unit_vector(3, i) for i in range(3)]
    assert solve_in_span(gens, (1, 0, 1), 2) == (1, 0, 1)


def test_solve_in_span_two_generators():
    gens = [(1, 1, 0), (0, 1, 1)]
    assert oracle_solve_in_span(gens, (1, 0, 1), 2) == (1, 1)
    assert solve_in_span(gens, (1, 0, 1), 2) == (1, 1)


def test_solve_in_span_absent():
    assert solve_in_span([(1, 0, 0)], (0, 1, 0), 2) is None


def test_solve_in_span_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_in_span([(1, 0)], (1, 0, 0), 2)


def test_rref_identity():
    reduced, pivots = rref(FqMatrix.identity(4, 5))
    assert reduced == FqMatrix.identity(4, 5)
    assert pivots == (0, 1, 2, 3)


def test_rref_hand_example():
    reduced, pivots = rref(FqMatrix.from_rows([[0, 1], [0, 2]], 3))
    assert reduced.row_list() == [(0, 1), (0, 0)]
    assert pivots == (1,)


def test_rref_zero_matrix():
    reduced, pivots = rref(FqMatrix.zeros(2, 3, 2))
    assert reduced == FqMatrix.zeros(2, 3, 2)
    assert pivots == ()


small_q = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_dim=6):
    q = draw(small_q)
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(
        st.lists(st.integers(0, q - 1), min_size=rows * cols, max_size=rows * cols)
    )
    return FqMatrix(rows, cols, q, tuple(entries))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(null_space_basis(m)) == m.cols


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_null_space_vectors_annihilate(m):
    for b in null_space_basis(m):
        assert all(v == 0 for v in m.mul_vector(b))


@settings(max_examples=60, deadline=None)
@given(matrices(max_dim=4))
def test_rank_matches_span_counting_oracle(m):
    assert rank(m) == oracle_rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    reduced, _ = rref(m)
    again, _ = rref(reduced)
    assert again == reduced


@st.composite
def span_instances(draw):
    q = draw(small_q)
    n = draw(st.integers(1, 5))
    n_gens = draw(st.integers(0, 4))
    gens = [
        tuple(draw(st.integers(0, q - 1)) for _ in range(n)) for _ in range(n_gens)
    ]
    target = tuple(draw(st.integers(0, q - 1)) for _ in range(n))
    return q, gens, target


@settings(max_examples=80, deadline=None)
@given(span_instances())
def test_solve_in_span_round_trip(instance):
    q, gens, target = instance
    coeffs = solve_in_span(gens, target, q)
    if coeffs is None:
        assert oracle_solve_in_span(gens, target, q) is None
    else:
        combo = [0] * len(target)
        for c, gen in zip(coeffs, gens):
            for t in range(len(target)):
                combo[t] = (combo[t] + c * gen[t]) % q
        assert tuple(combo) == target
