"""Field arithmetic and row reduction, checked against brute-force oracles."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassnest.ffield import (
    BadModulusError,
    MatGF,
    NotPrimeError,
    field_make,
    invertible_matrices,
    row_reduce,
    rref,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (7, 1), (3, 2), (2, 3), (2, 4)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pk: f"GF({pk[0] ** pk[1]})")
def small_field(request):
    p, k = request.param
    return field_make(p, k)


def test_prime_field_gf2():
    f = field_make(2, 1)
    assert f.q == 2
    assert f.add(1, 1) == 0


def test_composite_characteristic_rejected():
    with pytest.raises(NotPrimeError):
        field_make(6, 1)
    with pytest.raises(NotPrimeError):
        field_make(1, 1)


def test_gf4_default_modulus_and_multiplication():
    f = field_make(2, 2)
    assert f.modulus == (1, 1, 1)
    x = f.element((0, 1))
    x_plus_1 = f.element((1, 1))
    # x * x reduces to x + 1 modulo x^2 + x + 1
    assert f.mul(x, x) == x_plus_1


def test_gf5_inverse():
    f = field_make(5)
    assert f.inv(2) == 3
    assert f.mul(2, 3) == 1


def test_inverse_of_zero_raises():
    f = field_make(3)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(BadModulusError):
        field_make(2, 2, (1, 0, 1))


def test_wrong_degree_and_non_monic_modulus_rejected():
    with pytest.raises(BadModulusError):
        field_make(2, 2, (1, 1, 1, 1))
    with pytest.raises(BadModulusError):
        field_make(3, 2, (1, 1, 2))


def test_prime_field_rejects_modulus():
    with pytest.raises(BadModulusError):
        field_make(5, 1, (1, 1))


def test_builtin_moduli_all_validate():
    for q in (4, 8, 9, 16, 25, 27, 32, 49, 64):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        f = field_make(p, k)
        assert f.q == q


def test_field_make_is_cached():
    assert field_make(2) is field_make(2)
    assert field_make(2, 2) is field_make(2, 2)
    assert field_make(2, 2) == field_make(2, 2, (1, 1, 1))


def test_field_axioms_exhaustive(small_field):
    f = small_field
    if f.q > 16:
        pytest.skip("exhaustive triple check limited to q <= 16")
    els = list(range(f.q))
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b, c in itertools.product(els, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_canonical_order_is_coefficient_lex(small_field):
    f = small_field
    seen = [f.coeffs(e) for e in f.elements()]
    assert seen == sorted(seen)
    assert len(set(seen)) == f.q


def test_coeffs_element_roundtrip(small_field):
    f = small_field
    for e in range(f.q):
        assert f.element(f.coeffs(e)) == e


def test_pow_matches_repeated_multiplication(small_field):
    f = small_field
    for a in range(1, f.q):
        acc = f.one
        for e in range(6):
            assert f.pow(a, e) == acc
            acc = f.mul(acc, a)
        assert f.mul(f.pow(a, -1), a) == f.one


# -- row reduction -------------------------------------------------------------


def test_rref_gf2_rank_one():
    f = field_make(2)
    res = rref(MatGF.from_rows(f, [[1, 1], [1, 1]]))
    assert res.matrix.to_lists() == [[1, 1], [0, 0]]
    assert res.pivots == (0,)
    assert res.rank == 1


def test_rref_gf2_identity():
    f = field_make(2)
    res = rref(MatGF.from_rows(f, [[0, 1], [1, 0]]))
    assert res.matrix.to_lists() == [[1, 0], [0, 1]]
    assert res.rank == 2


def _row_space(field, rows):
    """Oracle: the full set of row-space vectors by brute-force enumeration."""
    vecs = {tuple([0] * len(rows[0]))}
    for coeffs in itertools.product(range(field.q), repeat=len(rows)):
        v = [0] * len(rows[0])
        for c, row in zip(coeffs, rows):
            v = [field.add(a, field.mul(c, b)) for a, b in zip(v, row)]
        vecs.add(tuple(v))
    return vecs


def test_rref_gf3_by_row_space_oracle():
    # row2 - 2*row1 = (0, 0, 1): the pivots land in columns 0 and 2
    f = field_make(3)
    rows = [[1, 2, 0], [2, 1, 1]]
    res = rref(MatGF.from_rows(f, rows))
    assert res.rank == 2
    assert res.pivots == (0, 2)
    reduced = res.matrix.to_lists()[: res.rank]
    assert _row_space(f, reduced) == _row_space(f, rows)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rref_idempotent(data):
    p, k = data.draw(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]))
    f = field_make(p, k)
    nrows = data.draw(st.integers(1, 4))
    ncols = data.draw(st.integers(1, 5))
    entries = data.draw(
        st.lists(st.integers(0, f.q - 1), min_size=nrows * ncols, max_size=nrows * ncols)
    )
    m = MatGF(f, nrows, ncols, tuple(entries))
    once = rref(m)
    twice = rref(once.matrix)
    assert once.matrix == twice.matrix
    assert once.pivots == twice.pivots


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_equal_row_space_iff_equal_rref(data):
    f = field_make(2)
    rows_a = [data.draw(st.lists(st.integers(0, 1), min_size=3, max_size=3)) for _ in range(2)]
    rows_b = [data.draw(st.lists(st.integers(0, 1), min_size=3, max_size=3)) for _ in range(2)]
    same_space = _row_space(f, rows_a) == _row_space(f, rows_b)
    ra, _ = row_reduce(f, rows_a)
    rb, _ = row_reduce(f, rows_b)
    assert same_space == (ra == rb)


def test_rref_preserves_row_space_gf4():
    f = field_make(2, 2)
    rows = [[2, 3, 1], [3, 1, 0]]
    reduced, pivots = row_reduce(f, rows)
    assert _row_space(f, reduced[: len(pivots)]) == _row_space(f, rows)


def test_matmul_against_hand_example():
    f = field_make(3)
    a = MatGF.from_rows(f, [[1, 2], [0, 1]])
    b = MatGF.from_rows(f, [[1, 1], [2, 0]])
    # (1*1 + 2*2, 1*1 + 2*0; 0*1 + 1*2, 0*1 + 1*0) mod 3
    assert a.matmul(b).to_lists() == [[2, 1], [2, 0]]


def test_transpose_and_neg():
    f = field_make(3)
    m = MatGF.from_rows(f, [[1, 2, 0], [0, 1, 1]])
    assert m.transpose().to_lists() == [[1, 0], [2, 1], [0, 1]]
    assert m.neg().to_lists() == [[2, 1, 0], [0, 2, 2]]


def test_invertible_matrix_counts():
    f2 = field_make(2)
    assert sum(1 for _ in invertible_matrices(f2, 2)) == 6
    assert sum(1 for _ in invertible_matrices(f2, 3)) == 168
    f3 = field_make(3)
    assert sum(1 for _ in invertible_matrices(f3, 2)) == 48
    for m in invertible_matrices(f2, 3):
        assert rref(m).rank == 3
