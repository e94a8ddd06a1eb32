import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauscope.exactlin import (
    QQ,
    FpElement,
    Matrix,
    PrimeField,
    coprime_split,
    in_span,
    kernel_basis,
    minimal_polynomial,
    poly_degree,
    poly_eval_matrix,
    poly_mul,
    quotient_map,
    rref,
    section_of_quotient,
    solve,
    squarefree_decomposition,
)


def M(rows, field=QQ):
    return Matrix.from_rows(field, rows) if rows else Matrix(field, 0, 0, [])


def test_rref_identity():
    res = rref(Matrix.identity(QQ, 3))
    assert res.rank == 3
    assert res.pivots == (0, 1, 2)
    assert res.reduced == Matrix.identity(QQ, 3)


def test_rref_zero():
    res = rref(Matrix.zeros(QQ, 2, 2))
    assert res.rank == 0
    assert res.pivots == ()


def test_rref_rank_one():
    res = rref(M([[1, 2], [2, 4]]))
    assert res.rank == 1
    assert res.reduced.rows[0] == (Fraction(1), Fraction(2))


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(QQ, 3)).ncols == 0


def test_kernel_zero_full():
    k = kernel_basis(Matrix.zeros(QQ, 3, 3))
    assert k == Matrix.identity(QQ, 3)


def test_kernel_rank_one():
    m = M([[1, 2], [2, 4]])
    k = kernel_basis(m)
    assert k.ncols == 1
    assert m.mul(k).is_zero()
    # (-2, 1) up to scaling
    assert k.col(0)[0] * 1 == -2 * k.col(0)[1]


def test_solve_identity():
    assert solve(Matrix.identity(QQ, 2), (Fraction(3), Fraction(5))) == (3, 5)


def test_solve_inconsistent():
    assert solve(Matrix.zeros(QQ, 2, 2), (Fraction(1), Fraction(0))) is None


def test_solve_underdetermined():
    x = solve(M([[1, 2], [2, 4]]), (Fraction(1), Fraction(2)))
    assert x is not None
    assert x[0] + 2 * x[1] == 1


def test_coprime_split_diagonal():
    parts = coprime_split(M([[0, 0], [0, 1]]))
    polys = sorted(tuple(p) for p, _ in parts)
    assert polys == [(0, 1), (-1, 1)] or polys == [(-1, 1), (0, 1)]
    assert sorted(b.ncols for _, b in parts) == [1, 1]


def test_coprime_split_nilpotent_jordan():
    parts = coprime_split(M([[0, 1], [0, 0]]))
    assert len(parts) == 1
    poly, basis = parts[0]
    assert tuple(poly) == (0, 0, 1)  # x^2
    assert basis.ncols == 2


def test_coprime_split_two_eigenvalues():
    parts = coprime_split(M([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
    dims = sorted(b.ncols for _, b in parts)
    assert dims == [1, 2]


def test_minimal_polynomial_companion():
    # companion matrix of x^2 - x - 1
    m = M([[0, 1], [1, 1]])
    assert minimal_polynomial(m) == (-1, -1, 1)


def test_squarefree_decomposition():
    # (x-1)^2 (x+2) = x^3 - 3x + 2
    f = (Fraction(2), Fraction(-3), Fraction(0), Fraction(1))
    dec = squarefree_decomposition(f, QQ)
    dec = sorted(dec, key=lambda gk: gk[1])
    assert [k for _, k in dec] == [1, 2]
    assert tuple(dec[0][0]) == (2, 1)   # x + 2
    assert tuple(dec[1][0]) == (-1, 1)  # x - 1


def test_prime_field_arithmetic():
    F = PrimeField(7)
    a = F.of(3)
    assert a + a == FpElement(6, 7)
    assert a / a == F.one
    m = Matrix.from_rows(F, [[1, 2], [3, 4]])
    assert rref(m).rank == 2
    k = kernel_basis(Matrix.from_rows(F, [[1, 2], [2, 4]]))
    assert k.ncols == 1


def test_quotient_map_and_section():
    sub = M([[1], [2], [0]])  # span{(1,2,0)}
    q = quotient_map(sub)
    assert q.nrows == 2 and q.ncols == 3
    assert q.mul(sub).is_zero()
    s = section_of_quotient(sub)
    assert q.mul(s) == Matrix.identity(QQ, 2)


small_entries = st.integers(min_value=-6, max_value=6)


@st.composite
def rational_matrices(draw, max_dim=5):
    n = draw(st.integers(min_value=0, max_value=max_dim))
    m = draw(st.integers(min_value=0, max_value=max_dim))
    rows = [[Fraction(draw(small_entries)) for _ in range(m)] for _ in range(n)]
    return Matrix(QQ, n, m, rows)


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rref_idempotent(m):
    red = rref(m).reduced
    assert rref(red).reduced == red


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rank_nullity(m):
    assert rref(m).rank + kernel_basis(m).ncols == m.ncols


@settings(max_examples=40, deadline=None)
@given(rational_matrices(max_dim=4))
def test_kernel_annihilates(m):
    k = kernel_basis(m)
    if k.ncols:
        assert m.mul(k).is_zero()


def test_coprime_split_invariance_random():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        parts = coprime_split(m)
        assert sum(b.ncols for _, b in parts) == n
        prod = (QQ.one,)
        for p, basis in parts:
            prod = poly_mul(prod, p, QQ)
            if basis.ncols:
                img = m.mul(basis)
                cols = [basis.col(j) for j in range(basis.ncols)]
                for j in range(img.ncols):
                    assert in_span(cols, img.col(j), QQ)
        assert prod == minimal_polynomial(m)
        for p, _ in parts:
            assert poly_eval_matrix(p, m).nrows == n


def test_poly_degree_zero_poly():
    assert poly_degree((Fraction(0),)) == -1
