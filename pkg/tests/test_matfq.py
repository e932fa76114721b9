import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_canrep.gfq import build_field
from drinfeld_canrep.matfq import (
    DimensionMismatch,
    Matrix,
    Singular,
    block_diag,
    coordinates,
    hom_space,
    in_span,
    inverse,
    is_nilpotent,
    kernel_basis,
    kron,
    matmul_arrays,
    rref,
)

F2, F3, F4, F9 = build_field(2, 1), build_field(3, 1), build_field(2, 2), build_field(3, 2)


def matrices(F, max_n=5, square=False):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        m = n if square else draw(st.integers(1, max_n))
        rows = draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=m, max_size=m), min_size=n, max_size=n))
        return Matrix.from_rows(F, rows)
    return build()


def naive_matmul(A, B):
    F = A.spec
    out = [[0] * B.cols for _ in range(A.rows)]
    for i in range(A.rows):
        for j in range(B.cols):
            acc = 0
            for t in range(A.cols):
                acc = F.add(acc, F.mul(int(A.data[i, t]), int(B.data[t, j])))
            out[i][j] = acc
    return Matrix.from_rows(F, out)


def test_rank_examples():
    I = Matrix.identity(F3, 4)
    R, rank, _ = rref(I)
    assert R == I and rank == 4
    Z = Matrix.zeros(F3, 3, 3)
    assert rref(Z)[0] == Z and rref(Z)[1] == 0
    assert Matrix.from_rows(F3, [[1, 2], [2, 1]]).rank() == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F3, 3)) == []
    assert len(kernel_basis(Matrix.zeros(F2, 2, 2))) == 2
    (v,) = kernel_basis(Matrix.from_rows(F3, [[1, 2], [2, 1]]))
    assert v.data[0, 0] == v.data[1, 0] != 0


def test_inverse_examples():
    assert inverse(Matrix.identity(F4, 3)).is_identity()
    assert inverse(Matrix.from_rows(F3, [[1, 0], [1, 1]])) == Matrix.from_rows(F3, [[1, 0], [2, 1]])
    with pytest.raises(Singular):
        inverse(Matrix.from_rows(F3, [[1, 2], [2, 1]]))


def test_nilpotent_examples():
    assert is_nilpotent(Matrix.from_rows(F3, [[0, 1, 2], [0, 0, 1], [0, 0, 0]]))
    assert not is_nilpotent(Matrix.identity(F3, 3))
    assert is_nilpotent(Matrix.from_rows(F2, [[1, 1], [1, 1]]))


def test_hom_space_examples():
    I = Matrix.identity(F3, 3)
    assert len(hom_space([I], [I])) == 9
    J = Matrix.from_rows(F3, [[1, 1], [0, 1]])
    H = hom_space([J], [J])
    assert len(H) == 2
    assert in_span(F3, H, Matrix.identity(F3, 2))
    assert in_span(F3, H, Matrix.from_rows(F3, [[0, 1], [0, 0]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Matrix.identity(F3, 2) @ Matrix.identity(F3, 3)


def test_block_diag_and_kron():
    A = Matrix.from_rows(F3, [[1, 2], [0, 1]])
    B = Matrix.from_rows(F3, [[2]])
    D = block_diag(F3, [A, B])
    assert D.tolist() == [[1, 2, 0], [0, 1, 0], [0, 0, 2]]
    K = kron(A, B)
    assert K.tolist() == [[2, 1], [0, 2]]


def test_dump_parse_roundtrip():
    M = Matrix.from_rows(F9, [[1, 2, 3], [4, 5, 8]])
    text = M.dump()
    assert text.splitlines()[0] == "2 3"
    assert Matrix.parse(F9, text) == M


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([F2, F3, F4, F9]).flatmap(lambda F: st.tuples(matrices(F, 4), matrices(F, 4))))
def test_matmul_against_naive(pair):
    A, B = pair
    B = Matrix(A.spec, np.resize(B.data, (A.cols, B.cols)))
    assert A @ B == naive_matmul(A, B)


def test_batched_matmul():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 9, size=(5, 3, 4))
    b = rng.integers(0, 9, size=(5, 4, 2))
    out = matmul_arrays(F9, a, b)
    for t in range(5):
        assert np.array_equal(out[t], (Matrix(F9, a[t]) @ Matrix(F9, b[t])).data)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([F2, F3, F4, F9]).flatmap(matrices))
def test_rref_idempotent_and_rank_nullity(M):
    R, rank, pivots = rref(M)
    assert rref(R)[0] == R
    assert len(pivots) == rank
    ker = kernel_basis(M)
    assert rank + len(ker) == M.cols
    for v in ker:
        assert (M @ v).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([F2, F3, F4, F9]).flatmap(lambda F: matrices(F, 5, square=True)))
def test_inverse_roundtrip(M):
    if M.rank() < M.rows:
        with pytest.raises(Singular):
            inverse(M)
        return
    Minv = inverse(M)
    assert (M @ Minv).is_identity() and (Minv @ M).is_identity()


def test_coordinates():
    basis = [Matrix.from_rows(F3, [[1, 0], [0, 1]]), Matrix.from_rows(F3, [[0, 1], [0, 0]])]
    target = basis[0].scale(2) + basis[1]
    assert coordinates(F3, basis, target) == [2, 1]
    assert coordinates(F3, basis, Matrix.from_rows(F3, [[0, 0], [1, 0]])) is None
