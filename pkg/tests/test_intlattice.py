from itertools import product

import pytest
from hypothesis import given, strategies as st

from sinkext.intlattice import (AbelianGroup, IntMatrix, IntVector, cokernel, determinant,
                                image_membership, kernel_basis, restricted_membership,
                                smith_normal_form)

W = ("w1", "w2", "w3")


def M(rows, labels=None):
    return IntMatrix.of(rows, labels, labels)


def brute_solve(A, d, box=5):
    """First x in a box with A x = d, or None."""
    n = A.shape[1]
    for x in product(range(-box, box + 1), repeat=n):
        v = IntVector(A.col_labels, x)
        if (A @ v).values == d.values:
            return v
    return None


@st.composite
def matrices(draw, max_rows=6, max_cols=6, lo=-4, hi=4):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return IntMatrix.of(rows)


def test_vector_arithmetic():
    a = IntVector.of([1, 2, 3], W)
    b = IntVector.delta(W, "w2")
    assert (a - b).values == (1, 1, 3)
    assert (a * -2).values == (-2, -4, -6)
    assert a.dot(b) == 2
    assert a["w3"] == 3
    assert IntVector.zeros(W).is_zero()
    assert a.restrict(("w1", "w3")).values == (1, 3)
    assert a.format() == "(w1=1, w2=2, w3=3)"
    with pytest.raises(ValueError):
        a + IntVector.of([1, 2, 3])


def test_matrix_basics():
    A = M([[1, 2], [3, 4]], ("a", "b"))
    assert A.transpose().tolist() == [[1, 3], [2, 4]]
    assert A.minus_identity().tolist() == [[0, 2], [3, 3]]
    assert (A @ A).tolist() == [[7, 10], [15, 22]]
    assert (A @ IntVector.of([1, 1], ("a", "b"))).values == (3, 7)
    assert A.stack(IntVector.of([5, 6], ("a", "b")), "z").tolist() == [[1, 2], [3, 4], [5, 6]]


@pytest.mark.parametrize("rows, diag", [
    ([[2]], (2,)),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
    ([[1, 0], [1, 1], [0, 1]], (1, 1)),
    ([[2, 4], [6, 8]], (2, 4)),
    ([[0, 0], [0, 0]], (0, 0)),
])
def test_smith_examples(rows, diag):
    assert smith_normal_form(IntMatrix.of(rows)).diagonal == diag


@given(matrices())
def test_smith_decomposition_is_valid(A):
    snf = smith_normal_form(A)
    assert (snf.U @ A @ snf.V).rows == snf.D.rows
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            if i != j:
                assert snf.D.rows[i][j] == 0
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == tuple(nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_determinants():
    assert determinant(M([[2]]).minus_identity()) == 1
    assert determinant(IntMatrix.identity(("a", "b", "c"))) == 1
    assert determinant(M([[1, 1], [0, 1]])) == 1
    assert determinant(M([[2, 1], [4, 2]])) == 0


@given(matrices(4, 4))
def test_determinant_matches_leibniz(A):
    m, n = A.shape
    if m != n:
        return
    from itertools import permutations
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= A.rows[i][p[i]]
        total += term
    assert determinant(A) == total


def test_membership_examples():
    A = M([[1, 1], [0, 1]], ("w1", "w2"))
    assert image_membership(A, IntVector.of([1, -1], ("w1", "w2"))).values == (2, -1)
    A_intro = M([[0, 1, 0], [0, -1, 1], [0, 1, -1]], W)
    assert image_membership(A_intro, IntVector.of([0, 1, -1], W)).values == (0, 0, 1)
    assert image_membership(M([[2]]), IntVector.of([1])) is None
    with pytest.raises(ValueError):
        image_membership(M([[2]]), IntVector.of([1, 2]))


def test_restricted_membership_examples():
    A_intro = M([[0, 1, 0], [0, -1, 1], [0, 1, -1]], W)
    d = IntVector.of([0, 1, -1], W)
    assert restricted_membership(A_intro, d, {"w3"}) == IntVector.delta(W, "w3")
    A = M([[1, 1], [0, 1]], ("w1", "w2"))
    assert restricted_membership(A, IntVector.of([0, 1], ("w1", "w2")), {"w1"}) is None


@given(matrices(4, 4, -3, 3), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_membership_agrees_with_brute_force(A, d):
    m, n = A.shape
    if n > 3:
        return
    rhs = IntVector(A.row_labels, tuple(d[:m]))
    x = image_membership(A, rhs)
    if x is not None:
        assert (A @ x).values == rhs.values
    else:
        assert brute_solve(A, rhs, box=4) is None


@given(matrices(5, 5), st.data())
def test_full_support_restriction_is_unrestricted(A, data):
    x = IntVector(A.col_labels, tuple(data.draw(st.lists(st.integers(-2, 2),
                                                          min_size=A.shape[1],
                                                          max_size=A.shape[1]))))
    d = A @ x
    assert restricted_membership(A, d, A.col_labels) == image_membership(A, d)
    assert image_membership(A, d) is not None


def test_kernel_examples():
    assert kernel_basis(M([[1, 0], [1, 1]])) == []
    A_t = M([[0, 0, 0], [1, -1, 1], [0, 1, -1]], W)
    assert [k.values for k in kernel_basis(A_t)] in ([(0, 1, 1)], [(0, -1, -1)])
    assert [k.values for k in kernel_basis(M([[0]]))] == [(1,)]


@given(matrices(4, 4, -3, 3))
def test_kernel_against_brute_force(A):
    basis = kernel_basis(A)
    for k in basis:
        assert (A @ k).is_zero()
    n = A.shape[1]
    # every small kernel vector is an integer combination of the basis
    for x in product(range(-2, 3), repeat=n):
        v = IntVector(A.col_labels, x)
        if (A @ v).is_zero() and not v.is_zero():
            assert basis
            if len(basis) == n:
                continue
            B = IntMatrix.of([[k.values[i] for k in basis] for i in range(n)])
            assert image_membership(B, IntVector(B.row_labels, x)) is not None


def test_canonical_representative_is_stable():
    A = M([[1, 1], [1, 1]])
    d = IntVector.of([2, 2])
    assert image_membership(A, d) == image_membership(A, d)
    x = image_membership(A, d)
    assert (A @ x).values == (2, 2)


@pytest.mark.parametrize("rows, group", [
    ([[2]], AbelianGroup(0, (2,))),
    ([[1, 0], [1, 1], [0, 1]], AbelianGroup(1)),
    ([[0, 0], [0, 0]], AbelianGroup(2)),
    ([[2], [1]], AbelianGroup(1)),
])
def test_cokernels(rows, group):
    assert cokernel(IntMatrix.of(rows)) == group


def test_group_formatting_and_validation():
    assert str(AbelianGroup(1, (2, 6))) == "Z/2 + Z/6 + Z"
    assert str(AbelianGroup(0)) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
