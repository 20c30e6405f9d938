from itertools import permutations
from math import prod

import pytest
from hypothesis import given, strategies as st

from cechchase.zint import (
    AbelianGroupInvariants,
    ChainComplexError,
    IntMatrix,
    elementary_divisors,
    hermite_normal_form,
    homology_invariants,
    matrix_rank,
    smith_normal_form,
    solve_linear,
)


@st.composite
def matrices(draw, max_dim=8, bound=9):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix(rows, ncols=c)


@st.composite
def unimodular(draw, n):
    """Product of random elementary operations."""
    M = IntMatrix.identity(n).tolist()
    for _ in range(draw(st.integers(0, 3 * n))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            c = draw(st.integers(-3, 3))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        elif draw(st.booleans()):
            M[i] = [-a for a in M[i]]
    return IntMatrix(M, ncols=n)


def leibniz_det(A):
    n = A.nrows
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(A[i, p[i]] for i in range(n))
    return total


def check_snf(A):
    snf = smith_normal_form(A)
    assert snf.U @ A @ snf.V == snf.D
    assert snf.U.is_unimodular() and snf.V.is_unimodular()
    assert snf.U @ snf.U_inv == IntMatrix.identity(A.nrows)
    assert snf.V_inv @ snf.V == IntMatrix.identity(A.ncols)
    diag = snf.diagonal
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    for i in range(A.nrows):
        for j in range(A.ncols):
            if i != j or i >= snf.rank:
                assert snf.D[i, j] == 0
    return snf


class TestIntMatrix:
    def test_shape_and_access(self):
        A = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert A.shape == (2, 3)
        assert A[1, 2] == 6
        assert A.row(0) == [1, 2, 3]
        assert A.column(1) == [2, 5]
        assert A.T.tolist() == [[1, 4], [2, 5], [3, 6]]

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix([[1, 2], [3]])

    def test_matmul(self):
        A = IntMatrix([[1, 2], [3, 4]])
        assert (A @ A).tolist() == [[7, 10], [15, 22]]
        assert A @ [1, 1] == [3, 7]

    def test_empty_shapes(self):
        Z = IntMatrix.zeros(0, 3)
        assert Z.shape == (0, 3)
        assert (IntMatrix.zeros(2, 0) @ Z).shape == (2, 3)

    @given(matrices(max_dim=5, bound=5))
    def test_det_against_leibniz(self, A):
        if A.nrows != A.ncols:
            return
        assert A.det() == leibniz_det(A)

    def test_big_integers(self):
        A = IntMatrix([[10**30, 1], [1, 0]])
        assert A.det() == -1


class TestSmith:
    def test_identity(self):
        snf = check_snf(IntMatrix.identity(4))
        assert snf.D == IntMatrix.identity(4)

    def test_two_by_two(self):
        assert check_snf(IntMatrix([[2, 4], [6, 8]])).diagonal == [2, 4]

    def test_zero(self):
        snf = check_snf(IntMatrix.zeros(3, 2))
        assert snf.D.is_zero() and snf.rank == 0

    def test_known_divisors(self):
        # diag(2, 3) is equivalent to diag(1, 6)
        assert check_snf(IntMatrix([[2, 0], [0, 3]])).diagonal == [1, 6]

    @given(matrices())
    def test_random(self, A):
        check_snf(A)

    @given(matrices())
    def test_elementary_divisors_match_snf(self, A):
        assert elementary_divisors(A) == smith_normal_form(A).diagonal
        assert matrix_rank(A) == smith_normal_form(A).rank


class TestHermiteAndSolve:
    @given(matrices())
    def test_hermite_identity(self, A):
        hnf = hermite_normal_form(A)
        assert A @ hnf.W == hnf.H
        assert hnf.W.is_unimodular()

    def test_identity_solve(self):
        assert solve_linear(IntMatrix.identity(3), [4, -5, 6]) == [4, -5, 6]

    def test_parity(self):
        assert solve_linear(IntMatrix([[2]]), [3]) is None

    def test_extended_gcd(self):
        A = IntMatrix([[2, 3]])
        x = solve_linear(A, [1])
        assert x is not None and A @ x == [1]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve_linear(IntMatrix.identity(2), [1, 2, 3])

    def test_rational_but_not_integral(self):
        # x + y = 1, x - y = 0 has only the rational solution (1/2, 1/2)
        assert solve_linear(IntMatrix([[1, 1], [1, -1]]), [1, 0]) is None

    @given(matrices(), st.data())
    def test_consistent_systems_solved(self, A, data):
        x0 = data.draw(st.lists(st.integers(-5, 5), min_size=A.ncols, max_size=A.ncols))
        b = A @ x0
        x = solve_linear(A, b)
        assert x is not None and A @ x == b

    @given(matrices(), st.data())
    def test_random_rhs_solution_or_none(self, A, data):
        b = data.draw(st.lists(st.integers(-9, 9), min_size=A.nrows, max_size=A.nrows))
        x = solve_linear(A, b)
        if x is not None:
            assert A @ x == b
        else:
            # unsolvable over Z: b is not in the lattice spanned by the columns
            snf = smith_normal_form(A)
            c = snf.U @ b
            diag = snf.diagonal
            assert any(c[i] % diag[i] for i in range(len(diag))) or any(c[len(diag):])


class TestGroups:
    def test_invariants_validation(self):
        with pytest.raises(ValueError):
            AbelianGroupInvariants(0, (1,))
        with pytest.raises(ValueError):
            AbelianGroupInvariants(0, (2, 3))
        assert str(AbelianGroupInvariants(2, (2,))) == "Z^2 + Z/2"
        assert str(AbelianGroupInvariants(0)) == "0"

    def test_circle(self, tri):
        assert homology_invariants(tri.boundary_matrix(2), tri.boundary_matrix(1)) == AbelianGroupInvariants(1)

    def test_point(self):
        assert homology_invariants(None, IntMatrix.zeros(0, 1)) == AbelianGroupInvariants(1)

    def test_rp2_torsion(self, complexes):
        X = complexes["rp2"]
        assert homology_invariants(X.boundary_matrix(2), X.boundary_matrix(1)) == AbelianGroupInvariants(0, (2,))

    def test_not_composable(self):
        with pytest.raises(ChainComplexError):
            homology_invariants(IntMatrix.zeros(2, 1), IntMatrix.zeros(1, 3))

    def test_nonzero_composite(self):
        with pytest.raises(ChainComplexError):
            homology_invariants(IntMatrix([[1]]), IntMatrix([[1]]))

    def test_needs_one_map(self):
        with pytest.raises(ChainComplexError):
            homology_invariants(None, None)

    @given(st.data())
    def test_change_of_basis_invariance(self, data):
        # a complex with known homology Z^free + (+) Z/scale, then conjugated
        # by a random unimodular change of basis of the middle group
        n = data.draw(st.integers(1, 6))
        r = data.draw(st.integers(0, n))
        c = data.draw(st.integers(0, n - r))
        scale = data.draw(st.lists(st.integers(1, 4), min_size=r, max_size=r))
        d_in = IntMatrix([[scale[j] if i == j else 0 for j in range(r)] for i in range(n)], ncols=r)
        d_out = IntMatrix([[1 if j == i + r else 0 for j in range(n)] for i in range(c)], ncols=n)
        g = homology_invariants(d_in, d_out)
        Q = data.draw(unimodular(n))
        Qinv = _inverse(Q)
        assert Q @ Qinv == IntMatrix.identity(n)
        assert homology_invariants(Q @ d_in, d_out @ Qinv) == g
        assert g.rank == n - r - c
        assert list(g.torsion) == _nontrivial_divisors(scale)


def _inverse(M):
    # M unimodular: U M V = I, so M^-1 = V U
    snf = smith_normal_form(M)
    return snf.V @ snf.U


def _nontrivial_divisors(values):
    n = len(values)
    D = IntMatrix([[v if i == j else 0 for j in range(n)] for i, v in enumerate(values)], ncols=n)
    return [x for x in smith_normal_form(D).diagonal if x > 1]
