"""Exact linear algebra core: frozen examples and algebraic properties."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, rationals, square_matrices
from ratspec.ratmat import (Mat, Poly, Subspace, charpoly, image, inverse,
                            kernel, map_subspace, poly_eval_mat, preimage,
                            quotient_dim, rank, rref, solve)

J3 = Mat.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def span(ambient, *vecs):
    return Subspace.from_vectors(ambient, vecs)


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


class TestRank:
    def test_identity(self):
        assert rank(Mat.identity(4)) == 4

    def test_zero(self):
        assert rank(Mat.zero(3, 5)) == 0

    def test_dependent_rows(self):
        # second row is twice the first: hand reduction leaves one pivot
        assert rank(Mat.from_rows([[1, 2], [2, 4]])) == 1

    @given(matrices(4, 4), matrices(4, 4))
    def test_rank_of_product_bounded(self, M, N):
        if M.cols != N.rows:
            N = N.transpose() if N.cols == M.cols else Mat.zero(M.cols, N.cols)
        assert rank(M @ N) <= min(rank(M), rank(N))


class TestKernelImage:
    def test_kernel_identity(self):
        assert kernel(Mat.identity(3)) == Subspace.zero(3)

    def test_kernel_zero(self):
        assert kernel(Mat.zero(2, 2)) == Subspace.full(2)

    def test_kernel_j3(self):
        # J3 x = (x2, x3, 0) = 0 forces x2 = x3 = 0
        assert kernel(J3) == span(3, E1)

    def test_image_identity(self):
        assert image(Mat.identity(5)) == Subspace.full(5)

    def test_image_j3(self):
        # columns of J3 are 0, e1, e2
        assert image(J3) == span(3, E1, E2)

    def test_image_rank_one_outer(self):
        u = [2, Fraction(1, 3), -1]
        v = [1, 4, 0, 5]
        M = Mat.from_rows([[ui * vj for vj in v] for ui in u])
        assert image(M) == span(3, u)

    @given(matrices(5, 5))
    def test_rank_nullity(self, M):
        assert kernel(M).dim + rank(M) == M.cols

    @given(matrices(4, 4))
    def test_image_dim_is_rank(self, M):
        assert image(M).dim == rank(M)


class TestSubspaceLattice:
    def test_sum_with_zero(self):
        U = span(3, E1, (1, 1, 0))
        assert U.sum(Subspace.zero(3)) == U

    def test_sum_axes(self):
        assert span(3, E1).sum(span(3, E2)) == span(3, E1, E2)

    def test_sum_diagonals_fill_plane(self):
        # stacked basis has rank 2
        assert span(2, (1, 1)).sum(span(2, (1, -1))) == Subspace.full(2)

    def test_intersect_with_full(self):
        U = span(3, E1, E3)
        assert U.intersect(Subspace.full(3)) == U

    def test_intersect_axes_trivial(self):
        assert span(3, E1).intersect(span(3, E2)) == Subspace.zero(3)

    def test_intersect_planes(self):
        # membership system solves to the shared axis
        got = span(3, E1, E2).intersect(span(3, E2, E3))
        assert got == span(3, E2)

    def test_contains_full_anything(self):
        assert Subspace.full(4).contains(span(4, (1, 2, 3, 4)))

    def test_contains_zero_cases(self):
        assert Subspace.zero(2).contains(Subspace.zero(2))
        assert not Subspace.zero(2).contains(span(2, E1[:2]))

    def test_contains_combination(self):
        assert span(3, E1, E2).contains(span(3, (1, 1, 0)))
        assert not span(3, E1, E2).contains(span(3, (1, 1, 1)))

    def test_ambient_mismatch_raises(self):
        with pytest.raises(ValueError):
            span(2, (1, 0)).sum(span(3, E1))
        with pytest.raises(ValueError):
            span(2, (1, 0)).intersect(span(3, E1))

    @given(matrices(4, 4), matrices(4, 4))
    def test_grassmann_identity(self, M, N):
        if N.rows != M.rows:
            N = Mat.zero(M.rows, N.cols)
        U, W = image(M), image(N)
        s, i = U.sum(W), U.intersect(W)
        assert s.dim + i.dim == U.dim + W.dim
        assert s.contains(U) and s.contains(W)
        assert U.contains(i) and W.contains(i)

    @given(matrices(4, 4))
    def test_canonical_representation_unique(self, M):
        U = image(M)
        # re-spanning by sums of basis vectors reproduces the same basis
        mixed = [tuple(a + b for a, b in zip(U.basis[i], U.basis[(i + 1) % U.dim]))
                 for i in range(U.dim)]
        if mixed:
            assert Subspace.from_vectors(U.ambient_dim, mixed + list(U.basis)) == U


class TestQuotientAndPreimage:
    def test_quotient_dim_equal(self):
        U = span(3, E1, E2)
        assert quotient_dim(U, U) == 0

    def test_quotient_dim_full_over_zero(self):
        assert quotient_dim(Subspace.full(3), Subspace.zero(3)) == 3

    def test_quotient_dim_plane_over_line(self):
        assert quotient_dim(span(3, E1, E2), span(3, E1)) == 1

    def test_quotient_dim_rejects_non_nested(self):
        with pytest.raises(ValueError):
            quotient_dim(span(3, E1), span(3, E2))

    def test_preimage_of_full(self):
        M = Mat.from_rows([[1, 2], [3, 4], [0, 0]])
        assert preimage(M, Subspace.full(3)) == Subspace.full(2)

    def test_preimage_under_identity(self):
        W = span(3, (1, 2, 3))
        assert preimage(Mat.identity(3), W) == W

    def test_preimage_j3_line(self):
        # J3 x = (x2, x3, 0) lies in span{e1} iff x3 = 0
        assert preimage(J3, span(3, E1)) == span(3, E1, E2)

    @given(matrices(4, 4))
    def test_preimage_contains_kernel(self, M):
        W = image(M)
        assert preimage(M, Subspace.zero(M.rows)) == kernel(M)
        assert preimage(M, W) == Subspace.full(M.cols)

    @given(matrices(4, 4))
    def test_map_subspace_lands_in_image(self, M):
        full = Subspace.full(M.cols)
        assert map_subspace(M, full) == image(M)


class TestCharpoly:
    def test_identity_2x2(self):
        assert charpoly(Mat.identity(2)) == Poly([1, -2, 1])  # (x-1)^2

    def test_nilpotent(self):
        assert charpoly(J3) == Poly([0, 0, 0, 1])

    def test_swap_matrix(self):
        # det(x I - [[0,1],[1,0]]) = x^2 - 1 by the 2x2 determinant
        assert charpoly(Mat.from_rows([[0, 1], [1, 0]])) == Poly([-1, 0, 1])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            charpoly(Mat.zero(2, 3))

    @given(square_matrices(4))
    def test_cayley_hamilton(self, M):
        assert poly_eval_mat(charpoly(M), M).is_zero()

    def test_cayley_hamilton_dim_6(self):
        import random
        rng = random.Random(17)
        for _ in range(3):
            M = Mat(6, 6, [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                           for _ in range(36)])
            assert poly_eval_mat(charpoly(M), M).is_zero()


class TestPolyEval:
    def test_constant_poly(self):
        assert poly_eval_mat(Poly([1]), J3) == Mat.identity(3)

    def test_linear_poly(self):
        assert poly_eval_mat(Poly([0, 1]), J3) == J3

    def test_annihilating_poly(self):
        M = Mat.from_rows([[0, 1], [1, 0]])
        # x^2 - 1 kills the swap matrix (hand check: M^2 = I)
        assert poly_eval_mat(Poly([-1, 0, 1]), M).is_zero()

    def test_poly_arithmetic(self):
        p = Poly([1, 1])        # 1 + x
        q = Poly([-1, 1])       # -1 + x
        assert p * q == Poly([-1, 0, 1])
        assert p + q == Poly([0, 2])
        assert Poly([0, 0, 2, 4]).monic() == Poly([0, 0, Fraction(1, 2), 1])
        assert Poly([0, 0, 3, 1]).strip_zero_roots() == (Poly([3, 1]), 2)

    @given(square_matrices(3), st.lists(rationals, min_size=0, max_size=4))
    def test_poly_eval_matches_scalar_on_diagonal(self, M, coeffs):
        # evaluate on a diagonal matrix: entrywise scalar Horner
        q = Poly(coeffs)
        n = M.rows
        diag = Mat(n, n, [M.entry(i, i) if i == j else Fraction(0)
                          for i in range(n) for j in range(n)])
        got = poly_eval_mat(q, diag)
        for i in range(n):
            assert got.entry(i, i) == q(diag.entry(i, i))


class TestSolveInverse:
    @given(matrices(4, 4))
    def test_solve_consistent_system(self, M):
        x = [Fraction(i + 1, 2) for i in range(M.cols)]
        b = M.apply(x)
        got = solve(M, list(b))
        assert got is not None
        assert M.apply(got) == b

    def test_solve_inconsistent(self):
        M = Mat.from_rows([[1, 0], [1, 0]])
        assert solve(M, [Fraction(0), Fraction(1)]) is None

    def test_inverse_roundtrip(self):
        M = Mat.from_rows([[2, 1], [1, 1]])
        Mi = inverse(M)
        assert Mi is not None and M @ Mi == Mat.identity(2)

    def test_inverse_singular(self):
        assert inverse(Mat.from_rows([[1, 2], [2, 4]])) is None


class TestMatBasics:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            Mat(2, 2, [Fraction(0)] * 3)
        with pytest.raises(ValueError):
            Mat.identity(2) @ Mat.identity(3)

    def test_immutable(self):
        M = Mat.identity(2)
        with pytest.raises(AttributeError):
            M.rows = 3

    def test_pow_and_shift(self):
        assert J3 ** 3 == Mat.zero(3, 3)
        assert J3 ** 0 == Mat.identity(3)
        shifted = Mat.identity(3).shifted(1)
        assert shifted.is_zero()

    def test_rref_idempotent(self):
        M = Mat.from_rows([[2, 4, 1], [1, 2, 0], [0, 0, 1]])
        R, piv = rref(M)
        R2, piv2 = rref(R)
        assert (R, piv) == (R2, piv2)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            Mat.identity(2) ** -1

    def test_apply_length_mismatch(self):
        with pytest.raises(ValueError):
            Mat.identity(2).apply([Fraction(1)])

    def test_membership_length_mismatch(self):
        with pytest.raises(ValueError):
            Subspace.full(3).contains_vector([1, 2])

    def test_zero_poly_conventions(self):
        z = Poly([])
        assert z.degree == -1
        assert z.strip_zero_roots() == (z, 0)
        assert z(Fraction(5)) == 0
        assert Poly([0, 0]) == z

    def test_poly_add_shorter_first(self):
        assert Poly([1]) + Poly([0, 0, 1]) == Poly([1, 0, 1])

    def test_misc_guards(self):
        with pytest.raises(ValueError):
            Mat.from_rows([[1, 2], [3]])
        with pytest.raises(ValueError):
            Mat.zero(2, 3) ** 2
        with pytest.raises(ValueError):
            Mat.zero(2, 3).shifted(1)
        with pytest.raises(ValueError):
            Mat.identity(2) + Mat.identity(3)
        with pytest.raises(ValueError):
            inverse(Mat.zero(2, 3))
        with pytest.raises(ValueError):
            solve(Mat.identity(2), [Fraction(1)])
        with pytest.raises(ValueError):
            map_subspace(Mat.identity(2), Subspace.full(3))
        with pytest.raises(ValueError):
            preimage(Mat.identity(2), Subspace.full(3))
        with pytest.raises(ValueError):
            Subspace.from_vectors(2, [(1, 0, 0)])
        with pytest.raises(AttributeError):
            Subspace.full(2).basis = ()
        with pytest.raises(AttributeError):
            Poly([1]).coeffs = ()

    def test_negation_and_hash_and_repr(self):
        M = Mat.from_rows([[1, -2], [0, Fraction(1, 3)]])
        assert -(-M) == M
        assert hash(M) == hash(Mat.from_rows([[1, -2], [0, Fraction(1, 3)]]))
        assert "2x2" in repr(M) and "1/3" in repr(M)
        U = Subspace.from_vectors(3, [(1, 0, 0)])
        assert hash(U) == hash(Subspace.from_vectors(3, [(2, 0, 0)]))
        assert "dim 1 of Q^3" in repr(U)
