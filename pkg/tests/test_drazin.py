"""Drazin inverse: frozen cases, an independent oracle, and the transfer."""

import random
from fractions import Fraction

import pytest

from ratspec.drazin import (drazin_inverse, nilpotency_index,
                            proof_identities, transfer)
from ratspec.genlab import (GenSpec, default_idempotent, generate,
                            paper_example, rational_spectrum_instance)
from ratspec.intertwine import ConditionNotSatisfied, OperatorTriple
from ratspec.ratmat import Mat, inverse, rref

J3 = Mat.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def mp_inverse(M: Mat) -> Mat:
    """Moore-Penrose inverse over Q via full-rank factorization.

    M = F G with F the pivot columns of M and G the nonzero RREF rows; then
    M^+ = G^T (G G^T)^-1 (F^T F)^-1 F^T (the Gram matrices are invertible
    over Q because the factors have full rank).
    """
    R, pivots = rref(M)
    r = len(pivots)
    if r == 0:
        return Mat.zero(M.cols, M.rows)
    F = Mat(M.rows, r, [M.entry(i, p) for i in range(M.rows) for p in pivots])
    G = Mat(r, M.cols, [R.entry(i, j) for i in range(r) for j in range(M.cols)])
    ggt = inverse(G @ G.transpose())
    ftf = inverse(F.transpose() @ F)
    assert ggt is not None and ftf is not None
    return G.transpose() @ ggt @ ftf @ F.transpose()


def drazin_oracle(T: Mat) -> Mat:
    """Independent Drazin inverse: T^D = T^l X T^l with X a {1}-inverse of
    T^(2l+1) and l = dim (always at least the index)."""
    n = T.rows
    return (T ** n) @ mp_inverse(T ** (2 * n + 1)) @ (T ** n)


def random_square(rng, n, bound=3):
    return Mat(n, n, [Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
                      for _ in range(n * n)])


class TestMpInverse:
    def test_penrose_identities(self):
        rng = random.Random(11)
        for _ in range(10):
            M = random_square(rng, rng.randint(1, 4))
            X = mp_inverse(M)
            assert M @ X @ M == M
            assert X @ M @ X == X


class TestNilpotencyIndex:
    def test_cases(self):
        assert nilpotency_index(J3) == 3
        assert nilpotency_index(Mat.zero(2, 2)) == 1
        assert nilpotency_index(Mat.identity(2)) is None
        assert nilpotency_index(Mat.zero(0, 0)) == 0


class TestDrazinInverse:
    def test_invertible(self):
        T = Mat.from_rows([[2, 1], [1, 1]])
        res = drazin_inverse(T)
        assert res.index == 0
        assert res.inverse == inverse(T)
        assert res.nilpotent_part.is_zero()
        assert res.core_part == T

    def test_nilpotent(self):
        res = drazin_inverse(J3)
        assert res.index == 3
        assert res.inverse.is_zero()
        assert res.core_part.is_zero()
        assert res.nilpotent_part == J3

    def test_mixed_block(self):
        # diag(2, J_2): core inverts the 2, nilpotent part is the J_2 block
        T = Mat.from_rows([[2, 0, 0], [0, 0, 1], [0, 0, 0]])
        res = drazin_inverse(T)
        assert res.index == 2
        assert res.inverse == Mat.from_rows(
            [[Fraction(1, 2), 0, 0], [0, 0, 0], [0, 0, 0]])

    def test_defining_identities_random(self):
        rng = random.Random(23)
        for _ in range(12):
            T = random_square(rng, rng.randint(1, 5))
            res = drazin_inverse(T)
            S = res.inverse
            assert T @ S == S @ T
            assert S @ T @ S == S
            resid = T @ T @ S - T
            if res.index <= 1:
                assert resid.is_zero()
            else:
                assert (resid ** res.index).is_zero()
                assert not (resid ** (res.index - 1)).is_zero()

    def test_core_nilpotent_split(self):
        rng = random.Random(3)
        for _ in range(8):
            T = random_square(rng, rng.randint(1, 4))
            res = drazin_inverse(T)
            assert res.core_part + res.nilpotent_part == T
            assert res.core_part @ res.nilpotent_part == \
                res.nilpotent_part @ res.core_part
            assert (res.core_part @ res.nilpotent_part).is_zero()
            # the core is Drazin invertible with index <= 1
            assert drazin_inverse(res.core_part).index <= 1
            ni = nilpotency_index(res.nilpotent_part)
            assert ni is not None and ni <= max(res.index, 1)

    def test_matches_independent_oracle(self):
        rng = random.Random(41)
        for _ in range(10):
            T = random_square(rng, rng.randint(1, 4), bound=2)
            assert drazin_inverse(T).inverse == drazin_oracle(T)

    def test_index_equals_ascent(self):
        from ratspec.invariants import profile
        rng = random.Random(8)
        for _ in range(8):
            T = random_square(rng, rng.randint(1, 4))
            assert drazin_inverse(T).index == profile(T).asc

    def test_power_compatibility(self):
        rng = random.Random(19)
        for _ in range(6):
            T = random_square(rng, rng.randint(1, 4), bound=2)
            S = drazin_inverse(T).inverse
            for k in (1, 2, 3):
                assert drazin_inverse(T ** k).inverse == S ** k

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            drazin_inverse(Mat.zero(2, 3))


class TestTransfer:
    def test_invertible_classical_case(self):
        # C = B with BA invertible: S = (AC)^-1 and T = (BA)^-1
        A = Mat.from_rows([[1, 0], [0, 1], [1, 1]])
        B = Mat.from_rows([[1, 0, 0], [0, 1, 0]])
        t = OperatorTriple(A, B, B)
        rep = transfer(t)
        assert rep.verified and rep.matches_direct
        assert rep.s_ac.index <= 1
        assert rep.candidate == inverse(t.ba)

    def test_paper_examples(self):
        for which in (1, 2):
            t = paper_example(which, default_idempotent(2))
            rep = transfer(t)
            assert rep.verified
            assert rep.matches_direct

    def test_generated_mixed_spectrum(self):
        t = rational_spectrum_instance(GenSpec(template="c_equals_b",
                                               block_dim=4, seed=13))
        rep = transfer(t)
        assert rep.verified and rep.matches_direct

    def test_reverse_direction(self):
        # (A^T, C^T, B^T) also satisfies the condition and swaps the roles of
        # AC and BA, so the mirrored construction A S'^2 C with S' a Drazin
        # inverse of BA must yield the Drazin inverse of AC
        for seed in (1, 5, 13):
            t = generate(GenSpec(template="aba_eq_aca", block_dim=4, seed=seed))
            mirrored = OperatorTriple(t.A.transpose(), t.C.transpose(),
                                      t.B.transpose())
            assert mirrored.condition_holds
            s_ba = drazin_inverse(t.ba).inverse
            cand = t.A @ (s_ba @ s_ba) @ t.C
            assert cand == drazin_inverse(t.ac).inverse

    def test_requires_condition(self):
        bad = generate(GenSpec(template="nonconforming", block_dim=3, seed=7))
        with pytest.raises(ConditionNotSatisfied):
            transfer(bad)


class TestProofIdentities:
    def test_invertible_all_trivial(self):
        A = Mat.identity(2)
        B = Mat.from_rows([[2, 0], [1, 1]])
        t = OperatorTriple(A, B, B)
        rep = proof_identities(t)
        assert rep.commutation and rep.residual_is_bpa and rep.cycle
        assert rep.pac_matches and rep.pac_nilpotent
        assert rep.index == 0

    def test_paper_examples(self):
        for which in (1, 2):
            t = paper_example(which, default_idempotent(2))
            rep = proof_identities(t)
            assert rep.commutation and rep.residual_is_bpa
            assert rep.cycle and rep.pac_matches and rep.pac_nilpotent

    def test_generated(self):
        for seed in (2, 9):
            t = generate(GenSpec(template="aba_eq_aca", block_dim=4, seed=seed))
            rep = proof_identities(t)
            assert rep.commutation and rep.residual_is_bpa
            assert rep.cycle and rep.pac_matches and rep.pac_nilpotent

    def test_requires_condition(self):
        bad = generate(GenSpec(template="nonconforming", block_dim=3, seed=11))
        with pytest.raises(ConditionNotSatisfied):
            proof_identities(bad)

    def test_nilpotency_non_square_rejected(self):
        with pytest.raises(ValueError):
            nilpotency_index(Mat.zero(2, 3))
