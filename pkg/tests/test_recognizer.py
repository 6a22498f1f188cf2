import random

import pytest

from leonard import (GF, QQ, BidiagonalPair, Matrix, SingularMatrixError,
                     conjugation_witness_check, mat_inv, realize, recognize)
from leonard.generate import random_valid_array


def pair_of(real):
    return BidiagonalPair(real.A, real.A_star)


def replace_entry(m, i, j, value):
    rows = [list(r) for r in m.rows]
    rows[i][j] = m.field(value)
    return Matrix.build(m.field, rows)


class TestAccept:
    def test_K1_roundtrip(self, K1):
        verdict = recognize(pair_of(realize(K1)))
        assert verdict.accepted
        assert verdict.array == K1
        assert verdict.S == Matrix.build(QQ, [[1, 0], [1, -1]])
        assert verdict.failed is None

    def test_K1_witness_conjugation(self, K1):
        r = realize(K1)
        verdict = recognize(pair_of(r))
        conjugated = mat_inv(verdict.S) @ r.A_star @ verdict.S
        assert conjugated == Matrix.build(QQ, [[-1, 2], [0, 1]])

    def test_K2_roundtrip(self, K2):
        verdict = recognize(pair_of(realize(K2)))
        assert verdict.accepted and verdict.array == K2

    def test_diameter_zero(self):
        from leonard import ParameterArray

        verdict = recognize(pair_of(realize(
            ParameterArray.of(QQ, [5], [7], [], []))))
        assert verdict.accepted
        assert verdict.S == Matrix.identity(QQ, 1)

    def test_fuzzed_roundtrip_bit_exact(self, sample_arrays):
        for arr in sample_arrays:
            verdict = recognize(pair_of(realize(arr)))
            assert verdict.accepted
            assert verdict.array == arr  # all four sequences, entry-wise


class TestReject:
    def test_duplicate_dual_eigenvalue_is_pa2(self, K2):
        r = realize(K2)
        a_star = replace_entry(r.A_star, 2, 2, 2)  # diagonal (2, 0, 2)
        verdict = recognize(BidiagonalPair(r.A, a_star))
        assert not verdict.accepted
        assert verdict.failed == "PA2"

    def test_zero_superdiagonal_is_pa1(self, K2):
        r = realize(K2)
        a_star = replace_entry(r.A_star, 0, 1, 0)
        verdict = recognize(BidiagonalPair(r.A, a_star))
        assert not verdict.accepted
        assert verdict.failed == "PA1"

    def test_wrong_subdiagonal_is_shape(self, K2):
        r = realize(K2)
        a = replace_entry(r.A, 1, 0, 3)
        verdict = recognize(BidiagonalPair(a, r.A_star))
        assert verdict.failed == "shape"

    def test_offband_entry_is_shape(self, K2):
        r = realize(K2)
        a = replace_entry(r.A, 0, 2, 1)
        assert recognize(BidiagonalPair(a, r.A_star)).failed == "shape"

    def test_diagonal_edit_breaks_validity(self, K2):
        # moving one eigenvalue of A perturbs the recovered traces and
        # must surface as a failed validity condition
        r = realize(K2)
        a = replace_entry(r.A, 1, 1, 1)  # theta = (2, 1, -2), still distinct
        verdict = recognize(BidiagonalPair(a, r.A_star))
        assert not verdict.accepted
        assert verdict.failed in ("PA3", "PA4", "PA5", "trace")

    def test_mutations_fuzzed(self):
        rng = random.Random(77)
        for field in (QQ, GF(10007)):
            for d in (2, 3, 4):
                arr = random_valid_array(rng, field, d)
                r = realize(arr)
                mutated = [
                    BidiagonalPair(r.A, replace_entry(
                        r.A_star, 0, 1, 0)),
                    BidiagonalPair(r.A, replace_entry(
                        r.A_star, d, d, r.A_star.rows[0][0])),
                    BidiagonalPair(replace_entry(
                        r.A, 1, 1, r.A.rows[1][1] + 1), r.A_star),
                ]
                for pair in mutated:
                    assert not recognize(pair).accepted


class TestWitnessCheck:
    def test_witness_passes_for_true_switching_element(self, K1, K2):
        for arr in (K1, K2):
            r = realize(arr)
            assert conjugation_witness_check(pair_of(r), r.S, arr.phi)

    def test_identity_is_not_a_witness(self, K1):
        r = realize(K1)
        assert not conjugation_witness_check(
            pair_of(r), Matrix.identity(QQ, 2), K1.phi)

    def test_singular_candidate_rejected(self, K1):
        r = realize(K1)
        with pytest.raises(SingularMatrixError):
            conjugation_witness_check(
                pair_of(r), Matrix.build(QQ, [[1, 1], [1, 1]]), K1.phi)

    def test_scaled_witness_also_passes(self, K2):
        # the witness property is scale-invariant
        r = realize(K2)
        assert conjugation_witness_check(pair_of(r), r.S.scale(7), K2.phi)
