import random

import pytest

from leonard import (GF, QQ, D4Element, InconsistentSplitsError,
                     ParameterArray, ParameterInputError, d4_apply, d4_orbit,
                     q_parameter, solve_splits, validate_pa)
from leonard.generate import random_valid_array
from leonard.parray import DOWN, DOWNDOWN, STAR, d4_relations_check


class TestValidate:
    def test_desk_instances_valid(self, K1, K2):
        assert validate_pa(K1).valid
        assert validate_pa(K2).valid

    def test_zero_split_entry_fails_pa1(self, K2):
        broken = ParameterArray.of(QQ, K2.theta, K2.theta_star,
                                   K2.varphi, (0, 4))
        report = validate_pa(broken)
        assert not report.valid
        assert report.pa1 == 1
        assert report.first_failing() == "PA1"

    def test_diameter_zero_is_valid(self):
        arr = ParameterArray.of(QQ, [5], [7], [], [])
        assert validate_pa(arr).valid

    def test_duplicate_eigenvalue_fails_pa2(self, K2):
        broken = ParameterArray.of(QQ, (2, 0, 2), K2.theta_star,
                                   K2.varphi, K2.phi)
        report = validate_pa(broken)
        assert report.pa2 == 2

    def test_wrong_pa3_value_detected(self, K2):
        broken = ParameterArray.of(QQ, K2.theta, K2.theta_star,
                                   (-4, -5), K2.phi)
        report = validate_pa(broken)
        assert report.pa3 == 2

    def test_pa5_detected_on_bad_ratio(self):
        # theta breaks the constant-ratio condition at i = 2 (d = 3)
        theta = (0, 1, 2, 10)
        theta_star = (0, 1, 2, 3)
        with pytest.raises(ParameterInputError):
            solve_splits(QQ, theta, theta_star, 1)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ParameterInputError):
            ParameterArray.of(QQ, [1, -1], [1], [-2], [2])
        with pytest.raises(ParameterInputError):
            ParameterArray.of(QQ, [1, -1], [1, -1], [-2, 3], [2])

    def test_small_prime_modulus_rejected(self):
        with pytest.raises(ParameterInputError):
            ParameterArray.of(GF(3), [0, 1, 2], [0, 1, 2], [1, 1], [1, 1])

    def test_report_json(self, K1):
        js = validate_pa(K1).to_json()
        assert js["valid"] is True
        assert js["conditions"]["PA3"] == {"ok": True}


class TestSolveSplits:
    def test_reconstructs_K2(self, K2):
        assert solve_splits(QQ, (2, 0, -2), (2, 0, -2), 4) == K2

    def test_reconstructs_K1(self, K1):
        assert solve_splits(QQ, (1, -1), (1, -1), 2) == K1

    def test_inconsistent_seed_reports_pa1(self):
        # seed 4 forces varphi_1 = 4 - 4 = 0
        with pytest.raises(InconsistentSplitsError) as err:
            solve_splits(QQ, (1, -1), (1, -1), 4)
        assert err.value.condition == "PA1"

    def test_zero_seed_rejected(self):
        with pytest.raises(ParameterInputError):
            solve_splits(QQ, (1, -1), (1, -1), 0)

    def test_duplicate_input_rejected(self):
        with pytest.raises(ParameterInputError):
            solve_splits(QQ, (1, 1), (1, -1), 2)

    def test_diameter_zero(self):
        arr = solve_splits(QQ, [3], [9], 1)
        assert arr.d == 0 and arr.varphi == () and arr.phi == ()

    def test_roundtrip_preserves_inputs(self, sample_arrays):
        for arr in sample_arrays:
            if arr.d == 0:
                continue
            rebuilt = solve_splits(arr.field, arr.theta, arr.theta_star,
                                   arr.phi[0])
            assert rebuilt == arr


class TestD4:
    def test_identity(self, K2):
        assert d4_apply(D4Element.identity(), K2) == K2

    def test_downdown_on_K2(self, K2):
        out = d4_apply(D4Element.of(DOWNDOWN), K2)
        assert out == ParameterArray.of(QQ, (-2, 0, 2), (2, 0, -2),
                                        (4, 4), (-4, -4))

    def test_star_squared_is_identity(self, K1):
        assert d4_apply(D4Element.of(STAR, STAR), K1) == K1

    def test_star_action(self, K2):
        out = d4_apply(D4Element.of(STAR), K2)
        assert out.theta == K2.theta_star and out.theta_star == K2.theta
        assert out.varphi == K2.varphi and out.phi == K2.phi[::-1]

    def test_down_action(self, K2):
        out = d4_apply(D4Element.of(DOWN), K2)
        assert out.theta == K2.theta
        assert out.theta_star == K2.theta_star[::-1]
        assert out.varphi == K2.phi[::-1] and out.phi == K2.varphi[::-1]

    def test_group_has_eight_elements(self):
        assert len(set(D4Element.all_elements())) == 8

    def test_relations_and_orbits(self, sample_arrays):
        for arr in sample_arrays:
            assert d4_relations_check(arr).ok
            assert 8 % len(d4_orbit(arr)) == 0

    def test_validity_preserved(self, sample_arrays):
        for arr in sample_arrays:
            for g in D4Element.all_elements():
                assert validate_pa(d4_apply(g, arr)).valid

    def test_word_reduction_matches_extensional_action(self, sample_arrays):
        rng = random.Random(12)
        gens = (STAR, DOWN, DOWNDOWN)
        for arr in sample_arrays[:4]:
            for _ in range(25):
                word = [rng.choice(gens) for _ in range(rng.randrange(0, 7))]
                g = D4Element.of(*word)
                reduced = D4Element.of(*g.canonical_word)
                assert d4_apply(g, arr) == d4_apply(reduced, arr)

    def test_invalid_array_rejected(self, K2):
        broken = ParameterArray.of(QQ, K2.theta, K2.theta_star,
                                   K2.varphi, (0, 4))
        with pytest.raises(ValueError):
            d4_apply(D4Element.of(STAR), broken)


class TestQParameter:
    def test_small_diameter_undetermined(self, K2):
        assert q_parameter(K2).status == "undetermined"

    def test_affine_gives_one(self):
        arr = solve_splits(QQ, (0, 1, 2, 3), (0, 2, 4, 6), 5)
        qp = q_parameter(arr)
        assert qp.status == "value" and qp.q == QQ(1)
        assert not qp.usable

    def test_geometric_base_two(self):
        theta = tuple(QQ(2) ** i for i in range(4))
        arr = solve_splits(QQ, theta, theta, 1)
        qp = q_parameter(arr)
        assert qp.q == QQ(2)
        assert qp.usable

    def test_inverse_ratio_gives_same_canonical_root(self):
        theta = tuple(QQ(2) ** i for i in range(4))
        theta_inv = tuple(QQ.parse("1/2") ** i for i in range(4))
        arr = solve_splits(QQ, theta_inv, theta, 1)
        assert q_parameter(arr).q == QQ(2)

    def test_not_in_field(self):
        # ratio 4 means q + 1/q = 3, irrational over the rationals
        theta, step = [QQ(0)], [QQ(1), QQ(1)]
        for i in range(3):
            theta.append(theta[-1] - step[i])
            step.append(step[-1] * 3 - step[-2])
        arr = solve_splits(QQ, theta, theta, 1)
        assert q_parameter(arr).status == "not-in-field"

    def test_prime_field_smallest_residue(self):
        f = GF(10007)
        q = f(3)
        theta = tuple(q ** i for i in range(4))
        arr = solve_splits(f, theta, theta, 1)
        got = q_parameter(arr).q
        assert got in (f(3), 1 / f(3))
        assert got.value == min(f(3).value, (1 / f(3)).value)

    def test_fuzzed_roots_satisfy_quadratic(self):
        rng = random.Random(4)
        for field in (QQ, GF(10007)):
            for _ in range(10):
                arr = random_valid_array(rng, field, 4, "geometric")
                qp = q_parameter(arr)
                assert qp.status == "value"
                c = ((arr.theta[0] - arr.theta[3])
                     / (arr.theta[1] - arr.theta[2]))
                assert qp.q + 1 / qp.q + 1 == c
