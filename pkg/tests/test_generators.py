# =============================================================================
# tests/test_generators.py - Generator Sets and Rotation Paths
# =============================================================================

import json
import math

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import settings as hyp_settings
from hypothesis import strategies as st

from rope_algebra.exceptions import DimensionError, DomainError, OrthogonalityError, ParseError, StateError
from rope_algebra.generators import (
    FrequencySchedule,
    GeneratorSet,
    as_position,
    conjugate,
    embed_in_larger,
    from_matrices,
    infer_block_plan,
    load_generator_set,
    mixed_2d,
    rope_matrix_dense,
    rope_matrix_fast,
    rotate_vectors,
    save_generator_set,
    standard_2d,
    toral_basis,
)
from rope_algebra.linalg.core import J, block_diag, rot2_block
from rope_algebra.ortho import build_orthogonal, random_ortho_param

ZERO2 = np.zeros((2, 2))
I2 = np.eye(2)
coordinate = st.floats(min_value=-20.0, max_value=20.0)

STD_1D = toral_basis(1, 1, FrequencySchedule.geometric(1, theta=1.0))
STD_2D = standard_2d(FrequencySchedule.geometric(1, theta=1.0))


class TestFrequencySchedule:
    def test_single_block_uses_theta(self):
        assert FrequencySchedule.geometric(1, theta=2.5).values == (2.5,)

    def test_geometric_base_100(self):
        np.testing.assert_allclose(FrequencySchedule.geometric(2, base=100).values, [1.0, 0.1])

    def test_theta_scales_every_block(self):
        plain = FrequencySchedule.geometric(3, base=10000.0)
        scaled = FrequencySchedule.geometric(3, base=10000.0, theta=3.0)
        np.testing.assert_allclose(scaled.values, 3.0 * np.array(plain.values))

    def test_decreasing(self):
        values = FrequencySchedule.geometric(4).values
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_base_must_exceed_one(self):
        with pytest.raises(DomainError):
            FrequencySchedule.geometric(2, base=1.0)

    def test_period(self):
        assert FrequencySchedule.geometric(1, theta=2.0).period == pytest.approx(math.pi)

    @pytest.mark.parametrize("values", [(), (0.0,), (-1.0,), (float("nan"),)])
    def test_rejects_bad_values(self, values):
        with pytest.raises(DomainError):
            FrequencySchedule(base=10000.0, values=values)


class TestToralBasis:
    def test_one_axis_is_j(self, std_1d):
        assert std_1d.d == 2
        np.testing.assert_array_equal(std_1d.basis[0], J)

    def test_two_axes_disjoint_blocks(self, std_2d, eq_b1_b2):
        np.testing.assert_array_equal(std_2d.basis[0], eq_b1_b2[0])
        np.testing.assert_array_equal(std_2d.basis[1], eq_b1_b2[1])

    def test_theta_multiplies_blocks(self):
        gen = standard_2d(FrequencySchedule.geometric(1, theta=0.3))
        np.testing.assert_allclose(gen.basis[1], block_diag([ZERO2, 0.3 * J]))

    def test_two_blocks_per_axis(self):
        gen = toral_basis(2, 2, FrequencySchedule.geometric(2, base=100))
        assert gen.d == 8
        np.testing.assert_allclose(gen.coefficients, [[1.0, 0.1, 0.0, 0.0], [0.0, 0.0, 1.0, 0.1]])

    def test_schedule_length_must_match(self):
        with pytest.raises(DomainError):
            toral_basis(2, 2, FrequencySchedule.geometric(3))

    def test_basis_is_read_only(self, std_2d):
        with pytest.raises(ValueError):
            std_2d.basis[0, 0, 0] = 1.0

    @pytest.mark.parametrize("n_axes,blocks", [(2, 1), (3, 2), (4, 1)])
    def test_generators_have_disjoint_support(self, n_axes, blocks):
        gen = toral_basis(n_axes, blocks, FrequencySchedule.geometric(blocks))
        for i in range(n_axes):
            for j in range(n_axes):
                if i != j:
                    np.testing.assert_array_equal(gen.basis[i] @ gen.basis[j], np.zeros((gen.d, gen.d)))


class TestGeneratorSetStructure:
    def test_odd_dimension_rejected(self):
        with pytest.raises(DomainError):
            GeneratorSet(
                d=3, n_axes=1, blocks_per_axis=1, basis=np.zeros((1, 3, 3)),
                schedule=FrequencySchedule.geometric(1),
            )

    def test_basis_shape_checked(self):
        with pytest.raises(DimensionError):
            GeneratorSet(
                d=4, n_axes=2, blocks_per_axis=1, basis=np.zeros((1, 4, 4)),
                schedule=FrequencySchedule.geometric(1),
            )

    def test_position_length_checked(self, std_2d):
        with pytest.raises(DimensionError):
            rope_matrix_dense(std_2d, [1.0, 2.0, 3.0])

    def test_position_must_be_finite(self):
        with pytest.raises(DomainError):
            as_position([np.inf], 1)


class TestStandard2d:
    def test_first_axis_only(self, std_2d):
        r = rope_matrix_dense(std_2d, [1.3, 0.0])
        np.testing.assert_allclose(r[:2, :2], rot2_block(1.3), atol=1e-14)
        np.testing.assert_allclose(r[2:, 2:], I2, atol=1e-14)

    def test_origin(self, std_2d):
        np.testing.assert_allclose(rope_matrix_dense(std_2d, [0.0, 0.0]), np.eye(4), atol=1e-15)

    def test_quarter_and_half_turn(self, std_2d):
        r = rope_matrix_dense(std_2d, [math.pi / 2, math.pi])
        np.testing.assert_allclose(r[:2, :2], J, atol=1e-14)
        np.testing.assert_allclose(r[2:, 2:], -I2, atol=1e-14)

    @seed(7)
    @hyp_settings(max_examples=100, deadline=None)
    @given(x1=coordinate, x2=coordinate)
    def test_closed_form(self, x1, x2):
        expected = block_diag([rot2_block(x1), rot2_block(x2)])
        np.testing.assert_allclose(rope_matrix_dense(STD_2D, [x1, x2]), expected, atol=1e-12)


class TestStandard1d:
    @seed(3)
    @hyp_settings(max_examples=100, deadline=None)
    @given(m=coordinate)
    def test_closed_form(self, m):
        np.testing.assert_allclose(rope_matrix_dense(STD_1D, [m]), rot2_block(m), atol=1e-12)


class TestMixed2d:
    def test_combined_coordinate(self):
        gen = mixed_2d(1.0, 1.0)
        expected = block_diag([rot2_block(3.0), rot2_block(3.0)])
        np.testing.assert_allclose(rope_matrix_dense(gen, [1.0, 2.0]), expected, atol=1e-13)

    def test_flagged_degenerate(self, mixed):
        assert mixed.is_degenerate
        np.testing.assert_array_equal(mixed.basis[0], mixed.basis[1])

    def test_swapped_positions_collide(self, mixed):
        np.testing.assert_allclose(
            rope_matrix_dense(mixed, [1.0, 0.0]), rope_matrix_dense(mixed, [0.0, 1.0]), atol=1e-15
        )

    @pytest.mark.parametrize("theta1,theta2", [(0.0, 1.0), (1.0, -2.0)])
    def test_positive_frequencies(self, theta1, theta2):
        with pytest.raises(DomainError):
            mixed_2d(theta1, theta2)


class TestEmbedInLarger:
    def test_so6_pair(self, std_2d):
        gen = embed_in_larger(std_2d, 6)
        assert gen.d == 6
        np.testing.assert_array_equal(gen.basis[0], block_diag([J, ZERO2, ZERO2]))
        np.testing.assert_array_equal(gen.basis[1], block_diag([ZERO2, J, ZERO2]))

    def test_pads_basis_change(self, givens_d8):
        gen = embed_in_larger(givens_d8, 10)
        np.testing.assert_array_equal(gen.q[:8, :8], givens_d8.q)
        np.testing.assert_array_equal(gen.q[8:, 8:], I2)
        x = np.array([0.4, -2.0])
        np.testing.assert_allclose(rope_matrix_fast(gen, x), rope_matrix_dense(gen, x), atol=1e-10)

    @pytest.mark.parametrize("d_target", [4, 2, 7])
    def test_target_must_be_larger_and_even(self, std_2d, d_target):
        with pytest.raises(DomainError):
            embed_in_larger(std_2d, d_target)


class TestConjugate:
    def test_identity_is_noop(self, std_2d):
        gen = conjugate(std_2d, np.eye(4))
        np.testing.assert_array_equal(gen.basis, std_2d.basis)

    def test_plane_swap_exchanges_generators(self, std_2d):
        swap = np.zeros((4, 4))
        swap[0, 2] = swap[1, 3] = swap[2, 0] = swap[3, 1] = 1.0
        gen = conjugate(std_2d, swap)
        np.testing.assert_array_equal(gen.basis[0], std_2d.basis[1])
        np.testing.assert_array_equal(gen.basis[1], std_2d.basis[0])

    def test_dense_but_commuting(self, givens_d8):
        b1, b2 = givens_d8.basis
        assert np.count_nonzero(np.abs(b1) > 1e-12) > 8
        np.testing.assert_allclose(b1 @ b2 - b2 @ b1, 0.0, atol=1e-13)

    def test_composes_basis_changes(self, std_2d, rng):
        q1 = build_orthogonal(random_ortho_param("exp", 4, rng))
        q2 = build_orthogonal(random_ortho_param("cayley", 4, rng))
        gen = conjugate(conjugate(std_2d, q1), q2)
        np.testing.assert_allclose(gen.q, q2 @ q1, atol=1e-14)

    def test_rejects_non_orthogonal(self, std_2d):
        with pytest.raises(OrthogonalityError) as info:
            conjugate(std_2d, 1.1 * np.eye(4))
        assert info.value.detail["orth_residual"] > 0.1

    def test_rejects_reflection(self, std_2d):
        with pytest.raises(OrthogonalityError) as info:
            conjugate(std_2d, np.diag([1.0, 1.0, 1.0, -1.0]))
        assert info.value.detail["det_residual"] == pytest.approx(2.0)

    def test_dimension_mismatch(self, std_2d):
        with pytest.raises(DimensionError):
            conjugate(std_2d, np.eye(6))


class TestRotationPaths:
    def test_fast_matches_dense_without_basis_change(self, std_2d, rng):
        for x in rng.uniform(-50.0, 50.0, size=(20, 2)):
            np.testing.assert_allclose(rope_matrix_fast(std_2d, x), rope_matrix_dense(std_2d, x), atol=1e-12)

    def test_fast_matches_dense_with_givens(self, rng):
        base = toral_basis(2, 2, FrequencySchedule.geometric(2))
        for _ in range(100):
            gen = conjugate(base, build_orthogonal(random_ortho_param("givens", 8, rng)))
            x = rng.uniform(-50.0, 50.0, size=2)
            disagreement = np.linalg.norm(rope_matrix_fast(gen, x) - rope_matrix_dense(gen, x), "fro")
            assert disagreement < 1e-10

    @pytest.mark.parametrize("t,s", [(0.5, 1.5), (-2.0, 0.75), (3.0, -3.0)])
    def test_one_parameter_group_along_a_ray(self, givens_d8, t, s):
        x = np.array([0.9, -1.3])
        lhs = rope_matrix_dense(givens_d8, t * x) @ rope_matrix_dense(givens_d8, s * x)
        np.testing.assert_allclose(lhs, rope_matrix_dense(givens_d8, (t + s) * x), atol=1e-11)

    def test_origin_is_identity_for_any_basis_change(self, givens_d8):
        np.testing.assert_allclose(rope_matrix_fast(givens_d8, [0.0, 0.0]), np.eye(8), atol=1e-14)

    def test_fast_path_at_d64(self, rng):
        gen = toral_basis(2, 16, FrequencySchedule.geometric(16))
        x = rng.uniform(-50.0, 50.0, size=2)
        assert np.linalg.norm(rope_matrix_fast(gen, x) - rope_matrix_dense(gen, x), "fro") < 1e-10

    def test_fast_needs_block_plan(self, rng):
        b = rng.standard_normal((4, 4))
        gen = from_matrices([b - b.T])
        assert gen.block_plan is None
        with pytest.raises(StateError):
            rope_matrix_fast(gen, [1.0])

    def test_rotate_vectors_matches_dense(self, givens_d8, rng):
        positions = rng.uniform(-10.0, 10.0, size=(5, 2))
        vectors = rng.standard_normal((5, 8))
        rotated = rotate_vectors(givens_d8, positions, vectors)
        for x, v, w in zip(positions, vectors, rotated):
            np.testing.assert_allclose(w, rope_matrix_dense(givens_d8, x) @ v, atol=1e-11)

    def test_rotate_vectors_shape_checked(self, std_2d):
        with pytest.raises(DimensionError):
            rotate_vectors(std_2d, np.zeros((2, 2)), np.zeros((3, 4)))


class TestInferBlockPlan:
    def test_recovers_coefficients_after_conjugation(self, givens_d8):
        rebuilt = from_matrices(givens_d8.basis, q=givens_d8.q)
        np.testing.assert_allclose(rebuilt.coefficients, givens_d8.coefficients, atol=1e-12)

    def test_dense_frame_has_no_plan(self, givens_d8):
        assert infer_block_plan(np.array(givens_d8.basis)) is None

    def test_inferred_schedule(self):
        gen = from_matrices([2.0 * J])
        assert gen.schedule.values == (2.0,)
        assert gen.block_plan == {0: ((0, 2.0),)}


class TestGeneratorSetFile:
    def test_save_and_load(self, givens_d8, tmp_path):
        path = tmp_path / "g.json"
        save_generator_set(givens_d8, path, seed=7)
        loaded = load_generator_set(path)
        np.testing.assert_array_equal(loaded.basis, givens_d8.basis)
        np.testing.assert_array_equal(loaded.q, givens_d8.q)
        assert loaded.schedule == givens_d8.schedule
        np.testing.assert_allclose(loaded.coefficients, givens_d8.coefficients, atol=1e-12)

    def test_floats_written_with_17_digits(self, tmp_path):
        gen = toral_basis(1, 1, FrequencySchedule.geometric(1, theta=0.1))
        path = tmp_path / "g.json"
        save_generator_set(gen, path)
        text = path.read_text()
        assert "0.10000000000000001" in text
        assert "0.0," in text
        loaded = load_generator_set(path)
        np.testing.assert_array_equal(loaded.basis, gen.basis)
        save_generator_set(loaded, tmp_path / "again.json")
        assert (tmp_path / "again.json").read_text() == text

    def test_flags_survive(self, mixed, tmp_path):
        path = tmp_path / "mixed.json"
        save_generator_set(mixed, path)
        assert load_generator_set(path).is_degenerate

    def test_truncated_file(self, std_2d, tmp_path):
        path = tmp_path / "g.json"
        save_generator_set(std_2d, path)
        text = path.read_text()
        path.write_text(text[: len(text) // 2])
        with pytest.raises(ParseError):
            load_generator_set(path)

    def test_wrong_entry_count(self, std_2d, tmp_path, read_json):
        path = tmp_path / "g.json"
        save_generator_set(std_2d, path)
        data = read_json(path)
        data["basis"][0] = data["basis"][0][:-1]
        path.write_text(json.dumps(data))
        with pytest.raises(ParseError):
            load_generator_set(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_generator_set(tmp_path / "absent.json")
