"""Tests for class-P sequences, the parameter formulas and the coefficient inequalities."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from caratheodory import (
    CaratheodoryError,
    MoebiusMixture,
    PSequence,
    SchwarzParams,
    bound_cube,
    bound_cube_parts,
    bound_mixed,
    bound_pn,
    chebyshev_sequence,
    cube_root_mixture,
    inequality_violations,
    p2_from,
    p3_from,
    p4_from,
    p_sequence_from,
    random_exact_sequence,
    random_mixture,
    random_schwarz_params,
    sample_mixture,
    sample_p_batch,
)

F = Fraction


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(11)


class TestPSequence:
    """Validation and 1-based access."""

    def test_one_based_with_zero_padding(self) -> None:
        p = PSequence.of(F(1), F(1, 2))
        assert p[1] == 1 and p[2] == F(1, 2)
        assert p[5] == 0
        assert p.padded() == (1, F(1, 2), 0, 0, 0, 0)

    def test_index_zero_rejected(self) -> None:
        with pytest.raises(IndexError):
            PSequence.of(1)[0]

    def test_coefficient_above_two(self) -> None:
        with pytest.raises(CaratheodoryError, match="exceeds 2"):
            PSequence.of(0, F(5, 2))

    def test_complex_coefficient_checked_by_modulus(self) -> None:
        with pytest.raises(CaratheodoryError, match="exceeds 2"):
            PSequence.of(1.5 + 1.5j)

    def test_too_long(self) -> None:
        with pytest.raises(CaratheodoryError, match="at most 6"):
            PSequence.of(*([0] * 7))

    def test_to_series(self) -> None:
        s = PSequence.of(2, 2).to_series(order=3)
        assert s.coeffs == (1, 2, 2, 0)


class TestSchwarzParams:
    """The three-parameter description of p2, p3, p4."""

    def test_p1_range(self) -> None:
        with pytest.raises(CaratheodoryError, match="p1 must lie"):
            SchwarzParams(F(3))

    def test_disk(self) -> None:
        with pytest.raises(CaratheodoryError, match="gamma"):
            SchwarzParams(F(1), gamma=F(3, 2))

    def test_half_plane_kernel(self) -> None:
        assert p_sequence_from(SchwarzParams(F(2))).padded()[:4] == (2, 2, 2, 2)

    def test_square_kernel(self) -> None:
        p = p_sequence_from(SchwarzParams(F(0), gamma=F(1)))
        assert p.padded()[:4] == (0, 2, 0, 2)

    def test_cube_kernel(self) -> None:
        p = p_sequence_from(SchwarzParams(F(0), eta=F(1)))
        assert p.padded()[:4] == (0, 0, 2, 0)

    def test_parameter_formulas(self) -> None:
        sp = SchwarzParams(F(1), gamma=F(1, 2))
        assert (p2_from(sp), p3_from(sp), p4_from(sp)) == (F(5, 4), F(13, 16), F(53, 64))

    def test_batched_params(self, rng) -> None:
        sp = random_schwarz_params(rng, 1000)
        assert np.all((sp.p1 >= 0) & (sp.p1 <= 2))
        assert np.all(np.abs(sp.gamma) <= 1)
        assert np.all(np.abs(sp.rho) <= 1)


class TestMixtures:
    """Genuine sequences from Herglotz mixtures."""

    def test_single_atom(self) -> None:
        p = sample_mixture(MoebiusMixture((1.0,), (0.0,)), 4)
        assert np.allclose(p.values, 2)

    def test_cube_roots(self) -> None:
        p = sample_mixture(cube_root_mixture())
        assert np.allclose(p.values, (0, 0, 2, 0, 0, 2), atol=1e-12)

    def test_weights_must_sum_to_one(self) -> None:
        with pytest.raises(CaratheodoryError, match="sum to"):
            MoebiusMixture((0.5, 0.4), (0.0, 1.0))

    def test_negative_weight(self) -> None:
        with pytest.raises(CaratheodoryError, match="non-negative"):
            MoebiusMixture((1.5, -0.5), (0.0, 1.0))

    def test_n_max_range(self) -> None:
        with pytest.raises(CaratheodoryError, match="n_max"):
            sample_mixture(cube_root_mixture(), 7)

    def test_random_mixtures_obey_inequalities(self, rng) -> None:
        mixtures = [random_mixture(rng) for _ in range(200)]
        assert all(1 <= len(m.weights) <= 5 for m in mixtures)
        batch = np.column_stack([sample_mixture(m).values for m in mixtures])
        assert inequality_violations(batch) == 0

    def test_chebyshev_at_zero_cosine(self) -> None:
        p = chebyshev_sequence([F(1)], [F(0)])
        assert p.values == (0, -2, 0, 2, 0, -2)

    def test_chebyshev_matches_float_mixture(self) -> None:
        c = F(1, 3)
        theta = math.acos(1 / 3)
        exact = chebyshev_sequence([F(1)], [c])
        approx = sample_mixture(MoebiusMixture((0.5, 0.5), (theta, -theta)))
        assert np.allclose([float(v) for v in exact.values], approx.values)

    def test_chebyshev_rejects_bad_cosine(self) -> None:
        with pytest.raises(CaratheodoryError, match="cosines"):
            chebyshev_sequence([F(1)], [F(3, 2)])

    def test_random_exact_sequences_are_rational(self, rng) -> None:
        for _ in range(20):
            p = random_exact_sequence(rng)
            assert all(isinstance(v, Fraction) for v in p.values)

    def test_batch_layout(self, rng) -> None:
        batch = sample_p_batch(rng, 50)
        assert batch.shape == (6, 50)
        assert np.allclose(batch[:, 0], (0, 0, 2, 0, 0, 2))
        assert np.allclose(batch[:, 1], 2)
        assert np.all(np.abs(batch) <= 2 + 1e-12)

    def test_batch_needs_samples(self, rng) -> None:
        with pytest.raises(CaratheodoryError, match="at least one"):
            sample_p_batch(rng, 0)


class TestInequalities:
    """Coefficient inequalities and their sampled confirmation."""

    def test_pn(self) -> None:
        assert bound_pn() == 2

    @pytest.mark.parametrize("nu, expected", [
        (F(0), 2), (F(1, 2), 2), (F(1), 2), (F(2), 6), (F(-1), 6),
    ])
    def test_mixed(self, nu, expected) -> None:
        assert bound_mixed(nu) == expected

    def test_cube_below_threshold(self) -> None:
        assert bound_cube_parts(F(4, 3)) == (F(16, 3), 1)
        assert bound_cube(F(0)) == 8.0

    def test_cube_above_threshold(self) -> None:
        assert bound_cube_parts(F(2)) == (4, 2)
        assert bound_cube(F(2)) == pytest.approx(4 * math.sqrt(2))

    def test_sampled_sequences_satisfy_everything(self, rng) -> None:
        assert inequality_violations(sample_p_batch(rng, 10_000)) == 0

    def test_violations_detected(self) -> None:
        batch = np.full((6, 1), 2.0, dtype=complex)
        batch[0, 0] = 3.0
        assert inequality_violations(batch) > 0
