"""Tests for random streams, arrivals, stable draws and spectral measures."""

import math
from unittest.mock import patch

import numpy as np
import pytest

from src.exceptions import ConfigError, DomainError
from src.sampling import (
    ArrivalSequence,
    RngStream,
    SpectralMeasure,
    default_truncation,
    measure_moments,
    sample_arrivals,
    sample_frequencies,
    sample_positive_stable,
)


class TestRngStream:
    """Tests for counter-based streams."""

    def test_same_address_gives_same_draws(self):
        a = RngStream(7, 3).generator().standard_normal(16)
        b = RngStream(7, 3).generator().standard_normal(16)
        np.testing.assert_array_equal(a, b)

    def test_generator_restarts_at_stream_start(self):
        stream = RngStream(7, 3)
        first = stream.generator().uniform(size=4)
        again = stream.generator().uniform(size=4)
        np.testing.assert_array_equal(first, again)

    def test_different_indices_differ(self):
        a = RngStream(7, 0).generator().standard_normal(16)
        b = RngStream(7, 1).generator().standard_normal(16)
        assert not np.array_equal(a, b)

    def test_children_are_independent_of_parent(self):
        parent = RngStream(7, 0)
        child = parent.child(0)
        assert child.path == (0,)
        assert child.master_seed == 7 and child.stream_index == 0
        a = parent.generator().standard_normal(8)
        b = child.generator().standard_normal(8)
        c = parent.child(1).generator().standard_normal(8)
        assert not np.array_equal(a, b)
        assert not np.array_equal(b, c)

    def test_is_a_value_type(self):
        assert RngStream(1, 2).child(3) == RngStream(1, 2, (3,))

    @pytest.mark.parametrize("seed, index", [(-1, 0), (0, -1), (2**64, 0)])
    def test_rejects_out_of_range(self, seed, index):
        with pytest.raises(DomainError, match="unsigned 64-bit"):
            RngStream(seed, index)

    def test_rejects_negative_path(self):
        with pytest.raises(DomainError, match="sub-stream"):
            RngStream(0, 0, (-1,))


class TestArrivals:
    """Tests for Poisson arrival times."""

    def test_increasing_and_positive(self):
        arrivals = sample_arrivals(500, RngStream(1, 0))
        g = arrivals.gammas
        assert g.shape == (500,)
        assert g[0] > 0.0
        assert np.all(np.diff(g) > 0.0)

    def test_law_of_large_numbers(self):
        """Γ_K / K → 1."""
        arrivals = sample_arrivals(100_000, RngStream(2, 0))
        assert arrivals.gammas[-1] / 100_000 == pytest.approx(1.0, abs=0.02)

    def test_weights(self):
        arrivals = ArrivalSequence(np.array([1.0, 4.0, 9.0]), 3)
        np.testing.assert_allclose(arrivals.weights(1.0), [1.0, 0.25, 1.0 / 9.0])
        np.testing.assert_allclose(arrivals.weights(0.5), [1.0, 1.0 / 16.0, 1.0 / 81.0])

    def test_rejects_non_increasing(self):
        with pytest.raises(DomainError, match="strictly increasing"):
            ArrivalSequence(np.array([1.0, 1.0, 2.0]), 3)

    def test_rejects_length_mismatch(self):
        with pytest.raises(DomainError, match="truncation"):
            ArrivalSequence(np.array([1.0, 2.0]), 3)

    def test_rejects_empty_truncation(self):
        with pytest.raises(DomainError, match=">= 1"):
            sample_arrivals(0, RngStream(0, 0))


class TestDefaultTruncation:
    """Tests for the power-of-two truncation rule."""

    @pytest.mark.parametrize("alpha, expected", [(1.0, 8192), (0.5, 16)])
    def test_known_values(self, alpha, expected):
        assert default_truncation(alpha) == expected

    def test_power_of_two(self):
        for alpha in (0.3, 0.6, 0.8):
            k = default_truncation(alpha)
            assert k & (k - 1) == 0

    def test_cap_logs_warning(self):
        with patch("src.sampling.poisson.logger") as mock_logger:
            assert default_truncation(1.0, cap=1024) == 1024
            mock_logger.warning.assert_called_once()
            assert "exceeds cap" in mock_logger.warning.call_args[0][0]

    def test_rejects_bad_alpha(self):
        with pytest.raises(DomainError, match="stable index"):
            default_truncation(2.0)


class TestPositiveStable:
    """Tests for positive stable draws."""

    @pytest.mark.parametrize("index", [0.3, 0.5, 0.75])
    def test_laplace_transform(self, index):
        """E e^{-tX} = e^{-t^index}."""
        x = sample_positive_stable(index, RngStream(11, 0), size=200_000)
        assert np.all(x > 0.0)
        for t in (0.5, 1.0, 2.0):
            assert np.mean(np.exp(-t * x)) == pytest.approx(math.exp(-(t**index)), abs=0.006)

    def test_levy_tail(self):
        """At index 1/2, P{X > v} = erf(1/(2√v))."""
        x = sample_positive_stable(0.5, RngStream(12, 0), size=200_000)
        v = 100.0
        expected = math.erf(1.0 / (2.0 * math.sqrt(v)))
        assert np.mean(x > v) == pytest.approx(expected, rel=0.05)

    def test_scalar_draw(self):
        value = sample_positive_stable(0.5, RngStream(0, 0))
        assert isinstance(value, float)
        assert value > 0.0

    def test_deterministic(self):
        a = sample_positive_stable(0.6, RngStream(3, 4), size=10)
        b = sample_positive_stable(0.6, RngStream(3, 4), size=10)
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("index", [0.0, 1.0, 1.5])
    def test_rejects_bad_index(self, index):
        with pytest.raises(DomainError, match="positive stable index"):
            sample_positive_stable(index, RngStream(0, 0))


class TestSpectralMeasure:
    """Tests for control measures."""

    def test_ball_draws_stay_in_support(self):
        mu = SpectralMeasure.uniform_ball(2.0, 3)
        omegas = sample_frequencies(mu, 5000, RngStream(0, 0))
        assert omegas.shape == (5000, 3)
        assert np.all(mu.contains(omegas))

    def test_box_draws_stay_in_support(self):
        mu = SpectralMeasure.uniform_box([1.0, 3.0])
        omegas = sample_frequencies(mu, 5000, RngStream(0, 0))
        assert np.all(np.abs(omegas[:, 0]) <= 1.0)
        assert np.all(np.abs(omegas[:, 1]) <= 3.0)

    def test_ball_moments_closed_form(self):
        """In 2-D, E|ω_1| = 4R/3π and E ω_1² = R²/4."""
        moments = measure_moments(SpectralMeasure.uniform_ball(1.5, 2, total_mass=3.0))
        assert moments.mu0 == 3.0
        assert moments.abs_first[0] == pytest.approx(4.0 * 1.5 / (3.0 * math.pi), rel=1e-12)
        np.testing.assert_allclose(moments.second, np.eye(2) * 1.5**2 / 4.0)

    def test_ball_moments_match_draws(self):
        mu = SpectralMeasure.uniform_ball(1.0, 3)
        moments = measure_moments(mu)
        omegas = sample_frequencies(mu, 200_000, RngStream(5, 0))
        assert np.mean(np.abs(omegas[:, 0])) == pytest.approx(moments.abs_first[0], rel=0.01)
        assert np.mean(omegas[:, 2] ** 2) == pytest.approx(moments.second[2, 2], rel=0.02)

    def test_box_moments(self):
        moments = measure_moments(SpectralMeasure.uniform_box([2.0, 0.5]))
        assert moments.abs_first == (1.0, 0.25)
        np.testing.assert_allclose(np.diag(moments.second), [4.0 / 3.0, 0.25 / 3.0])

    def test_product_density_matches_box(self):
        x = np.linspace(-1.0, 1.0, 201)
        p = np.full_like(x, 0.5)
        mu = SpectralMeasure.product_density([x, x], [p, p])
        assert mu.total_mass == pytest.approx(1.0)
        moments = measure_moments(mu)
        assert moments.abs_first[0] == pytest.approx(0.5, rel=1e-4)
        assert moments.second[0, 0] == pytest.approx(1.0 / 3.0, rel=1e-4)
        assert moments.second[0, 1] == pytest.approx(0.0, abs=1e-12)

    def test_product_density_draws_follow_linear_pieces(self):
        """Triangle density 1 - |x|: E|ω| = 1/3 and E ω² = 1/6."""
        x = np.array([-1.0, 0.0, 1.0])
        p = np.array([0.0, 1.0, 0.0])
        omegas = sample_frequencies(SpectralMeasure.product_density([x], [p]), 200_000, RngStream(2, 0))
        assert np.all(np.abs(omegas) <= 1.0)
        assert np.mean(np.abs(omegas)) == pytest.approx(1.0 / 3.0, abs=0.003)
        assert np.mean(omegas**2) == pytest.approx(1.0 / 6.0, abs=0.002)

    def test_product_density_single_sloped_cell(self):
        """Density 2x on [0, 1] has CDF x², so ω² is uniform."""
        mu = SpectralMeasure.product_density([[0.0, 1.0]], [[0.0, 2.0]])
        omegas = sample_frequencies(mu, 100_000, RngStream(3, 0))[:, 0]
        assert np.mean(omegas) == pytest.approx(2.0 / 3.0, abs=0.003)
        counts, _ = np.histogram(omegas**2, bins=10, range=(0.0, 1.0))
        assert np.all(np.abs(counts - 10_000) < 500)

    @pytest.mark.parametrize(
        "mu",
        [
            SpectralMeasure.uniform_ball(1.2, 3),
            SpectralMeasure.uniform_box([0.7, 1.4]),
            SpectralMeasure.product_density([[-1.0, 0.0, 1.0]], [[0.0, 1.0, 0.0]]),
        ],
        ids=["ball", "box", "table"],
    )
    def test_draws_are_nested_in_count(self, mu):
        short = sample_frequencies(mu, 40, RngStream(12, 3))
        long = sample_frequencies(mu, 80, RngStream(12, 3))
        np.testing.assert_array_equal(long[:40], short)

    @pytest.mark.parametrize(
        "mu",
        [SpectralMeasure.uniform_ball(1.2, 2), SpectralMeasure.uniform_box([0.7, 1.4])],
        ids=["ball", "box"],
    )
    def test_characteristic_matches_draws(self, mu):
        omegas = sample_frequencies(mu, 200_000, RngStream(9, 0))
        t = np.array([1.3, -0.4])
        empirical = np.mean(np.cos(omegas @ t))
        assert float(mu.characteristic(t)) == pytest.approx(empirical, abs=0.01)

    def test_characteristic_at_zero_is_one(self):
        mu = SpectralMeasure.uniform_ball(1.0, 3)
        assert float(mu.characteristic(np.zeros(3))) == pytest.approx(1.0)

    def test_characteristic_rejects_wrong_dimension(self):
        with pytest.raises(ConfigError, match="lags of dimension"):
            SpectralMeasure.uniform_box([1.0]).characteristic(np.zeros(2))

    def test_support_radius(self):
        assert SpectralMeasure.uniform_ball(2.0, 2).support_radius() == 2.0
        assert SpectralMeasure.uniform_box([3.0, 4.0]).support_radius() == pytest.approx(5.0)

    @pytest.mark.parametrize(
        "build, match",
        [
            (lambda: SpectralMeasure.uniform_ball(0.0, 2), "radius"),
            (lambda: SpectralMeasure.uniform_box([1.0, -1.0]), "half-widths"),
            (lambda: SpectralMeasure.uniform_ball(1.0, 2, total_mass=0.0), "total mass"),
            (lambda: SpectralMeasure.product_density([[0.0, 0.0]], [[1.0, 1.0]]), "increasing"),
        ],
    )
    def test_invalid_measures(self, build, match):
        with pytest.raises(ConfigError, match=match):
            build()
