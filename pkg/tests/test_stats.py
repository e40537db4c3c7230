"""Statistical probes and their exact rational references."""

from fractions import Fraction

import pytest

from hampack.errors import InvalidInputError, SizeError
from hampack.stats import (
    degree_gap_probe,
    designation_moment_estimate,
    exact_power_moment,
    harmonic_number,
    permutation_cycle_stats,
    sigma_variance,
    single_matching_moment_exhaustive,
)


class TestHarmonicNumber:
    def test_small_values(self):
        assert harmonic_number(1) == 1.0
        assert abs(harmonic_number(3) - 11.0 / 6.0) < 1e-15
        assert harmonic_number(0) == 0.0

    def test_thousand(self):
        assert abs(harmonic_number(1000) - 7.485470860550345) < 1e-12

    def test_second_order(self):
        assert abs(harmonic_number(2, power=2) - 1.25) < 1e-15

    def test_negative_rejected(self):
        with pytest.raises(InvalidInputError):
            harmonic_number(-1)


class TestExactPowerMoment:
    def test_two_power_closed_form(self):
        for n in range(1, 13):
            assert exact_power_moment(n, 2) == Fraction(n + 1)

    def test_four_power_at_ten(self):
        assert exact_power_moment(10, 4) == Fraction(286)

    def test_three_power_at_four(self):
        assert exact_power_moment(4, 3) == Fraction(15)

    def test_unit_base(self):
        assert exact_power_moment(7, 1) == Fraction(1)

    def test_empty_permutation(self):
        assert exact_power_moment(0, 5) == Fraction(1)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            exact_power_moment(-1, 2)
        with pytest.raises(InvalidInputError):
            exact_power_moment(3, 0)


class TestSigmaVariance:
    def test_small(self):
        assert abs(sigma_variance(3) - 17.0 / 36.0) < 1e-15

    def test_thousand(self):
        assert abs(sigma_variance(1000) - 5.841536293868785) < 1e-12


class TestPermutationCycleStats:
    def test_exhaustive_three(self):
        out = permutation_cycle_stats(3, 0, seed=0, exhaustive=True)
        assert out["samples"] == 6
        assert out["mean_sigma_exact"] == "11/6"
        assert out["mean_two_power_exact"] == "4"
        assert out["mean_two_power"] == 4.0
        assert out["tail_count"] == 0
        assert out["reference_two_power"] == 4.0

    def test_exhaustive_cap(self):
        with pytest.raises(SizeError):
            permutation_cycle_stats(9, 0, seed=0, exhaustive=True)

    def test_sampled_mean_near_harmonic(self):
        out = permutation_cycle_stats(10, 2000, seed=11)
        sd = (sigma_variance(10) / 2000) ** 0.5
        assert abs(out["mean_sigma"] - harmonic_number(10)) <= 4 * sd
        assert out["reference_two_power"] == 11.0

    def test_tail_fields_consistent(self):
        out = permutation_cycle_stats(8, 500, seed=3)
        assert out["tail_freq"] == out["tail_count"] / 500
        assert out["tail_threshold"] == pytest.approx(4 * 2.0794415416798357)

    def test_deterministic_replay(self):
        a = permutation_cycle_stats(12, 300, seed=9)
        b = permutation_cycle_stats(12, 300, seed=9)
        c = permutation_cycle_stats(12, 300, seed=10)
        assert a == b
        assert a != c

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            permutation_cycle_stats(0, 10, seed=0)
        with pytest.raises(InvalidInputError):
            permutation_cycle_stats(5, 0, seed=0)


class TestSingleMatchingMoment:
    def test_frozen_identity_three(self):
        assert single_matching_moment_exhaustive(3, (1, 2, 3)) == Fraction(251, 648)

    def test_two_vertices(self):
        assert single_matching_moment_exhaustive(2, (1, 2)) == Fraction(9, 16)

    def test_matching_invariance(self):
        # composing with a fixed bijection does not change the average
        assert (single_matching_moment_exhaustive(3, (2, 3, 1))
                == single_matching_moment_exhaustive(3, (1, 2, 3)))

    def test_arity_checked(self):
        with pytest.raises(InvalidInputError):
            single_matching_moment_exhaustive(3, (1, 2))

    def test_size_cap(self):
        with pytest.raises(SizeError):
            single_matching_moment_exhaustive(9, tuple(range(1, 10)))


class TestDesignationMomentEstimate:
    def test_counts_and_determinism(self):
        out = designation_moment_estimate(12, 0.6, trials=30, seed=5)
        assert out["completed"] + out["skipped"] == 30
        assert out["estimate"] >= 0.0
        assert out["reference"] == pytest.approx(0.6 * 2.4849066497880004**3)
        again = designation_moment_estimate(12, 0.6, trials=30, seed=5)
        assert out == again

    def test_zero_density(self):
        out = designation_moment_estimate(8, 0.0, trials=5, seed=1)
        # empty rounds give delta = 0 and weight 0 on every trial
        assert out["completed"] == 5
        assert out["estimate"] == 0.0
        assert out["ratio"] is None

    def test_invalid_trials(self):
        with pytest.raises(InvalidInputError):
            designation_moment_estimate(8, 0.5, trials=0, seed=0)


class TestDegreeGapProbe:
    def test_saturated_rounds_have_no_gap(self):
        out = degree_gap_probe(8, 1.0, trials=4, seed=0)
        assert out["mean_gap"] == 0.0
        assert out["histogram"] == {"0": 4}
        assert out["frac_at_least_reference"] == 0.0

    def test_histogram_totals(self):
        out = degree_gap_probe(12, 0.5, trials=40, seed=7)
        assert sum(out["histogram"].values()) == 40
        assert out["mean_gap"] >= 0.0
        assert out["reference"] == pytest.approx((12 * 0.5) ** 0.5 / 2.4849066497880004)

    def test_deterministic_replay(self):
        assert (degree_gap_probe(10, 0.4, trials=10, seed=2)
                == degree_gap_probe(10, 0.4, trials=10, seed=2))

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            degree_gap_probe(10, 0.4, trials=0, seed=0)
        with pytest.raises(InvalidInputError):
            degree_gap_probe(10, 1.4, trials=3, seed=0)
