"""Information values: closed forms, plug-in approximations, quadrature, CRLBs."""

import math

import numpy as np
import pytest
from conftest import CenteredUniform
from numpy.testing import assert_allclose

from extremefim import (
    Exponential,
    ParameterError,
    UndefinedBoundError,
    Uniform,
    UnsupportedModelError,
    a_statistic,
    crlb,
    fim_min_exact,
    fim_opt,
    fim_partial,
    fim_plugin,
    fim_quadrature,
    l_equivalent,
)

EXP = Exponential()
UNI = Uniform()


def _plugin_max_reference(K):
    return K * math.log(K) ** 2 / (K - 1.0) - 1.0


def _plugin_min_reference(K):
    return 2.0 * K * math.log(K / (K - 1.0)) - 1.0


def _mc_mix_information(K, theta, n, seed):
    """Monte Carlo estimate of the exact joint-extremes information.

    Samples (y_min, y_max) directly: the minimum of K exponentials is
    exponential with mean theta/K, and given the minimum the gap to the
    maximum is the maximum of K-1 fresh exponentials (memorylessness).
    The per-pair observed information is a Richardson-extrapolated second
    difference of the log joint density, written out independently of the
    library. Returns (mean, standard error).
    """
    rng = np.random.default_rng(seed)
    a = -(theta / K) * np.log1p(-rng.random(n))
    w = -theta * np.log1p(-rng.random(n) ** (1.0 / (K - 1)))
    b = a + w

    def logf(t):
        return (K - 2) * np.log(np.exp(-a / t) - np.exp(-b / t)) - (a + b) / t - 2.0 * np.log(t)

    def second_diff(step):
        return (logf(theta + step) - 2.0 * logf(theta) + logf(theta - step)) / step**2

    h = 1e-3 * theta
    vals = -(4.0 * second_diff(h / 2.0) - second_diff(h)) / 3.0
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n))


class TestFimOpt:
    def test_exponential_closed_form(self):
        assert fim_opt(EXP, theta=1.0, N=100, K=25).value == 2500.0
        assert fim_opt(EXP, theta=2.0, N=100, K=25).value == 625.0

    def test_quadrature_path_agrees(self):
        closed = fim_opt(EXP, theta=1.5, N=10, K=4)
        numeric = fim_opt(EXP, theta=1.5, N=10, K=4, path="quadrature")
        assert closed.method == "closed_form"
        assert numeric.method == "quadrature"
        assert_allclose(numeric.value, closed.value, rtol=1e-6)

    def test_uniform_is_flagged_nonregular(self):
        out = fim_opt(UNI, theta=1.0, N=10, K=5)
        assert out.value < 0.0
        assert out.breakdown is True
        with pytest.raises(UnsupportedModelError):
            fim_opt(UNI, theta=1.0, N=10, K=5, path="closed_form")

    def test_invalid_counts(self):
        with pytest.raises(ParameterError):
            fim_opt(EXP, theta=1.0, N=0, K=5)
        with pytest.raises(ParameterError):
            fim_opt(EXP, theta=1.0, N=5, K=5, path="simpson")


class TestFimPartial:
    def test_single_retained_sample(self):
        assert fim_partial(EXP, theta=1.0, N=100, K=25, L=1).value == 100.0

    def test_full_retention_equals_opt(self):
        full = fim_partial(EXP, theta=2.0, N=30, K=12, L=12)
        assert full.value == fim_opt(EXP, theta=2.0, N=30, K=12).value

    def test_linear_in_l(self):
        vals = [fim_partial(EXP, theta=1.0, N=10, K=8, L=L).value for L in range(1, 9)]
        assert_allclose(np.diff(vals), 10.0, rtol=1e-12)

    def test_l_out_of_range(self):
        for bad in (0, 9):
            with pytest.raises(ParameterError):
                fim_partial(EXP, theta=1.0, N=10, K=8, L=bad)


class TestFimMinExact:
    def test_value_independent_of_k(self):
        for K in (1, 5, 1000):
            assert fim_min_exact(EXP, theta=1.0, N=100, K=K).value == 100.0

    def test_crlb_example(self):
        assert crlb(fim_min_exact(EXP, theta=1.0, N=100, K=25)) == 0.01

    def test_equals_partial_with_one_sample(self):
        a = fim_min_exact(EXP, theta=3.0, N=40, K=17)
        b = fim_partial(EXP, theta=3.0, N=40, K=17, L=1)
        assert a.value == b.value

    def test_non_exponential_rejected(self):
        with pytest.raises(UnsupportedModelError):
            fim_min_exact(UNI, theta=1.0, N=10, K=5)


TABLE_K = (5, 10, 25, 50, 100, 1000)
TABLE_MAX = (2.238, 4.891, 9.793, 14.616, 20.422, 46.765)
TABLE_MIX = (2.794, 5.539, 10.580, 15.482, 21.341, 47.752)


class TestFimPlugin:
    @pytest.mark.parametrize("K,ref_max,ref_mix", list(zip(TABLE_K, TABLE_MAX, TABLE_MIX)),
                             ids=[f"K{k}" for k in TABLE_K])
    def test_reference_table(self, K, ref_max, ref_mix):
        got_max = l_equivalent(fim_plugin(EXP, "max", theta=2.0, N=7, K=K))
        got_mix = l_equivalent(fim_plugin(EXP, "mix", theta=2.0, N=7, K=K))
        assert abs(got_max - ref_max) < 1e-3
        assert abs(got_mix - ref_mix) < 1e-3

    def test_min_formula(self):
        for K in (2, 10, 400):
            got = fim_plugin(EXP, "min", theta=1.0, N=1, K=K)
            assert_allclose(got.value, _plugin_min_reference(K), rtol=1e-13)

    def test_min_curvature_against_log_density_second_difference(self):
        # The plug-in is the negated second theta-derivative of the
        # extreme log density at the characteristic value; reproduce it
        # with a direct finite difference of log extreme_pdf.
        from extremefim import characteristic_values, extreme_pdf

        K, theta = 10, 1.0
        mu1 = characteristic_values(EXP, theta, K).mu1

        def logf(t):
            return math.log(extreme_pdf(EXP, "min", mu1, t, K))

        h = 1e-4
        fd = -(logf(theta + h) - 2.0 * logf(theta) + logf(theta - h)) / h**2
        assert_allclose(fim_plugin(EXP, "min", theta, 1, K).value, fd, rtol=1e-5)

    @pytest.mark.parametrize("K", [5, 7, 10, 100, 1000])
    @pytest.mark.parametrize("kind", ["min", "max", "mix"])
    def test_generic_path_matches_closed_form(self, kind, K):
        closed = fim_plugin(EXP, kind, theta=1.0, N=1, K=K, path="closed_form")
        generic = fim_plugin(EXP, kind, theta=1.0, N=1, K=K, path="generic")
        assert_allclose(generic.value, closed.value, rtol=1e-9)

    def test_low_accuracy_flag(self):
        assert fim_plugin(EXP, "max", 1.0, 1, 10).low_accuracy is True
        assert fim_plugin(EXP, "max", 1.0, 1, 25).low_accuracy is False

    def test_uniform_closed_relations(self):
        # Plug-in curvatures for the uniform have simple exact values:
        # min gives K/(K-1) per interval (times 1/theta^2), max gives -K.
        K, theta = 10, 2.0
        got_min = fim_plugin(UNI, "min", theta, 1, K)
        got_max = fim_plugin(UNI, "max", theta, 1, K)
        assert_allclose(got_min.value, K / ((K - 1.0) * theta**2), rtol=1e-10)
        assert_allclose(got_max.value, -K / theta**2, rtol=1e-10)
        assert got_min.breakdown is False
        assert got_max.breakdown is True

    def test_exponential_small_k_breakdown(self):
        assert fim_plugin(EXP, "max", 1.0, 1, 2).value < 0.0
        assert fim_plugin(EXP, "max", 1.0, 1, 2).breakdown is True

    def test_mix_needs_three(self):
        with pytest.raises(ParameterError):
            fim_plugin(EXP, "mix", theta=1.0, N=1, K=2)
        with pytest.raises(ParameterError):
            fim_plugin(EXP, "min", theta=1.0, N=1, K=1)


class TestFimQuadrature:
    def test_min_variant_recovers_exact_value(self):
        got = fim_quadrature(EXP, "min", theta=1.0, N=1, K=25)
        assert_allclose(got.value, 1.0, rtol=1e-6)
        got100 = fim_quadrature(EXP, "min", theta=1.0, N=100, K=25)
        assert_allclose(got100.value, 100.0, rtol=1e-6)

    def test_max_variant_reference_value(self):
        got = l_equivalent(fim_quadrature(EXP, "max", theta=1.0, N=1, K=5))
        assert abs(got - 3.66) / 3.66 < 0.02

    def test_mix_with_two_draws_equals_full_information(self):
        # At K = 2 the (min, max) pair is the whole sample, so its exact
        # information must equal the raw-sample information 2N/theta^2.
        got = fim_quadrature(EXP, "mix", theta=1.5, N=3, K=2)
        assert_allclose(got.value, 6.0 / 1.5**2, rtol=1e-6)

    def test_mix_against_monte_carlo(self):
        K, theta = 50, 1.0
        quad_val = fim_quadrature(EXP, "mix", theta, N=1, K=K).value
        mc_mean, mc_sem = _mc_mix_information(K, theta, n=4_000_000, seed=90)
        assert abs(quad_val - mc_mean) < 5.0 * mc_sem + 1e-4

    def test_uniform_max_breakdown_value(self):
        # The max-law curvature for the uniform is the constant -K/theta^2,
        # so the integral is exactly that and gets the breakdown flag.
        got = fim_quadrature(UNI, "max", theta=1.0, N=1, K=20)
        assert_allclose(got.value, -20.0, rtol=1e-6)
        assert got.breakdown is True

    def test_uniform_min_is_positive(self):
        got = fim_quadrature(UNI, "min", theta=1.0, N=1, K=20)
        assert got.value > 0.0
        assert got.breakdown is False

    def test_plugin_converges_to_quadrature(self):
        def rel_gap(K):
            q = fim_quadrature(EXP, "max", 1.0, 1, K).value
            p = fim_plugin(EXP, "max", 1.0, 1, K).value
            return abs(q - p) / q

        assert rel_gap(30) < rel_gap(10)

    def test_invalid_kind(self):
        with pytest.raises(ParameterError):
            fim_quadrature(EXP, "joint", theta=1.0, N=1, K=5)


class TestAStatistic:
    def test_exponential_pinned_value(self):
        K = 10
        expected = K * math.log(K) ** 2 / (K - 1.0) - 2.0 * K * math.log(K / (K - 1.0))
        got = a_statistic(EXP, theta=1.0, K=K)
        assert_allclose(got.value, expected, rtol=1e-12)
        assert got.sign_class == "max_favored"

    def test_exponential_large_k(self):
        got = a_statistic(EXP, theta=1.0, K=100)
        assert got.value > 0.0
        assert got.sign_class == "max_favored"

    def test_exponential_two_draws_favors_minima(self):
        assert a_statistic(EXP, theta=1.0, K=2).sign_class == "min_favored"

    def test_uniform_value_and_scaling(self):
        for K, theta in [(10, 1.0), (10, 2.0), (50, 1.0)]:
            got = a_statistic(UNI, theta=theta, K=K)
            assert_allclose(got.value, -K**2 / ((K - 1.0) * theta**2), rtol=1e-10)
            assert got.sign_class == "min_favored"

    def test_centered_family_is_balanced(self):
        model = CenteredUniform(center=0.7)
        for K in (5, 10, 40):
            got = a_statistic(model, theta=0.9, K=K)
            assert got.sign_class == "balanced"
            assert abs(got.value) < 1e-8

    @pytest.mark.parametrize("model", [EXP, UNI], ids=["exponential", "uniform"])
    def test_sign_matches_plugin_gap(self, model):
        for K in (3, 4, 5, 10, 25, 50, 100):
            got = a_statistic(model, theta=1.0, K=K)
            gap = (fim_plugin(model, "max", 1.0, 1, K).value
                   - fim_plugin(model, "min", 1.0, 1, K).value)
            if got.sign_class != "balanced":
                assert math.copysign(1.0, got.value) == math.copysign(1.0, gap)


class TestCrlbAndLEquivalent:
    def test_crlb_is_reciprocal(self):
        fv = fim_plugin(EXP, "max", theta=1.0, N=100, K=25)
        assert_allclose(crlb(fv), 1.0 / fv.value, rtol=1e-15)

    def test_breakdown_has_no_bound(self):
        with pytest.raises(UndefinedBoundError):
            crlb(fim_plugin(UNI, "max", theta=1.0, N=1, K=10))

    def test_bound_ordering_at_k25(self):
        bounds = [crlb(fim_opt(EXP, 1.0, 100, 25)),
                  crlb(fim_plugin(EXP, "mix", 1.0, 100, 25)),
                  crlb(fim_plugin(EXP, "max", 1.0, 100, 25)),
                  crlb(fim_min_exact(EXP, 1.0, 100, 25))]
        assert bounds == sorted(bounds)

    def test_l_equivalent_examples(self):
        assert_allclose(l_equivalent(fim_opt(EXP, 2.0, 100, 1000)), 1000.0, rtol=1e-12)
        got = l_equivalent(fim_plugin(EXP, "max", 1.0, 100, 50))
        assert abs(got - 14.616) < 1e-3

    def test_information_gain_of_pair_over_max(self):
        delta = (l_equivalent(fim_plugin(EXP, "mix", 1.0, 1, 10))
                 - l_equivalent(fim_plugin(EXP, "max", 1.0, 1, 10)))
        assert abs(delta - 0.648) < 1e-3

    def test_l_equivalent_invariant_to_scale_and_count(self):
        a = l_equivalent(fim_plugin(EXP, "mix", theta=1.0, N=1, K=40))
        b = l_equivalent(fim_plugin(EXP, "mix", theta=3.0, N=250, K=40))
        assert_allclose(a, b, rtol=1e-12)


class TestStructuralInvariants:
    @pytest.mark.parametrize("K", [5, 10, 25, 50, 100, 1000])
    def test_information_ordering(self, K):
        j_min = fim_plugin(EXP, "min", 1.0, 1, K).value
        j_max = fim_plugin(EXP, "max", 1.0, 1, K).value
        j_mix = fim_plugin(EXP, "mix", 1.0, 1, K).value
        j_opt = fim_opt(EXP, 1.0, 1, K).value
        assert j_min <= j_max <= j_mix <= j_opt

    def test_pair_gain_bounded_and_monotone(self):
        def delta(K):
            return (fim_plugin(EXP, "mix", 1.0, 1, K).value
                    - fim_plugin(EXP, "max", 1.0, 1, K).value)

        # The gain of keeping both extremes over the max alone never
        # exceeds the exact single-sample information N/theta^2 ...
        assert all(delta(K) <= 1.0 + 1e-12 for K in range(3, 120))
        # ... and grows with K once past the smallest group sizes (there
        # is a genuine dip between K=3 and K=5, so the monotone range
        # starts at 5).
        deltas = [delta(K) for K in (5, 10, 25, 50, 100, 1000)]
        assert all(b > a for a, b in zip(deltas, deltas[1:]))

    def test_max_information_increases_with_k(self):
        vals = [fim_plugin(EXP, "max", 1.0, 1, K).value for K in range(5, 200, 7)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_scale_law(self):
        for theta in (0.5, 1.0, 3.0):
            plug = fim_plugin(EXP, "mix", theta, 1, 30).value
            assert_allclose(plug * theta**2,
                            fim_plugin(EXP, "mix", 1.0, 1, 30).value, rtol=1e-13)
            gen = fim_plugin(EXP, "max", theta, 1, 30, path="generic").value
            assert_allclose(gen * theta**2,
                            fim_plugin(EXP, "max", 1.0, 1, 30, path="generic").value,
                            rtol=1e-12)
            quad_v = fim_quadrature(EXP, "max", theta, 1, 8).value
            assert_allclose(quad_v * theta**2,
                            fim_quadrature(EXP, "max", 1.0, 1, 8).value, rtol=1e-10)
