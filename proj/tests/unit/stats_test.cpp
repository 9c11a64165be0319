#include "edgekit/estimate.hpp"
#include "edgekit/rng.hpp"
#include "edgekit/stats.hpp"
#include "oracles.hpp"

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace edgekit;

TEST(KsDistance, IdenticalAndDisjoint) {
    const std::vector<double> a{0.3, 1.2, -0.7, 2.2};
    EXPECT_EQ(ks_distance(a, a), 0.0);
    const std::vector<double> lo{1.0, 2.0, 3.0};
    const std::vector<double> hi{4.0, 5.0};
    EXPECT_EQ(ks_distance(lo, hi), 1.0);
    EXPECT_EQ(ks_distance(hi, lo), 1.0);
}

TEST(KsDistance, EmptyRejected) {
    const std::vector<double> a{1.0};
    const std::vector<double> none;
    EXPECT_THROW(ks_distance(a, none), std::invalid_argument);
    EXPECT_THROW(ks_distance(none, a), std::invalid_argument);
}

TEST(KsDistance, MatchesBruteForceIncludingTies) {
    RngStream s(1, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(s.uniform01() * 30);
        const std::size_t m = 1 + static_cast<std::size_t>(s.uniform01() * 30);
        std::vector<double> a(n);
        std::vector<double> b(m);
        // Coarse values force ties within and across samples.
        for (auto& v : a) v = std::floor(s.uniform01() * 8.0);
        for (auto& v : b) v = std::floor(s.uniform01() * 8.0) + (trial % 2 ? 0.5 : 0.0);
        EXPECT_DOUBLE_EQ(ks_distance(a, b), oracle::brute_ks(a, b));
    }
}

TEST(KsDistanceToCdf, UniformSamples) {
    const std::vector<double> x{0.1, 0.4, 0.8};
    // ECDF steps 1/3, 2/3, 1 at the points; largest gap |2/3 - 0.4| vs |0.1 - 0| etc.
    const double d = ks_distance_to_cdf(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
    EXPECT_NEAR(d, std::max({0.1, 1.0 / 3.0 - 0.1, 0.4 - 1.0 / 3.0, 2.0 / 3.0 - 0.4, 0.8 - 2.0 / 3.0, 1.0 - 0.8}),
                1e-15);
    const std::vector<double> none;
    EXPECT_THROW(ks_distance_to_cdf(none, [](double t) { return t; }), std::invalid_argument);
}

TEST(FitTailExponent, ExactRightTail) {
    const std::vector<double> a{1.5, 2.5, 3.5};
    std::vector<double> lp;
    for (double x : a) lp.push_back(-(2.0 / 3.0) * 2.0 * std::pow(x, 1.5));
    const auto f = fit_tail_exponent(a, lp, TailSide::right);
    EXPECT_NEAR(f.slope, -4.0 / 3.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_NEAR(predicted_tail_slope(2.0, TailSide::right), -4.0 / 3.0, 1e-15);
}

TEST(FitTailExponent, ExactLeftTail) {
    const std::vector<double> a{2.0, 2.5, 3.0, 3.5};
    std::vector<double> lp;
    for (double x : a) lp.push_back(-(1.0 / 24.0) * 2.0 * x * x * x + 0.3);
    const auto f = fit_tail_exponent(a, lp, TailSide::left);
    EXPECT_NEAR(f.slope, -1.0 / 12.0, 1e-12);
    EXPECT_NEAR(f.intercept, 0.3, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_NEAR(predicted_tail_slope(2.0, TailSide::left), -1.0 / 12.0, 1e-15);
}

TEST(FitTailExponent, OrderFree) {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> lp{-1.1, -3.0, -6.2, -7.9};
    const std::vector<double> a2{3.0, 1.0, 4.0, 2.0};
    const std::vector<double> lp2{-6.2, -1.1, -7.9, -3.0};
    const auto f = fit_tail_exponent(a, lp, TailSide::right);
    const auto g = fit_tail_exponent(a2, lp2, TailSide::right);
    EXPECT_NEAR(f.slope, g.slope, 1e-13);
    EXPECT_NEAR(f.r2, g.r2, 1e-13);
    EXPECT_LT(f.r2, 1.0);
}

TEST(FitTailExponent, RejectsBadInput) {
    const std::vector<double> two{1.0, 2.0};
    EXPECT_THROW(fit_tail_exponent(two, two, TailSide::right), std::invalid_argument);
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> bad{-1.0, -INFINITY, -3.0};
    EXPECT_THROW(fit_tail_exponent(a, bad, TailSide::right), std::invalid_argument);
    const std::vector<double> nan{-1.0, NAN, -3.0};
    EXPECT_THROW(fit_tail_exponent(a, nan, TailSide::left), std::invalid_argument);
    const std::vector<double> same{2.0, 2.0, 2.0};
    EXPECT_THROW(fit_tail_exponent(same, a, TailSide::left), std::invalid_argument);
    const std::vector<double> mismatch{1.0, 2.0};
    EXPECT_THROW(fit_tail_exponent(a, mismatch, TailSide::left), std::invalid_argument);
}

TEST(BinomialCi, Boundaries) {
    EXPECT_EQ(binomial_ci(0, 100).lo, 0.0);
    EXPECT_GT(binomial_ci(0, 100).hi, 0.0);
    EXPECT_EQ(binomial_ci(100, 100).hi, 1.0);
    EXPECT_LT(binomial_ci(100, 100).lo, 1.0);
}

TEST(BinomialCi, MatchesTextbookWilson) {
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 0.975);
    const auto [lo, hi] = oracle::wilson(50.0, 100.0, z);
    const auto ci = binomial_ci(50, 100, 0.95);
    EXPECT_NEAR(ci.lo, lo, 1e-12);
    EXPECT_NEAR(ci.hi, hi, 1e-12);
    const double z90 = boost::math::quantile(boost::math::normal_distribution<double>(), 0.95);
    const auto [lo2, hi2] = oracle::wilson(7.0, 40.0, z90);
    const auto ci2 = binomial_ci(7, 40, 0.90);
    EXPECT_NEAR(ci2.lo, lo2, 1e-12);
    EXPECT_NEAR(ci2.hi, hi2, 1e-12);
}

TEST(BinomialCi, RejectsInvalidCounts) {
    EXPECT_THROW(binomial_ci(5, 4), std::invalid_argument);
    EXPECT_THROW(binomial_ci(0, 0), std::invalid_argument);
    EXPECT_THROW(binomial_ci(1, 4, 0.0), std::invalid_argument);
    EXPECT_THROW(binomial_ci(1, 4, 1.0), std::invalid_argument);
}

TEST(NormalQuantile, KnownValues) {
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
    EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
}

TEST(CdfEstimate, InvariantChecks) {
    CdfEstimate e;
    e.lambda_grid = {0.0, 1.0};
    e.survival = {0.9, 0.5};
    e.std_error = {0.01, 0.02};
    EXPECT_NO_THROW(e.check_invariants());
    e.survival = {0.5, 0.9};
    EXPECT_THROW(e.check_invariants(), std::logic_error);
    e.survival = {1.2, 0.9};
    EXPECT_THROW(e.check_invariants(), std::logic_error);
    e.survival = {0.9};
    EXPECT_THROW(e.check_invariants(), std::logic_error);
    e.survival = {0.9, 0.5};
    e.lambda_grid = {1.0, 0.0};
    EXPECT_THROW(e.check_invariants(), std::logic_error);
}

TEST(SurvivalFromDraws, CountsStrictlyAbove) {
    const std::vector<double> draws{0.0, 1.0, 1.0, 2.0};
    const auto e = survival_from_draws(draws, {-1.0, 0.0, 1.0, 3.0}, Method::sao, 6.0);
    EXPECT_EQ(e.survival, (std::vector<double>{1.0, 0.75, 0.25, 0.0}));
    EXPECT_NEAR(e.std_error[1], std::sqrt(0.75 * 0.25 / 4.0), 1e-15);
    EXPECT_EQ(e.samples, 4u);
    EXPECT_EQ(e.method, Method::sao);
    EXPECT_THROW(survival_from_draws({}, {0.0}, Method::sao, 2.0), std::invalid_argument);
}

TEST(MethodNames, RoundTrip) {
    for (Method m : {Method::hermite, Method::laguerre, Method::sao, Method::riccati, Method::painleve}) {
        EXPECT_EQ(method_from_string(to_string(m)), m);
    }
    EXPECT_THROW(method_from_string("fredholm"), std::invalid_argument);
    EXPECT_EQ(tail_side_from_string("left"), TailSide::left);
    EXPECT_THROW(tail_side_from_string("up"), std::invalid_argument);
}
