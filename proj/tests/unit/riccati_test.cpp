#include "edgekit/painleve.hpp"
#include "edgekit/riccati.hpp"
#include "edgekit/stats.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace edgekit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lambda_0 draws at beta = 2 shared by several tests.
const std::vector<LambdaDraw>& beta2_draws() {
    static const auto draws = sample_lambda0_batch(2.0, 10000, RiccatiConfig{}, 2024);
    return draws;
}

std::vector<double> firsts(const std::vector<LambdaDraw>& draws) {
    std::vector<double> out;
    for (const auto& d : draws) out.push_back(d.values.front());
    return out;
}

} // namespace

TEST(RiccatiConfig, Validation) {
    EXPECT_NO_THROW(RiccatiConfig{}.validate());
    RiccatiConfig c;
    c.cap = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.blow_threshold = -10.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.dt_max = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.horizon_margin = -1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RiccatiFlow, MatchesClosedForms) {
    // q = 0: p / (1 + p t).
    EXPECT_NEAR(riccati_flow(0.0, 2.0, 0.5), 1.0, 1e-14);
    // q = 1 from p = 0: tanh(t).
    EXPECT_NEAR(riccati_flow(1.0, 0.0, 0.7), std::tanh(0.7), 1e-14);
    // q = -1 from p = 0: -tan(t).
    EXPECT_NEAR(riccati_flow(-1.0, 0.0, 0.4), -std::tan(0.4), 1e-14);
    // Large |q t^2| takes the hyperbolic branch.
    EXPECT_NEAR(riccati_flow(4.0, 0.0, 1.0), 2.0 * std::tanh(2.0), 1e-13);
}

TEST(RiccatiFlow, PolesAndTimes) {
    EXPECT_EQ(riccati_flow(0.0, -1.0, 1.5), -kInf);
    EXPECT_NEAR(riccati_time_to_pole(0.0, -1.0), 1.0, 1e-15);
    EXPECT_NEAR(riccati_time_to_pole(-1.0, 0.0), M_PI / 2.0, 1e-15);
    EXPECT_NEAR(riccati_time_to_pole(1.0, -2.0), std::atanh(0.5), 1e-15);
    EXPECT_EQ(riccati_time_to_pole(1.0, -0.5), kInf);
    EXPECT_EQ(riccati_time_to_pole(0.0, 3.0), kInf);
}

TEST(RiccatiFlow, FirstStepFromTheCapDecreases) {
    const RiccatiConfig c;
    const double dt = c.adapt_c / (1.0 + c.cap);
    EXPECT_LT(riccati_flow(0.0 - 1.0, c.cap, dt), c.cap);
    EXPECT_LT(riccati_flow(5.0, c.cap, dt), c.cap);
}

TEST(SimulatePath, RejectsNonPositiveBeta) {
    EXPECT_THROW(simulate_path(0.0, 0.0, RiccatiConfig{}, RngStream(1, 0)), std::invalid_argument);
}

TEST(SimulatePath, NoiselessCountsFollowAiryZeros) {
    const RiccatiConfig c;
    const RngStream s(1, 0);
    const auto r0 = simulate_path(0.0, kInf, c, s);
    EXPECT_EQ(r0.count(), 0u);
    EXPECT_TRUE(r0.survived);
    const auto r3 = simulate_path(3.0, kInf, c, s);
    EXPECT_EQ(r3.count(), 1u);
    EXPECT_TRUE(r3.survived);
    EXPECT_EQ(count_explosions(5.0, kInf, c, s).count, 2u);
}

TEST(SimulatePath, ExplosionTimesIncrease) {
    const RiccatiConfig c;
    for (std::uint64_t i = 0; i < 20; ++i) {
        const auto r = simulate_path(7.0, 2.0, c, RngStream(3, i));
        EXPECT_GE(r.count(), 1u);
        for (std::size_t j = 1; j < r.count(); ++j) EXPECT_LT(r.times[j - 1], r.times[j]);
        EXPECT_GE(r.x_end, r.times.back());
    }
}

TEST(SimulatePath, FarLeftLambdaNeverExplodes) {
    const RiccatiConfig c;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto r = count_explosions(-10.0, 2.0, c, RngStream(4, i));
        EXPECT_EQ(r.count, 0u);
        EXPECT_FALSE(r.undecided);
    }
}

TEST(SimulatePath, BudgetExhaustionIsUndecided) {
    RiccatiConfig c;
    c.horizon_margin = 9.0;
    c.x_budget = 9.5;
    c.survive_margin = 1e-9;
    // The noiseless solution approaches sqrt(x) from below, so it never
    // clears the survival line and the budget runs out.
    const auto r = simulate_path(0.0, kInf, c, RngStream(1, 0));
    EXPECT_TRUE(r.undecided());
    EXPECT_FALSE(r.survived);
    EXPECT_TRUE(count_explosions(0.0, kInf, c, RngStream(1, 0)).undecided);
}

TEST(SimulatePath, StopAfterLimitsTheCount) {
    const RiccatiConfig c;
    BrownianPath path(RngStream(5, 0), c.dt_max);
    const auto r = simulate_path(8.0, 2.0, c, path, 1);
    EXPECT_EQ(r.count(), 1u);
    EXPECT_TRUE(r.stopped_early);
    EXPECT_FALSE(r.undecided());
}

TEST(BrownianPath, LazyAndReproducible) {
    BrownianPath a(RngStream(6, 0), 1e-3);
    BrownianPath b(RngStream(6, 0), 1e-3);
    const double far = a(50.0);
    EXPECT_EQ(a(0.0), 0.0);
    EXPECT_EQ(b(50.0), far);
    EXPECT_EQ(b(0.0125), a(0.0125));
    BrownianPath q = BrownianPath::quiet(1e-3);
    EXPECT_TRUE(q.is_quiet());
    EXPECT_EQ(q(3.0), 0.0);
}

TEST(BrownianPath, IncrementVariance) {
    BrownianPath p(RngStream(7, 0), 1e-3);
    double s2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double d = p((i + 1) * 1e-3) - p(i * 1e-3);
        s2 += d * d;
    }
    EXPECT_NEAR(s2 / n, 1e-3, 5.0 * 1e-3 * std::sqrt(2.0 / n));
}

TEST(CountExplosions, MonotoneInLambdaOnSharedPath) {
    const RiccatiConfig c;
    for (std::uint64_t i = 0; i < 200; ++i) {
        BrownianPath path(RngStream(8, i), c.dt_max);
        std::size_t prev = 0;
        for (int j = 0; j < 20; ++j) {
            const double lambda = -4.0 + 0.5 * j;
            const auto r = count_explosions(lambda, 2.0, c, path);
            EXPECT_GE(r.count, prev) << "path " << i << " lambda " << lambda;
            prev = r.count;
        }
    }
}

TEST(SampleLambda, NoiselessAiryZeros) {
    RiccatiConfig c;
    c.dt_max = 1e-4;
    const auto d = sample_lambda_k(kInf, 4, c, RngStream(1, 0), kDefaultLambdaBracket, 1e-6);
    ASSERT_EQ(d.values.size(), 5u);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(d.values[j], oracle::negated_airy_zero(j + 1), 1e-3);
    const auto l0 = sample_lambda0(kInf, RiccatiConfig{}, RngStream(1, 0));
    EXPECT_NEAR(l0.values.front(), 2.33811, kLambdaTolerance);
}

TEST(SampleLambda, BracketWidensAutomatically) {
    const auto d = sample_lambda0(kInf, RiccatiConfig{}, RngStream(1, 0), Interval{-0.5, 0.5}, 1e-6);
    EXPECT_NEAR(d.values.front(), oracle::negated_airy_zero(1), 1e-4);
    const auto e = sample_lambda0(kInf, RiccatiConfig{}, RngStream(1, 0), Interval{5.0, 9.0}, 1e-6);
    EXPECT_NEAR(e.values.front(), oracle::negated_airy_zero(1), 1e-4);
}

TEST(SampleLambda, RejectsBadArguments) {
    const RiccatiConfig c;
    EXPECT_THROW(sample_lambda0(0.0, c, RngStream(1, 0)), std::invalid_argument);
    EXPECT_THROW(sample_lambda0(2.0, c, RngStream(1, 0), Interval{1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(sample_lambda0(2.0, c, RngStream(1, 0), kDefaultLambdaBracket, 0.0), std::invalid_argument);
}

TEST(SampleLambda, StrictlyOrderedJointDraws) {
    const RiccatiConfig c;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto d = sample_lambda_k(2.0, 2, c, RngStream(9, i));
        ASSERT_EQ(d.values.size(), 3u);
        EXPECT_LT(d.values[0], d.values[1]);
        EXPECT_LT(d.values[1], d.values[2]);
    }
}

TEST(SampleLambda, MeanMatchesPainleveQuadrature) {
    const auto x = firsts(beta2_draws());
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double v2 = 0.0;
    for (double v : x) v2 += (v - m) * (v - m);
    const double se = std::sqrt(v2 / (x.size() - 1.0) / x.size());
    // E Lambda_0 = int_0^inf S(l) dl - int_-inf^0 (1 - S(l)) dl with S the survival.
    const auto& sol = default_painleve();
    const auto surv = [&](double l) { return lambda0_survival(2, l, sol); };
    const double mean = oracle::simpson(surv, 0.0, 9.0, 9000) -
                        oracle::simpson([&](double l) { return 1.0 - surv(l); }, -8.0, 0.0, 8000);
    EXPECT_NEAR(mean, 1.7711, 1e-3);
    EXPECT_NEAR(m, mean, 3.0 * se);
}

TEST(SampleLambda, FirstCoordinateOfJointDrawHasTheSameLaw) {
    const RiccatiConfig c;
    std::vector<double> joint;
    for (std::uint64_t i = 0; i < 10000; ++i) joint.push_back(sample_lambda_k(2.0, 1, c, RngStream(77, i)).values[0]);
    EXPECT_LE(ks_distance(joint, firsts(beta2_draws())), 0.03);
}

TEST(EstimateCdf, MatchesSharedDrawsAndEnds) {
    const std::vector<double> grid{-8.0, -1.0, 0.0, 1.0, 9.0};
    const auto est = estimate_cdf(2.0, grid, 400, RiccatiConfig{}, 55);
    const auto draws = firsts(sample_lambda0_batch(2.0, 400, RiccatiConfig{}, 55));
    const auto direct = survival_from_draws(draws, grid, Method::riccati, 2.0);
    EXPECT_EQ(est.survival, direct.survival);
    EXPECT_NEAR(est.survival.front(), 1.0, 1e-12);
    EXPECT_NEAR(est.survival.back(), 0.0, 1e-12);
    EXPECT_EQ(est.method, Method::riccati);
    EXPECT_EQ(est.samples, 400u);
    EXPECT_FALSE(est.flagged);
    EXPECT_NO_THROW(est.check_invariants());
    EXPECT_THROW(estimate_cdf(2.0, grid, 0, RiccatiConfig{}, 55), std::invalid_argument);
}

TEST(EstimateCdf, F2AtZero) {
    const std::vector<double> grid{0.0};
    const auto est = survival_from_draws(firsts(beta2_draws()), grid, Method::riccati, 2.0);
    const double reference = lambda0_survival(2, 0.0, default_painleve());
    EXPECT_NEAR(reference, 0.9694, 1e-4);
    EXPECT_NEAR(est.survival[0], reference, 3.0 * est.std_error[0]);
}

TEST(TailProbability, BoundsOrderAndZeroHits) {
    const RiccatiConfig c;
    const std::vector<double> a{1.0, 2.0, 3.0};
    const auto right = tail_probabilities(2.0, a, TailSide::right, 20000, c, 66);
    for (const auto& t : right) {
        EXPECT_GE(t.estimate, 0.0);
        EXPECT_LE(t.estimate, 1.0);
    }
    EXPECT_GE(right[0].estimate, right[1].estimate);
    EXPECT_GE(right[1].estimate, right[2].estimate);

    const auto deep = tail_probability(2.0, 4.5, TailSide::right, 200, c, 67);
    EXPECT_TRUE(deep.zero_hits);
    EXPECT_EQ(deep.estimate, 0.0);
    EXPECT_GT(deep.upper_bound, 0.0);
    EXPECT_NEAR(deep.upper_bound, 1.0 - std::pow(0.05, 1.0 / 200.0), 1e-15);

    EXPECT_THROW(tail_probability(2.0, 0.0, TailSide::left, 10, c, 1), std::invalid_argument);
    EXPECT_THROW(tail_probability(2.0, 1.0, TailSide::left, 0, c, 1), std::invalid_argument);
}

TEST(TailProbability, LeftTailOrderOfMagnitude) {
    const auto t = tail_probability(2.0, 3.0, TailSide::left, 4000, RiccatiConfig{}, 68);
    const double rough = std::exp(-2.0 / 24.0 * 27.0);
    EXPECT_GE(t.estimate, rough / 2.0);
    EXPECT_LE(t.estimate, rough * 2.0);
}

TEST(TailProbability, SinglePointMatchesBatch) {
    const RiccatiConfig c;
    const std::vector<double> a{2.0, 1.0};
    const auto both = tail_probabilities(2.0, a, TailSide::left, 3000, c, 69);
    const auto one = tail_probability(2.0, 1.0, TailSide::left, 3000, c, 69);
    EXPECT_EQ(both[1].hits, one.hits);
    EXPECT_GE(both[1].hits, both[0].hits);
}
