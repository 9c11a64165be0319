#include "edgekit/rng.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace edgekit;

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

template <class F>
Moments moments(std::size_t n, F draw) {
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double m = s / static_cast<double>(n);
    return {m, (s2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1)};
}

} // namespace

TEST(MakeStream, SameArgumentsGiveSameSequence) {
    RngStream a = make_stream(1, 0);
    RngStream b = make_stream(1, 0);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(MakeStream, StreamIdAndSeedChangeTheSequence) {
    EXPECT_NE(make_stream(1, 0).next_u64(), make_stream(1, 1).next_u64());
    RngStream a = make_stream(1, 0);
    RngStream b = make_stream(2, 0);
    int same = 0;
    for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64();
    EXPECT_EQ(same, 0);
}

TEST(MakeStream, NeighbouringStreamsAreUncorrelated) {
    constexpr int kDraws = 100000;
    for (std::uint64_t id = 0; id < 4; ++id) {
        RngStream a = make_stream(7, id);
        RngStream b = make_stream(7, id + 1);
        double sab = 0.0;
        for (int i = 0; i < kDraws; ++i) sab += a.standard_normal() * b.standard_normal();
        // Correlation estimate has standard error 1/sqrt(n).
        EXPECT_LT(std::fabs(sab / kDraws), 5.0 / std::sqrt(kDraws));
    }
}

TEST(MakeStream, RecordsItsArguments) {
    RngStream s = make_stream(42, 9);
    EXPECT_EQ(s.master_seed(), 42u);
    EXPECT_EQ(s.stream_id(), 9u);
}

TEST(Uniform, StaysInsideOpenInterval) {
    RngStream s(3, 3);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform01();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SampleGaussian, ZeroSdReturnsMean) {
    RngStream s(1, 0);
    EXPECT_EQ(sample_gaussian(s, 3.25, 0.0), 3.25);
}

TEST(SampleGaussian, NegativeSdRejected) {
    RngStream s(1, 0);
    EXPECT_THROW(sample_gaussian(s, 0.0, -1.0), std::invalid_argument);
}

TEST(SampleGaussian, VarianceTwo) {
    RngStream s(11, 0);
    const auto m = moments(1000000, [&] { return sample_gaussian(s, 0.0, std::sqrt(2.0)); });
    EXPECT_GE(m.var, 1.97);
    EXPECT_LE(m.var, 2.03);
}

TEST(SampleGaussian, KolmogorovSmirnovAgainstNormal) {
    RngStream s(12, 0);
    std::vector<double> x(1000000);
    for (auto& v : x) v = sample_gaussian(s, 0.0, 1.0);
    std::sort(x.begin(), x.end());
    const boost::math::normal_distribution<double> normal;
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = boost::math::cdf(normal, x[i]);
        d = std::max({d, std::fabs(f - static_cast<double>(i) / n), std::fabs(static_cast<double>(i + 1) / n - f)});
    }
    EXPECT_LT(d, 0.002);
}

TEST(SampleGamma, RejectsBadParameters) {
    RngStream s(1, 0);
    EXPECT_THROW(sample_gamma(s, 0.0), std::invalid_argument);
    EXPECT_THROW(sample_gamma(s, -1.0), std::invalid_argument);
    EXPECT_THROW(sample_gamma(s, 1.0, 0.0), std::invalid_argument);
}

TEST(SampleGamma, MeanAndVarianceForSmallAndLargeShape) {
    for (double shape : {0.25, 0.5, 1.0, 4.5, 50.0}) {
        RngStream s(21, static_cast<std::uint64_t>(shape * 100));
        constexpr std::size_t kDraws = 200000;
        const auto m = moments(kDraws, [&] { return sample_gamma(s, shape, 2.0); });
        const double mean = 2.0 * shape;
        const double var = 4.0 * shape;
        EXPECT_NEAR(m.mean, mean, 5.0 * std::sqrt(var / kDraws)) << "shape " << shape;
        // Var of the sample variance for a gamma: (mu4 - var^2) / n with mu4 = 3var^2 + 6 var^2 / shape.
        const double se_var = std::sqrt((2.0 + 6.0 / shape) * var * var / kDraws);
        EXPECT_NEAR(m.var, var, 5.0 * se_var) << "shape " << shape;
    }
}

TEST(SampleChi, RejectsNonPositiveShape) {
    RngStream s(1, 0);
    EXPECT_THROW(sample_chi(s, 0.0), std::invalid_argument);
    EXPECT_THROW(sample_chi(s, -2.0), std::invalid_argument);
}

TEST(SampleChi, NonNegative) {
    RngStream s(2, 0);
    for (int i = 0; i < 10000; ++i) ASSERT_GE(sample_chi(s, 0.3), 0.0);
}

TEST(SampleChi, MeanAtShapeTwo) {
    RngStream s(31, 0);
    constexpr std::size_t kDraws = 1000000;
    const auto m = moments(kDraws, [&] { return sample_chi(s, 2.0); });
    const double exact = std::sqrt(M_PI / 2.0);
    EXPECT_NEAR(exact, 1.2533, 1e-4);
    EXPECT_NEAR(m.mean, exact, 4.0 * std::sqrt(m.var / kDraws));
}

TEST(SampleChi, MeanAtShapeNineInsideBounds) {
    RngStream s(32, 0);
    constexpr std::size_t kDraws = 1000000;
    const auto m = moments(kDraws, [&] { return sample_chi(s, 9.0); });
    const double se = std::sqrt(m.var / kDraws);
    EXPECT_GE(m.mean, 3.0 * (1.0 - 4.0 / 9.0) - 3.0 * se);
    EXPECT_LE(m.mean, 3.0 + 3.0 * se);
    // Exact mean sqrt(2) Gamma(5) / Gamma(4.5).
    const double exact = std::sqrt(2.0) * boost::math::tgamma(5.0) / boost::math::tgamma(4.5);
    EXPECT_NEAR(m.mean, exact, 4.0 * se);
}

TEST(SampleChi, SecondMomentEqualsShape) {
    for (double r : {0.5, 1.0, 3.0, 10.0, 100.0}) {
        RngStream s(33, static_cast<std::uint64_t>(r * 10));
        constexpr std::size_t kDraws = 100000;
        const auto m = moments(kDraws, [&] {
            const double c = sample_chi(s, r);
            return c * c;
        });
        // chi^2_r has variance 2r.
        EXPECT_NEAR(m.mean, r, 5.0 * std::sqrt(2.0 * r / kDraws)) << "r = " << r;
    }
}

TEST(SampleChi, MeanBracketForLargerShapes) {
    for (double r : {5.0, 8.0, 20.0, 60.0}) {
        RngStream s(34, static_cast<std::uint64_t>(r));
        constexpr std::size_t kDraws = 100000;
        const auto m = moments(kDraws, [&] { return sample_chi(s, r); });
        const double se = std::sqrt(m.var / kDraws);
        EXPECT_GE(m.mean, std::sqrt(r) * (1.0 - 4.0 / r) - 3.0 * se) << "r = " << r;
        EXPECT_LE(m.mean, std::sqrt(r) + 3.0 * se) << "r = " << r;
    }
}

TEST(GeneratorFamily, IsNamed) { EXPECT_FALSE(kGeneratorFamily.empty()); }
