#pragma once

#include "edgekit/estimate.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace edgekit {

/// Two-sample Kolmogorov-Smirnov statistic sup_t |F_a(t) - F_b(t)|.
/// Throws std::invalid_argument if either sample is empty.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// One-sample statistic against a continuous distribution function.
double ks_distance_to_cdf(std::span<const double> samples, const std::function<double(double)>& cdf);

struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares line of log P against a^{3/2} (right tail) or a^3 (left).
/// Needs at least three finite points with distinct abscissae.
TailFit fit_tail_exponent(std::span<const double> a_values, std::span<const double> log_probs, TailSide side);

/// Leading tail exponents of TW_beta: -2 beta / 3 (right), -beta / 24 (left).
double predicted_tail_slope(double beta, TailSide side);

struct ProportionInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval at confidence `level`.
ProportionInterval binomial_ci(std::size_t successes, std::size_t trials, double level = 0.95);

/// Standard normal quantile.
double normal_quantile(double p);

} // namespace edgekit
