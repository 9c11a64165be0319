#include "edgekit/stats.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace edgekit {

double ks_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_distance_to_cdf(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance_to_cdf: empty sample");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

TailFit fit_tail_exponent(std::span<const double> a_values, std::span<const double> log_probs, TailSide side) {
    if (a_values.size() != log_probs.size()) throw std::invalid_argument("fit_tail_exponent: length mismatch");
    if (a_values.size() < 3) throw std::invalid_argument("fit_tail_exponent: need at least three points");
    const double power = side == TailSide::right ? 1.5 : 3.0;
    std::vector<double> x;
    x.reserve(a_values.size());
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        if (!std::isfinite(a_values[i]) || !std::isfinite(log_probs[i]) || !(a_values[i] > 0.0)) {
            throw std::invalid_argument("fit_tail_exponent: inputs must be finite with a > 0");
        }
        x.push_back(std::pow(a_values[i], power));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += log_probs[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = log_probs[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_tail_exponent: abscissae must not all coincide");
    TailFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double predicted_tail_slope(double beta, TailSide side) {
    return side == TailSide::right ? -2.0 * beta / 3.0 : -beta / 24.0;
}

double normal_quantile(double p) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

ProportionInterval binomial_ci(std::size_t successes, std::size_t trials, double level) {
    if (trials == 0 || successes > trials) throw std::invalid_argument("binomial_ci: need 0 <= successes <= trials, trials > 0");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("binomial_ci: level must be in (0, 1)");
    const double z = normal_quantile(0.5 + 0.5 * level);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ProportionInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.lo = 0.0;
    if (successes == trials) ci.hi = 1.0;
    return ci;
}

} // namespace edgekit
