#include "edgekit/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgekit {

void HermiteSpec::validate() const {
    if (n < 1) throw std::invalid_argument("HermiteSpec: n must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("HermiteSpec: beta must be positive");
}

void LaguerreSpec::validate() const {
    if (n < 1) throw std::invalid_argument("LaguerreSpec: n must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("LaguerreSpec: beta must be positive");
    if (!(kappa > static_cast<double>(n) - 1.0)) {
        throw std::invalid_argument("LaguerreSpec: kappa must exceed n - 1");
    }
}

TridiagSym sample_hermite(const HermiteSpec& spec, RngStream& stream) {
    spec.validate();
    const std::size_t n = spec.n;
    const double inv_sqrt_beta = 1.0 / std::sqrt(spec.beta);
    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    const double sd = std::sqrt(2.0) * inv_sqrt_beta;
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = sd * stream.standard_normal();
    }
    for (std::size_t l = 1; l < n; ++l) {
        off[l - 1] = inv_sqrt_beta * sample_chi(stream, static_cast<double>(n - l) * spec.beta);
    }
    return TridiagSym(std::move(diag), std::move(off));
}

EdgeScaling hermite_scaling(std::size_t n) {
    const double nn = static_cast<double>(n);
    return {2.0 * std::sqrt(nn), std::pow(nn, 1.0 / 6.0)};
}

namespace {

std::vector<double> scale_descending(std::span<const double> raw, const EdgeScaling& s) {
    std::vector<double> out;
    out.reserve(raw.size());
    for (double r : raw) {
        out.push_back(s.apply(r));
    }
    return out;
}

} // namespace

std::vector<double> hermite_edge_scale(std::span<const double> raw_descending, std::size_t n) {
    return scale_descending(raw_descending, hermite_scaling(n));
}

TridiagSym sample_laguerre(const LaguerreSpec& spec, RngStream& stream) {
    spec.validate();
    const std::size_t n = spec.n;
    const double beta = spec.beta;
    // Bidiagonal W: a_i on the diagonal, b_i below it (row i+1, column i).
    std::vector<double> a(n);
    std::vector<double> b(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = sample_chi(stream, beta * (spec.kappa - static_cast<double>(i)));
        if (i + 1 < n) {
            b[i] = sample_chi(stream, beta * static_cast<double>(n - 1 - i));
        }
    }
    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double below = i + 1 < n ? b[i] * b[i] : 0.0;
        diag[i] = (a[i] * a[i] + below) / beta;
        if (i + 1 < n) {
            off[i] = b[i] * a[i + 1] / beta;
        }
    }
    return TridiagSym(std::move(diag), std::move(off));
}

EdgeScaling laguerre_scaling(std::size_t n, double kappa) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double rk = std::sqrt(kappa);
    const double center = (rn + rk) * (rn + rk);
    const double scale = std::cbrt(rn * rk) / std::pow(rn + rk, 4.0 / 3.0);
    return {center, scale};
}

std::vector<double> laguerre_edge_scale(std::span<const double> raw_descending, std::size_t n, double kappa) {
    return scale_descending(raw_descending, laguerre_scaling(n, kappa));
}

EdgeSample edge_sample(const EnsembleSpec& spec, std::size_t k, RngStream& stream, double scaled_tol) {
    const auto [matrix, scaling] = std::visit(
        [&](const auto& s) -> std::pair<TridiagSym, EdgeScaling> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, HermiteSpec>) {
                return {sample_hermite(s, stream), hermite_scaling(s.n)};
            } else {
                return {sample_laguerre(s, stream), laguerre_scaling(s.n, s.kappa)};
            }
        },
        spec);
    if (k == 0 || k > matrix.size()) {
        throw std::invalid_argument("edge_sample: need 1 <= k <= n");
    }
    // Scaled edge values of the top k eigenvalues almost always fall in
    // [-8, 10 + 3k]; the hint is verified by eigen_extreme.
    const double k_d = static_cast<double>(k);
    const Interval hint{scaling.invert(10.0 + 3.0 * k_d), scaling.invert(-8.0)};
    const double raw_tol = scaled_tol / scaling.scale;
    auto ascending = eigen_extreme(matrix, k, Extreme::highest, raw_tol, hint);
    std::reverse(ascending.begin(), ascending.end());
    EdgeSample out;
    out.values = scale_descending(ascending, scaling);
    out.spec = spec;
    out.stream_id = stream.stream_id();
    return out;
}

} // namespace edgekit
