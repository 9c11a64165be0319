#pragma once

#include "edgekit/rng.hpp"
#include "edgekit/tridiag.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace edgekit {

/// beta-Hermite ensemble of size n.
struct HermiteSpec {
    std::size_t n = 1;
    double beta = 2.0;

    void validate() const;
};

/// beta-Laguerre ensemble: n x n tridiagonal of W^T W with real kappa > n - 1.
struct LaguerreSpec {
    std::size_t n = 1;
    double kappa = 1.0;
    double beta = 2.0;

    void validate() const;
};

using EnsembleSpec = std::variant<HermiteSpec, LaguerreSpec>;

/// One draw of the k scaled edge statistics, ascending. values[0]
/// approximates the ground state of the stochastic Airy operator.
struct EdgeSample {
    std::vector<double> values;
    EnsembleSpec spec;
    std::uint64_t stream_id = 0;
};

/// Affine soft-edge map: scaled = scale * (center - raw).
struct EdgeScaling {
    double center = 0.0;
    double scale = 1.0;

    double apply(double raw) const { return scale * (center - raw); }
    double invert(double scaled) const { return center - scaled / scale; }
};

/// Diagonal g_i / sqrt(beta) with g_i ~ N(0, 2); off-diagonal
/// chi_{(n-l) beta} / sqrt(beta) for l = 1..n-1, largest shape at the top.
TridiagSym sample_hermite(const HermiteSpec& spec, RngStream& stream);

/// Center 2 sqrt(n), scale n^(1/6).
EdgeScaling hermite_scaling(std::size_t n);

/// Maps descending raw eigenvalues to ascending n^(1/6) (2 sqrt(n) - lambda).
std::vector<double> hermite_edge_scale(std::span<const double> raw_descending, std::size_t n);

/// Tridiagonal of W^T W / beta with W the lower-bidiagonal chi matrix:
/// diagonal entries chi~_{beta(kappa-i+1)}, subdiagonal chi_{beta(n-i)}.
/// Throws std::invalid_argument if kappa <= n - 1.
TridiagSym sample_laguerre(const LaguerreSpec& spec, RngStream& stream);

/// Center (sqrt(n) + sqrt(kappa))^2, scale (n kappa)^(1/6) / (sqrt(n) + sqrt(kappa))^(4/3).
EdgeScaling laguerre_scaling(std::size_t n, double kappa);

std::vector<double> laguerre_edge_scale(std::span<const double> raw_descending, std::size_t n, double kappa);

/// Bisection width for the scaled edge values produced by edge_sample.
inline constexpr double kEdgeScaledTolerance = 1e-6;

/// Sample a matrix, extract its top k eigenvalues and map them to the edge.
EdgeSample edge_sample(const EnsembleSpec& spec, std::size_t k, RngStream& stream,
                       double scaled_tol = kEdgeScaledTolerance);

} // namespace edgekit
