#pragma once

#include "edgekit/rng.hpp"
#include "edgekit/tridiag.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace edgekit {

/// White noise on a uniform grid of step h over (0, x_max]: cell k carries
/// a standard normal g_k, i.e. a Brownian increment sqrt(h) g_k.
struct NoiseGrid {
    double h = 0.01;
    double x_max = 15.0;
    std::vector<double> g;

    std::size_t size() const { return g.size(); }
};

/// floor(x_max / h) cells of fresh noise.
NoiseGrid make_noise_grid(double h, double x_max, RngStream& stream);

/// A grid with zero noise (the beta = infinity operator).
NoiseGrid make_quiet_grid(double h, double x_max);

/// Appends cells drawn from `stream` until the grid reaches new_x_max.
void extend_noise_grid(NoiseGrid& grid, double new_x_max, RngStream& stream);

/// Discrete stochastic Airy operator with Dirichlet ends:
///   d_k = 2/h^2 + k h + (2/sqrt(beta)) g_k / sqrt(h),  e_k = -1/h^2.
/// beta may be +infinity, which drops the noise.
TridiagSym build_sao(double beta, const NoiseGrid& grid);

struct SaoEigs {
    std::vector<double> values;   // ascending
    double x_max = 0.0;           // truncation point actually used
    bool truncation_suspect = false;
};

inline constexpr double kSaoTolerance = 1e-9;

/// Lowest k eigenvalues of one discretized operator draw. If the k-th lies
/// within 5 of the truncation point the noise path is extended to 1.5 x_max
/// and the spectrum recomputed; if that is still too close the result is
/// flagged.
SaoEigs sao_eigs(double beta, double h, double x_max, std::size_t k, RngStream& stream);

/// Same, on a caller-supplied grid (no extension).
std::vector<double> sao_eigs(double beta, const NoiseGrid& grid, std::size_t k, double tol = kSaoTolerance);

/// <v, T v> / <v, v>. h is the grid step and only enters through the
/// L2 weighting, which cancels in the ratio. Throws on a zero vector.
double rayleigh(const TridiagSym& t, std::span<const double> v, double h);

/// Half-step grid on the same Brownian path: each coarse increment is split
/// by a Brownian bridge, so fine increments sum in pairs to the coarse ones.
NoiseGrid couple_refine(const NoiseGrid& grid, RngStream& stream);

} // namespace edgekit
