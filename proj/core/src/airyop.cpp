#include "edgekit/airyop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgekit {

namespace {

void check_grid_args(double h, double x_max) {
    if (!(h > 0.0)) throw std::invalid_argument("noise grid: h must be positive");
    if (!(x_max >= h)) throw std::invalid_argument("noise grid: x_max must be at least one cell");
}

std::size_t cell_count(double h, double x_max) {
    // Guard against x_max / h landing a hair below an integer.
    return static_cast<std::size_t>(std::floor(x_max / h + 1e-9));
}

} // namespace

NoiseGrid make_noise_grid(double h, double x_max, RngStream& stream) {
    check_grid_args(h, x_max);
    NoiseGrid grid{h, x_max, {}};
    grid.g.resize(cell_count(h, x_max));
    for (double& v : grid.g) v = stream.standard_normal();
    return grid;
}

NoiseGrid make_quiet_grid(double h, double x_max) {
    check_grid_args(h, x_max);
    return NoiseGrid{h, x_max, std::vector<double>(cell_count(h, x_max), 0.0)};
}

void extend_noise_grid(NoiseGrid& grid, double new_x_max, RngStream& stream) {
    const std::size_t target = cell_count(grid.h, new_x_max);
    while (grid.g.size() < target) {
        grid.g.push_back(stream.standard_normal());
    }
    grid.x_max = std::max(grid.x_max, new_x_max);
}

TridiagSym build_sao(double beta, const NoiseGrid& grid) {
    if (!(beta > 0.0)) throw std::invalid_argument("build_sao: beta must be positive");
    const std::size_t n = grid.size();
    if (n == 0) throw std::invalid_argument("build_sao: empty grid");
    const double h = grid.h;
    const double lap = 1.0 / (h * h);
    const double noise = std::isinf(beta) ? 0.0 : 2.0 / std::sqrt(beta) / std::sqrt(h);
    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(k + 1) * h;
        diag[k] = 2.0 * lap + x + noise * grid.g[k];
    }
    return TridiagSym(std::move(diag), std::vector<double>(n - 1, -lap));
}

std::vector<double> sao_eigs(double beta, const NoiseGrid& grid, std::size_t k, double tol) {
    const TridiagSym t = build_sao(beta, grid);
    // Low-lying values sit near the Airy zeros; beyond that the Gershgorin
    // fallback in eigen_extreme takes over.
    const Interval hint{-12.0, 8.0 + 2.5 * static_cast<double>(k)};
    return eigen_extreme(t, k, Extreme::lowest, tol, hint);
}

SaoEigs sao_eigs(double beta, double h, double x_max, std::size_t k, RngStream& stream) {
    if (k == 0) throw std::invalid_argument("sao_eigs: k must be >= 1");
    NoiseGrid grid = std::isinf(beta) ? make_quiet_grid(h, x_max) : make_noise_grid(h, x_max, stream);
    if (grid.size() < k) throw std::invalid_argument("sao_eigs: grid has fewer than k cells");
    SaoEigs out;
    out.values = sao_eigs(beta, grid, k);
    out.x_max = grid.x_max;
    if (out.values.back() > grid.x_max - 5.0) {
        const double wider = 1.5 * x_max;
        if (std::isinf(beta)) {
            grid = make_quiet_grid(h, wider);
        } else {
            extend_noise_grid(grid, wider, stream);
        }
        out.values = sao_eigs(beta, grid, k);
        out.x_max = grid.x_max;
        out.truncation_suspect = out.values.back() > grid.x_max - 5.0;
    }
    return out;
}

double rayleigh(const TridiagSym& t, std::span<const double> v, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rayleigh: h must be positive");
    double vv = 0.0;
    for (double x : v) vv += x * x;
    if (vv == 0.0) throw std::invalid_argument("rayleigh: zero vector");
    std::vector<double> tv(v.size());
    t.multiply(v, tv);
    double vtv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) vtv += v[i] * tv[i];
    return (h * vtv) / (h * vv);
}

NoiseGrid couple_refine(const NoiseGrid& grid, RngStream& stream) {
    NoiseGrid fine{0.5 * grid.h, grid.x_max, {}};
    fine.g.resize(2 * grid.size());
    // Coarse increment G = sqrt(h) g splits as G/2 +- (sqrt(h)/2) Z; in units
    // of sqrt(h/2) that is (g +- Z) / sqrt(2).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double z = stream.standard_normal();
        fine.g[2 * k] = (grid.g[k] + z) * inv_sqrt2;
        fine.g[2 * k + 1] = (grid.g[k] - z) * inv_sqrt2;
    }
    return fine;
}

} // namespace edgekit
