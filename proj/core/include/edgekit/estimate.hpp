#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace edgekit {

enum class Method { hermite, laguerre, sao, riccati, painleve };

/// right: TW_beta > a (Lambda_0 < -a); left: TW_beta < -a (Lambda_0 > a).
enum class TailSide { right, left };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);
std::string_view to_string(TailSide side);
TailSide tail_side_from_string(std::string_view name);

/// Estimated survival function lambda -> P(Lambda_0 > lambda) on a grid.
struct CdfEstimate {
    std::vector<double> lambda_grid;  // ascending
    std::vector<double> survival;     // nonincreasing, in [0, 1]
    std::vector<double> std_error;
    std::size_t samples = 0;
    Method method = Method::riccati;
    double beta = 2.0;
    std::size_t undecided = 0;        // Riccati paths that hit the x budget
    bool flagged = false;             // undecided fraction above 1%
    std::string manifest_path;

    /// Throws std::logic_error if lengths differ, the grid is not ascending,
    /// or survival leaves [0, 1] or increases.
    void check_invariants() const;
};

/// Empirical survival of `draws` on `grid` with binomial standard errors.
/// Sorting once makes the estimate nonincreasing by construction.
CdfEstimate survival_from_draws(std::vector<double> draws, std::vector<double> grid, Method method, double beta);

} // namespace edgekit
