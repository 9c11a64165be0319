#include "edgekit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edgekit {

std::string_view to_string(Method m) {
    switch (m) {
    case Method::hermite: return "hermite";
    case Method::laguerre: return "laguerre";
    case Method::sao: return "sao";
    case Method::riccati: return "riccati";
    case Method::painleve: return "painleve";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::hermite, Method::laguerre, Method::sao, Method::riccati, Method::painleve}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view to_string(TailSide side) { return side == TailSide::right ? "right" : "left"; }

TailSide tail_side_from_string(std::string_view name) {
    if (name == "right") return TailSide::right;
    if (name == "left") return TailSide::left;
    throw std::invalid_argument("tail side must be 'right' or 'left', got: " + std::string(name));
}

void CdfEstimate::check_invariants() const {
    if (survival.size() != lambda_grid.size() || std_error.size() != lambda_grid.size()) {
        throw std::logic_error("CdfEstimate: column lengths differ");
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1])) {
            throw std::logic_error("CdfEstimate: grid must be strictly ascending");
        }
        if (!(survival[i] >= 0.0 && survival[i] <= 1.0)) {
            throw std::logic_error("CdfEstimate: survival outside [0, 1]");
        }
        if (i > 0 && survival[i] > survival[i - 1]) {
            throw std::logic_error("CdfEstimate: survival increases along the grid");
        }
    }
}

CdfEstimate survival_from_draws(std::vector<double> draws, std::vector<double> grid, Method method, double beta) {
    if (draws.empty()) throw std::invalid_argument("survival_from_draws: no draws");
    std::sort(draws.begin(), draws.end());
    CdfEstimate est;
    est.samples = draws.size();
    est.method = method;
    est.beta = beta;
    const double n = static_cast<double>(draws.size());
    for (double lambda : grid) {
        const auto above = draws.end() - std::upper_bound(draws.begin(), draws.end(), lambda);
        const double p = static_cast<double>(above) / n;
        est.survival.push_back(p);
        est.std_error.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    est.lambda_grid = std::move(grid);
    est.check_invariants();
    return est;
}

} // namespace edgekit
