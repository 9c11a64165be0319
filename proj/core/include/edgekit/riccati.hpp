#pragma once

#include "edgekit/estimate.hpp"
#include "edgekit/rng.hpp"
#include "edgekit/tridiag.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace edgekit {

/// Truncation and step-control parameters of the Riccati simulation.
struct RiccatiConfig {
    double cap = 1e3;             // paths re-enter from +infinity at p ~ cap
    double blow_threshold = -1e3; // below this the path is run noise-free to its pole
    double dt_max = 1e-3;
    double adapt_c = 0.1;         // dt = min(dt_max, adapt_c / (1 + |p|), next grid node)
    double horizon_margin = 10.0;
    double survive_margin = 1.0;
    double x_budget = 100.0;      // paths stop undecided at x = max(lambda, 0) + x_budget

    /// Throws std::invalid_argument on inconsistent values.
    void validate() const;
};

/// Explosion x-locations of one path at one lambda.
struct ExplosionRecord {
    double lambda = 0.0;
    std::vector<double> times;
    bool survived = false;
    bool stopped_early = false; // reached the requested explosion count
    double x_end = 0.0;

    std::size_t count() const { return times.size(); }
    /// Neither survived nor stopped on purpose: the x budget ran out.
    bool undecided() const { return !survived && !stopped_early; }
};

/// A Brownian path b(x), b(0) = 0, sampled lazily on a fixed grid and
/// linearly interpolated in between. Every evaluation at any lambda sees the
/// same path, which is what makes explosion counts monotone in lambda.
class BrownianPath {
public:
    /// Draws increments from its own copy of `stream`.
    BrownianPath(const RngStream& stream, double step);

    /// The zero path.
    static BrownianPath quiet(double step);

    double operator()(double x) {
        const double pos = x * inv_step_;
        auto idx = static_cast<std::size_t>(pos);
        if (idx + 1 >= b_.size()) extend(idx + 2);
        const double frac = pos - static_cast<double>(idx);
        return b_[idx] + frac * (b_[idx + 1] - b_[idx]);
    }

    double step() const { return step_; }
    bool is_quiet() const { return !stream_.has_value(); }

private:
    explicit BrownianPath(double step);
    void extend(std::size_t points);

    std::optional<RngStream> stream_;
    double step_;
    double inv_step_;
    double sqrt_step_;
    std::vector<double> b_;
};

/// Exact solution at time t of p' = q - p^2 with constant q, started at p.
/// Returns -infinity if the solution reaches its pole within (0, t].
double riccati_flow(double q, double p, double t);

/// Time for p' = q - p^2 started at p to reach -infinity; +infinity if it
/// never does (p > -sqrt(q) for q > 0, or p >= 0 for q = 0).
double riccati_time_to_pole(double q, double p);

inline constexpr std::size_t kNoStop = std::numeric_limits<std::size_t>::max();

/// Integrates dp = -(2/sqrt(beta)) db + (x - lambda - p^2) dx from
/// p(0) = +infinity. Each step applies the exact flow of p' = q - p^2 with q
/// frozen at the step midpoint, then the Brownian increment. A pole inside a
/// step, or p falling below the blow threshold, is an explosion located at
/// the pole of the frozen flow; the path restarts from +infinity there.
/// Stops early once `stop_after` explosions are recorded. beta = +infinity
/// runs the noiseless equation.
ExplosionRecord simulate_path(double lambda, double beta, const RiccatiConfig& config, BrownianPath& path,
                              std::size_t stop_after = kNoStop);

/// Convenience overload on a fresh path drawn from `stream`.
ExplosionRecord simulate_path(double lambda, double beta, const RiccatiConfig& config, const RngStream& stream);

struct ExplosionCount {
    std::size_t count = 0;
    bool undecided = false;
};

ExplosionCount count_explosions(double lambda, double beta, const RiccatiConfig& config, BrownianPath& path,
                                std::size_t stop_after = kNoStop);
ExplosionCount count_explosions(double lambda, double beta, const RiccatiConfig& config, const RngStream& stream);

inline constexpr double kLambdaTolerance = 1e-3;
inline constexpr Interval kDefaultLambdaBracket{-6.0, 6.0};

struct LambdaDraw {
    std::vector<double> values; // Lambda_0 .. Lambda_k, strictly increasing
    bool undecided = false;     // some evaluation ran out of x budget
};

/// One draw of Lambda_0: the lambda where the shared-path explosion count
/// first reaches 1, bisected to width tol. The bracket widens automatically.
LambdaDraw sample_lambda0(double beta, const RiccatiConfig& config, const RngStream& stream,
                          Interval bracket = kDefaultLambdaBracket, double tol = kLambdaTolerance);

/// One joint draw of (Lambda_0, ..., Lambda_k): Lambda_j is where the count
/// first exceeds j on the shared path.
LambdaDraw sample_lambda_k(double beta, std::size_t k, const RiccatiConfig& config, const RngStream& stream,
                           Interval bracket = kDefaultLambdaBracket, double tol = kLambdaTolerance);

/// Lambda_0 draws for samples 0..count-1, stream i = (master_seed, i).
/// Runs on the worker pool; the result does not depend on its size.
std::vector<LambdaDraw> sample_lambda0_batch(double beta, std::size_t count, const RiccatiConfig& config,
                                             std::uint64_t master_seed, Interval bracket = kDefaultLambdaBracket,
                                             double tol = kLambdaTolerance);

/// P(Lambda_0 > lambda) on a grid from shared Lambda_0 draws.
/// Throws std::invalid_argument if samples == 0.
CdfEstimate estimate_cdf(double beta, std::span<const double> lambda_grid, std::size_t samples,
                         const RiccatiConfig& config, std::uint64_t master_seed);

struct TailEstimate {
    double a = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t hits = 0;
    std::size_t samples = 0;
    std::size_t undecided = 0;
    bool zero_hits = false;
    double upper_bound = 0.0; // one-sided 95% bound, meaningful when zero_hits
};

/// Tail probabilities of TW_beta = -Lambda_0 from shared paths:
/// right: P(TW > a) = P(Lambda_0 < -a); left: P(TW < -a) = P(Lambda_0 > a).
std::vector<TailEstimate> tail_probabilities(double beta, std::span<const double> a_values, TailSide side,
                                             std::size_t samples, const RiccatiConfig& config,
                                             std::uint64_t master_seed);

TailEstimate tail_probability(double beta, double a, TailSide side, std::size_t samples,
                              const RiccatiConfig& config, std::uint64_t master_seed);

} // namespace edgekit
