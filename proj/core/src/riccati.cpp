#include "edgekit/riccati.hpp"

#include "edgekit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgekit {

void RiccatiConfig::validate() const {
    if (!(cap > 0.0)) throw std::invalid_argument("RiccatiConfig: cap must be positive");
    if (!(blow_threshold <= -cap)) throw std::invalid_argument("RiccatiConfig: blow_threshold must be <= -cap");
    if (!(dt_max > 0.0)) throw std::invalid_argument("RiccatiConfig: dt_max must be positive");
    if (!(adapt_c > 0.0)) throw std::invalid_argument("RiccatiConfig: adapt_c must be positive");
    if (!(horizon_margin > 0.0)) throw std::invalid_argument("RiccatiConfig: horizon_margin must be positive");
    if (!(survive_margin > 0.0)) throw std::invalid_argument("RiccatiConfig: survive_margin must be positive");
    if (!(x_budget > horizon_margin)) throw std::invalid_argument("RiccatiConfig: x_budget must exceed horizon_margin");
}

BrownianPath::BrownianPath(const RngStream& stream, double step) : BrownianPath(step) {
    stream_.emplace(stream);
}

BrownianPath::BrownianPath(double step)
    : step_(step), inv_step_(1.0 / step), sqrt_step_(std::sqrt(step)), b_{0.0} {
    if (!(step > 0.0)) throw std::invalid_argument("BrownianPath: step must be positive");
}

BrownianPath BrownianPath::quiet(double step) { return BrownianPath(step); }

void BrownianPath::extend(std::size_t points) {
    const std::size_t target = std::max(points, b_.size() + 4096);
    b_.reserve(target);
    while (b_.size() < target) {
        const double inc = stream_ ? sqrt_step_ * stream_->standard_normal() : 0.0;
        b_.push_back(b_.back() + inc);
    }
}

namespace {

// Flow of p' = q - p^2 with q frozen over a step of length t, written through
// the linear equation psi'' = q psi: p(t) = (q S + p C) / (C + p S) where
// C = psi-propagator and S its derivative partner.
struct Propagator {
    double c;
    double s;
};

Propagator propagator(double q, double t) {
    const double z = q * t * t;
    if (std::abs(z) < 1e-3) {
        // Taylor series of cosh(sqrt(z)) and sinh(sqrt(z))/sqrt(z).
        return {1.0 + z * (0.5 + z * (1.0 / 24.0 + z / 720.0)),
                t * (1.0 + z * (1.0 / 6.0 + z * (1.0 / 120.0 + z / 5040.0)))};
    }
    const double r = std::sqrt(std::abs(q));
    if (q > 0.0) return {std::cosh(r * t), std::sinh(r * t) / r};
    return {std::cos(r * t), std::sin(r * t) / r};
}

} // namespace

double riccati_time_to_pole(double q, double p) {
    if (q > 0.0) {
        const double r = std::sqrt(q);
        return p < -r ? std::atanh(-r / p) / r : std::numeric_limits<double>::infinity();
    }
    if (q < 0.0) {
        const double r = std::sqrt(-q);
        return std::atan2(r, -p) / r;
    }
    return p < 0.0 ? -1.0 / p : std::numeric_limits<double>::infinity();
}

double riccati_flow(double q, double p, double t) {
    const Propagator pr = propagator(q, t);
    const double den = pr.c + p * pr.s;
    if (den <= 0.0) return -std::numeric_limits<double>::infinity();
    return (q * pr.s + p * pr.c) / den;
}

ExplosionRecord simulate_path(double lambda, double beta, const RiccatiConfig& config, BrownianPath& path,
                              std::size_t stop_after) {
    if (!(beta > 0.0)) throw std::invalid_argument("simulate_path: beta must be positive");
    const double sigma = std::isinf(beta) || path.is_quiet() ? 0.0 : 2.0 / std::sqrt(beta);
    const double blow = config.blow_threshold;
    const double dt_max = config.dt_max;
    const double c = config.adapt_c;
    const double grid = path.step();
    // Leaving +infinity the flow is p ~ 1/(x - x0), so the first step is
    // sized to land near the cap.
    const double entry_time = 1.0 / config.cap;
    const double x_limit = std::max(lambda, 0.0) + config.x_budget;

    ExplosionRecord rec;
    rec.lambda = lambda;
    double x = 0.0;
    double p = 0.0;
    bool at_infinity = true;
    double bx = 0.0;
    double survival_from = config.horizon_margin;
    // Index of the first Brownian grid node strictly after x.
    double next_node = 1.0;
    auto resync_node = [&] {
        next_node = std::floor(x / grid) + 1.0;
        if (next_node * grid <= x) next_node += 1.0;
    };

    auto noise = [&](double xn) {
        if (sigma == 0.0) return 0.0;
        const double bn = path(xn);
        const double db = bn - bx;
        bx = bn;
        return sigma * db;
    };
    // Returns true if the path should stop.
    auto explode = [&](double at) {
        rec.times.push_back(at);
        if (rec.times.size() >= stop_after) {
            rec.stopped_early = true;
            rec.x_end = at;
            return true;
        }
        survival_from = at + config.horizon_margin;
        x = at;
        bx = sigma != 0.0 ? path(x) : 0.0;
        at_infinity = true;
        return false;
    };

    for (;;) {
        if (x >= x_limit) {
            rec.x_end = x;
            return rec;
        }
        if (at_infinity) {
            const double dt = entry_time;
            const Propagator pr = propagator(x + 0.5 * dt - lambda, dt);
            p = pr.c / pr.s;
            x += dt;
            resync_node();
            p -= noise(x);
            at_infinity = false;
        } else {
            // Steps end on the Brownian grid so that interpolation never
            // shortens an increment in the noise-dominated regime.
            const double node_x = next_node * grid;
            double dt = std::min(dt_max, c / (1.0 + std::abs(p)));
            const bool to_node = dt >= node_x - x;
            if (to_node) dt = node_x - x;
            const double q = x + 0.5 * dt - lambda;
            const Propagator pr = propagator(q, dt);
            const double den = pr.c + p * pr.s;
            if (den <= 0.0) {
                if (explode(x + std::min(riccati_time_to_pole(q, p), dt))) return rec;
                continue;
            }
            p = (q * pr.s + p * pr.c) / den;
            if (to_node) {
                x = node_x;
                next_node += 1.0;
            } else {
                x += dt;
            }
            p -= noise(x);
        }
        if (p <= blow) {
            if (explode(x + riccati_time_to_pole(x - lambda, p))) return rec;
            continue;
        }
        if (x >= survival_from) {
            const double gap = x - lambda;
            if (gap >= 0.5 * config.horizon_margin && p >= std::sqrt(gap) - config.survive_margin) {
                rec.survived = true;
                rec.x_end = x;
                return rec;
            }
        }
    }
}

ExplosionRecord simulate_path(double lambda, double beta, const RiccatiConfig& config, const RngStream& stream) {
    BrownianPath path = std::isinf(beta) ? BrownianPath::quiet(config.dt_max) : BrownianPath(stream, config.dt_max);
    return simulate_path(lambda, beta, config, path);
}

ExplosionCount count_explosions(double lambda, double beta, const RiccatiConfig& config, BrownianPath& path,
                                std::size_t stop_after) {
    const auto rec = simulate_path(lambda, beta, config, path, stop_after);
    return {rec.count(), rec.undecided()};
}

ExplosionCount count_explosions(double lambda, double beta, const RiccatiConfig& config, const RngStream& stream) {
    const auto rec = simulate_path(lambda, beta, config, stream);
    return {rec.count(), rec.undecided()};
}

namespace {

void check_bisection_args(double beta, const RiccatiConfig& config, Interval bracket, double tol) {
    if (!(beta > 0.0)) throw std::invalid_argument("Riccati sampling: beta must be positive");
    config.validate();
    if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("Riccati sampling: bracket must have lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("Riccati sampling: tol must be positive");
}

// Evaluates "at least `level` explosions at lambda" on one shared path.
class ThresholdSearch {
public:
    ThresholdSearch(double beta, const RiccatiConfig& config, const RngStream& stream)
        : beta_(beta), config_(config),
          path_(std::isinf(beta) ? BrownianPath::quiet(config.dt_max) : BrownianPath(stream, config.dt_max)) {}

    bool reaches(double lambda, std::size_t level) {
        const auto rec = simulate_path(lambda, beta_, config_, path_, level);
        if (rec.undecided()) undecided_ = true;
        return rec.count() >= level;
    }

    // Smallest lambda (to within tol) with at least `level` explosions,
    // searching upward from lo, where the level is known not to be reached.
    Interval bisect(std::size_t level, double lo, double hi, double tol) {
        double width = std::max(hi - lo, 1.0);
        for (int guard = 0; !reaches(hi, level); ++guard) {
            if (guard > 60) throw std::runtime_error("Riccati sampling: cannot bracket eigenvalue from above");
            lo = hi;
            hi += width;
            width *= 2.0;
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (reaches(mid, level)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return {lo, hi};
    }

    double widen_below(double lo, double hi) {
        double width = std::max(hi - lo, 1.0);
        for (int guard = 0; reaches(lo, 1); ++guard) {
            if (guard > 60) throw std::runtime_error("Riccati sampling: cannot bracket eigenvalue from below");
            lo -= width;
            width *= 2.0;
        }
        return lo;
    }

    bool undecided() const { return undecided_; }

private:
    double beta_;
    RiccatiConfig config_;
    BrownianPath path_;
    bool undecided_ = false;
};

} // namespace

LambdaDraw sample_lambda0(double beta, const RiccatiConfig& config, const RngStream& stream, Interval bracket,
                          double tol) {
    return sample_lambda_k(beta, 0, config, stream, bracket, tol);
}

LambdaDraw sample_lambda_k(double beta, std::size_t k, const RiccatiConfig& config, const RngStream& stream,
                           Interval bracket, double tol) {
    check_bisection_args(beta, config, bracket, tol);
    ThresholdSearch search(beta, config, stream);
    LambdaDraw out;
    double lo = search.widen_below(bracket.lo, bracket.hi);
    double hi = bracket.hi;
    for (std::size_t j = 0; j <= k; ++j) {
        const std::size_t level = j + 1;
        if (j > 0) {
            // Start above the previous eigenvalue unless two share its bracket.
            if (!search.reaches(hi, level)) {
                lo = hi;
                hi = std::max(hi + tol, bracket.hi);
            }
        }
        const Interval found = search.bisect(level, lo, hi, tol);
        out.values.push_back(0.5 * (found.lo + found.hi));
        lo = found.lo;
        hi = found.hi;
    }
    out.undecided = search.undecided();
    return out;
}

std::vector<LambdaDraw> sample_lambda0_batch(double beta, std::size_t count, const RiccatiConfig& config,
                                             std::uint64_t master_seed, Interval bracket, double tol) {
    check_bisection_args(beta, config, bracket, tol);
    std::vector<LambdaDraw> draws(count);
    parallel_for(count, [&](std::size_t i) {
        draws[i] = sample_lambda0(beta, config, make_stream(master_seed, i), bracket, tol);
    });
    return draws;
}

CdfEstimate estimate_cdf(double beta, std::span<const double> lambda_grid, std::size_t samples,
                         const RiccatiConfig& config, std::uint64_t master_seed) {
    if (samples == 0) throw std::invalid_argument("estimate_cdf: samples must be >= 1");
    const auto draws = sample_lambda0_batch(beta, samples, config, master_seed);
    std::vector<double> values;
    values.reserve(draws.size());
    std::size_t undecided = 0;
    for (const auto& d : draws) {
        values.push_back(d.values.front());
        undecided += d.undecided ? 1 : 0;
    }
    CdfEstimate est = survival_from_draws(std::move(values), {lambda_grid.begin(), lambda_grid.end()},
                                          Method::riccati, beta);
    est.undecided = undecided;
    est.flagged = static_cast<double>(undecided) > 0.01 * static_cast<double>(samples);
    return est;
}

std::vector<TailEstimate> tail_probabilities(double beta, std::span<const double> a_values, TailSide side,
                                             std::size_t samples, const RiccatiConfig& config,
                                             std::uint64_t master_seed) {
    if (samples == 0) throw std::invalid_argument("tail_probabilities: samples must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("tail_probabilities: beta must be positive");
    config.validate();
    for (double a : a_values) {
        if (!(a > 0.0)) throw std::invalid_argument("tail_probabilities: a must be positive");
    }
    // Events shrink as a grows, so each path is tested in increasing a and
    // abandoned at the first miss.
    std::vector<std::size_t> order(a_values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a_values[x] < a_values[y]; });

    // Per sample: how many of the sorted a values were hit, and whether any
    // evaluation ran out of budget.
    std::vector<std::uint32_t> depth(samples, 0);
    std::vector<std::uint8_t> undecided(samples, 0);
    parallel_for(samples, [&](std::size_t i) {
        const RngStream stream = make_stream(master_seed, i);
        BrownianPath path = std::isinf(beta) ? BrownianPath::quiet(config.dt_max) : BrownianPath(stream, config.dt_max);
        std::uint32_t hit = 0;
        for (std::size_t idx : order) {
            const double a = a_values[idx];
            bool event;
            if (side == TailSide::right) {
                const auto rec = simulate_path(-a, beta, config, path, 1);
                if (rec.undecided()) undecided[i] = 1;
                event = rec.count() >= 1;
            } else {
                const auto rec = simulate_path(a, beta, config, path, 1);
                if (rec.undecided()) undecided[i] = 1;
                event = rec.count() == 0;
            }
            if (!event) break;
            ++hit;
        }
        depth[i] = hit;
    });

    std::vector<TailEstimate> out(a_values.size());
    const double n = static_cast<double>(samples);
    std::size_t undecided_total = 0;
    for (auto u : undecided) undecided_total += u;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        TailEstimate& est = out[order[rank]];
        est.a = a_values[order[rank]];
        est.samples = samples;
        est.hits = static_cast<std::size_t>(
            std::count_if(depth.begin(), depth.end(), [rank](std::uint32_t d) { return d > rank; }));
        est.estimate = static_cast<double>(est.hits) / n;
        est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / n);
        est.undecided = undecided_total;
        est.zero_hits = est.hits == 0;
        // Exact one-sided 95% bound for zero successes; otherwise a normal bound.
        est.upper_bound = est.zero_hits ? 1.0 - std::pow(0.05, 1.0 / n)
                                        : std::min(1.0, est.estimate + 1.6448536269514722 * est.std_error);
    }
    return out;
}

TailEstimate tail_probability(double beta, double a, TailSide side, std::size_t samples,
                              const RiccatiConfig& config, std::uint64_t master_seed) {
    const double as[] = {a};
    return tail_probabilities(beta, as, side, samples, config, master_seed).front();
}

} // namespace edgekit
