#include "edgekit/experiment.hpp"

#include "edgekit/airyop.hpp"
#include "edgekit/painleve.hpp"
#include "edgekit/parallel.hpp"
#include "edgekit/rng.hpp"

#include <fmt/format.h>

#include <chrono>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#ifndef EDGEKIT_VERSION
#define EDGEKIT_VERSION "unknown"
#endif

namespace edgekit {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

void validate_grid(double lo, double hi, std::size_t points) {
    require(points >= 1, "grid needs at least one point");
    require(std::isfinite(lo) && std::isfinite(hi), "grid bounds must be finite");
    require(points == 1 ? lo <= hi : lo < hi, "grid needs lambda-min < lambda-max");
}

void add_config(RunManifest& m, const RiccatiConfig& c) {
    m.parameters["cap"] = format_number(c.cap);
    m.parameters["blow_threshold"] = format_number(c.blow_threshold);
    m.parameters["dt_max"] = format_number(c.dt_max);
    m.parameters["adapt_c"] = format_number(c.adapt_c);
    m.parameters["horizon_margin"] = format_number(c.horizon_margin);
    m.parameters["survive_margin"] = format_number(c.survive_margin);
    m.parameters["x_budget"] = format_number(c.x_budget);
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += format_number(xs[i]);
    }
    return out;
}

} // namespace

void validate(const ExperimentConfig& config) {
    std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, HermiteEdgeRun> || std::is_same_v<T, LaguerreEdgeRun>) {
                c.spec.validate();
                require(c.k >= 1 && c.k <= c.spec.n, "k must be in [1, n]");
                require(c.samples >= 1, "samples must be >= 1");
            } else if constexpr (std::is_same_v<T, SaoRun>) {
                require(c.beta > 0.0, "beta must be positive");
                require(c.h > 0.0 && c.x_max > c.h, "need 0 < h < xmax");
                require(c.k >= 1, "k must be >= 1");
                require(c.samples >= 1, "samples must be >= 1");
            } else if constexpr (std::is_same_v<T, RiccatiCdfRun>) {
                require(c.beta > 0.0, "beta must be positive");
                validate_grid(c.lambda_min, c.lambda_max, c.points);
                require(c.samples >= 1, "samples must be >= 1");
                c.config.validate();
            } else if constexpr (std::is_same_v<T, TwReferenceRun>) {
                require(c.beta == 1 || c.beta == 2 || c.beta == 4, "beta must be 1, 2 or 4");
                validate_grid(c.lambda_min, c.lambda_max, c.points);
            } else {
                require(c.beta > 0.0, "beta must be positive");
                require(!c.a_values.empty(), "need at least one a");
                for (double a : c.a_values) require(a > 0.0 && std::isfinite(a), "a must be positive");
                require(c.samples >= 1, "samples must be >= 1");
                c.config.validate();
            }
        },
        config);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    validate_grid(lo, hi, points);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    if (points > 1) grid.back() = hi;
    return grid;
}

std::vector<std::vector<double>> ensemble_draws(const EnsembleSpec& spec, std::size_t k, std::size_t samples,
                                                std::uint64_t seed) {
    require(samples >= 1, "samples must be >= 1");
    std::vector<std::vector<double>> draws(samples);
    parallel_for(samples, [&](std::size_t i) {
        RngStream stream = make_stream(seed, i);
        draws[i] = edge_sample(spec, k, stream).values;
    });
    return draws;
}

std::vector<std::vector<double>> sao_draws(double beta, double h, double x_max, std::size_t k,
                                           std::size_t samples, std::uint64_t seed) {
    require(samples >= 1, "samples must be >= 1");
    std::vector<std::vector<double>> draws(samples);
    parallel_for(samples, [&](std::size_t i) {
        RngStream stream = make_stream(seed, i);
        draws[i] = sao_eigs(beta, h, x_max, k, stream).values;
    });
    return draws;
}

std::vector<double> column_of(const std::vector<std::vector<double>>& draws, std::size_t j) {
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& row : draws) out.push_back(row.at(j));
    return out;
}

CdfEstimate tw_reference_curve(int beta, std::span<const double> lambda_grid) {
    const PainleveSolution& sol = default_painleve();
    CdfEstimate est;
    est.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    est.method = Method::painleve;
    est.beta = beta;
    for (double l : lambda_grid) {
        est.survival.push_back(std::clamp(lambda0_survival(beta, l, sol), 0.0, 1.0));
        est.std_error.push_back(0.0);
    }
    // Quadrature noise can break monotonicity in the last ulp near 0 and 1.
    for (std::size_t i = 1; i < est.survival.size(); ++i) {
        est.survival[i] = std::min(est.survival[i], est.survival[i - 1]);
    }
    est.check_invariants();
    return est;
}

std::string tails_csv(const std::vector<TailEstimate>& tails) {
    std::string out = "a,probability,stderr,hits,samples,undecided,upper_bound\n";
    for (const auto& t : tails) {
        out += fmt::format("{},{},{},{},{},{},{}\n", format_number(t.a), format_number(t.estimate),
                           format_number(t.std_error), t.hits, t.samples, t.undecided,
                           format_number(t.upper_bound));
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::optional<std::filesystem::path>& out) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result;
    RunManifest& m = result.manifest;
    m.generator = std::string(kGeneratorFamily);
    m.threads = worker_count();
    m.version = EDGEKIT_VERSION;

    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, HermiteEdgeRun>) {
                m.command = "edge-hermite";
                m.master_seed = c.seed;
                m.parameters = {{"n", std::to_string(c.spec.n)}, {"beta", format_number(c.spec.beta)},
                                {"k", std::to_string(c.k)}, {"samples", std::to_string(c.samples)}};
                result.draws = ensemble_draws(c.spec, c.k, c.samples, c.seed);
                result.csv = samples_csv(result.draws, c.k);
            } else if constexpr (std::is_same_v<T, LaguerreEdgeRun>) {
                m.command = "edge-laguerre";
                m.master_seed = c.seed;
                m.parameters = {{"n", std::to_string(c.spec.n)}, {"kappa", format_number(c.spec.kappa)},
                                {"beta", format_number(c.spec.beta)}, {"k", std::to_string(c.k)},
                                {"samples", std::to_string(c.samples)}};
                result.draws = ensemble_draws(c.spec, c.k, c.samples, c.seed);
                result.csv = samples_csv(result.draws, c.k);
            } else if constexpr (std::is_same_v<T, SaoRun>) {
                m.command = "sao";
                m.master_seed = c.seed;
                m.parameters = {{"beta", format_number(c.beta)}, {"h", format_number(c.h)},
                                {"xmax", format_number(c.x_max)}, {"k", std::to_string(c.k)},
                                {"samples", std::to_string(c.samples)}};
                result.draws = sao_draws(c.beta, c.h, c.x_max, c.k, c.samples, c.seed);
                result.csv = samples_csv(result.draws, c.k);
            } else if constexpr (std::is_same_v<T, RiccatiCdfRun>) {
                m.command = "riccati-cdf";
                m.master_seed = c.seed;
                m.parameters = {{"beta", format_number(c.beta)}, {"lambda_min", format_number(c.lambda_min)},
                                {"lambda_max", format_number(c.lambda_max)}, {"points", std::to_string(c.points)},
                                {"samples", std::to_string(c.samples)}};
                add_config(m, c.config);
                const auto grid = linear_grid(c.lambda_min, c.lambda_max, c.points);
                result.cdf = estimate_cdf(c.beta, grid, c.samples, c.config, c.seed);
                m.parameters["undecided"] = std::to_string(result.cdf->undecided);
                result.csv = cdf_csv(*result.cdf);
            } else if constexpr (std::is_same_v<T, TwReferenceRun>) {
                m.command = "tw-reference";
                m.parameters = {{"beta", std::to_string(c.beta)}, {"lambda_min", format_number(c.lambda_min)},
                                {"lambda_max", format_number(c.lambda_max)}, {"points", std::to_string(c.points)},
                                {"painleve_s_max", format_number(kPainleveSMax)},
                                {"painleve_s_min", format_number(kPainleveSMin)},
                                {"painleve_step", format_number(kPainleveStep)}};
                const auto grid = linear_grid(c.lambda_min, c.lambda_max, c.points);
                result.cdf = tw_reference_curve(c.beta, grid);
                result.csv = cdf_csv(*result.cdf);
            } else {
                m.command = "tails";
                m.master_seed = c.seed;
                m.parameters = {{"beta", format_number(c.beta)}, {"side", std::string(to_string(c.side))},
                                {"a", join(c.a_values)}, {"samples", std::to_string(c.samples)}};
                add_config(m, c.config);
                result.tails = tail_probabilities(c.beta, c.a_values, c.side, c.samples, c.config, c.seed);
                result.csv = tails_csv(result.tails);
            }
        },
        config);

    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out) {
        const auto manifest = manifest_path_for(*out);
        try {
            write_file_atomic(*out, result.csv);
            write_manifest(m, manifest);
        } catch (...) {
            std::error_code ec;
            std::filesystem::remove(*out, ec);
            std::filesystem::remove(manifest, ec);
            throw;
        }
        if (result.cdf) result.cdf->manifest_path = manifest.string();
    }
    return result;
}

} // namespace edgekit
