#pragma once

#include "edgekit/ensembles.hpp"
#include "edgekit/estimate.hpp"
#include "edgekit/io.hpp"
#include "edgekit/riccati.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

namespace edgekit {

struct HermiteEdgeRun {
    HermiteSpec spec;
    std::size_t k = 1;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

struct LaguerreEdgeRun {
    LaguerreSpec spec;
    std::size_t k = 1;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

struct SaoRun {
    double beta = 2.0;
    double h = 0.01;
    double x_max = 15.0;
    std::size_t k = 1;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

struct RiccatiCdfRun {
    double beta = 2.0;
    double lambda_min = -4.0;
    double lambda_max = 4.0;
    std::size_t points = 41;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    RiccatiConfig config;
};

struct TwReferenceRun {
    int beta = 2;
    double lambda_min = -4.0;
    double lambda_max = 4.0;
    std::size_t points = 41;
};

struct TailsRun {
    double beta = 2.0;
    TailSide side = TailSide::right;
    std::vector<double> a_values;
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
    RiccatiConfig config;
};

using ExperimentConfig =
    std::variant<HermiteEdgeRun, LaguerreEdgeRun, SaoRun, RiccatiCdfRun, TwReferenceRun, TailsRun>;

/// Throws std::invalid_argument for an unusable configuration (including
/// samples == 0 or points == 0).
void validate(const ExperimentConfig& config);

/// `points` evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Scaled edge draws, sample i on stream (seed, i). Each row is ascending.
std::vector<std::vector<double>> ensemble_draws(const EnsembleSpec& spec, std::size_t k, std::size_t samples,
                                                std::uint64_t seed);

/// Lowest k eigenvalues of independent discretized operators, sample i on
/// stream (seed, i).
std::vector<std::vector<double>> sao_draws(double beta, double h, double x_max, std::size_t k,
                                           std::size_t samples, std::uint64_t seed);

/// Column j of a draw matrix.
std::vector<double> column_of(const std::vector<std::vector<double>>& draws, std::size_t j);

/// Painleve survival curve P(Lambda_0 > lambda) with zero standard error.
CdfEstimate tw_reference_curve(int beta, std::span<const double> lambda_grid);

/// "a,probability,stderr,hits,samples,undecided,upper_bound".
std::string tails_csv(const std::vector<TailEstimate>& tails);

struct ExperimentResult {
    std::string csv;                            // exactly what was written
    std::optional<CdfEstimate> cdf;             // CDF-type runs
    std::vector<std::vector<double>> draws;     // edge-sample runs
    std::vector<TailEstimate> tails;            // tail runs
    RunManifest manifest;
};

/// Computes the run on the worker pool and, when `out` is given, writes the
/// CSV and its manifest sidecar. If anything fails no output is left behind.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::optional<std::filesystem::path>& out = std::nullopt);

} // namespace edgekit
