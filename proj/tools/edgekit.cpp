#include "edgekit/experiment.hpp"
#include "edgekit/io.hpp"
#include "edgekit/stats.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace edgekit;

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw CLI::ValidationError("--a", "not a number: " + item);
    }
    if (out.empty()) throw CLI::ValidationError("--a", "empty list");
    return out;
}

void report(const ExperimentResult& r, const fs::path& out) {
    fmt::print("wrote {} ({} threads, {:.2f} s)\n", out.string(), r.manifest.threads, r.manifest.wall_seconds);
    if (r.cdf && r.cdf->flagged) {
        fmt::print(stderr, "warning: {} of {} paths ran out of x budget\n", r.cdf->undecided, r.cdf->samples);
    }
}

// A CDF file becomes itself; a sample file becomes the empirical survival of
// its first column on `grid` (or on a grid spanning its range).
struct Loaded {
    bool is_samples = false;
    std::vector<double> values;
    CdfEstimate cdf;
};

Loaded load(const fs::path& path) {
    const CsvTable t = read_csv(path);
    Loaded out;
    if (std::find(t.header.begin(), t.header.end(), "survival") != t.header.end()) {
        out.cdf = read_cdf_csv(path);
        return out;
    }
    out.is_samples = true;
    out.values = t.column_values("value_0");
    if (out.values.empty()) throw std::runtime_error(path.string() + ": no draws");
    return out;
}

CdfEstimate survival_on(const Loaded& l, const std::vector<double>& grid) {
    return survival_from_draws(l.values, grid, Method::riccati, 0.0);
}

std::vector<double> default_grid(const Loaded& a, const Loaded& b) {
    double lo = std::min(*std::min_element(a.values.begin(), a.values.end()),
                         *std::min_element(b.values.begin(), b.values.end()));
    double hi = std::max(*std::max_element(a.values.begin(), a.values.end()),
                         *std::max_element(b.values.begin(), b.values.end()));
    lo = std::floor(lo * 2.0) / 2.0;
    hi = std::ceil(hi * 2.0) / 2.0;
    const auto points = static_cast<std::size_t>(std::lround((hi - lo) / 0.5)) + 1;
    return linear_grid(lo, hi, std::max<std::size_t>(points, 2));
}

int compare(const fs::path& pa, const fs::path& pb) {
    const Loaded a = load(pa);
    const Loaded b = load(pb);
    CdfEstimate ca;
    CdfEstimate cb;
    double ks = 0.0;
    if (a.is_samples && b.is_samples) {
        ks = ks_distance(a.values, b.values);
        const auto grid = default_grid(a, b);
        ca = survival_on(a, grid);
        cb = survival_on(b, grid);
    } else {
        const std::vector<double>& grid = a.is_samples ? b.cdf.lambda_grid : a.cdf.lambda_grid;
        ca = a.is_samples ? survival_on(a, grid) : a.cdf;
        cb = b.is_samples ? survival_on(b, grid) : b.cdf;
        if (ca.lambda_grid != cb.lambda_grid) throw std::runtime_error("compare: the two files use different grids");
        for (std::size_t i = 0; i < ca.survival.size(); ++i) {
            ks = std::max(ks, std::abs(ca.survival[i] - cb.survival[i]));
        }
    }
    fmt::print("ks_distance {}\n", format_number(ks));
    fmt::print("lambda,survival_a,survival_b,z\n");
    for (std::size_t i = 0; i < ca.lambda_grid.size(); ++i) {
        const double diff = ca.survival[i] - cb.survival[i];
        const double se = std::hypot(ca.std_error[i], cb.std_error[i]);
        const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
        fmt::print("{},{},{},{}\n", format_number(ca.lambda_grid[i]), format_number(ca.survival[i]),
                   format_number(cb.survival[i]), format_number(z));
    }
    return 0;
}

int plot(const fs::path& in, const fs::path& out) {
    const Loaded l = load(in);
    CdfEstimate est;
    if (l.is_samples) {
        est = survival_on(l, default_grid(l, l));
    } else {
        est = l.cdf;
    }
    write_file_atomic(out, svg_plot(est, in.filename().string()));
    fmt::print("wrote {}\n", out.string());
    return 0;
}

void add_riccati_overrides(CLI::App* cmd, RiccatiConfig& cfg) {
    cmd->add_option("--cap", cfg.cap, "restart value standing in for +infinity")->capture_default_str();
    cmd->add_option("--dt-max", cfg.dt_max, "largest Euler-Maruyama step")->capture_default_str();
    cmd->add_option("--horizon-margin", cfg.horizon_margin, "survival horizon past the last explosion")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft-edge statistics of beta-ensembles: matrix, operator and diffusion routes"};
    app.require_subcommand(1);
    // Long form only: "sao" takes a "--h" grid step.
    app.set_help_flag("--help", "print this help message and exit");
    app.set_version_flag("--version", EDGEKIT_CLI_VERSION);

    fs::path out;

    HermiteEdgeRun hermite;
    auto* c_hermite = app.add_subcommand("edge-hermite", "scaled top eigenvalues of the beta-Hermite tridiagonal");
    c_hermite->add_option("--n", hermite.spec.n)->required();
    c_hermite->add_option("--beta", hermite.spec.beta)->required();
    c_hermite->add_option("--k", hermite.k)->required();
    c_hermite->add_option("--samples", hermite.samples)->required();
    c_hermite->add_option("--seed", hermite.seed)->required();
    c_hermite->add_option("--out", out)->required();

    LaguerreEdgeRun laguerre;
    auto* c_laguerre = app.add_subcommand("edge-laguerre", "scaled top eigenvalues of the beta-Laguerre tridiagonal");
    c_laguerre->add_option("--n", laguerre.spec.n)->required();
    c_laguerre->add_option("--kappa", laguerre.spec.kappa)->required();
    c_laguerre->add_option("--beta", laguerre.spec.beta)->required();
    c_laguerre->add_option("--k", laguerre.k)->required();
    c_laguerre->add_option("--samples", laguerre.samples)->required();
    c_laguerre->add_option("--seed", laguerre.seed)->required();
    c_laguerre->add_option("--out", out)->required();

    SaoRun sao;
    auto* c_sao = app.add_subcommand("sao", "lowest eigenvalues of the discretized stochastic Airy operator");
    c_sao->add_option("--beta", sao.beta)->required();
    c_sao->add_option("--h", sao.h)->required();
    c_sao->add_option("--xmax", sao.x_max)->required();
    c_sao->add_option("--k", sao.k)->required();
    c_sao->add_option("--samples", sao.samples)->required();
    c_sao->add_option("--seed", sao.seed)->required();
    c_sao->add_option("--out", out)->required();

    RiccatiCdfRun riccati;
    auto* c_riccati = app.add_subcommand("riccati-cdf", "P(Lambda_0 > lambda) from Riccati explosion counts");
    c_riccati->add_option("--beta", riccati.beta)->required();
    c_riccati->add_option("--lambda-min", riccati.lambda_min)->required();
    c_riccati->add_option("--lambda-max", riccati.lambda_max)->required();
    c_riccati->add_option("--points", riccati.points)->required();
    c_riccati->add_option("--samples", riccati.samples)->required();
    c_riccati->add_option("--seed", riccati.seed)->required();
    c_riccati->add_option("--out", out)->required();
    add_riccati_overrides(c_riccati, riccati.config);

    TwReferenceRun tw;
    auto* c_tw = app.add_subcommand("tw-reference", "P(Lambda_0 > lambda) from the Painleve II formulas");
    c_tw->add_option("--beta", tw.beta)->required()->check(CLI::IsMember({1, 2, 4}));
    c_tw->add_option("--lambda-min", tw.lambda_min)->required();
    c_tw->add_option("--lambda-max", tw.lambda_max)->required();
    c_tw->add_option("--points", tw.points)->required();
    c_tw->add_option("--out", out)->required();

    TailsRun tails;
    std::string side = "right";
    std::string a_list;
    auto* c_tails = app.add_subcommand("tails", "Tracy-Widom tail probabilities from Riccati paths");
    c_tails->add_option("--beta", tails.beta)->required();
    c_tails->add_option("--side", side)->required()->check(CLI::IsMember({"right", "left"}));
    c_tails->add_option("--a", a_list, "comma-separated thresholds")->required();
    c_tails->add_option("--samples", tails.samples)->required();
    c_tails->add_option("--seed", tails.seed)->required();
    c_tails->add_option("--out", out)->required();
    add_riccati_overrides(c_tails, tails.config);

    fs::path in_a;
    fs::path in_b;
    auto* c_compare = app.add_subcommand("compare", "KS distance and per-point z-scores of two outputs");
    c_compare->add_option("--a", in_a)->required()->check(CLI::ExistingFile);
    c_compare->add_option("--b", in_b)->required()->check(CLI::ExistingFile);

    fs::path plot_in;
    auto* c_plot = app.add_subcommand("plot", "SVG plot of a survival curve");
    c_plot->add_option("--in", plot_in)->required()->check(CLI::ExistingFile);
    c_plot->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        auto run = [&](const ExperimentConfig& cfg) {
            report(run_experiment(cfg, out), out);
            return 0;
        };
        if (c_hermite->parsed()) return run(hermite);
        if (c_laguerre->parsed()) return run(laguerre);
        if (c_sao->parsed()) return run(sao);
        if (c_riccati->parsed()) return run(riccati);
        if (c_tw->parsed()) return run(tw);
        if (c_tails->parsed()) {
            tails.side = tail_side_from_string(side);
            tails.a_values = parse_list(a_list);
            return run(tails);
        }
        if (c_compare->parsed()) return compare(in_a, in_b);
        if (c_plot->parsed()) return plot(plot_in, out);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
