#include "edgekit/painleve.hpp"

#include "edgekit/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace edgekit {

PainleveSolution::PainleveSolution(double s_max, double step, std::vector<double> u, std::vector<double> u_prime)
    : s_max_(s_max), step_(step), u_(std::move(u)), u_prime_(std::move(u_prime)) {
    if (!(step_ > 0.0)) throw std::invalid_argument("PainleveSolution: step must be positive");
    if (u_.size() < 2 || u_.size() != u_prime_.size()) {
        throw std::invalid_argument("PainleveSolution: need at least two nodes with matching derivatives");
    }
    const std::size_t n = u_.size();
    cum_u_.resize(n);
    cum_u2_.resize(n);
    cum_su2_.resize(n);
    // Beyond s_max, u ~ Ai decays like exp(-(2/3) s^{3/2}): leading-order tails.
    const double root = std::sqrt(s_max_);
    cum_u_[0] = u_[0] / root;
    cum_u2_[0] = u_[0] * u_[0] / (2.0 * root);
    cum_su2_[0] = s_max_ * cum_u2_[0];
    const double half = 0.5 * step_;
    for (std::size_t i = 1; i < n; ++i) {
        const double s0 = s_at(i - 1);
        const double s1 = s_at(i);
        const double a = u_[i - 1];
        const double b = u_[i];
        cum_u_[i] = cum_u_[i - 1] + half * (a + b);
        cum_u2_[i] = cum_u2_[i - 1] + half * (a * a + b * b);
        cum_su2_[i] = cum_su2_[i - 1] + half * (s0 * a * a + s1 * b * b);
    }
}

std::vector<double> PainleveSolution::s_grid() const {
    std::vector<double> s(size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = s_at(i);
    return s;
}

double PainleveSolution::u_at(double s) const {
    if (!(s >= s_min() && s <= s_max_)) throw std::invalid_argument("PainleveSolution::u_at: outside table");
    const double pos = (s_max_ - s) / step_;
    auto i = std::min(static_cast<std::size_t>(pos), size() - 2);
    const double t = pos - static_cast<double>(i);
    // Node i is the upper end; parametrize downward, so derivatives flip sign.
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * u_[i] + h10 * (-step_) * u_prime_[i] + h01 * u_[i + 1] + h11 * (-step_) * u_prime_[i + 1];
}

PainleveSolution::Tails PainleveSolution::tails_from(double lambda) const {
    if (lambda >= s_max_) return {0.0, 0.0, 0.0};
    const double pos = (s_max_ - lambda) / step_;
    auto i = std::min(static_cast<std::size_t>(pos), size() - 1);
    Tails out{cum_u_[i], cum_u2_[i], cum_su2_[i]};
    const double s_node = s_at(i);
    const double width = s_node - lambda;
    if (width > 0.0) {
        const double ul = u_at(lambda);
        const double un = u_[i];
        out.u += 0.5 * width * (ul + un);
        out.u2 += 0.5 * width * (ul * ul + un * un);
        out.su2 += 0.5 * width * (lambda * ul * ul + s_node * un * un);
    }
    return out;
}

double PainleveSolution::tail_quadratic(double lambda) const {
    const Tails t = tails_from(lambda);
    return t.su2 - lambda * t.u2;
}

double PainleveSolution::tail_linear(double lambda) const { return tails_from(lambda).u; }

PainleveSolution solve_hastings_mcleod(double s_max, double s_min, double step) {
    if (!(s_max >= 8.0 && s_max <= kAiryMax)) throw std::invalid_argument("solve_hastings_mcleod: s_max must be in [8, 15]");
    if (!(s_min >= -12.0 && s_min < s_max)) throw std::invalid_argument("solve_hastings_mcleod: s_min must be in [-12, s_max)");
    if (!(step > 0.0 && step <= 1e-3)) throw std::invalid_argument("solve_hastings_mcleod: step must be in (0, 1e-3]");

    using Real = long double;
    const auto nodes = static_cast<std::size_t>(std::llround((s_max - s_min) / step)) + 1;
    constexpr int kSubsteps = 8;
    const Real h = -static_cast<Real>(step) / kSubsteps;

    auto rhs = [](Real s, Real u) { return s * u + 2 * u * u * u; };

    std::vector<double> u(nodes);
    std::vector<double> up(nodes);
    Real uu = airy_ai(s_max);
    Real vv = airy_ai_prime(s_max);
    u[0] = static_cast<double>(uu);
    up[0] = static_cast<double>(vv);
    for (std::size_t i = 1; i < nodes; ++i) {
        const Real s_node = static_cast<Real>(s_max) - static_cast<Real>(step) * static_cast<Real>(i - 1);
        for (int sub = 0; sub < kSubsteps; ++sub) {
            const Real s = s_node + h * sub;
            const Real k1u = vv;
            const Real k1v = rhs(s, uu);
            const Real k2u = vv + h / 2 * k1v;
            const Real k2v = rhs(s + h / 2, uu + h / 2 * k1u);
            const Real k3u = vv + h / 2 * k2v;
            const Real k3v = rhs(s + h / 2, uu + h / 2 * k2u);
            const Real k4u = vv + h * k3v;
            const Real k4v = rhs(s + h, uu + h * k3u);
            uu += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
            vv += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
        }
        if (!(uu > 0) || !(uu < 1e3L)) {
            throw std::runtime_error(fmt::format(
                "solve_hastings_mcleod: solution left the Hastings-McLeod branch near s = {:.4f}",
                s_max - step * static_cast<double>(i)));
        }
        u[i] = static_cast<double>(uu);
        up[i] = static_cast<double>(vv);
    }
    return PainleveSolution(s_max, step, std::move(u), std::move(up));
}

const PainleveSolution& default_painleve() {
    static const PainleveSolution sol = solve_hastings_mcleod();
    return sol;
}

namespace {

void check_support(double x, const PainleveSolution& sol) {
    if (!(x >= sol.s_min() + 1.0)) {
        throw std::invalid_argument(fmt::format(
            "tw_reference: argument {} below supported range (s_min + 1 = {})", x, sol.s_min() + 1.0));
    }
}

} // namespace

double tw_reference(int beta, double lambda, const PainleveSolution& sol) {
    switch (beta) {
    case 2: {
        check_support(lambda, sol);
        return std::exp(-sol.tail_quadratic(lambda));
    }
    case 1: {
        check_support(lambda, sol);
        return std::exp(-0.5 * sol.tail_quadratic(lambda) - 0.5 * sol.tail_linear(lambda));
    }
    case 4: {
        const double shifted = tw4_shift(lambda);
        check_support(lambda, sol);
        check_support(shifted, sol);
        return std::exp(-0.5 * sol.tail_quadratic(shifted)) * std::cosh(0.5 * sol.tail_linear(shifted));
    }
    default:
        throw std::invalid_argument("tw_reference: beta must be 1, 2 or 4");
    }
}

double lambda0_survival(int beta, double lambda, const PainleveSolution& sol) {
    return tw_reference(beta, -lambda, sol);
}

void write_painleve_table(const PainleveSolution& sol, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_painleve_table: cannot open " + path.string());
    out << "# Hastings-McLeod solution of u'' = s u + 2 u^3\n";
    out << fmt::format("# s_max {:.17g} step {:.17g} nodes {}\n", sol.s_max(), sol.step(), sol.size());
    out << "# s u\n";
    for (std::size_t i = 0; i < sol.size(); ++i) {
        out << fmt::format("{:.17g} {:.17g}\n", sol.s_at(i), sol.u()[i]);
    }
    if (!out) throw std::runtime_error("write_painleve_table: write failed for " + path.string());
}

PainleveSolution read_painleve_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_painleve_table: cannot open " + path.string());
    std::vector<double> s;
    std::vector<double> u;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        double a = 0.0;
        double b = 0.0;
        if (!(fields >> a >> b)) throw std::runtime_error("read_painleve_table: malformed line: " + line);
        s.push_back(a);
        u.push_back(b);
    }
    if (s.size() < 3) throw std::runtime_error("read_painleve_table: need at least three nodes");
    const double step = s[0] - s[1];
    if (!(step > 0.0)) throw std::runtime_error("read_painleve_table: s must be strictly descending");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (std::fabs((s[i - 1] - s[i]) - step) > 1e-9 * std::max(1.0, std::fabs(step))) {
            throw std::runtime_error("read_painleve_table: s must be uniformly spaced");
        }
    }
    // d/ds with s descending along the index.
    std::vector<double> up(u.size());
    const std::size_t n = u.size();
    up[0] = (u[0] - u[1]) / step;
    up[n - 1] = (u[n - 2] - u[n - 1]) / step;
    for (std::size_t i = 1; i + 1 < n; ++i) up[i] = (u[i - 1] - u[i + 1]) / (2.0 * step);
    return PainleveSolution(s[0], step, std::move(u), std::move(up));
}

} // namespace edgekit
