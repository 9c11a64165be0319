#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace edgekit {

/// Hastings-McLeod solution of u'' = s u + 2 u^3, u ~ Ai(s) as s -> +inf,
/// tabulated on a uniform grid running downward from s_max.
///
/// The cumulative integrals used by the Tracy-Widom quadratures are built
/// once when the table is made or loaded; the object is immutable after that
/// and may be shared across threads.
class PainleveSolution {
public:
    PainleveSolution(double s_max, double step, std::vector<double> u, std::vector<double> u_prime);

    double s_max() const { return s_max_; }
    double s_min() const { return s_max_ - step_ * static_cast<double>(u_.size() - 1); }
    double step() const { return step_; }
    std::size_t size() const { return u_.size(); }

    /// Grid point i (descending in i).
    double s_at(std::size_t i) const { return s_max_ - step_ * static_cast<double>(i); }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& u_prime() const { return u_prime_; }
    std::vector<double> s_grid() const;

    /// u at an arbitrary s in [s_min, s_max] (cubic Hermite between nodes).
    double u_at(double s) const;

    /// Integral of (s - lambda) u(s)^2 over [lambda, infinity).
    double tail_quadratic(double lambda) const;
    /// Integral of u(s) over [lambda, infinity).
    double tail_linear(double lambda) const;

private:
    struct Tails {
        double u;      // int u
        double u2;     // int u^2
        double su2;    // int s u^2
    };
    Tails tails_from(double lambda) const;

    double s_max_;
    double step_;
    std::vector<double> u_;
    std::vector<double> u_prime_;
    // Suffix trapezoid sums from node i up to s_max, plus the analytic
    // contribution of [s_max, infinity).
    std::vector<double> cum_u_;
    std::vector<double> cum_u2_;
    std::vector<double> cum_su2_;
};

inline constexpr double kPainleveSMax = 10.0;
inline constexpr double kPainleveSMin = -10.0;
inline constexpr double kPainleveStep = 1e-3;

/// Integrates downward from (Ai(s_max), Ai'(s_max)) with classical RK4 in
/// extended precision (several internal substeps per stored step).
/// Requires s_max in [8, 15], s_min >= -12, 0 < step <= 1e-3. Throws
/// std::runtime_error if the solution leaves the Hastings-McLeod branch
/// (turns negative or blows up) before s_min.
PainleveSolution solve_hastings_mcleod(double s_max = kPainleveSMax, double s_min = kPainleveSMin,
                                       double step = kPainleveStep);

/// Shared default solution, solved on first use.
const PainleveSolution& default_painleve();

/// Tracy-Widom distribution function F_beta(lambda) = P(TW_beta <= lambda)
/// for beta in {1, 2, 4}:
///   F_2 = exp(-I(lambda)),
///   F_1 = exp(-I(lambda)/2) exp(-J(lambda)/2),
///   F_4 = exp(-I(lambda')/2) cosh(J(lambda')/2),  lambda' = 2^{2/3} lambda,
/// with I(x) = int_x^inf (s - x) u^2 and J(x) = int_x^inf u.
/// The argument (and lambda' for beta = 4) must be >= s_min + 1; above
/// s_max the value is 1. Throws std::invalid_argument otherwise.
double tw_reference(int beta, double lambda, const PainleveSolution& sol);

/// Survival of the operator ground state, P(Lambda_0 > lambda) = F_beta(-lambda).
double lambda0_survival(int beta, double lambda, const PainleveSolution& sol);

/// beta = 4 argument shift applied before quadrature.
inline double tw4_shift(double lambda) { return 1.5874010519681994 * lambda; } // 2^{2/3}

/// Two-column text table "s u", one node per line, descending s, preceded by
/// '#' comment lines. Derivatives are rebuilt from the ODE-consistent
/// central differences on load.
void write_painleve_table(const PainleveSolution& sol, const std::filesystem::path& path);
PainleveSolution read_painleve_table(const std::filesystem::path& path);

} // namespace edgekit
