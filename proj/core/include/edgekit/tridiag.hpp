#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace edgekit {

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Symmetric tridiagonal matrix stored as two flat arrays.
///
/// Immutable after construction; the infinity norm and the squared
/// off-diagonal are cached because every spectral routine needs them.
class TridiagSym {
public:
    /// Throws std::invalid_argument unless offdiag.size() + 1 == diag.size() >= 1.
    TridiagSym(std::vector<double> diag, std::vector<double> offdiag);

    /// n x n matrix with every diagonal entry d and off-diagonal entry e.
    static TridiagSym constant(std::size_t n, double d, double e);

    std::size_t size() const { return diag_.size(); }
    std::span<const double> diag() const { return diag_; }
    std::span<const double> offdiag() const { return offdiag_; }
    std::span<const double> offdiag_squared() const { return offdiag_sq_; }

    /// max_k (|d_k| + |e_{k-1}| + |e_k|).
    double norm_inf() const { return norm_inf_; }

    /// Pivots smaller than this in magnitude are replaced by its negative.
    double pivot_floor() const { return pivot_floor_; }

    /// out = T v.
    void multiply(std::span<const double> v, std::span<double> out) const;

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
    std::vector<double> offdiag_sq_;
    double norm_inf_ = 0.0;
    double pivot_floor_ = 0.0;
};

/// Number of eigenvalues of t strictly below lambda (negative LDL^T pivots).
std::size_t sturm_count(const TridiagSym& t, double lambda);

/// Batched form: counts[i] = sturm_count(t, shifts[i]). Several shifts are
/// swept through the matrix together, which hides the division latency of
/// the pivot recursion.
void sturm_count(const TridiagSym& t, std::span<const double> shifts, std::span<std::size_t> counts);

/// Pivot recursion with the negative-pivot rows exposed. A negative pivot is
/// where the discrete log-derivative of the solution of (T - lambda) psi = 0
/// changes sign through -infinity.
struct DiscreteRiccatiCount {
    std::size_t count = 0;
    std::vector<std::size_t> pivot_positions; // zero-based rows
};

DiscreteRiccatiCount riccati_count_discrete(const TridiagSym& t, double lambda);

/// Gershgorin row-disc enclosure of the spectrum.
Interval gershgorin(const TridiagSym& t);

enum class Extreme { lowest, highest };

/// The k lowest or highest eigenvalues, ascending, each bisected to an
/// interval of width at most tol (never below a few ulps of its magnitude).
///
/// `hint` is an optional bracket expected to contain the requested
/// eigenvalues; it only saves work, a wrong hint is detected and ignored.
/// Throws std::invalid_argument if k == 0, k > n or tol <= 0.
std::vector<double> eigen_extreme(const TridiagSym& t, std::size_t k, Extreme which, double tol,
                                  std::optional<Interval> hint = std::nullopt);

/// Unit eigenvector for an eigenvalue approximation lambda by inverse
/// iteration. Converged when ||T v - lambda v|| <= 10 tol ||T||_inf.
/// Throws std::runtime_error when `iters` iterations do not reach that.
std::vector<double> eigenvector(const TridiagSym& t, double lambda, int iters = 8, double tol = 1e-10);

} // namespace edgekit
