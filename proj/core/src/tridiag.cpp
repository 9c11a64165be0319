#include "edgekit/tridiag.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace edgekit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Sweeps M shifts through the pivot recursion at once.
template <std::size_t M>
void sturm_block(const TridiagSym& t, const double* shifts, std::size_t* counts) {
    const auto d = t.diag();
    const auto e2 = t.offdiag_squared();
    const double floor = t.pivot_floor();
    const std::size_t n = d.size();

    std::array<double, M> lam{};
    std::array<double, M> r{};
    std::array<double, M> cnt{};
    for (std::size_t j = 0; j < M; ++j) {
        lam[j] = shifts[j];
        double v = d[0] - lam[j];
        v = std::fabs(v) < floor ? -floor : v;
        r[j] = v;
        cnt[j] = v < 0.0 ? 1.0 : 0.0;
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = d[k];
        const double ek = e2[k - 1];
        for (std::size_t j = 0; j < M; ++j) {
            double v = (dk - lam[j]) - ek / r[j];
            v = std::fabs(v) < floor ? -floor : v;
            r[j] = v;
            cnt[j] += v < 0.0 ? 1.0 : 0.0;
        }
    }
    for (std::size_t j = 0; j < M; ++j) {
        counts[j] = static_cast<std::size_t>(cnt[j]);
    }
}

} // namespace

TridiagSym::TridiagSym(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty()) {
        throw std::invalid_argument("TridiagSym: matrix must have n >= 1");
    }
    if (offdiag_.size() + 1 != diag_.size()) {
        throw std::invalid_argument("TridiagSym: offdiag must have length n - 1");
    }
    offdiag_sq_.resize(offdiag_.size());
    for (std::size_t k = 0; k < offdiag_.size(); ++k) {
        offdiag_sq_[k] = offdiag_[k] * offdiag_[k];
    }
    const std::size_t n = diag_.size();
    for (std::size_t k = 0; k < n; ++k) {
        double row = std::fabs(diag_[k]);
        if (k > 0) row += std::fabs(offdiag_[k - 1]);
        if (k + 1 < n) row += std::fabs(offdiag_[k]);
        norm_inf_ = std::max(norm_inf_, row);
    }
    pivot_floor_ = std::max(kEps * norm_inf_, std::numeric_limits<double>::min());
}

TridiagSym TridiagSym::constant(std::size_t n, double d, double e) {
    if (n == 0) {
        throw std::invalid_argument("TridiagSym: matrix must have n >= 1");
    }
    return TridiagSym(std::vector<double>(n, d), std::vector<double>(n - 1, e));
}

void TridiagSym::multiply(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = size();
    if (v.size() != n || out.size() != n) {
        throw std::invalid_argument("TridiagSym::multiply: size mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        double acc = diag_[k] * v[k];
        if (k > 0) acc += offdiag_[k - 1] * v[k - 1];
        if (k + 1 < n) acc += offdiag_[k] * v[k + 1];
        out[k] = acc;
    }
}

std::size_t sturm_count(const TridiagSym& t, double lambda) {
    std::size_t count = 0;
    sturm_block<1>(t, &lambda, &count);
    return count;
}

void sturm_count(const TridiagSym& t, std::span<const double> shifts, std::span<std::size_t> counts) {
    if (shifts.size() != counts.size()) {
        throw std::invalid_argument("sturm_count: shifts and counts differ in length");
    }
    std::size_t i = 0;
    for (; i + 8 <= shifts.size(); i += 8) {
        sturm_block<8>(t, shifts.data() + i, counts.data() + i);
    }
    for (; i + 4 <= shifts.size(); i += 4) {
        sturm_block<4>(t, shifts.data() + i, counts.data() + i);
    }
    for (; i < shifts.size(); ++i) {
        sturm_block<1>(t, shifts.data() + i, counts.data() + i);
    }
}

DiscreteRiccatiCount riccati_count_discrete(const TridiagSym& t, double lambda) {
    const auto d = t.diag();
    const auto e2 = t.offdiag_squared();
    const double floor = t.pivot_floor();
    DiscreteRiccatiCount out;
    double r = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        r = k == 0 ? d[0] - lambda : (d[k] - lambda) - e2[k - 1] / r;
        if (std::fabs(r) < floor) r = -floor;
        if (r < 0.0) {
            out.pivot_positions.push_back(k);
        }
    }
    out.count = out.pivot_positions.size();
    return out;
}

Interval gershgorin(const TridiagSym& t) {
    const auto d = t.diag();
    const auto e = t.offdiag();
    const std::size_t n = d.size();
    Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < n; ++k) {
        double radius = 0.0;
        if (k > 0) radius += std::fabs(e[k - 1]);
        if (k + 1 < n) radius += std::fabs(e[k]);
        out.lo = std::min(out.lo, d[k] - radius);
        out.hi = std::max(out.hi, d[k] + radius);
    }
    return out;
}

std::vector<double> eigen_extreme(const TridiagSym& t, std::size_t k, Extreme which, double tol,
                                  std::optional<Interval> hint) {
    const std::size_t n = t.size();
    if (k == 0 || k > n) {
        throw std::invalid_argument("eigen_extreme: need 1 <= k <= n");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("eigen_extreme: tol must be positive");
    }

    // Every evaluated shift and its count; targets read their brackets off it.
    std::map<double, std::size_t> known;
    auto evaluate = [&](std::span<const double> shifts) {
        std::vector<std::size_t> counts(shifts.size());
        sturm_count(t, shifts, counts);
        for (std::size_t i = 0; i < shifts.size(); ++i) {
            known.emplace(shifts[i], counts[i]);
        }
    };

    const Interval g = gershgorin(t);
    const double scale = std::max(t.norm_inf(), std::numeric_limits<double>::min());
    double pad = 4.0 * kEps * scale * static_cast<double>(n) + t.pivot_floor();
    for (;;) {
        const std::array<double, 2> ends{g.lo - pad, g.hi + pad};
        std::array<std::size_t, 2> counts{};
        sturm_count(t, ends, counts);
        if (counts[0] == 0 && counts[1] == n) {
            known.emplace(ends[0], 0);
            known.emplace(ends[1], n);
            break;
        }
        pad *= 2.0;
    }
    if (hint && hint->lo < hint->hi) {
        const std::array<double, 2> ends{hint->lo, hint->hi};
        evaluate(ends);
    }

    const std::size_t first = which == Extreme::lowest ? 1 : n - k + 1;
    std::vector<double> out;
    out.reserve(k);
    constexpr std::size_t kSplits = 8;
    std::array<double, kSplits> shifts{};
    for (std::size_t j = first; j < first + k; ++j) {
        for (;;) {
            // hi: first shift with at least j eigenvalues below; lo: the one before.
            auto hi_it = std::find_if(known.begin(), known.end(),
                                      [j](const auto& kv) { return kv.second >= j; });
            auto lo_it = std::prev(hi_it);
            const double lo = lo_it->first;
            const double hi = hi_it->first;
            const double floor_width = 4.0 * kEps * (std::fabs(lo) + std::fabs(hi));
            if (hi - lo <= std::max(tol, floor_width)) {
                out.push_back(0.5 * (lo + hi));
                break;
            }
            const double step = (hi - lo) / static_cast<double>(kSplits + 1);
            for (std::size_t s = 0; s < kSplits; ++s) {
                shifts[s] = lo + step * static_cast<double>(s + 1);
            }
            evaluate(shifts);
        }
    }
    return out;
}

std::vector<double> eigenvector(const TridiagSym& t, double lambda, int iters, double tol) {
    const std::size_t n = t.size();
    const double scale = t.norm_inf();
    const double tiny = std::max(kEps * scale, std::numeric_limits<double>::min());

    // LU of T - lambda I with partial pivoting (the LAPACK gttrf layout).
    std::vector<double> dd(n);
    std::vector<double> dl(t.offdiag().begin(), t.offdiag().end());
    std::vector<double> du(t.offdiag().begin(), t.offdiag().end());
    std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<char> swapped(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i < n; ++i) {
        dd[i] = t.diag()[i] - lambda;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(dd[i]) >= std::fabs(dl[i])) {
            if (dd[i] == 0.0) dd[i] = tiny;
            const double fact = dl[i] / dd[i];
            dl[i] = fact;
            dd[i + 1] -= fact * du[i];
        } else {
            swapped[i] = 1;
            const double fact = dd[i] / dl[i];
            dd[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = temp - fact * dd[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
        }
    }
    for (auto& p : dd) {
        if (std::fabs(p) < tiny) p = p < 0.0 ? -tiny : tiny;
    }

    auto solve = [&](std::vector<double>& b) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            } else {
                b[i + 1] -= dl[i] * b[i];
            }
        }
        b[n - 1] /= dd[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
        for (std::size_t i = n; i-- > 2;) {
            const std::size_t r = i - 2;
            b[r] = (b[r] - du[r] * b[r + 1] - du2[r] * b[r + 2]) / dd[r];
        }
    };
    auto normalize = [](std::vector<double>& v) {
        double big = 0.0;
        for (double x : v) big = std::max(big, std::fabs(x));
        if (big == 0.0) return false;
        double norm = 0.0;
        for (double& x : v) {
            x /= big;
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        return true;
    };

    // Slightly uneven start so it is not orthogonal to a symmetric eigenvector.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i) + 1.0);
    }
    normalize(v);
    std::vector<double> tv(n);
    const double target = 10.0 * tol * std::max(scale, std::numeric_limits<double>::min());
    for (int it = 0; it < iters; ++it) {
        solve(v);
        if (!normalize(v)) {
            break;
        }
        t.multiply(v, tv);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = tv[i] - lambda * v[i];
            res += r * r;
        }
        if (std::sqrt(res) <= target) {
            const auto big = std::max_element(v.begin(), v.end(),
                                              [](double a, double b) { return std::fabs(a) < std::fabs(b); });
            if (*big < 0.0) {
                for (double& x : v) x = -x;
            }
            return v;
        }
    }
    throw std::runtime_error("eigenvector: inverse iteration did not converge");
}

} // namespace edgekit
