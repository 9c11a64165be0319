#include "edgekit/airy.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace edgekit {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr double kAsymptoticFrom = 8.0;

void check_range(double s) {
    if (!(s >= kAiryMin && s <= kAiryMax)) {
        throw std::domain_error("airy: argument outside [-15, 15]");
    }
}

// (Ai(s), Ai'(s)) from Ai = c1 f - c2 g with the two Maclaurin solutions
// f = sum a_k s^{3k}, g = sum b_k s^{3k+1}.
std::pair<double, double> airy_series(double s_in) {
    static const Wide c1("0.35502805388781723926006318600418317639797917419917724");
    static const Wide c2("0.25881940379280679840518356018920396347909113835493459");
    const Wide s = s_in;
    const Wide s3 = s * s * s;
    Wide a = 1;      // a_k
    Wide b = 1;      // b_k
    Wide pow3k = 1;  // s^{3k}
    Wide f = 0, g = 0, fp = 0, gp = 0;
    Wide prev_pow = 0; // s^{3(k-1)}
    const Wide eps("1e-45");
    for (int k = 0; k < 400; ++k) {
        const Wide ta = a * pow3k;
        const Wide tb = b * pow3k;
        f += ta;
        g += tb;
        gp += (3 * k + 1) * tb;
        if (k > 0) fp += 3 * k * a * prev_pow;
        if (k > 2 && abs(ta) + abs(tb) < eps * (abs(f) + abs(g))) break;
        prev_pow = pow3k;
        pow3k *= s3;
        a /= (3 * k + 2) * (3 * k + 3);
        b /= (3 * k + 3) * (3 * k + 4);
    }
    g *= s;
    fp *= s * s;
    const Wide ai = c1 * f - c2 * g;
    const Wide aip = c1 * fp - c2 * gp;
    return {static_cast<double>(ai), static_cast<double>(aip)};
}

// Large-argument expansions; the smallest omitted term is about e^{-2 zeta},
// below 1e-13 relative for s >= 8.
std::pair<double, double> airy_asymptotic(double s) {
    const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    const double q = std::sqrt(std::sqrt(s));
    double u = 1.0;
    double sum_u = 1.0;
    double sum_v = 1.0;
    double zpow = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double kk = k;
        u *= (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) / ((2.0 * kk - 1.0) * 216.0 * kk);
        zpow /= -zeta;
        const double v = -(6.0 * kk + 1.0) / (6.0 * kk - 1.0) * u;
        const double term = u * zpow;
        if (std::fabs(term) > last) break;
        sum_u += term;
        sum_v += v * zpow;
        last = std::fabs(term);
        if (last < 1e-17) break;
    }
    return {pref / q * sum_u, -pref * q * sum_v};
}

std::pair<double, double> airy_pair(double s) {
    check_range(s);
    return s >= kAsymptoticFrom ? airy_asymptotic(s) : airy_series(s);
}

} // namespace

double airy_ai(double s) { return airy_pair(s).first; }

double airy_ai_prime(double s) { return airy_pair(s).second; }

} // namespace edgekit
