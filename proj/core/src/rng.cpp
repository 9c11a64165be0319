#include "edgekit/rng.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <stdexcept>

namespace edgekit {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    auto z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    // Mix the stream id through its own splitmix round before combining so
    // that neighbouring (seed, id) pairs land far apart.
    std::uint64_t id_mix = stream_id ^ 0x6A09E667F3BCC909ULL;
    std::uint64_t x = master_seed ^ splitmix64(id_mix);
    for (auto& word : state_) {
        word = splitmix64(x);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
        state_[0] = 1;
    }
}

double RngStream::standard_normal() {
    boost::random::normal_distribution<double> normal;
    return normal(*this);
}

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(master_seed, stream_id);
}

double sample_gaussian(RngStream& stream, double mean, double sd) {
    if (!(sd >= 0.0)) {
        throw std::invalid_argument("sample_gaussian: sd must be non-negative");
    }
    if (sd == 0.0) {
        return mean;
    }
    return mean + sd * stream.standard_normal();
}

double sample_gamma(RngStream& stream, double shape, double scale) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw std::invalid_argument("sample_gamma: shape must be positive and finite");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("sample_gamma: scale must be positive");
    }
    if (shape < 1.0) {
        const double boosted = sample_gamma(stream, shape + 1.0, 1.0);
        return scale * boosted * std::pow(stream.uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = stream.standard_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return scale * d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return scale * d * v;
        }
    }
}

double sample_chi(RngStream& stream, double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("sample_chi: shape must be positive");
    }
    return std::sqrt(sample_gamma(stream, 0.5 * r, 2.0));
}

} // namespace edgekit
