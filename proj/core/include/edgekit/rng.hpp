#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace edgekit {

/// Name of the generator family, recorded in run manifests.
inline constexpr std::string_view kGeneratorFamily = "xoshiro256++ (splitmix64 stream derivation)";

/// A single-owner random stream.
///
/// The state is a deterministic hash of (master_seed, stream_id), so the
/// sequence drawn by sample i of a Monte Carlo run does not depend on how
/// many workers share the run. Streams are cheap to create and must never be
/// shared between threads.
///
/// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }

    result_type next_u64() {
        const auto result = rotl(state_[0] + state_[3], 23) + state_[0];
        const auto t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double standard_normal();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
};

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Draw from N(mean, sd^2). Throws std::invalid_argument for sd < 0.
double sample_gaussian(RngStream& stream, double mean, double sd);

/// Gamma(shape, scale) with shape > 0, scale > 0.
///
/// Marsaglia-Tsang squeeze for shape >= 1; smaller shapes go through
/// gamma(a) = gamma(a + 1) * U^(1/a).
double sample_gamma(RngStream& stream, double shape, double scale = 1.0);

/// Chi variate with real shape r > 0, drawn as sqrt(gamma(r/2, 2)).
double sample_chi(RngStream& stream, double r);

} // namespace edgekit
