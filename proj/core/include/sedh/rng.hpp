#pragma once

#include <cstdint>

namespace sedh::rng {

/// SplitMix64 finalizer. Good avalanche; the standard choice for seeding
/// counter-keyed streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based random stream: value k is a pure function of (key, k), so
/// draws can be materialized lazily and in any order, and checkpoints only
/// need to record how many values a consumer has used.
struct Stream {
    std::uint64_t key = 0;

    std::uint64_t bits(std::uint64_t k) const {
        return mix64(key + (k + 1) * 0x9E3779B97F4A7C15ull);
    }

    /// Uniform on (0, 1]; never returns 0 so log() is safe.
    double uniform(std::uint64_t k) const {
        return static_cast<double>((bits(k) >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; value j consumes uniforms (2*(j/2), 2*(j/2)+1).
    double gaussian(std::uint64_t j) const;
};

/// Fill out[0..count) with stream values identical to st.gaussian(j),
/// sharing the Box-Muller pair computation.
void fill_gaussians(const Stream& st, double* out, std::size_t count);

// Stream domains. Mode streams are keyed per mode index so that enlarging a
// bank extends, never reshuffles, existing modes.
enum class Domain : std::uint64_t {
    mode = 1,
    push = 2,
    spin_init = 3,
    ensemble = 4,
};

inline Stream stream(std::uint64_t seed, Domain d, std::uint64_t id = 0) {
    std::uint64_t k = mix64(seed ^ 0xA5A5A5A55A5A5A5Aull);
    k = mix64(k ^ (static_cast<std::uint64_t>(d) << 56));
    return Stream{mix64(k ^ id)};
}

inline Stream mode_stream(std::uint64_t seed, std::uint64_t n) {
    return stream(seed, Domain::mode, n);
}

}  // namespace sedh::rng
