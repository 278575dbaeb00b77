#pragma once

#include <cmath>
#include <cstdint>

namespace noisegain {

// Identifies one reproducible random stream. Equal (master_seed, stream_id)
// pairs yield the same sample sequence regardless of thread count, because
// parallel callers partition work by stream_id and never share a stream.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    SeedSpec with_stream(std::uint64_t id) const { return {master_seed, id}; }
    SeedSpec offset(std::uint64_t delta) const { return {master_seed, stream_id + delta}; }
};

namespace detail {
// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

// SplitMix64 sequence whose initial state is a mix of master seed and stream
// id. Pure integer arithmetic, so the bit stream is platform-independent.
class Rng {
public:
    explicit Rng(SeedSpec seed)
        : state_(detail::mix64(seed.master_seed ^
                               (0x9E3779B97F4A7C15ULL * (seed.stream_id + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1): top 53 bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]: avoids log(0) in the Box-Muller transform.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via the Box-Muller transform. Consumes two uniforms per
    // pair; the second sample of each pair is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace noisegain
