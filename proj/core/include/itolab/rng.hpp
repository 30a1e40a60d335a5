#pragma once

#include <array>
#include <cstdint>

namespace itolab {

// 64-bit finalizer from splitmix64.
constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream key: fmix64(seed + fmix64(stream_id + 0x9E3779B97F4A7C15)).
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return fmix64(seed + fmix64(stream_id + 0x9E3779B97F4A7C15ULL));
}

/// Single-owner random stream: xoshiro256** whose 256-bit state is the
/// splitmix64 expansion of stream_key(seed, stream_id).
///
/// Normals use the polar Box–Muller method. Each attempt consumes two
/// uniforms; an accepted attempt yields two normals, the second is cached
/// and returned by the next call.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept;
    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double standard_normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Draw from N(mean, std^2). Always consumes one normal; std == 0 returns mean.
double gaussian(RngStream& stream, double mean, double std);

}  // namespace itolab
