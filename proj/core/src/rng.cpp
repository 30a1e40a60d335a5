#include "itolab/rng.hpp"

#include <cmath>

#include "itolab/errors.hpp"

namespace itolab {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t sm = stream_key(seed, stream_id);
    for (auto& word : state_) {
        sm += 0x9E3779B97F4A7C15ULL;
        word = fmix64(sm);
    }
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::standard_normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double gaussian(RngStream& stream, double mean, double std) {
    if (!(std >= 0.0)) {
        throw InvalidParameter("gaussian: standard deviation must be non-negative");
    }
    const double z = stream.standard_normal();
    if (std == 0.0) {
        return mean;
    }
    return mean + std * z;
}

}  // namespace itolab
