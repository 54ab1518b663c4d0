#include "rotorlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace rotorlab {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(mix64(a + kGolden) ^ (mix64(b + 0x5851f42d4c957f2dull) + kGolden));
}

}  // namespace

RngStream RngStream::substream(std::uint64_t index) const noexcept {
    return RngStream{combine(master_seed, stream_index), index};
}

Rng::Rng(RngStream stream) noexcept : key_(combine(stream.master_seed, stream.stream_index)) {}

std::uint64_t Rng::next_u64() noexcept {
    counter_ += kGolden;
    return mix64(key_ + counter_);
}

double Rng::uniform() noexcept {
    // 53-bit mantissa, shifted into (0, 1] so log() below stays finite.
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() noexcept {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

}  // namespace rotorlab
