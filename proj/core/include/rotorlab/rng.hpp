#pragma once

#include <cstdint>

namespace rotorlab {

// Identifier of an independent random stream. Two streams with distinct
// (master_seed, stream_index) pairs are statistically independent; equal
// pairs reproduce the same sequence bit for bit, on any worker count.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    // Child stream derived from this one; substream(i) != substream(j)
    // for i != j, and children of distinct parents do not collide.
    [[nodiscard]] RngStream substream(std::uint64_t index) const noexcept;

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

// Counter-based generator over a stream. Draws are splitmix64 outputs of
// (key, counter); Gaussians use the Box-Muller transform on 53-bit
// uniforms in (0,1]. Both algorithms are fixed across versions so that
// archived experiment outputs stay reproducible.
class Rng {
public:
    explicit Rng(RngStream stream) noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;  // (0, 1]
    double normal() noexcept;   // N(0, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace rotorlab
