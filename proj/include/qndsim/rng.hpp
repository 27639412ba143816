#pragma once

#include <cstdint>
#include <random>

namespace qnd {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform stream for one trajectory. Doubles are built from the top 53 bits
/// of a 64-bit Mersenne Twister draw, so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Stream `index` of a batch seeded with `master_seed`. Streams depend only
    /// on (master_seed, index), never on execution order.
    static Rng for_trajectory(std::uint64_t master_seed, std::uint64_t index);

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qnd
