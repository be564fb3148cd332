#pragma once

#include <cstdint>
#include <random>

namespace ffrad {

/// Seeded 64-bit generator with a platform-independent bounded draw.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Counter-based child seed: depends only on (master, a, b).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ffrad
