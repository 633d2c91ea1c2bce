#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace rumorsim {

/// Seeded pseudo-random stream. Same seed and same call sequence give the same draws.
class RandomSource {
public:
    static constexpr std::string_view kGenerator = "mt19937_64";

    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    /// Uniform real in [0, 1).
    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace rumorsim
