#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

namespace dyrc {

/// SplitMix64 finalizer. Used to turn structured keys into independent seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed for a stream identified by (master, key...). Order-sensitive, no state.
template <typename... Keys>
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, Keys... keys) noexcept {
    std::uint64_t s = mix64(master);
    ((s = mix64(s ^ static_cast<std::uint64_t>(keys))), ...);
    return s;
}

/// Seeded generator with distribution code written out here rather than taken
/// from <random>, whose distributions are implementation-defined. Streams are
/// therefore identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    [[nodiscard]] double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    [[nodiscard]] bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, bound), rejection sampling, bound > 0.
    [[nodiscard]] std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// k distinct indices from [0, n), uniformly, via partial Fisher-Yates.
    /// The result is sorted.
    [[nodiscard]] std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < k && i < n; ++i) {
            const auto j = i + static_cast<std::size_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(std::min(k, n));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    /// Standard normal via Box-Muller (test data generation).
    [[nodiscard]] double normal() {
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dyrc
