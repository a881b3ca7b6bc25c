#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sebchoa {

/// splitmix64 finalizer, used to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// 64-bit FNV-1a over the bytes of a string.
constexpr std::uint64_t hash_name(std::string_view s) noexcept
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Child seed for stream `index` of `master`: master XOR mix64(index), mixed again.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return mix64(master ^ mix64(index));
}

/// Seeded, single-owner uniform source. Copying a stream forks it: both
/// copies produce the same continuation.
class RngStream
{
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double next_uniform() noexcept
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_uniform(); }

    std::uint64_t next_u64() noexcept { return engine_(); }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace sebchoa
