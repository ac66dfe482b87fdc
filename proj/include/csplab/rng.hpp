#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace csplab {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr auto mix64(std::uint64_t z) -> std::uint64_t
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64 in counter mode: draw i of stream (seed, stream) is
// mix64(key + (i + 1) * gamma) with key = mix64(seed) ^ mix64(stream * gamma + 1).
// Any draw is addressable without replaying earlier ones.
class CounterRng
{
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) :
        key_(mix64(seed + golden_gamma) ^ mix64(stream * golden_gamma + 1))
    {
    }

    auto next() -> std::uint64_t
    {
        ++counter_;
        return mix64(key_ + counter_ * golden_gamma);
    }

    auto at(std::uint64_t i) const -> std::uint64_t
    {
        return mix64(key_ + (i + 1) * golden_gamma);
    }

    // Uniform in [0, n) by rejection on the top of the 64-bit range.
    auto below(std::uint64_t n) -> std::uint64_t
    {
        if (n <= 1)
            return 0;
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            auto r = next();
            if (r >= threshold)
                return r % n;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    auto unit() -> double
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    auto split(std::uint64_t stream) const -> CounterRng
    {
        return CounterRng(key_, stream);
    }

    template <typename T>
    auto shuffle(std::vector<T> & v) -> void
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            auto j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    auto counter() const -> std::uint64_t { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Per-trial seed derivation used by the experiment harness.
inline auto derive_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t
{
    return CounterRng(seed, 0x7472ULL).at(index);
}

}
