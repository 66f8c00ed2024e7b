#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "streamloc/errors.hpp"

namespace streamloc {

// SplitMix64 (Steele, Lea, Flood 2014). Used everywhere instead of
// std::mt19937_64 + std distributions because distribution results differ
// between standard libraries; this generator plus the hand-rolled draws below
// give the same stream for a given seed on every platform. Integer draws are
// bit-exact everywhere; normal()/exponential() additionally depend on libm.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform on {0, ..., n-1} via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw ConfigError("uniform_below: n must be >= 1");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % n;
        }
    }

    // Standard normal via Box-Muller; consumes two draws. The uniforms are
    // shifted into (0, 1) so log() never sees zero.
    double normal() {
        const double u1 = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
        const double u2 = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Exponential with the given mean, in the same units as the mean.
    double exponential(double mean) {
        const double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
        return -mean * std::log(u);
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Stable child seed for per-item streams (per video, per frame, per worker).
// The base state is offset before mixing so child seeds never coincide with
// values drawn directly from Rng(base).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    Rng mix(base ^ 0x6A09E667F3BCC909ULL);
    const std::uint64_t h = mix.next_u64() + 0xD1B54A32D192ED03ULL * (stream + 1);
    return Rng(h).next_u64();
}

}  // namespace streamloc
