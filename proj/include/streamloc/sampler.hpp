#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamloc/core.hpp"

namespace streamloc {

enum class SampleStrategy { fibonacci, uniform_random };

inline const char* to_string(SampleStrategy s) {
    return s == SampleStrategy::fibonacci ? "fibonacci" : "uniform_random";
}

inline SampleStrategy sample_strategy_from_string(const std::string& s) {
    if (s == "fibonacci") return SampleStrategy::fibonacci;
    if (s == "uniform_random") return SampleStrategy::uniform_random;
    throw FormatError("unknown sample strategy \"" + s + "\"");
}

struct SamplePlan {
    FrameInterval interval;
    std::uint64_t n = 4;
    SampleStrategy strategy = SampleStrategy::fibonacci;
    std::uint64_t seed = 0;

    friend bool operator==(const SamplePlan&, const SamplePlan&) = default;
};

// Frames at cumulative Fibonacci offsets walking back from the last frame of
// the interval: end-1, end-2, end-3, end-5, end-8, ... Keeps the frames that
// land inside the interval, at most n of them, returned ascending.
std::vector<FrameIndex> sample_fibonacci(const FrameInterval& interval, std::uint64_t n);

// min(n, length) distinct frames, uniform without replacement, ascending.
std::vector<FrameIndex> sample_uniform_random(const FrameInterval& interval, std::uint64_t n,
                                              std::uint64_t seed);

std::vector<FrameIndex> run_sample_plan(const SamplePlan& plan);

}  // namespace streamloc
