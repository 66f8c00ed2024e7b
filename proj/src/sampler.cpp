#include "streamloc/sampler.hpp"

#include <algorithm>
#include <unordered_set>

#include "streamloc/rng.hpp"

namespace streamloc {

std::vector<FrameIndex> sample_fibonacci(const FrameInterval& interval, std::uint64_t n) {
    require_valid(interval, "sample_fibonacci");
    if (interval.empty()) throw EmptyInterval("sample_fibonacci: empty interval");
    if (n == 0) throw ConfigError("sample_fibonacci: n must be >= 1");

    if (n >= interval.length()) {  // exhaustion: every frame, not just offset hits
        std::vector<FrameIndex> all;
        all.reserve(interval.length());
        for (FrameIndex f = interval.start; f < interval.end; ++f) all.push_back(f);
        return all;
    }

    const FrameIndex anchor = interval.end - 1;
    std::vector<FrameIndex> frames{anchor};
    std::uint64_t gap_a = 1, gap_b = 1, offset = 0;
    while (frames.size() < n) {
        offset += gap_a;
        const std::uint64_t next = gap_a + gap_b;
        gap_a = gap_b;
        gap_b = next;
        if (offset > anchor - interval.start) break;  // walked out of the interval
        frames.push_back(anchor - offset);
    }
    std::reverse(frames.begin(), frames.end());
    return frames;
}

std::vector<FrameIndex> sample_uniform_random(const FrameInterval& interval, std::uint64_t n,
                                              std::uint64_t seed) {
    require_valid(interval, "sample_uniform_random");
    if (interval.empty()) throw EmptyInterval("sample_uniform_random: empty interval");
    if (n == 0) throw ConfigError("sample_uniform_random: n must be >= 1");

    const std::uint64_t len = interval.length();
    const std::uint64_t k = std::min(n, len);
    std::vector<FrameIndex> frames;
    frames.reserve(k);

    if (k == len) {
        for (FrameIndex f = interval.start; f < interval.end; ++f) frames.push_back(f);
        return frames;
    }

    // Floyd's algorithm: k distinct draws without building the full range.
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = len - k; j < len; ++j) {
        const std::uint64_t t = rng.uniform_below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    for (std::uint64_t v : chosen) frames.push_back(interval.start + v);
    std::sort(frames.begin(), frames.end());
    return frames;
}

std::vector<FrameIndex> run_sample_plan(const SamplePlan& plan) {
    return plan.strategy == SampleStrategy::fibonacci
               ? sample_fibonacci(plan.interval, plan.n)
               : sample_uniform_random(plan.interval, plan.n, plan.seed);
}

}  // namespace streamloc
