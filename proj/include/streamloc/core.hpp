#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "streamloc/errors.hpp"

namespace streamloc {

// Frame position in a stream sampled at a fixed scan rate.
using FrameIndex = std::uint64_t;

// Half-open [start, end) over frame indices.
struct FrameInterval {
    FrameIndex start = 0;
    FrameIndex end = 0;

    std::uint64_t length() const { return end - start; }
    bool empty() const { return start >= end; }
    bool contains(FrameIndex f) const { return f >= start && f < end; }

    friend bool operator==(const FrameInterval&, const FrameInterval&) = default;
};

inline void require_valid(const FrameInterval& iv, const char* who) {
    if (iv.start > iv.end)
        throw ConfigError(std::string(who) + ": interval start " +
                          std::to_string(iv.start) + " > end " + std::to_string(iv.end));
}

// Union of two overlapping or adjacent intervals. Touching intervals
// ([0,5) and [5,9)) count as joinable; a real gap does not.
inline FrameInterval interval_union(FrameInterval a, FrameInterval b) {
    require_valid(a, "interval_union");
    require_valid(b, "interval_union");
    if (a.start > b.start) std::swap(a, b);
    if (b.start > a.end)
        throw DisjointIntervals("interval_union: [" + std::to_string(a.start) + "," +
                                std::to_string(a.end) + ") and [" + std::to_string(b.start) +
                                "," + std::to_string(b.end) + ") do not touch");
    return {a.start, std::max(a.end, b.end)};
}

// Intersection-over-union on frame counts. Two empty intervals have
// IoU 0 by convention.
inline double temporal_iou(const FrameInterval& a, const FrameInterval& b) {
    require_valid(a, "temporal_iou");
    require_valid(b, "temporal_iou");
    const FrameIndex lo = std::max(a.start, b.start);
    const FrameIndex hi = std::min(a.end, b.end);
    const std::uint64_t inter = hi > lo ? hi - lo : 0;
    const std::uint64_t uni = a.length() + b.length() - inter;
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// Which stage of a locate run scored a frame.
enum class Phase { stream, backward, forward, fallback };

inline const char* to_string(Phase p) {
    switch (p) {
        case Phase::stream: return "stream";
        case Phase::backward: return "backward";
        case Phase::forward: return "forward";
        case Phase::fallback: return "fallback";
    }
    return "?";
}

inline Phase phase_from_string(const std::string& s) {
    if (s == "stream") return Phase::stream;
    if (s == "backward") return Phase::backward;
    if (s == "forward") return Phase::forward;
    if (s == "fallback") return Phase::fallback;
    throw FormatError("unknown phase \"" + s + "\"");
}

struct ConfidenceSample {
    FrameIndex frame = 0;
    double confidence = 0.0;
    Phase phase = Phase::stream;

    friend bool operator==(const ConfidenceSample&, const ConfidenceSample&) = default;
};

// Every frame scored during one locate run, in scoring order. A frame may
// legitimately appear twice (once per pass) under the fallback rule.
struct ConfidenceTrace {
    std::vector<ConfidenceSample> samples;

    std::size_t frames_scored() const { return samples.size(); }

    friend bool operator==(const ConfidenceTrace&, const ConfidenceTrace&) = default;
};

// How the forward traversal decides to stop.
enum class ForwardMode { until_below_min, fixed_extent };

inline const char* to_string(ForwardMode m) {
    return m == ForwardMode::until_below_min ? "until_below_min" : "fixed_extent";
}

inline ForwardMode forward_mode_from_string(const std::string& s) {
    if (s == "until_below_min") return ForwardMode::until_below_min;
    if (s == "fixed_extent") return ForwardMode::fixed_extent;
    throw FormatError("unknown forward mode \"" + s + "\"");
}

// What to do when no frame ever reaches c_max.
enum class FallbackRule { none, two_pass_max_rule };

inline const char* to_string(FallbackRule r) {
    return r == FallbackRule::none ? "none" : "two_pass_max_rule";
}

inline FallbackRule fallback_rule_from_string(const std::string& s) {
    if (s == "none") return FallbackRule::none;
    if (s == "two_pass_max_rule") return FallbackRule::two_pass_max_rule;
    throw FormatError("unknown fallback rule \"" + s + "\"");
}

// Hysteresis thresholds and traversal knobs. Defaults are the operating
// point the rest of the pipeline assumes: trigger at 0.4, keep expanding
// while confidence stays at or above 0.3, scan at 4 fps.
struct HysteresisConfig {
    double c_max = 0.4;
    double c_min = 0.3;
    double scan_rate_fps = 4.0;
    ForwardMode forward_mode = ForwardMode::until_below_min;
    std::uint32_t fixed_extent_gaps = 5;   // forward Fibonacci steps in fixed_extent mode
    FallbackRule fallback = FallbackRule::none;
    double fallback_delta = 0.1;           // c_min' = max confidence - delta
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!std::isfinite(c_max) || !std::isfinite(c_min))
            throw ConfigError("hysteresis thresholds must be finite");
        if (!(c_min < c_max))
            throw ConfigError("c_min must be strictly below c_max");
        if (!(scan_rate_fps > 0.0) || !std::isfinite(scan_rate_fps))
            throw ConfigError("scan_rate_fps must be positive");
        if (forward_mode == ForwardMode::fixed_extent && fixed_extent_gaps == 0)
            throw ConfigError("fixed_extent_gaps must be >= 1 in fixed_extent mode");
        if (fallback == FallbackRule::two_pass_max_rule &&
            (!(fallback_delta > 0.0) || !std::isfinite(fallback_delta)))
            throw ConfigError("fallback_delta must be positive");
    }

    friend bool operator==(const HysteresisConfig&, const HysteresisConfig&) = default;
};

}  // namespace streamloc
