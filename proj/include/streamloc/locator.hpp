#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamloc/core.hpp"
#include "streamloc/scorer.hpp"

namespace streamloc {

// Fibonacci gap sequence 1, 1, 2, 3, 5, ... whose cumulative offsets stay
// within `limit` frames of the anchor. fib_gaps(7) == {1, 1, 2, 3}.
std::vector<std::uint64_t> fib_gaps(std::uint64_t limit);

enum class LocatorMode { online, fallback_two_pass };

inline const char* to_string(LocatorMode m) {
    return m == LocatorMode::online ? "online" : "fallback_two_pass";
}

inline LocatorMode locator_mode_from_string(const std::string& s) {
    if (s == "online") return LocatorMode::online;
    if (s == "fallback_two_pass") return LocatorMode::fallback_two_pass;
    throw FormatError("unknown locator mode \"" + s + "\"");
}

struct LocatorOutcome {
    FrameInterval target;
    FrameIndex trigger = 0;            // first frame that cleared the entry threshold
    ConfidenceTrace trace;
    bool terminated_early = false;     // stopped streaming before the last frame
    LocatorMode mode = LocatorMode::online;
    // Fibonacci gap between the last in-target probe and the probe that fell
    // below c_min on each side; bounds how far the reported boundary can sit
    // from the true one. 0 when the backward walk reached the stream start.
    std::uint64_t backward_overshoot_gap = 0;
    std::uint64_t forward_overshoot_gap = 0;

    friend bool operator==(const LocatorOutcome&, const LocatorOutcome&) = default;
};

// Raised when the scorer fails mid-run. Keeps the cause's name() so callers
// can still tell a timeout from a protocol error, and carries everything
// scored before the failure.
class LocatorRunError : public Error {
public:
    LocatorRunError(const Error& cause, ConfidenceTrace trace)
        : Error(cause.name(), cause.what()), partial_trace(std::move(trace)) {}

    ConfidenceTrace partial_trace;
};

// Online localization: score frames 0, 1, 2, ... until one reaches
// config.c_max, then probe backward and forward at cumulative Fibonacci
// offsets (1, 2, 4, 7, 12, ...) until a probe drops below config.c_min; the
// target is the union of the two walks. stream_length overrides the scorer's
// own frame_count(); one of the two must be known unless the caller
// guarantees a trigger exists.
LocatorOutcome locate_online(FrameScorer& scorer, const HysteresisConfig& config,
                             std::optional<std::uint64_t> stream_length = std::nullopt);

// Same, but when no frame reaches c_max, re-scores the whole stream
// (phase=fallback), takes the earliest maximum as the trigger and
// max - config.fallback_delta as the exit threshold, then traverses as usual.
// Requires config.fallback == FallbackRule::two_pass_max_rule.
LocatorOutcome locate_with_fallback(FrameScorer& scorer, const HysteresisConfig& config,
                                    std::uint64_t stream_length);

// Reference answer by brute force: scores every frame, picks the earliest
// frame clearing c_max (or the earliest maximum under the fallback rule) and
// returns the maximal contiguous run of frames >= the exit threshold around
// it. Intentionally shares no code with the traversal above.
FrameInterval linear_scan_oracle(FrameScorer& scorer, const HysteresisConfig& config,
                                 std::uint64_t stream_length);

}  // namespace streamloc
