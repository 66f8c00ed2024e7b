#include "streamloc/locator.hpp"

#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace streamloc {

std::vector<std::uint64_t> fib_gaps(std::uint64_t limit) {
    if (limit == 0) throw ConfigError("fib_gaps: limit must be >= 1");
    std::vector<std::uint64_t> gaps;
    std::uint64_t a = 1, b = 1, sum = 0;
    while (limit - sum >= a) {
        gaps.push_back(a);
        sum += a;
        const std::uint64_t next = a + b;
        a = b;
        b = next;
    }
    return gaps;
}

namespace {

// Cumulative Fibonacci offsets from an anchor: 1, 2, 4, 7, 12, 20, ...
// Remembers the gap each step added; that is what overshoot accounting
// reports.
class FibWalk {
public:
    std::uint64_t next() {
        last_gap_ = gap_a_;
        offset_ += gap_a_;
        const std::uint64_t n = gap_a_ + gap_b_;
        gap_a_ = gap_b_;
        gap_b_ = n;
        return offset_;
    }
    std::uint64_t last_gap() const { return last_gap_; }

private:
    std::uint64_t gap_a_ = 1;
    std::uint64_t gap_b_ = 1;
    std::uint64_t offset_ = 0;
    std::uint64_t last_gap_ = 0;
};

// Scores through the scorer while appending to the run's trace; a scorer
// failure surfaces as LocatorRunError carrying everything scored so far.
class TraceRecorder {
public:
    TraceRecorder(FrameScorer& scorer, ConfidenceTrace& trace)
        : scorer_(scorer), trace_(trace) {}

    double operator()(FrameIndex frame, Phase phase) {
        double c;
        try {
            c = scorer_.score(frame);
        } catch (const Error& e) {
            throw LocatorRunError(e, std::move(trace_));
        }
        trace_.samples.push_back({frame, c, phase});
        return c;
    }

private:
    FrameScorer& scorer_;
    ConfidenceTrace& trace_;
};

struct TraversalResult {
    FrameInterval target;
    std::uint64_t backward_gap = 0;
    std::uint64_t forward_gap = 0;
};

// Bidirectional Fibonacci walk around an already-scored trigger frame. The
// boundary goes where the first below-threshold probe fell; the recorded gap
// is the distance from the last probe still inside, which bounds how far the
// reported edge can sit from the true one.
TraversalResult traverse(TraceRecorder& score, FrameIndex trigger, double exit_threshold,
                         std::optional<std::uint64_t> stream_length,
                         const HysteresisConfig& config) {
    TraversalResult r;

    FrameInterval back{trigger, trigger + 1};
    {
        FibWalk walk;
        for (;;) {
            const std::uint64_t off = walk.next();
            if (off > trigger) {
                back.start = 0;  // ran out of stream going backward
                r.backward_gap = 0;
                break;
            }
            const FrameIndex probe = trigger - off;
            if (score(probe, Phase::backward) < exit_threshold) {
                back.start = probe + 1;
                r.backward_gap = walk.last_gap();
                break;
            }
        }
    }

    FrameInterval fwd{trigger, trigger + 1};
    if (config.forward_mode == ForwardMode::fixed_extent) {
        // Fixed extent: claim the next o_k frames outright, no probing.
        FibWalk walk;
        std::uint64_t off = 0;
        for (std::uint32_t k = 0; k < config.fixed_extent_gaps; ++k) off = walk.next();
        fwd.end = trigger + off;
        if (stream_length && fwd.end > *stream_length) fwd.end = *stream_length;
        r.forward_gap = 0;
    } else {
        FibWalk walk;
        for (;;) {
            const std::uint64_t off = walk.next();
            const FrameIndex probe = trigger + off;
            if (stream_length && probe >= *stream_length) {
                // The probe that would have decided the boundary lies past
                // the stream, so the tail up to the end is claimed and the
                // pending gap still bounds the boundary error.
                fwd.end = *stream_length;
                r.forward_gap = walk.last_gap();
                break;
            }
            if (score(probe, Phase::forward) < exit_threshold) {
                fwd.end = probe;
                r.forward_gap = walk.last_gap();
                break;
            }
            fwd.end = probe + 1;
        }
    }

    r.target = interval_union(back, fwd);
    return r;
}

LocatorOutcome finish(FrameIndex trigger, TraversalResult trav, ConfidenceTrace trace,
                      LocatorMode mode, bool terminated_early) {
    LocatorOutcome out;
    out.target = trav.target;
    out.trigger = trigger;
    out.trace = std::move(trace);
    out.terminated_early = terminated_early;
    out.mode = mode;
    out.backward_overshoot_gap = trav.backward_gap;
    out.forward_overshoot_gap = trav.forward_gap;
    return out;
}

}  // namespace

LocatorOutcome locate_online(FrameScorer& scorer, const HysteresisConfig& config,
                             std::optional<std::uint64_t> stream_length) {
    config.validate();
    const std::optional<std::uint64_t> len =
        stream_length ? stream_length : scorer.frame_count();
    if (len && *len == 0) throw EmptyStream("locate_online: zero-length stream");

    ConfidenceTrace trace;
    TraceRecorder score(scorer, trace);

    std::optional<FrameIndex> trigger;
    for (FrameIndex t = 0; !len || t < *len; ++t) {
        if (score(t, Phase::stream) >= config.c_max) {
            trigger = t;
            break;
        }
    }
    if (!trigger)
        throw NoTrigger("locate_online: no frame reached c_max and no fallback is enabled");

    TraversalResult trav = traverse(score, *trigger, config.c_min, len, config);
    const bool early = len ? (*trigger + 1 < *len) : true;
    return finish(*trigger, trav, std::move(trace), LocatorMode::online, early);
}

LocatorOutcome locate_with_fallback(FrameScorer& scorer, const HysteresisConfig& config,
                                    std::uint64_t stream_length) {
    config.validate();
    if (config.fallback != FallbackRule::two_pass_max_rule)
        throw ConfigError("locate_with_fallback: config.fallback must be two_pass_max_rule");
    if (stream_length == 0) throw EmptyStream("locate_with_fallback: zero-length stream");

    ConfidenceTrace trace;
    TraceRecorder score(scorer, trace);

    std::optional<FrameIndex> trigger;
    for (FrameIndex t = 0; t < stream_length; ++t) {
        if (score(t, Phase::stream) >= config.c_max) {
            trigger = t;
            break;
        }
    }

    double exit_threshold = config.c_min;
    LocatorMode mode = LocatorMode::online;
    bool terminated_early = false;
    if (trigger) {
        terminated_early = *trigger + 1 < stream_length;
    } else {
        // Nothing cleared c_max: re-score the whole stream, treat the
        // earliest maximum as the trigger and max - delta as the exit bar.
        double best = -std::numeric_limits<double>::infinity();
        FrameIndex best_frame = 0;
        for (FrameIndex t = 0; t < stream_length; ++t) {
            const double c = score(t, Phase::fallback);
            if (c > best) {
                best = c;
                best_frame = t;
            }
        }
        trigger = best_frame;
        exit_threshold = best - config.fallback_delta;
        mode = LocatorMode::fallback_two_pass;
    }

    TraversalResult trav = traverse(score, *trigger, exit_threshold, stream_length, config);
    return finish(*trigger, trav, std::move(trace), mode, terminated_early);
}

FrameInterval linear_scan_oracle(FrameScorer& scorer, const HysteresisConfig& config,
                                 std::uint64_t stream_length) {
    config.validate();
    if (stream_length == 0) throw EmptyStream("linear_scan_oracle: zero-length stream");

    std::vector<double> c(stream_length);
    for (FrameIndex t = 0; t < stream_length; ++t) c[t] = scorer.score(t);

    std::optional<FrameIndex> anchor;
    for (FrameIndex t = 0; t < stream_length; ++t) {
        if (c[t] >= config.c_max) {
            anchor = t;
            break;
        }
    }
    double exit_threshold = config.c_min;
    if (!anchor) {
        if (config.fallback != FallbackRule::two_pass_max_rule)
            throw NoTrigger("linear_scan_oracle: no frame reached c_max");
        double best = -std::numeric_limits<double>::infinity();
        FrameIndex best_frame = 0;
        for (FrameIndex t = 0; t < stream_length; ++t) {
            if (c[t] > best) {
                best = c[t];
                best_frame = t;
            }
        }
        anchor = best_frame;
        exit_threshold = best - config.fallback_delta;
    }

    FrameIndex lo = *anchor;
    FrameIndex hi = *anchor + 1;
    while (lo > 0 && c[lo - 1] >= exit_threshold) --lo;
    while (hi < stream_length && c[hi] >= exit_threshold) ++hi;
    return {lo, hi};
}

}  // namespace streamloc
