#pragma once

#include <chrono>
#include <string>
#include <sys/types.h>
#include <vector>

#include "streamloc/scorer.hpp"

namespace streamloc {

// Drives a scorer subprocess over pipes with a line-delimited JSON protocol:
//
//   request:  {"id": <u64>, "question": <string>, "frame": <u64>}
//   response: {"id": <same u64>, "confidence": <number in [-1, 1]>}
//
// One request is in flight at a time; ids start at 1 and increase by one per
// request. A malformed response, an id mismatch, an out-of-range confidence,
// or the child exiting raises ScorerProtocolError (the message carries the
// offending line); a response that does not arrive within the timeout raises
// ScorerTimeout. The child's stderr passes through for debugging.
class ExternalScorer final : public FrameScorer {
public:
    ExternalScorer(std::vector<std::string> argv, std::string question_text,
                   std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));
    ~ExternalScorer() override;

    ExternalScorer(const ExternalScorer&) = delete;
    ExternalScorer& operator=(const ExternalScorer&) = delete;

    double score(FrameIndex frame) override;
    std::optional<std::uint64_t> frame_count() const override { return std::nullopt; }

private:
    void spawn(const std::vector<std::string>& argv);
    std::string read_response_line();
    void shutdown() noexcept;

    std::string question_;
    std::chrono::milliseconds timeout_;
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::uint64_t next_id_ = 1;
    std::string buffer_;
};

}  // namespace streamloc
