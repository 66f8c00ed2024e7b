#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "streamloc/composer.hpp"
#include "streamloc/locator.hpp"

namespace streamloc {

struct OutcomeRecord {
    std::string video_id;
    LocatorOutcome outcome;

    friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

struct PerVideoEval {
    std::string video_id;
    QuestionType question_type = QuestionType::what;
    double iou = 0.0;
    bool hit = false;                   // iou >= 0.5
    std::uint64_t frames_scored = 0;
    std::uint64_t full_scan_frames = 0; // watch-everything baseline cost
    std::int64_t start_error = 0;       // target.start - ground_truth.start
    std::int64_t end_error = 0;         // target.end - ground_truth.end

    friend bool operator==(const PerVideoEval&, const PerVideoEval&) = default;
};

struct TypeAggregate {
    std::uint64_t count = 0;
    double mean_iou = 0.0;
    double hit_rate = 0.0;

    friend bool operator==(const TypeAggregate&, const TypeAggregate&) = default;
};

struct EvalReport {
    std::vector<PerVideoEval> per_video;
    double mean_iou = 0.0;
    double hit_rate = 0.0;
    double mean_frames_ratio = 0.0;  // mean of frames_scored / full_scan_frames
    std::map<QuestionType, TypeAggregate> per_question_type;  // all five types, observed or not

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Join outcomes to manifests one-to-one by video_id (JoinError otherwise) and
// score each pair; aggregates are over the outcome order.
EvalReport evaluate_run(const std::vector<OutcomeRecord>& outcomes,
                        const std::vector<CompositionManifest>& manifests);

struct OracleGapCheck {
    std::string video_id;
    bool start_gap_ok = false;  // |target.start - oracle.start| <= backward_overshoot_gap
    bool end_gap_ok = false;    // |target.end - oracle.end| <= forward_overshoot_gap

    friend bool operator==(const OracleGapCheck&, const OracleGapCheck&) = default;
};

// Boundary errors against an independently computed oracle interval per
// video, checked against the overshoot gaps the locator reported.
std::vector<OracleGapCheck> compare_oracle(
    const std::vector<OutcomeRecord>& outcomes,
    const std::vector<std::pair<std::string, FrameInterval>>& oracle_intervals);

}  // namespace streamloc
