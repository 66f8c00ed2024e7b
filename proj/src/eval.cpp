#include "streamloc/eval.hpp"

#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace streamloc {

namespace {

struct Accum {
    std::uint64_t count = 0;
    double iou_sum = 0.0;
    std::uint64_t hits = 0;

    void add(double iou, bool hit) {
        ++count;
        iou_sum += iou;
        hits += hit ? 1 : 0;
    }
};

}  // namespace

EvalReport evaluate_run(const std::vector<OutcomeRecord>& outcomes,
                        const std::vector<CompositionManifest>& manifests) {
    if (outcomes.size() != manifests.size())
        throw JoinError("evaluate_run: " + std::to_string(outcomes.size()) + " outcomes vs " +
                        std::to_string(manifests.size()) + " manifests");

    std::unordered_map<std::string, const CompositionManifest*> by_id;
    by_id.reserve(manifests.size());
    for (const auto& m : manifests)
        if (!by_id.emplace(m.video_id, &m).second)
            throw JoinError("evaluate_run: duplicate manifest video_id \"" + m.video_id + "\"");

    EvalReport report;
    report.per_video.reserve(outcomes.size());
    for (QuestionType t : kQuestionTypes) report.per_question_type[t] = {};

    Accum total;
    std::unordered_map<QuestionType, Accum> per_type;
    double ratio_sum = 0.0;
    std::unordered_set<std::string> seen;
    seen.reserve(outcomes.size());

    for (const auto& rec : outcomes) {
        const auto it = by_id.find(rec.video_id);
        if (it == by_id.end())
            throw JoinError("evaluate_run: outcome \"" + rec.video_id + "\" has no manifest");
        if (!seen.insert(rec.video_id).second)
            throw JoinError("evaluate_run: duplicate outcome video_id \"" + rec.video_id + "\"");
        const CompositionManifest& m = *it->second;
        if (m.total_length == 0)
            throw ConfigError("evaluate_run: manifest \"" + m.video_id + "\" has zero length");

        PerVideoEval row;
        row.video_id = rec.video_id;
        row.question_type = m.qa.question.question_type;
        row.iou = temporal_iou(rec.outcome.target, m.ground_truth);
        row.hit = row.iou >= 0.5;
        row.frames_scored = rec.outcome.trace.frames_scored();
        row.full_scan_frames = m.total_length;
        row.start_error = static_cast<std::int64_t>(rec.outcome.target.start) -
                          static_cast<std::int64_t>(m.ground_truth.start);
        row.end_error = static_cast<std::int64_t>(rec.outcome.target.end) -
                        static_cast<std::int64_t>(m.ground_truth.end);

        total.add(row.iou, row.hit);
        per_type[row.question_type].add(row.iou, row.hit);
        ratio_sum +=
            static_cast<double>(row.frames_scored) / static_cast<double>(row.full_scan_frames);
        report.per_video.push_back(std::move(row));
    }

    if (total.count > 0) {
        report.mean_iou = total.iou_sum / static_cast<double>(total.count);
        report.hit_rate = static_cast<double>(total.hits) / static_cast<double>(total.count);
        report.mean_frames_ratio = ratio_sum / static_cast<double>(total.count);
    }
    for (auto& [type, agg] : report.per_question_type) {
        const Accum& a = per_type[type];
        agg.count = a.count;
        if (a.count > 0) {
            agg.mean_iou = a.iou_sum / static_cast<double>(a.count);
            agg.hit_rate = static_cast<double>(a.hits) / static_cast<double>(a.count);
        }
    }
    return report;
}

std::vector<OracleGapCheck> compare_oracle(
    const std::vector<OutcomeRecord>& outcomes,
    const std::vector<std::pair<std::string, FrameInterval>>& oracle_intervals) {
    if (outcomes.size() != oracle_intervals.size())
        throw JoinError("compare_oracle: " + std::to_string(outcomes.size()) + " outcomes vs " +
                        std::to_string(oracle_intervals.size()) + " oracle intervals");

    std::unordered_map<std::string, FrameInterval> by_id;
    by_id.reserve(oracle_intervals.size());
    for (const auto& [id, interval] : oracle_intervals)
        if (!by_id.emplace(id, interval).second)
            throw JoinError("compare_oracle: duplicate oracle video_id \"" + id + "\"");

    const auto abs_diff = [](FrameIndex a, FrameIndex b) { return a > b ? a - b : b - a; };

    std::vector<OracleGapCheck> checks;
    checks.reserve(outcomes.size());
    std::unordered_set<std::string> seen;
    seen.reserve(outcomes.size());
    for (const auto& rec : outcomes) {
        const auto it = by_id.find(rec.video_id);
        if (it == by_id.end())
            throw JoinError("compare_oracle: outcome \"" + rec.video_id + "\" has no oracle");
        if (!seen.insert(rec.video_id).second)
            throw JoinError("compare_oracle: duplicate outcome video_id \"" + rec.video_id + "\"");
        OracleGapCheck check;
        check.video_id = rec.video_id;
        check.start_gap_ok = abs_diff(rec.outcome.target.start, it->second.start) <=
                             rec.outcome.backward_overshoot_gap;
        check.end_gap_ok =
            abs_diff(rec.outcome.target.end, it->second.end) <= rec.outcome.forward_overshoot_gap;
        checks.push_back(std::move(check));
    }
    return checks;
}

}  // namespace streamloc
