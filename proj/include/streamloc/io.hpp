#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamloc/composer.hpp"
#include "streamloc/eval.hpp"
#include "streamloc/locator.hpp"
#include "streamloc/sampler.hpp"

namespace streamloc {

// Insertion-ordered JSON keeps every emitted document byte-stable for a given
// input, which the determinism guarantees below rely on.
using ordered_json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// ---- JSON value mapping (field names are the on-disk schema) ----

void to_json(ordered_json& j, const FrameInterval& v);
void from_json(const ordered_json& j, FrameInterval& v);
void to_json(ordered_json& j, const SourceClip& v);
void from_json(const ordered_json& j, SourceClip& v);
void to_json(ordered_json& j, const QuestionContext& v);
void from_json(const ordered_json& j, QuestionContext& v);
void to_json(ordered_json& j, const QAAnnotation& v);
void from_json(const ordered_json& j, QAAnnotation& v);
void to_json(ordered_json& j, const CompositionManifest& v);
void from_json(const ordered_json& j, CompositionManifest& v);
void to_json(ordered_json& j, const ConfidenceSample& v);
void from_json(const ordered_json& j, ConfidenceSample& v);
void to_json(ordered_json& j, const OutcomeRecord& v);
void from_json(const ordered_json& j, OutcomeRecord& v);
void to_json(ordered_json& j, const EvalReport& v);
void from_json(const ordered_json& j, EvalReport& v);

// ---- files ----
// All writers go through a temp file in the destination directory plus an
// atomic rename, and end with a trailing newline. All readers raise
// FormatError naming file and line on malformed input.

void atomic_write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

void write_json_file(const std::filesystem::path& path, const ordered_json& j);
ordered_json read_json_file(const std::filesystem::path& path);

void write_manifests_jsonl(const std::filesystem::path& path,
                           const std::vector<CompositionManifest>& manifests);
std::vector<CompositionManifest> read_manifests_jsonl(const std::filesystem::path& path);

void write_clips_jsonl(const std::filesystem::path& path, const std::vector<SourceClip>& clips);
std::vector<SourceClip> read_clips_jsonl(const std::filesystem::path& path);

// Pool rows: {"clip_id", "question_text", "question_type", "answer_label"}.
// question_id is synthesized as "q-<clip_id>-<k>" on read; answer_space_size
// comes from the caller (it is corpus-wide, not per row).
void write_qa_pool_jsonl(const std::filesystem::path& path, const QAPool& pool);
QAPool read_qa_pool_jsonl(const std::filesystem::path& path, std::uint64_t answer_space_size);

void write_outcomes_jsonl(const std::filesystem::path& path,
                          const std::vector<OutcomeRecord>& outcomes);
std::vector<OutcomeRecord> read_outcomes_jsonl(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const ConfidenceTrace& trace);
void write_trace_jsonl(const std::filesystem::path& path, const ConfidenceTrace& trace);

void write_report_csv(const std::filesystem::path& path, const EvalReport& report);
ordered_json report_summary_json(const EvalReport& report);

struct SampleRecord {
    std::string video_id;
    SampleStrategy strategy = SampleStrategy::fibonacci;
    std::uint64_t n = 0;
    std::vector<FrameIndex> frames;

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

void to_json(ordered_json& j, const SampleRecord& v);
void from_json(const ordered_json& j, SampleRecord& v);
void write_samples_jsonl(const std::filesystem::path& path,
                         const std::vector<SampleRecord>& records);
std::vector<SampleRecord> read_samples_jsonl(const std::filesystem::path& path);

void write_oracle_checks_csv(const std::filesystem::path& path,
                             const std::vector<OracleGapCheck>& checks);

// Fixed-bin histogram over [lo, hi] rendered as a standalone SVG.
void write_histogram_svg(const std::filesystem::path& path, const std::vector<double>& values,
                         std::size_t bins, double lo, double hi, const std::string& title);

}  // namespace streamloc
