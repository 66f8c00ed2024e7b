#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "streamloc/core.hpp"
#include "streamloc/scorer.hpp"

namespace streamloc {

enum class ClipKind { background, target };

inline const char* to_string(ClipKind k) {
    return k == ClipKind::background ? "background" : "target";
}

inline ClipKind clip_kind_from_string(const std::string& s) {
    if (s == "background") return ClipKind::background;
    if (s == "target") return ClipKind::target;
    throw FormatError("unknown clip kind \"" + s + "\"");
}

struct SourceClip {
    std::string clip_id;
    std::uint64_t length_frames = 0;
    ClipKind kind = ClipKind::background;

    friend bool operator==(const SourceClip&, const SourceClip&) = default;
};

struct QAAnnotation {
    QuestionContext question;
    std::string answer_label;
    std::uint64_t answer_space_size = 1290;

    friend bool operator==(const QAAnnotation&, const QAAnnotation&) = default;
};

enum class Split { train, val, test };

inline const char* to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    return "?";
}

inline Split split_from_string(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "val") return Split::val;
    if (s == "test") return Split::test;
    throw FormatError("unknown split \"" + s + "\"");
}

// One composed video: a target clip spliced into a background clip right
// after background frame insertion_index-1 (index 0 prepends, index
// background.length appends). ground_truth is where the target frames sit in
// the composed stream.
struct CompositionManifest {
    std::string video_id;
    SourceClip background;
    SourceClip target;
    FrameIndex insertion_index = 0;
    FrameInterval ground_truth;
    std::uint64_t total_length = 0;
    QAAnnotation qa;
    Split split = Split::train;

    friend bool operator==(const CompositionManifest&, const CompositionManifest&) = default;
};

// QA annotations per target clip id.
using QAPool = std::map<std::string, std::vector<QAAnnotation>>;

// Assign every target a distinct background, uniformly at random. Throws
// InsufficientBackgrounds when there are fewer backgrounds than targets and
// ConfigError when a clip is listed under the wrong kind.
std::vector<std::pair<SourceClip, SourceClip>> pair_unique(
    const std::vector<SourceClip>& targets, const std::vector<SourceClip>& backgrounds,
    std::uint64_t seed);

// Insertion point uniform over {0, ..., background_length} inclusive.
FrameIndex draw_insertion(std::uint64_t background_length, std::uint64_t seed);

// Deterministic manifest assembly from one pairing (the arithmetic lives
// here; compose() adds the random draws).
CompositionManifest make_manifest(std::string video_id, const SourceClip& target,
                                  const SourceClip& background, FrameIndex insertion_index,
                                  QAAnnotation qa);

// Full composition: unique pairing, one insertion draw and one QA pick per
// pair, video ids "atbs-00000", "atbs-00001", ... in target order. Splits are
// left at the default; call assign_splits afterwards.
std::vector<CompositionManifest> compose(const std::vector<SourceClip>& targets,
                                         const std::vector<SourceClip>& backgrounds,
                                         const QAPool& qa_pool, std::uint64_t seed);

struct SplitRatios {
    double train = 0.7;
    double val = 0.1;
    double test = 0.2;

    void validate() const;
};

// Random split assignment with floor(ratio * count) sizes for val and test;
// train absorbs the remainder.
void assign_splits(std::vector<CompositionManifest>& manifests, const SplitRatios& ratios,
                   std::uint64_t seed);

// Synthetic scoring profile for a composed video: plateau over the ground
// truth, baseline elsewhere, per-video noise stream.
SyntheticProfile synth_profile_for(const CompositionManifest& manifest, double baseline_mean,
                                   double plateau_mean, double noise_std,
                                   std::uint64_t noise_seed);

// Desk-scale stand-in for real clip listings. Durations are drawn in seconds
// and converted at scan_rate_fps: targets uniform on [target_min_s,
// target_max_s], backgrounds background_min_s plus an exponential tail capped
// so composed videos stay within (22.04 s, 447.04 s) at the defaults.
struct SyntheticCorpusParams {
    std::uint64_t count = 100;
    double scan_rate_fps = 4.0;
    double background_min_s = 15.04;
    double background_mean_s = 48.0;
    double background_max_s = 426.04;
    double target_min_s = 7.0;
    double target_max_s = 21.0;
    std::uint64_t answer_space_size = 1290;

    void validate() const;
};

struct SyntheticCorpus {
    std::vector<SourceClip> targets;
    std::vector<SourceClip> backgrounds;
    QAPool qa_pool;
};

SyntheticCorpus make_synthetic_clips(const SyntheticCorpusParams& params, std::uint64_t seed);

}  // namespace streamloc
