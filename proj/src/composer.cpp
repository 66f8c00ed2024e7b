#include "streamloc/composer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

#include "streamloc/rng.hpp"

namespace streamloc {

namespace {

std::string padded_id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
    return buf;
}

}  // namespace

void SplitRatios::validate() const {
    for (double r : {train, val, test})
        if (!(r >= 0.0) || !std::isfinite(r))
            throw ConfigError("split ratios must be finite and >= 0");
    if (std::abs(train + val + test - 1.0) > 1e-9)
        throw ConfigError("split ratios must sum to 1");
}

std::vector<std::pair<SourceClip, SourceClip>> pair_unique(
    const std::vector<SourceClip>& targets, const std::vector<SourceClip>& backgrounds,
    std::uint64_t seed) {
    for (const auto& t : targets)
        if (t.kind != ClipKind::target)
            throw ConfigError("pair_unique: clip \"" + t.clip_id + "\" listed as a target but marked " +
                              to_string(t.kind));
    for (const auto& b : backgrounds)
        if (b.kind != ClipKind::background)
            throw ConfigError("pair_unique: clip \"" + b.clip_id +
                              "\" listed as a background but marked " + to_string(b.kind));
    if (backgrounds.size() < targets.size())
        throw InsufficientBackgrounds("pair_unique: " + std::to_string(targets.size()) +
                                      " targets but only " + std::to_string(backgrounds.size()) +
                                      " backgrounds");

    std::vector<std::size_t> order(backgrounds.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::pair<SourceClip, SourceClip>> pairs;
    pairs.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        pairs.emplace_back(targets[i], backgrounds[order[i]]);
    return pairs;
}

FrameIndex draw_insertion(std::uint64_t background_length, std::uint64_t seed) {
    Rng rng(seed);
    return rng.uniform_below(background_length + 1);  // inclusive: 0 prepends, L appends
}

CompositionManifest make_manifest(std::string video_id, const SourceClip& target,
                                  const SourceClip& background, FrameIndex insertion_index,
                                  QAAnnotation qa) {
    if (target.kind != ClipKind::target || background.kind != ClipKind::background)
        throw ConfigError("make_manifest: clip kinds are swapped for \"" + video_id + "\"");
    if (target.length_frames == 0 || background.length_frames == 0)
        throw ConfigError("make_manifest: clips must have at least one frame");
    if (insertion_index > background.length_frames)
        throw OutOfRange("make_manifest: insertion index " + std::to_string(insertion_index) +
                         " > background length " + std::to_string(background.length_frames));

    CompositionManifest m;
    m.video_id = std::move(video_id);
    m.background = background;
    m.target = target;
    m.insertion_index = insertion_index;
    m.ground_truth = {insertion_index, insertion_index + target.length_frames};
    m.total_length = background.length_frames + target.length_frames;
    m.qa = std::move(qa);
    return m;
}

std::vector<CompositionManifest> compose(const std::vector<SourceClip>& targets,
                                         const std::vector<SourceClip>& backgrounds,
                                         const QAPool& qa_pool, std::uint64_t seed) {
    const auto pairs = pair_unique(targets, backgrounds, derive_seed(seed, 0));

    std::vector<CompositionManifest> manifests;
    manifests.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [target, background] = pairs[i];
        const auto it = qa_pool.find(target.clip_id);
        if (it == qa_pool.end() || it->second.empty())
            throw MissingQA("compose: no QA annotations for target clip \"" + target.clip_id +
                            "\"");
        const FrameIndex insertion =
            draw_insertion(background.length_frames, derive_seed(seed, 2 * i + 1));
        Rng qa_rng(derive_seed(seed, 2 * i + 2));
        const QAAnnotation& qa = it->second[qa_rng.uniform_below(it->second.size())];
        manifests.push_back(
            make_manifest(padded_id("atbs-", i), target, background, insertion, qa));
    }
    return manifests;
}

void assign_splits(std::vector<CompositionManifest>& manifests, const SplitRatios& ratios,
                   std::uint64_t seed) {
    ratios.validate();
    const std::size_t n = manifests.size();
    // floor() with a nudge: 0.7 * 10000 can land a hair under the integer.
    const auto count_for = [n](double r) {
        return static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9));
    };
    const std::size_t n_val = count_for(ratios.val);
    const std::size_t n_test = count_for(ratios.test);
    const std::size_t n_train = n - n_val - n_test;  // train absorbs the flooring remainder

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    for (std::size_t pos = 0; pos < n; ++pos) {
        Split s = Split::test;
        if (pos < n_train)
            s = Split::train;
        else if (pos < n_train + n_val)
            s = Split::val;
        manifests[order[pos]].split = s;
    }
}

SyntheticProfile synth_profile_for(const CompositionManifest& manifest, double baseline_mean,
                                   double plateau_mean, double noise_std,
                                   std::uint64_t noise_seed) {
    SyntheticProfile p;
    p.stream_length = manifest.total_length;
    p.baseline_mean = baseline_mean;
    p.plateau_interval = manifest.ground_truth;
    p.plateau_mean = plateau_mean;
    p.noise_std = noise_std;
    p.noise_seed = noise_seed;
    p.validate();
    return p;
}

void SyntheticCorpusParams::validate() const {
    if (count == 0) throw ConfigError("synthetic corpus: count must be >= 1");
    if (!(scan_rate_fps > 0.0) || !std::isfinite(scan_rate_fps))
        throw ConfigError("synthetic corpus: scan_rate_fps must be positive");
    if (!(background_min_s > 0.0) || !(background_max_s >= background_min_s) ||
        !(background_mean_s > background_min_s) || !(background_mean_s < background_max_s))
        throw ConfigError("synthetic corpus: background durations must satisfy min < mean < max");
    if (!(target_min_s > 0.0) || !(target_max_s >= target_min_s))
        throw ConfigError("synthetic corpus: target durations must satisfy 0 < min <= max");
    if (answer_space_size == 0)
        throw ConfigError("synthetic corpus: answer space must be >= 1");
}

SyntheticCorpus make_synthetic_clips(const SyntheticCorpusParams& params, std::uint64_t seed) {
    params.validate();

    static const char* const kQuestionTemplates[] = {
        "what is happening in clip %s?",
        "who appears in clip %s?",
        "how is the action in clip %s performed?",
        "where does clip %s take place?",
        "when does the key moment of clip %s occur?",
    };

    SyntheticCorpus corpus;
    corpus.targets.reserve(params.count);
    corpus.backgrounds.reserve(params.count);

    Rng rng(derive_seed(seed, 0));
    const auto frames_for = [&](double seconds) {
        const auto frames = std::llround(seconds * params.scan_rate_fps);
        return frames < 1 ? std::uint64_t{1} : static_cast<std::uint64_t>(frames);
    };

    for (std::size_t i = 0; i < params.count; ++i) {
        // Background: fixed floor plus an exponential tail, capped so the
        // composed video cannot exceed the corpus duration envelope.
        const double bg_tail = std::min(rng.exponential(params.background_mean_s - params.background_min_s),
                                        params.background_max_s - params.background_min_s);
        const double bg_seconds = params.background_min_s + bg_tail;
        const double target_seconds =
            params.target_min_s + rng.next_double() * (params.target_max_s - params.target_min_s);

        const std::string bg_id = padded_id("bg-", i);
        const std::string tgt_id = padded_id("tgt-", i);
        corpus.backgrounds.push_back({bg_id, frames_for(bg_seconds), ClipKind::background});
        corpus.targets.push_back({tgt_id, frames_for(target_seconds), ClipKind::target});

        const std::uint64_t type_index = rng.uniform_below(5);
        char question[128];
        std::snprintf(question, sizeof(question), kQuestionTemplates[type_index], tgt_id.c_str());
        char label[32];
        std::snprintf(label, sizeof(label), "label_%04llu",
                      static_cast<unsigned long long>(rng.uniform_below(params.answer_space_size)));

        QAAnnotation qa;
        qa.question.question_id = "q-" + tgt_id + "-0";
        qa.question.question_text = question;
        qa.question.question_type = kQuestionTypes[type_index];
        qa.answer_label = label;
        qa.answer_space_size = params.answer_space_size;
        corpus.qa_pool[tgt_id].push_back(std::move(qa));
    }
    return corpus;
}

}  // namespace streamloc
