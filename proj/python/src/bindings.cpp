#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "streamloc/composer.hpp"
#include "streamloc/eval.hpp"
#include "streamloc/external_scorer.hpp"
#include "streamloc/io.hpp"
#include "streamloc/locator.hpp"
#include "streamloc/rng.hpp"
#include "streamloc/sampler.hpp"

namespace py = pybind11;
using namespace streamloc;

namespace {

// Lets Python subclasses of FrameScorer drive the locator.
class PyFrameScorer : public FrameScorer {
public:
    using FrameScorer::FrameScorer;

    double score(FrameIndex frame) override {
        PYBIND11_OVERRIDE_PURE(double, FrameScorer, score, frame);
    }
    std::optional<std::uint64_t> frame_count() const override {
        PYBIND11_OVERRIDE_PURE(std::optional<std::uint64_t>, FrameScorer, frame_count);
    }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "online target-event localization core";
    m.attr("__version__") = "0.1.0";

    // exceptions: base first so derived translators run first
    const py::exception<Error> base_error(m, "StreamlocError");
    py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());
    py::register_exception<DisjointIntervals>(m, "DisjointIntervals", base_error.ptr());
    py::register_exception<ZeroNorm>(m, "ZeroNorm", base_error.ptr());
    py::register_exception<DimMismatch>(m, "DimMismatch", base_error.ptr());
    py::register_exception<OutOfRange>(m, "OutOfRange", base_error.ptr());
    py::register_exception<FormatError>(m, "FormatError", base_error.ptr());
    py::register_exception<ScorerProtocolError>(m, "ScorerProtocolError", base_error.ptr());
    py::register_exception<ScorerTimeout>(m, "ScorerTimeout", base_error.ptr());
    py::register_exception<EmptyStream>(m, "EmptyStream", base_error.ptr());
    py::register_exception<NoTrigger>(m, "NoTrigger", base_error.ptr());
    py::register_exception<EmptyInterval>(m, "EmptyInterval", base_error.ptr());
    py::register_exception<InsufficientBackgrounds>(m, "InsufficientBackgrounds",
                                                    base_error.ptr());
    py::register_exception<MissingQA>(m, "MissingQA", base_error.ptr());
    py::register_exception<JoinError>(m, "JoinError", base_error.ptr());
    py::register_exception<LocatorRunError>(m, "LocatorRunError", base_error.ptr());

    // ---- core ----
    py::class_<FrameInterval>(m, "FrameInterval")
        .def(py::init<>())
        .def(py::init([](FrameIndex start, FrameIndex end) {
                 return FrameInterval{start, end};
             }),
             py::arg("start"), py::arg("end"))
        .def_readwrite("start", &FrameInterval::start)
        .def_readwrite("end", &FrameInterval::end)
        .def("length", &FrameInterval::length)
        .def("empty", &FrameInterval::empty)
        .def("contains", &FrameInterval::contains, py::arg("frame"))
        .def(py::self == py::self)
        .def("__repr__", [](const FrameInterval& iv) {
            return "FrameInterval(" + std::to_string(iv.start) + ", " + std::to_string(iv.end) +
                   ")";
        });

    m.def("interval_union", &interval_union, py::arg("a"), py::arg("b"));
    m.def("temporal_iou", &temporal_iou, py::arg("a"), py::arg("b"));

    py::enum_<Phase>(m, "Phase")
        .value("stream", Phase::stream)
        .value("backward", Phase::backward)
        .value("forward", Phase::forward)
        .value("fallback", Phase::fallback);

    py::class_<ConfidenceSample>(m, "ConfidenceSample")
        .def(py::init<>())
        .def_readwrite("frame", &ConfidenceSample::frame)
        .def_readwrite("confidence", &ConfidenceSample::confidence)
        .def_readwrite("phase", &ConfidenceSample::phase)
        .def(py::self == py::self);

    py::class_<ConfidenceTrace>(m, "ConfidenceTrace")
        .def(py::init<>())
        .def_readwrite("samples", &ConfidenceTrace::samples)
        .def("frames_scored", &ConfidenceTrace::frames_scored)
        .def(py::self == py::self);

    py::enum_<ForwardMode>(m, "ForwardMode")
        .value("until_below_min", ForwardMode::until_below_min)
        .value("fixed_extent", ForwardMode::fixed_extent);

    py::enum_<FallbackRule>(m, "FallbackRule")
        .value("none", FallbackRule::none)
        .value("two_pass_max_rule", FallbackRule::two_pass_max_rule);

    py::class_<HysteresisConfig>(m, "HysteresisConfig")
        .def(py::init<>())
        .def_readwrite("c_max", &HysteresisConfig::c_max)
        .def_readwrite("c_min", &HysteresisConfig::c_min)
        .def_readwrite("scan_rate_fps", &HysteresisConfig::scan_rate_fps)
        .def_readwrite("forward_mode", &HysteresisConfig::forward_mode)
        .def_readwrite("fixed_extent_gaps", &HysteresisConfig::fixed_extent_gaps)
        .def_readwrite("fallback", &HysteresisConfig::fallback)
        .def_readwrite("fallback_delta", &HysteresisConfig::fallback_delta)
        .def_readwrite("rng_seed", &HysteresisConfig::rng_seed)
        .def("validate", &HysteresisConfig::validate)
        .def(py::self == py::self);

    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"));

    // ---- scorers ----
    py::class_<EmbeddingVector>(m, "EmbeddingVector")
        .def(py::init<>())
        .def(py::init([](std::vector<double> components) {
                 EmbeddingVector v;
                 v.components = std::move(components);
                 return v;
             }),
             py::arg("components"))
        .def_readwrite("components", &EmbeddingVector::components)
        .def("dim", &EmbeddingVector::dim)
        .def(py::self == py::self);
    py::implicitly_convertible<py::list, EmbeddingVector>();

    m.def("normalize", &normalize, py::arg("v"));
    m.def("confidence", &confidence, py::arg("question"), py::arg("frame"));

    py::enum_<QuestionType>(m, "QuestionType")
        .value("what", QuestionType::what)
        .value("who", QuestionType::who)
        .value("how", QuestionType::how)
        .value("where", QuestionType::where)
        .value("when", QuestionType::when);

    py::class_<QuestionContext>(m, "QuestionContext")
        .def(py::init<>())
        .def_readwrite("question_id", &QuestionContext::question_id)
        .def_readwrite("question_text", &QuestionContext::question_text)
        .def_readwrite("question_type", &QuestionContext::question_type)
        .def_readwrite("embedding", &QuestionContext::embedding)
        .def(py::self == py::self);

    py::class_<SyntheticProfile>(m, "SyntheticProfile")
        .def(py::init([](std::uint64_t stream_length, double baseline_mean,
                         FrameInterval plateau_interval, double plateau_mean, double noise_std,
                         std::uint64_t noise_seed) {
                 return SyntheticProfile{stream_length, baseline_mean, plateau_interval,
                                         plateau_mean, noise_std, noise_seed};
             }),
             py::arg("stream_length") = 0, py::arg("baseline_mean") = 0.1,
             py::arg("plateau_interval") = FrameInterval{}, py::arg("plateau_mean") = 0.6,
             py::arg("noise_std") = 0.0, py::arg("noise_seed") = 0)
        .def_readwrite("stream_length", &SyntheticProfile::stream_length)
        .def_readwrite("baseline_mean", &SyntheticProfile::baseline_mean)
        .def_readwrite("plateau_interval", &SyntheticProfile::plateau_interval)
        .def_readwrite("plateau_mean", &SyntheticProfile::plateau_mean)
        .def_readwrite("noise_std", &SyntheticProfile::noise_std)
        .def_readwrite("noise_seed", &SyntheticProfile::noise_seed)
        .def("validate", &SyntheticProfile::validate)
        .def(py::self == py::self);

    m.def("synthetic_score", &synthetic_score, py::arg("profile"), py::arg("frame"));

    py::class_<FrameScorer, PyFrameScorer>(m, "FrameScorer")
        .def(py::init<>())
        .def("score", &FrameScorer::score, py::arg("frame"))
        .def("frame_count", &FrameScorer::frame_count);

    py::class_<SyntheticScorer, FrameScorer>(m, "SyntheticScorer")
        .def(py::init<SyntheticProfile>(), py::arg("profile"))
        .def_property_readonly("profile", &SyntheticScorer::profile);

    py::class_<EmbeddingFileScorer, FrameScorer>(m, "EmbeddingFileScorer")
        .def(py::init<const std::filesystem::path&, const std::filesystem::path&>(),
             py::arg("question_file"), py::arg("frames_file"))
        .def(py::init<EmbeddingVector, std::vector<EmbeddingVector>>(), py::arg("question"),
             py::arg("frames"));

    py::class_<ExternalScorer, FrameScorer>(m, "ExternalScorer")
        .def(py::init([](std::vector<std::string> argv, std::string question_text,
                         std::uint64_t timeout_ms) {
                 return std::make_unique<ExternalScorer>(std::move(argv),
                                                         std::move(question_text),
                                                         std::chrono::milliseconds(timeout_ms));
             }),
             py::arg("argv"), py::arg("question_text"), py::arg("timeout_ms") = 30000);

    m.def("read_frame_embeddings", &read_frame_embeddings, py::arg("path"));
    m.def("read_question_embedding", &read_question_embedding, py::arg("path"));
    m.def("write_frame_embeddings", &write_frame_embeddings, py::arg("path"), py::arg("frames"));
    m.def("write_question_embedding", &write_question_embedding, py::arg("path"), py::arg("v"));

    // ---- locator ----
    m.def("fib_gaps", &fib_gaps, py::arg("limit"));

    py::enum_<LocatorMode>(m, "LocatorMode")
        .value("online", LocatorMode::online)
        .value("fallback_two_pass", LocatorMode::fallback_two_pass);

    py::class_<LocatorOutcome>(m, "LocatorOutcome")
        .def(py::init<>())
        .def_readwrite("target", &LocatorOutcome::target)
        .def_readwrite("trigger", &LocatorOutcome::trigger)
        .def_readwrite("trace", &LocatorOutcome::trace)
        .def_readwrite("terminated_early", &LocatorOutcome::terminated_early)
        .def_readwrite("mode", &LocatorOutcome::mode)
        .def_readwrite("backward_overshoot_gap", &LocatorOutcome::backward_overshoot_gap)
        .def_readwrite("forward_overshoot_gap", &LocatorOutcome::forward_overshoot_gap)
        .def(py::self == py::self);

    m.def("locate_online", &locate_online, py::arg("scorer"),
          py::arg("config") = HysteresisConfig{},
          py::arg("stream_length") = std::optional<std::uint64_t>{});
    m.def("locate_with_fallback", &locate_with_fallback, py::arg("scorer"), py::arg("config"),
          py::arg("stream_length"));
    m.def("linear_scan_oracle", &linear_scan_oracle, py::arg("scorer"), py::arg("config"),
          py::arg("stream_length"));

    // ---- sampler ----
    py::enum_<SampleStrategy>(m, "SampleStrategy")
        .value("fibonacci", SampleStrategy::fibonacci)
        .value("uniform_random", SampleStrategy::uniform_random);

    m.def("sample_fibonacci", &sample_fibonacci, py::arg("interval"), py::arg("n"));
    m.def("sample_uniform_random", &sample_uniform_random, py::arg("interval"), py::arg("n"),
          py::arg("seed"));

    // ---- composer ----
    py::enum_<ClipKind>(m, "ClipKind")
        .value("background", ClipKind::background)
        .value("target", ClipKind::target);

    py::class_<SourceClip>(m, "SourceClip")
        .def(py::init<>())
        .def(py::init([](std::string clip_id, std::uint64_t length_frames, ClipKind kind) {
                 return SourceClip{std::move(clip_id), length_frames, kind};
             }),
             py::arg("clip_id"), py::arg("length_frames"), py::arg("kind"))
        .def_readwrite("clip_id", &SourceClip::clip_id)
        .def_readwrite("length_frames", &SourceClip::length_frames)
        .def_readwrite("kind", &SourceClip::kind)
        .def(py::self == py::self);

    py::class_<QAAnnotation>(m, "QAAnnotation")
        .def(py::init<>())
        .def_readwrite("question", &QAAnnotation::question)
        .def_readwrite("answer_label", &QAAnnotation::answer_label)
        .def_readwrite("answer_space_size", &QAAnnotation::answer_space_size)
        .def(py::self == py::self);

    py::enum_<Split>(m, "Split")
        .value("train", Split::train)
        .value("val", Split::val)
        .value("test", Split::test);

    py::class_<CompositionManifest>(m, "CompositionManifest")
        .def(py::init<>())
        .def_readwrite("video_id", &CompositionManifest::video_id)
        .def_readwrite("background", &CompositionManifest::background)
        .def_readwrite("target", &CompositionManifest::target)
        .def_readwrite("insertion_index", &CompositionManifest::insertion_index)
        .def_readwrite("ground_truth", &CompositionManifest::ground_truth)
        .def_readwrite("total_length", &CompositionManifest::total_length)
        .def_readwrite("qa", &CompositionManifest::qa)
        .def_readwrite("split", &CompositionManifest::split)
        .def(py::self == py::self);

    m.def("pair_unique", &pair_unique, py::arg("targets"), py::arg("backgrounds"),
          py::arg("seed"));
    m.def("draw_insertion", &draw_insertion, py::arg("background_length"), py::arg("seed"));
    m.def("make_manifest", &make_manifest, py::arg("video_id"), py::arg("target"),
          py::arg("background"), py::arg("insertion_index"), py::arg("qa"));
    m.def("compose", &compose, py::arg("targets"), py::arg("backgrounds"), py::arg("qa_pool"),
          py::arg("seed"));

    py::class_<SplitRatios>(m, "SplitRatios")
        .def(py::init([](double train, double val, double test) {
                 return SplitRatios{train, val, test};
             }),
             py::arg("train") = 0.7, py::arg("val") = 0.1, py::arg("test") = 0.2)
        .def_readwrite("train", &SplitRatios::train)
        .def_readwrite("val", &SplitRatios::val)
        .def_readwrite("test", &SplitRatios::test)
        .def("validate", &SplitRatios::validate);

    m.def(
        "assign_splits",
        [](std::vector<CompositionManifest> manifests, const SplitRatios& ratios,
           std::uint64_t seed) {
            assign_splits(manifests, ratios, seed);
            return manifests;
        },
        py::arg("manifests"), py::arg("ratios") = SplitRatios{}, py::arg("seed") = 0,
        "returns a copy with splits assigned");

    m.def("synth_profile_for", &synth_profile_for, py::arg("manifest"), py::arg("baseline_mean"),
          py::arg("plateau_mean"), py::arg("noise_std"), py::arg("noise_seed"));

    py::class_<SyntheticCorpusParams>(m, "SyntheticCorpusParams")
        .def(py::init<>())
        .def_readwrite("count", &SyntheticCorpusParams::count)
        .def_readwrite("scan_rate_fps", &SyntheticCorpusParams::scan_rate_fps)
        .def_readwrite("background_min_s", &SyntheticCorpusParams::background_min_s)
        .def_readwrite("background_mean_s", &SyntheticCorpusParams::background_mean_s)
        .def_readwrite("background_max_s", &SyntheticCorpusParams::background_max_s)
        .def_readwrite("target_min_s", &SyntheticCorpusParams::target_min_s)
        .def_readwrite("target_max_s", &SyntheticCorpusParams::target_max_s)
        .def_readwrite("answer_space_size", &SyntheticCorpusParams::answer_space_size)
        .def("validate", &SyntheticCorpusParams::validate);

    py::class_<SyntheticCorpus>(m, "SyntheticCorpus")
        .def(py::init<>())
        .def_readwrite("targets", &SyntheticCorpus::targets)
        .def_readwrite("backgrounds", &SyntheticCorpus::backgrounds)
        .def_readwrite("qa_pool", &SyntheticCorpus::qa_pool);

    m.def("make_synthetic_clips", &make_synthetic_clips, py::arg("params"), py::arg("seed"));

    // ---- eval ----
    py::class_<OutcomeRecord>(m, "OutcomeRecord")
        .def(py::init<>())
        .def(py::init([](std::string video_id, LocatorOutcome outcome) {
                 return OutcomeRecord{std::move(video_id), std::move(outcome)};
             }),
             py::arg("video_id"), py::arg("outcome"))
        .def_readwrite("video_id", &OutcomeRecord::video_id)
        .def_readwrite("outcome", &OutcomeRecord::outcome)
        .def(py::self == py::self);

    py::class_<PerVideoEval>(m, "PerVideoEval")
        .def_readonly("video_id", &PerVideoEval::video_id)
        .def_readonly("question_type", &PerVideoEval::question_type)
        .def_readonly("iou", &PerVideoEval::iou)
        .def_readonly("hit", &PerVideoEval::hit)
        .def_readonly("frames_scored", &PerVideoEval::frames_scored)
        .def_readonly("full_scan_frames", &PerVideoEval::full_scan_frames)
        .def_readonly("start_error", &PerVideoEval::start_error)
        .def_readonly("end_error", &PerVideoEval::end_error);

    py::class_<TypeAggregate>(m, "TypeAggregate")
        .def_readonly("count", &TypeAggregate::count)
        .def_readonly("mean_iou", &TypeAggregate::mean_iou)
        .def_readonly("hit_rate", &TypeAggregate::hit_rate);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("per_video", &EvalReport::per_video)
        .def_readonly("mean_iou", &EvalReport::mean_iou)
        .def_readonly("hit_rate", &EvalReport::hit_rate)
        .def_readonly("mean_frames_ratio", &EvalReport::mean_frames_ratio)
        .def_readonly("per_question_type", &EvalReport::per_question_type);

    m.def("evaluate_run", &evaluate_run, py::arg("outcomes"), py::arg("manifests"));

    py::class_<OracleGapCheck>(m, "OracleGapCheck")
        .def_readonly("video_id", &OracleGapCheck::video_id)
        .def_readonly("start_gap_ok", &OracleGapCheck::start_gap_ok)
        .def_readonly("end_gap_ok", &OracleGapCheck::end_gap_ok);

    m.def("compare_oracle", &compare_oracle, py::arg("outcomes"), py::arg("oracle_intervals"));

    // ---- files ----
    m.def("read_manifests_jsonl", &read_manifests_jsonl, py::arg("path"));
    m.def("write_manifests_jsonl", &write_manifests_jsonl, py::arg("path"), py::arg("manifests"));
    m.def("read_outcomes_jsonl", &read_outcomes_jsonl, py::arg("path"));
    m.def("write_outcomes_jsonl", &write_outcomes_jsonl, py::arg("path"), py::arg("outcomes"));
}
