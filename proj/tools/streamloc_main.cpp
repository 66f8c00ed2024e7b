// streamloc CLI: compose synthetic corpora, run the online locator over them,
// evaluate runs against ground truth, and sample frames from located targets.
// Exit codes: 0 success, 1 usage/config, 2 data error, 3 scorer failure.

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "streamloc/composer.hpp"
#include "streamloc/eval.hpp"
#include "streamloc/external_scorer.hpp"
#include "streamloc/io.hpp"
#include "streamloc/locator.hpp"
#include "streamloc/rng.hpp"
#include "streamloc/sampler.hpp"

namespace fs = std::filesystem;
using namespace streamloc;

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::vector<std::string> split_whitespace(const std::string& s) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
    unsigned w = requested != 0 ? requested : std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    if (jobs < w) w = static_cast<unsigned>(jobs);
    return w == 0 ? 1 : w;
}

bool is_scorer_failure(const std::string& name) {
    return name == "ScorerProtocolError" || name == "ScorerTimeout";
}

// ---- compose ----

struct ComposeOpts {
    std::string out_path;
    std::string summary_path;
    std::uint64_t synthetic_count = 0;
    std::string clips_path;
    std::string qa_pool_path;
    double scan_rate = 4.0;
    std::uint64_t answer_space = 1290;
    double train = 0.7, val = 0.1, test = 0.2;
};

void run_compose(const ComposeOpts& o, std::uint64_t seed) {
    if (o.synthetic_count > 0 && !o.clips_path.empty())
        throw ConfigError("compose: pass either --synthetic-corpus or --clips, not both");
    if (o.synthetic_count == 0 && o.clips_path.empty())
        throw ConfigError("compose: one of --synthetic-corpus or --clips is required");

    std::vector<SourceClip> targets;
    std::vector<SourceClip> backgrounds;
    QAPool pool;
    if (o.synthetic_count > 0) {
        SyntheticCorpusParams params;
        params.count = o.synthetic_count;
        params.scan_rate_fps = o.scan_rate;
        params.answer_space_size = o.answer_space;
        SyntheticCorpus corpus = make_synthetic_clips(params, derive_seed(seed, 1));
        targets = std::move(corpus.targets);
        backgrounds = std::move(corpus.backgrounds);
        pool = std::move(corpus.qa_pool);
    } else {
        for (SourceClip& clip : read_clips_jsonl(o.clips_path)) {
            (clip.kind == ClipKind::target ? targets : backgrounds).push_back(std::move(clip));
        }
        if (!o.qa_pool_path.empty())
            pool = read_qa_pool_jsonl(o.qa_pool_path, o.answer_space);
    }

    std::vector<CompositionManifest> manifests =
        compose(targets, backgrounds, pool, derive_seed(seed, 2));
    assign_splits(manifests, SplitRatios{o.train, o.val, o.test}, derive_seed(seed, 3));
    write_manifests_jsonl(o.out_path, manifests);

    std::uint64_t split_counts[3] = {0, 0, 0};
    std::map<QuestionType, std::uint64_t> type_counts;
    for (QuestionType t : kQuestionTypes) type_counts[t] = 0;
    double min_s = 0.0, max_s = 0.0, sum_s = 0.0;
    for (std::size_t i = 0; i < manifests.size(); ++i) {
        const CompositionManifest& m = manifests[i];
        ++split_counts[static_cast<int>(m.split)];
        ++type_counts[m.qa.question.question_type];
        const double seconds = static_cast<double>(m.total_length) / o.scan_rate;
        if (i == 0 || seconds < min_s) min_s = seconds;
        if (i == 0 || seconds > max_s) max_s = seconds;
        sum_s += seconds;
    }
    ordered_json type_counts_json;
    for (const auto& [type, count] : type_counts) type_counts_json[to_string(type)] = count;

    const ordered_json summary{
        {"count", manifests.size()},
        {"seed", seed},
        {"scan_rate_fps", o.scan_rate},
        {"split_sizes",
         ordered_json{{"train", split_counts[0]}, {"val", split_counts[1]},
                      {"test", split_counts[2]}}},
        {"duration_seconds",
         ordered_json{{"min", min_s},
                      {"mean", manifests.empty() ? 0.0 : sum_s / static_cast<double>(manifests.size())},
                      {"max", max_s}}},
        {"question_type_counts", type_counts_json},
        {"answer_space_size", o.answer_space}};
    const std::string summary_path =
        o.summary_path.empty() ? o.out_path + ".summary.json" : o.summary_path;
    write_json_file(summary_path, summary);

    std::cout << "compose: wrote " << manifests.size() << " manifests to " << o.out_path << "\n";
}

// ---- locate ----

struct LocateOpts {
    std::string manifests_path;
    std::string out_path;
    std::string summary_path;
    std::string trace_dir;
    std::string scorer = "synthetic";
    double baseline = 0.1;
    double plateau = 0.6;
    double noise_std = 0.0;
    std::string embeddings_dir;
    std::string scorer_cmd;
    std::uint64_t scorer_timeout_ms = 30000;
    HysteresisConfig config;
    unsigned workers = 0;
};

std::vector<std::string> scorer_argv_for(const LocateOpts& o, const CompositionManifest& m,
                                         std::uint64_t noise_seed) {
    std::vector<std::string> argv = split_whitespace(o.scorer_cmd);
    if (argv.empty()) throw ConfigError("locate: --scorer-cmd is empty");
    for (std::string& token : argv) {
        replace_all(token, "{video_id}", m.video_id);
        replace_all(token, "{question}", m.qa.question.question_text);
        replace_all(token, "{stream_length}", std::to_string(m.total_length));
        replace_all(token, "{gt_start}", std::to_string(m.ground_truth.start));
        replace_all(token, "{gt_end}", std::to_string(m.ground_truth.end));
        replace_all(token, "{noise_seed}", std::to_string(noise_seed));
    }
    return argv;
}

struct LocateFailure {
    std::string video_id;
    std::string error;
    std::string message;
};

void run_locate(const LocateOpts& o, std::uint64_t seed) {
    o.config.validate();
    if (o.scorer == "embedding" && o.embeddings_dir.empty())
        throw ConfigError("locate: --scorer embedding requires --embeddings-dir");
    if (o.scorer == "external" && o.scorer_cmd.empty())
        throw ConfigError("locate: --scorer external requires --scorer-cmd");

    const std::vector<CompositionManifest> manifests = read_manifests_jsonl(o.manifests_path);
    const std::size_t n = manifests.size();

    struct Slot {
        std::optional<OutcomeRecord> record;
        std::optional<LocateFailure> failure;
    };
    std::vector<Slot> slots(n);
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> fatal{false};
    std::exception_ptr fatal_error;
    std::mutex fatal_mu;

    const auto run_one = [&](std::size_t i) -> OutcomeRecord {
        const CompositionManifest& m = manifests[i];
        const std::uint64_t noise_seed = derive_seed(seed, i);
        std::unique_ptr<FrameScorer> scorer;
        if (o.scorer == "synthetic") {
            scorer = std::make_unique<SyntheticScorer>(
                synth_profile_for(m, o.baseline, o.plateau, o.noise_std, noise_seed));
        } else if (o.scorer == "embedding") {
            const fs::path dir = o.embeddings_dir;
            scorer = std::make_unique<EmbeddingFileScorer>(dir / (m.video_id + ".question.txt"),
                                                           dir / (m.video_id + ".frames.txt"));
        } else {
            scorer = std::make_unique<ExternalScorer>(
                scorer_argv_for(o, m, noise_seed), m.qa.question.question_text,
                std::chrono::milliseconds(o.scorer_timeout_ms));
        }
        LocatorOutcome outcome =
            o.config.fallback == FallbackRule::none
                ? locate_online(*scorer, o.config, m.total_length)
                : locate_with_fallback(*scorer, o.config, m.total_length);
        return OutcomeRecord{m.video_id, std::move(outcome)};
    };

    const auto worker = [&] {
        for (;;) {
            if (fatal.load(std::memory_order_relaxed)) return;
            const std::size_t i = cursor.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i].record = run_one(i);
            } catch (const Error& e) {
                if (is_scorer_failure(e.name())) {
                    // A broken scorer backend poisons the whole run; stop
                    // instead of generating one failure row per video.
                    const std::lock_guard<std::mutex> lock(fatal_mu);
                    if (!fatal_error) fatal_error = std::current_exception();
                    fatal.store(true);
                    return;
                }
                slots[i].failure = LocateFailure{manifests[i].video_id, e.name(), e.what()};
            } catch (const std::exception& e) {
                slots[i].failure = LocateFailure{manifests[i].video_id, "Error", e.what()};
            }
        }
    };

    const unsigned workers = resolve_workers(o.workers, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (fatal_error) std::rethrow_exception(fatal_error);

    std::vector<OutcomeRecord> outcomes;
    std::vector<LocateFailure> failures;
    std::uint64_t frames_scored_sum = 0;
    for (Slot& slot : slots) {
        if (slot.record) {
            frames_scored_sum += slot.record->outcome.trace.frames_scored();
            outcomes.push_back(std::move(*slot.record));
        } else if (slot.failure) {
            failures.push_back(std::move(*slot.failure));
        }
    }

    write_outcomes_jsonl(o.out_path, outcomes);
    if (!o.trace_dir.empty()) {
        for (const OutcomeRecord& rec : outcomes) {
            write_trace_csv(fs::path(o.trace_dir) / (rec.video_id + ".trace.csv"),
                            rec.outcome.trace);
            write_trace_jsonl(fs::path(o.trace_dir) / (rec.video_id + ".trace.jsonl"),
                              rec.outcome.trace);
        }
    }

    ordered_json failures_json = ordered_json::array();
    for (const LocateFailure& f : failures)
        failures_json.push_back(ordered_json{
            {"video_id", f.video_id}, {"error", f.error}, {"message", f.message}});
    const ordered_json summary{
        {"videos", n},
        {"succeeded", outcomes.size()},
        {"failed", failures.size()},
        {"mean_frames_scored",
         outcomes.empty() ? 0.0
                          : static_cast<double>(frames_scored_sum) /
                                static_cast<double>(outcomes.size())},
        {"config",
         ordered_json{{"scorer", o.scorer},
                      {"c_max", o.config.c_max},
                      {"c_min", o.config.c_min},
                      {"scan_rate_fps", o.config.scan_rate_fps},
                      {"forward_mode", to_string(o.config.forward_mode)},
                      {"fixed_extent_gaps", o.config.fixed_extent_gaps},
                      {"fallback", to_string(o.config.fallback)},
                      {"fallback_delta", o.config.fallback_delta},
                      {"seed", seed}}},
        {"failures", std::move(failures_json)}};
    const std::string summary_path =
        o.summary_path.empty() ? o.out_path + ".summary.json" : o.summary_path;
    write_json_file(summary_path, summary);

    std::cout << "locate: " << outcomes.size() << "/" << n << " videos succeeded, outcomes in "
              << o.out_path << "\n";

    if (outcomes.empty() && n > 0) {
        // Nothing worked; surface the first per-video error as the run's error.
        const LocateFailure& f = failures.front();
        throw Error(f.error, f.video_id + ": " + f.message);
    }
}

// ---- eval ----

struct EvalOpts {
    std::string manifests_path;
    std::string outcomes_path;
    std::string out_dir;
    bool plots = false;
    bool oracle_check = false;
    double baseline = 0.1;
    double plateau = 0.6;
    double noise_std = 0.0;
    HysteresisConfig config;
};

void run_eval(const EvalOpts& o, std::uint64_t seed) {
    const std::vector<CompositionManifest> manifests = read_manifests_jsonl(o.manifests_path);
    const std::vector<OutcomeRecord> outcomes = read_outcomes_jsonl(o.outcomes_path);

    const EvalReport report = evaluate_run(outcomes, manifests);
    const fs::path dir = o.out_dir;
    write_report_csv(dir / "report.csv", report);
    write_json_file(dir / "report.json", ordered_json(report));

    ordered_json summary = report_summary_json(report);

    if (o.oracle_check) {
        o.config.validate();
        std::map<std::string, std::size_t> index_of;
        for (std::size_t i = 0; i < manifests.size(); ++i) index_of[manifests[i].video_id] = i;
        std::vector<std::pair<std::string, FrameInterval>> oracle_intervals;
        oracle_intervals.reserve(outcomes.size());
        for (const OutcomeRecord& rec : outcomes) {
            const std::size_t i = index_of.at(rec.video_id);  // join validated by evaluate_run
            SyntheticScorer scorer(synth_profile_for(manifests[i], o.baseline, o.plateau,
                                                     o.noise_std, derive_seed(seed, i)));
            oracle_intervals.emplace_back(
                rec.video_id, linear_scan_oracle(scorer, o.config, manifests[i].total_length));
        }
        const std::vector<OracleGapCheck> checks = compare_oracle(outcomes, oracle_intervals);
        write_oracle_checks_csv(dir / "oracle_check.csv", checks);
        std::uint64_t violations = 0;
        for (const OracleGapCheck& c : checks)
            if (!c.start_gap_ok || !c.end_gap_ok) ++violations;
        summary["oracle_violations"] = violations;
    }

    write_json_file(dir / "summary.json", summary);

    if (o.plots) {
        std::vector<double> ious, ratios;
        ious.reserve(report.per_video.size());
        ratios.reserve(report.per_video.size());
        for (const PerVideoEval& row : report.per_video) {
            ious.push_back(row.iou);
            ratios.push_back(static_cast<double>(row.frames_scored) /
                             static_cast<double>(row.full_scan_frames));
        }
        write_histogram_svg(dir / "plots" / "iou_hist.svg", ious, 20, 0.0, 1.0,
                            "temporal IoU per video");
        write_histogram_svg(dir / "plots" / "frames_ratio_hist.svg", ratios, 25, 0.0, 2.5,
                            "frames scored / full scan");
    }

    std::cout << "eval: n=" << report.per_video.size() << " mean_iou="
              << format_double(report.mean_iou) << " hit_rate=" << format_double(report.hit_rate)
              << " mean_frames_ratio=" << format_double(report.mean_frames_ratio);
    if (summary.contains("oracle_violations"))
        std::cout << " oracle_violations=" << summary["oracle_violations"].get<std::uint64_t>();
    std::cout << "\n";
}

// ---- sample ----

struct SampleOpts {
    std::string outcomes_path;
    std::string out_path;
    std::uint64_t n = 4;
    std::string strategy = "fibonacci";
    std::int64_t start = -1;
    std::int64_t end = -1;
};

void run_sample(const SampleOpts& o, std::uint64_t seed) {
    const SampleStrategy strategy = sample_strategy_from_string(o.strategy);

    if (o.outcomes_path.empty()) {
        if (o.start < 0 || o.end < 0)
            throw ConfigError("sample: pass --outcomes, or both --start and --end");
        const SamplePlan plan{{static_cast<FrameIndex>(o.start), static_cast<FrameIndex>(o.end)},
                              o.n, strategy, seed};
        const std::vector<FrameIndex> frames = run_sample_plan(plan);
        for (std::size_t i = 0; i < frames.size(); ++i)
            std::cout << (i ? " " : "") << frames[i];
        std::cout << "\n";
        return;
    }

    if (o.out_path.empty()) throw ConfigError("sample: --outcomes requires --out");
    const std::vector<OutcomeRecord> outcomes = read_outcomes_jsonl(o.outcomes_path);
    std::vector<SampleRecord> records;
    records.reserve(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const SamplePlan plan{outcomes[i].outcome.target, o.n, strategy, derive_seed(seed, i)};
        records.push_back(
            SampleRecord{outcomes[i].video_id, strategy, o.n, run_sample_plan(plan)});
    }
    write_samples_jsonl(o.out_path, records);
    std::cout << "sample: wrote " << records.size() << " records to " << o.out_path << "\n";
}

// ---- demo ----

void run_demo(const std::string& out_dir, std::uint64_t count, unsigned workers,
              std::uint64_t seed) {
    const fs::path dir = out_dir;

    ComposeOpts co;
    co.out_path = (dir / "manifests.jsonl").string();
    co.summary_path = (dir / "compose_summary.json").string();
    co.synthetic_count = count;
    run_compose(co, seed);

    LocateOpts lo;
    lo.manifests_path = co.out_path;
    lo.out_path = (dir / "outcomes.jsonl").string();
    lo.summary_path = (dir / "locate_summary.json").string();
    lo.workers = workers;
    run_locate(lo, seed);

    EvalOpts eo;
    eo.manifests_path = co.out_path;
    eo.outcomes_path = lo.out_path;
    eo.out_dir = (dir / "eval").string();
    eo.plots = true;
    eo.oracle_check = true;
    run_eval(eo, seed);

    SampleOpts so;
    so.outcomes_path = lo.out_path;
    so.out_path = (dir / "samples.jsonl").string();
    run_sample(so, seed);

    std::cout << "demo: artifacts in " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streamloc: online target-event localization over streaming confidence"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "global RNG seed")->envname("STREAM_LOCATOR_SEED");

    // compose
    auto* compose_cmd = app.add_subcommand("compose", "build composition manifests");
    ComposeOpts co;
    compose_cmd->add_option("--out", co.out_path, "manifests JSONL path")->required();
    compose_cmd->add_option("--summary", co.summary_path, "summary JSON path");
    compose_cmd->add_option("--synthetic-corpus", co.synthetic_count,
                            "generate this many synthetic clip pairs");
    compose_cmd->add_option("--clips", co.clips_path, "clip listing JSONL");
    compose_cmd->add_option("--qa-pool", co.qa_pool_path, "QA pool JSONL");
    compose_cmd->add_option("--scan-rate", co.scan_rate, "frames per second");
    compose_cmd->add_option("--answer-space", co.answer_space, "answer vocabulary size");
    compose_cmd->add_option("--train", co.train, "train split ratio");
    compose_cmd->add_option("--val", co.val, "val split ratio");
    compose_cmd->add_option("--test", co.test, "test split ratio");

    // locate
    auto* locate_cmd = app.add_subcommand("locate", "run the online locator per manifest");
    LocateOpts lo;
    locate_cmd->add_option("--manifests", lo.manifests_path)->required();
    locate_cmd->add_option("--out", lo.out_path, "outcomes JSONL path")->required();
    locate_cmd->add_option("--summary", lo.summary_path);
    locate_cmd->add_option("--trace-dir", lo.trace_dir, "write per-video trace CSV/JSONL here");
    locate_cmd->add_option("--scorer", lo.scorer, "synthetic|embedding|external")
        ->check(CLI::IsMember({"synthetic", "embedding", "external"}));
    locate_cmd->add_option("--baseline", lo.baseline, "synthetic baseline mean");
    locate_cmd->add_option("--plateau", lo.plateau, "synthetic plateau mean");
    locate_cmd->add_option("--noise-std", lo.noise_std, "synthetic noise stddev");
    locate_cmd->add_option("--embeddings-dir", lo.embeddings_dir,
                           "directory with <video_id>.question.txt / <video_id>.frames.txt");
    locate_cmd->add_option("--scorer-cmd", lo.scorer_cmd,
                           "external scorer command; {video_id} {question} {stream_length} "
                           "{gt_start} {gt_end} {noise_seed} are substituted");
    locate_cmd->add_option("--scorer-timeout-ms", lo.scorer_timeout_ms);
    locate_cmd->add_option("--c-max", lo.config.c_max, "entry threshold");
    locate_cmd->add_option("--c-min", lo.config.c_min, "exit threshold");
    locate_cmd->add_option("--scan-rate", lo.config.scan_rate_fps);
    std::string forward_mode = "until_below_min";
    locate_cmd->add_option("--forward-mode", forward_mode)
        ->check(CLI::IsMember({"until_below_min", "fixed_extent"}));
    locate_cmd->add_option("--forward-extent", lo.config.fixed_extent_gaps,
                           "Fibonacci steps claimed in fixed_extent mode");
    std::string fallback = "none";
    locate_cmd->add_option("--fallback", fallback)
        ->check(CLI::IsMember({"none", "two_pass_max_rule"}));
    locate_cmd->add_option("--fallback-delta", lo.config.fallback_delta);
    locate_cmd->add_option("--workers", lo.workers, "worker threads (0 = hardware)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score a locate run against its manifests");
    EvalOpts eo;
    eval_cmd->add_option("--manifests", eo.manifests_path)->required();
    eval_cmd->add_option("--outcomes", eo.outcomes_path)->required();
    eval_cmd->add_option("--out-dir", eo.out_dir)->required();
    eval_cmd->add_flag("--plots", eo.plots, "write SVG histograms");
    eval_cmd->add_flag("--oracle-check", eo.oracle_check,
                       "re-derive targets by linear scan (synthetic scorer) and compare");
    eval_cmd->add_option("--baseline", eo.baseline);
    eval_cmd->add_option("--plateau", eo.plateau);
    eval_cmd->add_option("--noise-std", eo.noise_std);
    eval_cmd->add_option("--c-max", eo.config.c_max);
    eval_cmd->add_option("--c-min", eo.config.c_min);
    std::string eval_fallback = "none";
    eval_cmd->add_option("--fallback", eval_fallback)
        ->check(CLI::IsMember({"none", "two_pass_max_rule"}));
    eval_cmd->add_option("--fallback-delta", eo.config.fallback_delta);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "sample frames from located targets");
    SampleOpts so;
    sample_cmd->add_option("--outcomes", so.outcomes_path);
    sample_cmd->add_option("--out", so.out_path, "samples JSONL path");
    sample_cmd->add_option("--n", so.n, "frames per target");
    sample_cmd->add_option("--strategy", so.strategy)
        ->check(CLI::IsMember({"fibonacci", "uniform_random"}));
    sample_cmd->add_option("--start", so.start, "one-off interval start");
    sample_cmd->add_option("--end", so.end, "one-off interval end (exclusive)");

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "compose + locate + eval + sample end to end");
    std::string demo_dir = "streamloc-demo";
    std::uint64_t demo_count = 50;
    unsigned demo_workers = 0;
    demo_cmd->add_option("--out-dir", demo_dir);
    demo_cmd->add_option("--count", demo_count, "synthetic corpus size");
    demo_cmd->add_option("--workers", demo_workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*compose_cmd) {
            run_compose(co, seed);
        } else if (*locate_cmd) {
            lo.config.forward_mode = forward_mode_from_string(forward_mode);
            lo.config.fallback = fallback_rule_from_string(fallback);
            lo.config.rng_seed = seed;
            run_locate(lo, seed);
        } else if (*eval_cmd) {
            eo.config.fallback = fallback_rule_from_string(eval_fallback);
            run_eval(eo, seed);
        } else if (*sample_cmd) {
            run_sample(so, seed);
        } else if (*demo_cmd) {
            run_demo(demo_dir, demo_count, demo_workers, seed);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        if (is_scorer_failure(e.name())) return 3;
        if (e.name() == "ConfigError") return 1;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
