#include <doctest.h>

#include <chrono>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "streamloc/eval.hpp"
#include "streamloc/io.hpp"

using namespace streamloc;
using testutil::CommandResult;
using testutil::TempDir;
using testutil::run_command;

namespace {

const std::string kCli = STREAMLOC_CLI_PATH;
const std::string kStub = STREAMLOC_STUB_PATH;

std::string slurp(const std::filesystem::path& path) { return read_text_file(path); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compose is deterministic and splits by the flooring rule") {
    TempDir dir("cli-compose");
    const auto a = dir.path() / "a.jsonl";
    const auto b = dir.path() / "b.jsonl";

    const std::string base = kCli + " compose --synthetic-corpus 100 --seed 11 --out ";
    CHECK(run_command(base + a.string()).exit_code == 0);
    CHECK(run_command(base + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));

    const auto manifests = read_manifests_jsonl(a);
    REQUIRE(manifests.size() == 100);
    std::map<Split, int> counts;
    for (const auto& m : manifests) ++counts[m.split];
    CHECK(counts[Split::train] == 70);
    CHECK(counts[Split::val] == 10);
    CHECK(counts[Split::test] == 20);

    // another seed gives different content
    CHECK(run_command(kCli + " compose --synthetic-corpus 100 --seed 12 --out " + b.string())
              .exit_code == 0);
    CHECK(slurp(a) != slurp(b));
}

TEST_CASE("compose accepts explicit clip listings and rejects missing QA") {
    TempDir dir("cli-clips");
    const auto clips_path = dir.path() / "clips.jsonl";
    const auto qa_path = dir.path() / "qa.jsonl";
    const auto out_path = dir.path() / "manifests.jsonl";

    write_clips_jsonl(clips_path, {{"t0", 40, ClipKind::target},
                                   {"t1", 50, ClipKind::target},
                                   {"b0", 200, ClipKind::background},
                                   {"b1", 240, ClipKind::background}});
    {
        std::ofstream qa(qa_path);
        qa << R"({"clip_id":"t0","question_text":"what is shown?","question_type":"what","answer_label":"label_0001"})"
           << "\n";
        qa << R"({"clip_id":"t1","question_text":"who appears?","question_type":"who","answer_label":"label_0002"})"
           << "\n";
    }

    const CommandResult ok = run_command(kCli + " compose --clips " + clips_path.string() +
                                         " --qa-pool " + qa_path.string() + " --seed 4 --out " +
                                         out_path.string());
    CHECK(ok.exit_code == 0);
    const auto manifests = read_manifests_jsonl(out_path);
    REQUIRE(manifests.size() == 2);
    CHECK(manifests[0].qa.question.question_type == QuestionType::what);

    // drop one pool entry: data error
    {
        std::ofstream qa(qa_path);
        qa << R"({"clip_id":"t0","question_text":"what is shown?","question_type":"what","answer_label":"label_0001"})"
           << "\n";
    }
    const CommandResult missing = run_command(kCli + " compose --clips " + clips_path.string() +
                                              " --qa-pool " + qa_path.string() + " --seed 4 --out " +
                                              out_path.string());
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("MissingQA") != std::string::npos);
}

TEST_CASE("locate writes outcomes that join back to the manifests") {
    TempDir dir("cli-locate");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    const auto outcomes_path = dir.path() / "outcomes.jsonl";

    REQUIRE(run_command(kCli + " compose --synthetic-corpus 20 --seed 5 --out " +
                        manifests_path.string())
                .exit_code == 0);
    const CommandResult res = run_command(kCli + " locate --manifests " + manifests_path.string() +
                                          " --out " + outcomes_path.string() + " --seed 5");
    CHECK(res.exit_code == 0);

    const auto manifests = read_manifests_jsonl(manifests_path);
    const auto outcomes = read_outcomes_jsonl(outcomes_path);
    REQUIRE(outcomes.size() == 20);
    const EvalReport report = evaluate_run(outcomes, manifests);
    CHECK(report.hit_rate == 1.0);  // noiseless default corpus

    // determinism across runs and workers
    const auto again = dir.path() / "again.jsonl";
    REQUIRE(run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                        again.string() + " --seed 5 --workers 3")
                .exit_code == 0);
    CHECK(slurp(outcomes_path) == slurp(again));
}

TEST_CASE("locate honors the env seed and the flag wins over it") {
    TempDir dir("cli-seed");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 10 --seed 9 --out " +
                        manifests_path.string())
                .exit_code == 0);

    const auto with_flag = dir.path() / "flag.jsonl";
    const auto with_env = dir.path() / "env.jsonl";
    const auto with_both = dir.path() / "both.jsonl";
    const std::string locate = " locate --noise-std 0.05 --manifests " + manifests_path.string();

    REQUIRE(run_command(kCli + locate + " --seed 21 --out " + with_flag.string()).exit_code == 0);
    REQUIRE(run_command("STREAM_LOCATOR_SEED=21 " + kCli + locate + " --out " + with_env.string())
                .exit_code == 0);
    REQUIRE(run_command("STREAM_LOCATOR_SEED=77 " + kCli + locate + " --seed 21 --out " +
                        with_both.string())
                .exit_code == 0);
    CHECK(slurp(with_flag) == slurp(with_env));
    CHECK(slurp(with_flag) == slurp(with_both));
}

TEST_CASE("locate drives an external scorer to the same outcomes") {
    TempDir dir("cli-external");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 8 --seed 31 --out " +
                        manifests_path.string())
                .exit_code == 0);

    const auto internal = dir.path() / "internal.jsonl";
    const auto external = dir.path() / "external.jsonl";
    REQUIRE(run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                        internal.string() + " --seed 31 --noise-std 0.05")
                .exit_code == 0);
    const std::string cmd = kCli + " locate --manifests " + manifests_path.string() + " --out " +
                            external.string() + " --seed 31 --noise-std 0.05" +
                            " --scorer external --scorer-cmd '" + kStub +
                            " --mode synthetic --stream-length {stream_length}" +
                            " --plateau-start {gt_start} --plateau-end {gt_end}" +
                            " --noise-std 0.05 --noise-seed {noise_seed}'";
    const CommandResult res = run_command(cmd);
    CHECK(res.exit_code == 0);
    CHECK(slurp(internal) == slurp(external));
}

TEST_CASE("failing external scorer exits with the scorer code") {
    TempDir dir("cli-badscorer");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 3 --seed 2 --out " +
                        manifests_path.string())
                .exit_code == 0);
    const CommandResult res = run_command(
        kCli + " locate --manifests " + manifests_path.string() + " --out " +
        (dir.path() / "x.jsonl").string() + " --scorer external --scorer-cmd '" + kStub +
        " --mode garbage'");
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("ScorerProtocolError") != std::string::npos);
}

TEST_CASE("eval emits reports, plots, and the oracle check") {
    TempDir dir("cli-eval");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    const auto outcomes_path = dir.path() / "outcomes.jsonl";
    const auto eval_dir = dir.path() / "eval";

    REQUIRE(run_command(kCli + " compose --synthetic-corpus 25 --seed 6 --out " +
                        manifests_path.string())
                .exit_code == 0);
    REQUIRE(run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                        outcomes_path.string() + " --seed 6")
                .exit_code == 0);
    const CommandResult res =
        run_command(kCli + " eval --manifests " + manifests_path.string() + " --outcomes " +
                    outcomes_path.string() + " --out-dir " + eval_dir.string() +
                    " --plots --oracle-check --seed 6");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("oracle_violations=0") != std::string::npos);

    const std::string csv = slurp(eval_dir / "report.csv");
    CHECK(csv.rfind("video_id,question_type,iou,hit,frames_scored,full_scan_frames,start_error,end_error\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);  // header + 25 rows

    const ordered_json summary = read_json_file(eval_dir / "summary.json");
    CHECK(summary.at("count").get<std::uint64_t>() == 25);
    CHECK(summary.at("hit_rate").get<double>() == 1.0);
    CHECK(summary.at("oracle_violations").get<std::uint64_t>() == 0);
    CHECK(summary.at("per_question_type").size() == 5);

    for (const char* name : {"plots/iou_hist.svg", "plots/frames_ratio_hist.svg"}) {
        const std::string svg = slurp(eval_dir / name);
        CHECK(svg.rfind("<svg", 0) == 0);
    }
    CHECK(slurp(eval_dir / "oracle_check.csv").rfind("video_id,start_gap_ok,end_gap_ok\n", 0) == 0);

    // byte-identical on rerun
    const auto eval_dir2 = dir.path() / "eval2";
    REQUIRE(run_command(kCli + " eval --manifests " + manifests_path.string() + " --outcomes " +
                        outcomes_path.string() + " --out-dir " + eval_dir2.string() +
                        " --plots --oracle-check --seed 6")
                .exit_code == 0);
    CHECK(slurp(eval_dir / "report.csv") == slurp(eval_dir2 / "report.csv"));
    CHECK(slurp(eval_dir / "summary.json") == slurp(eval_dir2 / "summary.json"));
}

TEST_CASE("locate can spill per-video traces") {
    TempDir dir("cli-traces");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    const auto trace_dir = dir.path() / "traces";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 4 --seed 13 --out " +
                        manifests_path.string())
                .exit_code == 0);
    REQUIRE(run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                        (dir.path() / "o.jsonl").string() + " --seed 13 --trace-dir " +
                        trace_dir.string())
                .exit_code == 0);
    const std::string csv = slurp(trace_dir / "atbs-00000.trace.csv");
    CHECK(csv.rfind("phase,frame_index,confidence\n", 0) == 0);
    CHECK(slurp(trace_dir / "atbs-00003.trace.jsonl").find("\"phase\"") != std::string::npos);
}

TEST_CASE("sample prints pinned one-off frames and writes records per outcome") {
    const CommandResult oneoff =
        run_command(kCli + " sample --start 0 --end 21 --n 6 --strategy fibonacci");
    CHECK(oneoff.exit_code == 0);
    CHECK(oneoff.output == "8 13 16 18 19 20\n");

    TempDir dir("cli-sample");
    const auto manifests_path = dir.path() / "manifests.jsonl";
    const auto outcomes_path = dir.path() / "outcomes.jsonl";
    const auto samples_path = dir.path() / "samples.jsonl";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 6 --seed 3 --out " +
                        manifests_path.string())
                .exit_code == 0);
    REQUIRE(run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                        outcomes_path.string() + " --seed 3")
                .exit_code == 0);
    REQUIRE(run_command(kCli + " sample --outcomes " + outcomes_path.string() + " --out " +
                        samples_path.string() + " --n 4 --seed 3")
                .exit_code == 0);

    const auto records = read_samples_jsonl(samples_path);
    const auto outcomes = read_outcomes_jsonl(outcomes_path);
    REQUIRE(records.size() == outcomes.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].video_id == outcomes[i].video_id);
        CHECK(records[i].frames.size() <= 4);
        for (const auto f : records[i].frames) CHECK(outcomes[i].outcome.target.contains(f));
    }
}

TEST_CASE("demo chains the full pipeline quickly and deterministically") {
    TempDir dir("cli-demo");
    const auto d1 = dir.path() / "run1";
    const auto d2 = dir.path() / "run2";

    const auto begin = std::chrono::steady_clock::now();
    const CommandResult res =
        run_command(kCli + " demo --seed 123 --out-dir " + d1.string());
    const auto elapsed = std::chrono::steady_clock::now() - begin;
    CHECK(res.exit_code == 0);
    CHECK(elapsed < std::chrono::seconds(10));

    for (const char* name :
         {"manifests.jsonl", "outcomes.jsonl", "compose_summary.json", "locate_summary.json",
          "samples.jsonl", "eval/report.csv", "eval/report.json", "eval/summary.json",
          "eval/oracle_check.csv", "eval/plots/iou_hist.svg", "eval/plots/frames_ratio_hist.svg"}) {
        CHECK_MESSAGE(std::filesystem::exists(d1 / name), name);
    }

    const ordered_json summary = read_json_file(d1 / "eval" / "summary.json");
    CHECK(summary.at("count").get<std::uint64_t>() == 50);
    CHECK(summary.at("hit_rate").get<double>() == 1.0);
    CHECK(summary.at("oracle_violations").get<std::uint64_t>() == 0);

    REQUIRE(run_command(kCli + " demo --seed 123 --out-dir " + d2.string()).exit_code == 0);
    for (const char* name : {"manifests.jsonl", "outcomes.jsonl", "eval/report.csv",
                             "eval/summary.json", "samples.jsonl"})
        CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("exit codes separate usage, data, and scorer failures") {
    CHECK(run_command(kCli).exit_code == 1);
    CHECK(run_command(kCli + " --help").exit_code == 0);
    CHECK(run_command(kCli + " --bogus-flag").exit_code == 1);
    CHECK(run_command(kCli + " locate --out x.jsonl").exit_code == 1);  // missing required flag

    TempDir dir("cli-exit");
    const CommandResult missing =
        run_command(kCli + " locate --manifests " + (dir.path() / "absent.jsonl").string() +
                    " --out " + (dir.path() / "o.jsonl").string());
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error:") != std::string::npos);

    // malformed manifest line: data error with line number
    const auto bad = dir.path() / "bad.jsonl";
    {
        std::ofstream out(bad);
        out << "{\"video_id\": 7}\n";
    }
    const CommandResult malformed = run_command(
        kCli + " locate --manifests " + bad.string() + " --out " + (dir.path() / "o.jsonl").string());
    CHECK(malformed.exit_code == 2);
    CHECK(malformed.output.find(":1") != std::string::npos);

    // invalid threshold pair: usage error
    TempDir dir2("cli-exit2");
    const auto manifests_path = dir2.path() / "m.jsonl";
    REQUIRE(run_command(kCli + " compose --synthetic-corpus 2 --seed 1 --out " +
                        manifests_path.string())
                .exit_code == 0);
    const CommandResult badcfg =
        run_command(kCli + " locate --manifests " + manifests_path.string() + " --out " +
                    (dir2.path() / "o.jsonl").string() + " --c-max 0.2 --c-min 0.3");
    CHECK(badcfg.exit_code == 1);
    CHECK(badcfg.output.find("ConfigError") != std::string::npos);
}

}  // TEST_SUITE
