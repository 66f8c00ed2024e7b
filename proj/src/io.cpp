#include "streamloc/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace streamloc {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// ---- JSON value mapping ----

void to_json(ordered_json& j, const FrameInterval& v) {
    j = ordered_json{{"start", v.start}, {"end", v.end}};
}

void from_json(const ordered_json& j, FrameInterval& v) {
    v.start = j.at("start").get<std::uint64_t>();
    v.end = j.at("end").get<std::uint64_t>();
    require_valid(v, "interval");
}

void to_json(ordered_json& j, const SourceClip& v) {
    j = ordered_json{{"clip_id", v.clip_id},
                     {"length_frames", v.length_frames},
                     {"kind", to_string(v.kind)}};
}

void from_json(const ordered_json& j, SourceClip& v) {
    v.clip_id = j.at("clip_id").get<std::string>();
    v.length_frames = j.at("length_frames").get<std::uint64_t>();
    v.kind = clip_kind_from_string(j.at("kind").get<std::string>());
    if (v.clip_id.empty()) throw FormatError("clip record with empty clip_id");
    if (v.length_frames == 0)
        throw FormatError("clip \"" + v.clip_id + "\" has zero length");
}

void to_json(ordered_json& j, const QuestionContext& v) {
    j = ordered_json{{"question_id", v.question_id},
                     {"question_text", v.question_text},
                     {"question_type", to_string(v.question_type)}};
    if (v.embedding) j["embedding"] = v.embedding->components;
}

void from_json(const ordered_json& j, QuestionContext& v) {
    v.question_id = j.at("question_id").get<std::string>();
    v.question_text = j.at("question_text").get<std::string>();
    v.question_type = question_type_from_string(j.at("question_type").get<std::string>());
    if (j.contains("embedding")) {
        EmbeddingVector e;
        e.components = j.at("embedding").get<std::vector<double>>();
        v.embedding = std::move(e);
    } else {
        v.embedding.reset();
    }
}

void to_json(ordered_json& j, const QAAnnotation& v) {
    j = ordered_json{{"question", v.question},
                     {"answer_label", v.answer_label},
                     {"answer_space_size", v.answer_space_size}};
}

void from_json(const ordered_json& j, QAAnnotation& v) {
    v.question = j.at("question").get<QuestionContext>();
    v.answer_label = j.at("answer_label").get<std::string>();
    v.answer_space_size = j.at("answer_space_size").get<std::uint64_t>();
}

void to_json(ordered_json& j, const CompositionManifest& v) {
    j = ordered_json{{"video_id", v.video_id},
                     {"background", v.background},
                     {"target", v.target},
                     {"insertion_index", v.insertion_index},
                     {"ground_truth", v.ground_truth},
                     {"total_length", v.total_length},
                     {"qa", v.qa},
                     {"split", to_string(v.split)}};
}

void from_json(const ordered_json& j, CompositionManifest& v) {
    v.video_id = j.at("video_id").get<std::string>();
    v.background = j.at("background").get<SourceClip>();
    v.target = j.at("target").get<SourceClip>();
    v.insertion_index = j.at("insertion_index").get<std::uint64_t>();
    v.ground_truth = j.at("ground_truth").get<FrameInterval>();
    v.total_length = j.at("total_length").get<std::uint64_t>();
    v.qa = j.at("qa").get<QAAnnotation>();
    v.split = split_from_string(j.at("split").get<std::string>());

    if (v.background.kind != ClipKind::background || v.target.kind != ClipKind::target)
        throw FormatError("manifest \"" + v.video_id + "\": clip kinds are swapped");
    if (v.insertion_index > v.background.length_frames)
        throw FormatError("manifest \"" + v.video_id + "\": insertion index past background end");
    const FrameInterval expect{v.insertion_index, v.insertion_index + v.target.length_frames};
    if (v.ground_truth != expect)
        throw FormatError("manifest \"" + v.video_id + "\": ground_truth does not match insertion");
    if (v.total_length != v.background.length_frames + v.target.length_frames)
        throw FormatError("manifest \"" + v.video_id + "\": total_length does not add up");
}

void to_json(ordered_json& j, const ConfidenceSample& v) {
    j = ordered_json{{"phase", to_string(v.phase)},
                     {"frame_index", v.frame},
                     {"confidence", v.confidence}};
}

void from_json(const ordered_json& j, ConfidenceSample& v) {
    v.phase = phase_from_string(j.at("phase").get<std::string>());
    v.frame = j.at("frame_index").get<std::uint64_t>();
    v.confidence = j.at("confidence").get<double>();
    if (!std::isfinite(v.confidence))
        throw FormatError("confidence sample with non-finite value");
}

void to_json(ordered_json& j, const OutcomeRecord& v) {
    j = ordered_json{{"video_id", v.video_id},
                     {"mode", to_string(v.outcome.mode)},
                     {"target", v.outcome.target},
                     {"trigger", v.outcome.trigger},
                     {"terminated_early", v.outcome.terminated_early},
                     {"backward_overshoot_gap", v.outcome.backward_overshoot_gap},
                     {"forward_overshoot_gap", v.outcome.forward_overshoot_gap},
                     {"frames_scored", v.outcome.trace.frames_scored()},
                     {"trace", v.outcome.trace.samples}};
}

void from_json(const ordered_json& j, OutcomeRecord& v) {
    v.video_id = j.at("video_id").get<std::string>();
    v.outcome.mode = locator_mode_from_string(j.at("mode").get<std::string>());
    v.outcome.target = j.at("target").get<FrameInterval>();
    v.outcome.trigger = j.at("trigger").get<std::uint64_t>();
    v.outcome.terminated_early = j.at("terminated_early").get<bool>();
    v.outcome.backward_overshoot_gap = j.at("backward_overshoot_gap").get<std::uint64_t>();
    v.outcome.forward_overshoot_gap = j.at("forward_overshoot_gap").get<std::uint64_t>();
    v.outcome.trace.samples = j.at("trace").get<std::vector<ConfidenceSample>>();
    const auto frames_scored = j.at("frames_scored").get<std::uint64_t>();
    if (frames_scored != v.outcome.trace.frames_scored())
        throw FormatError("outcome \"" + v.video_id + "\": frames_scored " +
                          std::to_string(frames_scored) + " != trace length " +
                          std::to_string(v.outcome.trace.frames_scored()));
}

namespace {

void type_aggregates_to_json(ordered_json& j,
                             const std::map<QuestionType, TypeAggregate>& per_type) {
    j = ordered_json::object();
    for (const auto& [type, agg] : per_type)
        j[to_string(type)] = ordered_json{
            {"count", agg.count}, {"mean_iou", agg.mean_iou}, {"hit_rate", agg.hit_rate}};
}

void per_video_to_json(ordered_json& j, const PerVideoEval& row) {
    j = ordered_json{{"video_id", row.video_id},
                     {"question_type", to_string(row.question_type)},
                     {"iou", row.iou},
                     {"hit", row.hit},
                     {"frames_scored", row.frames_scored},
                     {"full_scan_frames", row.full_scan_frames},
                     {"start_error", row.start_error},
                     {"end_error", row.end_error}};
}

PerVideoEval per_video_from_json(const ordered_json& j) {
    PerVideoEval row;
    row.video_id = j.at("video_id").get<std::string>();
    row.question_type = question_type_from_string(j.at("question_type").get<std::string>());
    row.iou = j.at("iou").get<double>();
    row.hit = j.at("hit").get<bool>();
    row.frames_scored = j.at("frames_scored").get<std::uint64_t>();
    row.full_scan_frames = j.at("full_scan_frames").get<std::uint64_t>();
    row.start_error = j.at("start_error").get<std::int64_t>();
    row.end_error = j.at("end_error").get<std::int64_t>();
    return row;
}

}  // namespace

void to_json(ordered_json& j, const EvalReport& v) {
    ordered_json per_type;
    type_aggregates_to_json(per_type, v.per_question_type);
    ordered_json rows = ordered_json::array();
    for (const auto& row : v.per_video) {
        ordered_json r;
        per_video_to_json(r, row);
        rows.push_back(std::move(r));
    }
    j = ordered_json{{"mean_iou", v.mean_iou},
                     {"hit_rate", v.hit_rate},
                     {"mean_frames_ratio", v.mean_frames_ratio},
                     {"per_question_type", std::move(per_type)},
                     {"per_video", std::move(rows)}};
}

void from_json(const ordered_json& j, EvalReport& v) {
    v.mean_iou = j.at("mean_iou").get<double>();
    v.hit_rate = j.at("hit_rate").get<double>();
    v.mean_frames_ratio = j.at("mean_frames_ratio").get<double>();
    v.per_question_type.clear();
    for (const auto& [key, val] : j.at("per_question_type").items()) {
        TypeAggregate agg;
        agg.count = val.at("count").get<std::uint64_t>();
        agg.mean_iou = val.at("mean_iou").get<double>();
        agg.hit_rate = val.at("hit_rate").get<double>();
        v.per_question_type[question_type_from_string(key)] = agg;
    }
    v.per_video.clear();
    for (const auto& row : j.at("per_video")) v.per_video.push_back(per_video_from_json(row));
}

void to_json(ordered_json& j, const SampleRecord& v) {
    j = ordered_json{{"video_id", v.video_id},
                     {"strategy", to_string(v.strategy)},
                     {"n", v.n},
                     {"frames", v.frames}};
}

void from_json(const ordered_json& j, SampleRecord& v) {
    v.video_id = j.at("video_id").get<std::string>();
    v.strategy = sample_strategy_from_string(j.at("strategy").get<std::string>());
    v.n = j.at("n").get<std::uint64_t>();
    v.frames = j.at("frames").get<std::vector<FrameIndex>>();
}

// ---- files ----

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FormatError("cannot create directory " + dir.string() + ": " + ec.message());

    const fs::path tmp =
        dir / (path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw FormatError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        fs::remove(tmp, ignore);
        throw FormatError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                          ec.message());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
    atomic_write_text(path, j.dump(2) + "\n");
}

ordered_json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

namespace {

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& rows) {
    std::string content;
    for (const T& row : rows) {
        const ordered_json j = row;
        content += j.dump();
        content += '\n';
    }
    atomic_write_text(path, content);
}

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::vector<T> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            rows.push_back(ordered_json::parse(line).get<T>());
        } catch (const std::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

}  // namespace

void write_manifests_jsonl(const std::filesystem::path& path,
                           const std::vector<CompositionManifest>& manifests) {
    write_jsonl(path, manifests);
}

std::vector<CompositionManifest> read_manifests_jsonl(const std::filesystem::path& path) {
    return read_jsonl<CompositionManifest>(path);
}

void write_clips_jsonl(const std::filesystem::path& path, const std::vector<SourceClip>& clips) {
    write_jsonl(path, clips);
}

std::vector<SourceClip> read_clips_jsonl(const std::filesystem::path& path) {
    return read_jsonl<SourceClip>(path);
}

void write_qa_pool_jsonl(const std::filesystem::path& path, const QAPool& pool) {
    std::string content;
    for (const auto& [clip_id, annotations] : pool) {
        for (const QAAnnotation& a : annotations) {
            const ordered_json j{{"clip_id", clip_id},
                                 {"question_text", a.question.question_text},
                                 {"question_type", to_string(a.question.question_type)},
                                 {"answer_label", a.answer_label}};
            content += j.dump();
            content += '\n';
        }
    }
    atomic_write_text(path, content);
}

QAPool read_qa_pool_jsonl(const std::filesystem::path& path, std::uint64_t answer_space_size) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    QAPool pool;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const ordered_json j = ordered_json::parse(line);
            const auto clip_id = j.at("clip_id").get<std::string>();
            if (clip_id.empty()) throw FormatError("empty clip_id");
            QAAnnotation a;
            a.question.question_text = j.at("question_text").get<std::string>();
            a.question.question_type =
                question_type_from_string(j.at("question_type").get<std::string>());
            a.answer_label = j.at("answer_label").get<std::string>();
            a.answer_space_size = answer_space_size;
            auto& list = pool[clip_id];
            a.question.question_id = "q-" + clip_id + "-" + std::to_string(list.size());
            list.push_back(std::move(a));
        } catch (const std::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return pool;
}

void write_outcomes_jsonl(const std::filesystem::path& path,
                          const std::vector<OutcomeRecord>& outcomes) {
    write_jsonl(path, outcomes);
}

std::vector<OutcomeRecord> read_outcomes_jsonl(const std::filesystem::path& path) {
    return read_jsonl<OutcomeRecord>(path);
}

void write_trace_csv(const std::filesystem::path& path, const ConfidenceTrace& trace) {
    std::string content = "phase,frame_index,confidence\n";
    for (const ConfidenceSample& s : trace.samples) {
        content += to_string(s.phase);
        content += ',';
        content += std::to_string(s.frame);
        content += ',';
        content += format_double(s.confidence);
        content += '\n';
    }
    atomic_write_text(path, content);
}

void write_trace_jsonl(const std::filesystem::path& path, const ConfidenceTrace& trace) {
    write_jsonl(path, trace.samples);
}

void write_report_csv(const std::filesystem::path& path, const EvalReport& report) {
    std::string content =
        "video_id,question_type,iou,hit,frames_scored,full_scan_frames,start_error,end_error\n";
    for (const PerVideoEval& row : report.per_video) {
        content += row.video_id;
        content += ',';
        content += to_string(row.question_type);
        content += ',';
        content += format_double(row.iou);
        content += ',';
        content += row.hit ? '1' : '0';
        content += ',';
        content += std::to_string(row.frames_scored);
        content += ',';
        content += std::to_string(row.full_scan_frames);
        content += ',';
        content += std::to_string(row.start_error);
        content += ',';
        content += std::to_string(row.end_error);
        content += '\n';
    }
    atomic_write_text(path, content);
}

ordered_json report_summary_json(const EvalReport& report) {
    ordered_json per_type;
    type_aggregates_to_json(per_type, report.per_question_type);
    return ordered_json{{"count", report.per_video.size()},
                        {"mean_iou", report.mean_iou},
                        {"hit_rate", report.hit_rate},
                        {"mean_frames_ratio", report.mean_frames_ratio},
                        {"per_question_type", std::move(per_type)}};
}

void write_samples_jsonl(const std::filesystem::path& path,
                         const std::vector<SampleRecord>& records) {
    write_jsonl(path, records);
}

std::vector<SampleRecord> read_samples_jsonl(const std::filesystem::path& path) {
    return read_jsonl<SampleRecord>(path);
}

void write_oracle_checks_csv(const std::filesystem::path& path,
                             const std::vector<OracleGapCheck>& checks) {
    std::string content = "video_id,start_gap_ok,end_gap_ok\n";
    for (const OracleGapCheck& c : checks) {
        content += c.video_id;
        content += ',';
        content += c.start_gap_ok ? '1' : '0';
        content += ',';
        content += c.end_gap_ok ? '1' : '0';
        content += '\n';
    }
    atomic_write_text(path, content);
}

void write_histogram_svg(const std::filesystem::path& path, const std::vector<double>& values,
                         std::size_t bins, double lo, double hi, const std::string& title) {
    if (bins == 0) throw ConfigError("write_histogram_svg: bins must be >= 1");
    if (!(hi > lo)) throw ConfigError("write_histogram_svg: hi must exceed lo");

    std::vector<std::uint64_t> counts(bins, 0);
    for (double v : values) {
        double t = (v - lo) / (hi - lo);
        if (t < 0.0) t = 0.0;
        if (t > 1.0) t = 1.0;
        auto idx = static_cast<std::size_t>(t * static_cast<double>(bins));
        if (idx >= bins) idx = bins - 1;
        ++counts[idx];
    }
    const std::uint64_t peak = *std::max_element(counts.begin(), counts.end());

    constexpr double width = 640.0, height = 400.0;
    constexpr double left = 50.0, right = 20.0, top = 40.0, bottom = 40.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
           "viewBox=\"0 0 640 400\">\n";
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";
    for (std::size_t i = 0; i < bins; ++i) {
        const double h =
            peak == 0 ? 0.0
                      : plot_h * static_cast<double>(counts[i]) / static_cast<double>(peak);
        const double x = left + plot_w * static_cast<double>(i) / static_cast<double>(bins);
        const double y = top + plot_h - h;
        svg += "<rect x=\"" + format_double(x) + "\" y=\"" + format_double(y) + "\" width=\"" +
               format_double(plot_w / static_cast<double>(bins)) + "\" height=\"" +
               format_double(h) + "\" fill=\"#4878a8\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
    svg += "<line x1=\"" + format_double(left) + "\" y1=\"" + format_double(top + plot_h) +
           "\" x2=\"" + format_double(left + plot_w) + "\" y2=\"" + format_double(top + plot_h) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + format_double(left) + "\" y=\"" + format_double(height - 16.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + format_double(lo) + "</text>\n";
    svg += "<text x=\"" + format_double(left + plot_w) + "\" y=\"" +
           format_double(height - 16.0) + "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + format_double(hi) + "</text>\n";
    svg += "<text x=\"" + format_double(left - 6.0) + "\" y=\"" + format_double(top + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           std::to_string(peak) + "</text>\n";
    svg += "</svg>\n";
    atomic_write_text(path, svg);
}

}  // namespace streamloc
