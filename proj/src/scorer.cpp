#include "streamloc/scorer.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "streamloc/rng.hpp"

namespace streamloc {

QuestionType question_type_from_string(const std::string& s) {
    for (QuestionType t : kQuestionTypes)
        if (s == to_string(t)) return t;
    throw FormatError("unknown question type \"" + s + "\"");
}

void SyntheticProfile::validate() const {
    if (stream_length == 0) throw ConfigError("synthetic profile: stream_length must be >= 1");
    require_valid(plateau_interval, "synthetic profile");
    if (plateau_interval.end > stream_length)
        throw ConfigError("synthetic profile: plateau extends past the stream");
    if (!std::isfinite(baseline_mean) || !std::isfinite(plateau_mean))
        throw ConfigError("synthetic profile: level means must be finite");
    if (!(plateau_mean > baseline_mean))
        throw ConfigError("synthetic profile: plateau_mean must exceed baseline_mean");
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std))
        throw ConfigError("synthetic profile: noise_std must be >= 0");
}

EmbeddingVector normalize(const EmbeddingVector& v) {
    if (v.dim() == 0) throw ZeroNorm("normalize: empty embedding");
    double sum_sq = 0.0;
    for (double c : v.components) sum_sq += c * c;
    const double norm = std::sqrt(sum_sq);
    if (!std::isfinite(norm) || !(norm > 0.0))
        throw ZeroNorm("normalize: embedding norm is zero or not finite");
    EmbeddingVector out;
    out.components.reserve(v.dim());
    for (double c : v.components) out.components.push_back(c / norm);
    return out;
}

double confidence(const EmbeddingVector& question, const EmbeddingVector& frame) {
    if (question.dim() != frame.dim())
        throw DimMismatch("confidence: question dim " + std::to_string(question.dim()) +
                          " vs frame dim " + std::to_string(frame.dim()));
    const EmbeddingVector q = normalize(question);
    const EmbeddingVector f = normalize(frame);
    double dot = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) dot += q.components[i] * f.components[i];
    return std::clamp(dot, -1.0, 1.0);
}

double synthetic_score(const SyntheticProfile& profile, FrameIndex frame) {
    profile.validate();
    if (frame >= profile.stream_length)
        throw OutOfRange("synthetic_score: frame " + std::to_string(frame) +
                         " >= stream length " + std::to_string(profile.stream_length));
    double value = profile.plateau_interval.contains(frame) ? profile.plateau_mean
                                                            : profile.baseline_mean;
    if (profile.noise_std > 0.0) {
        Rng noise(derive_seed(profile.noise_seed, frame));
        value += profile.noise_std * noise.normal();
    }
    return std::clamp(value, -1.0, 1.0);
}

SyntheticScorer::SyntheticScorer(SyntheticProfile profile) : profile_(std::move(profile)) {
    profile_.validate();
}

EmbeddingFileScorer::EmbeddingFileScorer(const std::filesystem::path& question_file,
                                         const std::filesystem::path& frames_file)
    : question_(read_question_embedding(question_file)),
      frames_(read_frame_embeddings(frames_file)) {
    if (!frames_.empty() && frames_[0].dim() != question_.dim())
        throw DimMismatch("embedding scorer: question dim " + std::to_string(question_.dim()) +
                          " vs frame dim " + std::to_string(frames_[0].dim()));
}

EmbeddingFileScorer::EmbeddingFileScorer(EmbeddingVector question,
                                         std::vector<EmbeddingVector> frames)
    : question_(std::move(question)), frames_(std::move(frames)) {
    for (const auto& f : frames_)
        if (f.dim() != question_.dim())
            throw DimMismatch("embedding scorer: mixed dimensions");
}

double EmbeddingFileScorer::score(FrameIndex frame) {
    if (frame >= frames_.size())
        throw OutOfRange("embedding scorer: frame " + std::to_string(frame) + " >= " +
                         std::to_string(frames_.size()));
    return confidence(question_, frames_[frame]);
}

namespace {

std::string location(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

double parse_component(const std::string& token, const std::filesystem::path& path,
                       std::size_t line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw FormatError(location(path, line_no) + ": bad number \"" + token + "\"");
    if (!std::isfinite(value))
        throw FormatError(location(path, line_no) + ": non-finite component \"" + token + "\"");
    return value;
}

struct EmbeddingLine {
    std::int64_t frame_index = 0;
    EmbeddingVector vec;
};

// "<frame_index> <dim> <c_0> ... <c_{dim-1}>"
EmbeddingLine parse_embedding_line(const std::string& line, const std::filesystem::path& path,
                                   std::size_t line_no) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.size() < 2)
        throw FormatError(location(path, line_no) + ": expected <frame_index> <dim> <components>");

    EmbeddingLine out;
    {
        const auto [ptr, ec] = std::from_chars(tokens[0].data(),
                                               tokens[0].data() + tokens[0].size(),
                                               out.frame_index);
        if (ec != std::errc() || ptr != tokens[0].data() + tokens[0].size())
            throw FormatError(location(path, line_no) + ": bad frame index \"" + tokens[0] + "\"");
    }
    std::uint64_t dim = 0;
    {
        const auto [ptr, ec] = std::from_chars(tokens[1].data(),
                                               tokens[1].data() + tokens[1].size(), dim);
        if (ec != std::errc() || ptr != tokens[1].data() + tokens[1].size())
            throw FormatError(location(path, line_no) + ": bad dim \"" + tokens[1] + "\"");
    }
    if (dim == 0) throw FormatError(location(path, line_no) + ": dim must be >= 1");
    if (tokens.size() - 2 != dim)
        throw FormatError(location(path, line_no) + ": dim says " + std::to_string(dim) +
                          " components, line has " + std::to_string(tokens.size() - 2));
    out.vec.components.reserve(dim);
    for (std::size_t i = 2; i < tokens.size(); ++i)
        out.vec.components.push_back(parse_component(tokens[i], path, line_no));
    return out;
}

}  // namespace

std::vector<EmbeddingVector> read_frame_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::vector<EmbeddingVector> frames;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        EmbeddingLine parsed = parse_embedding_line(line, path, line_no);
        if (parsed.frame_index != static_cast<std::int64_t>(frames.size()))
            throw FormatError(location(path, line_no) + ": expected frame index " +
                              std::to_string(frames.size()) + ", got " +
                              std::to_string(parsed.frame_index));
        if (!frames.empty() && parsed.vec.dim() != frames[0].dim())
            throw DimMismatch(location(path, line_no) + ": dim " +
                              std::to_string(parsed.vec.dim()) + " differs from first frame's " +
                              std::to_string(frames[0].dim()));
        frames.push_back(std::move(parsed.vec));
    }
    if (frames.empty()) throw FormatError(path.string() + ": no frame records");
    return frames;
}

EmbeddingVector read_question_embedding(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::optional<EmbeddingVector> question;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (question)
            throw FormatError(location(path, line_no) + ": question file must hold one record");
        EmbeddingLine parsed = parse_embedding_line(line, path, line_no);
        if (parsed.frame_index != -1)
            throw FormatError(location(path, line_no) +
                              ": question record must use frame index -1, got " +
                              std::to_string(parsed.frame_index));
        question = std::move(parsed.vec);
    }
    if (!question) throw FormatError(path.string() + ": no question record");
    return *question;
}

namespace {

std::string shortest_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string render_embedding_line(std::int64_t frame_index, const EmbeddingVector& v) {
    std::string line = std::to_string(frame_index);
    line += ' ';
    line += std::to_string(v.dim());
    for (double c : v.components) {
        line += ' ';
        line += shortest_double(c);
    }
    line += '\n';
    return line;
}

void write_lines(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path.string());
    out << content;
    if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace

void write_frame_embeddings(const std::filesystem::path& path,
                            const std::vector<EmbeddingVector>& frames) {
    std::string content;
    for (std::size_t i = 0; i < frames.size(); ++i)
        content += render_embedding_line(static_cast<std::int64_t>(i), frames[i]);
    write_lines(path, content);
}

void write_question_embedding(const std::filesystem::path& path, const EmbeddingVector& v) {
    write_lines(path, render_embedding_line(-1, v));
}

}  // namespace streamloc
