#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streamloc/core.hpp"

namespace streamloc {

struct EmbeddingVector {
    std::vector<double> components;

    std::size_t dim() const { return components.size(); }

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

enum class QuestionType { what, who, how, where, when };

inline constexpr QuestionType kQuestionTypes[] = {
    QuestionType::what, QuestionType::who, QuestionType::how,
    QuestionType::where, QuestionType::when,
};

inline const char* to_string(QuestionType t) {
    switch (t) {
        case QuestionType::what: return "what";
        case QuestionType::who: return "who";
        case QuestionType::how: return "how";
        case QuestionType::where: return "where";
        case QuestionType::when: return "when";
    }
    return "?";
}

QuestionType question_type_from_string(const std::string& s);

struct QuestionContext {
    std::string question_id;
    std::string question_text;
    QuestionType question_type = QuestionType::what;
    std::optional<EmbeddingVector> embedding;  // only set when scoring real embeddings

    friend bool operator==(const QuestionContext&, const QuestionContext&) = default;
};

// Two-level step signal with optional per-frame Gaussian noise; stands in for
// a real video/question scorer in tests and the synthetic pipeline.
struct SyntheticProfile {
    std::uint64_t stream_length = 0;
    double baseline_mean = 0.1;
    FrameInterval plateau_interval;
    double plateau_mean = 0.6;
    double noise_std = 0.0;
    std::uint64_t noise_seed = 0;

    void validate() const;

    friend bool operator==(const SyntheticProfile&, const SyntheticProfile&) = default;
};

// Scale to unit L2 norm. Throws ZeroNorm when the vector has no direction
// (empty, all zeros, or non-finite norm).
EmbeddingVector normalize(const EmbeddingVector& v);

// Cosine score: dot product of the two normalized vectors, clamped to [-1, 1].
double confidence(const EmbeddingVector& question, const EmbeddingVector& frame);

// Deterministic per-frame score for the profile. Noise is keyed on
// (noise_seed, frame), so the value does not depend on query order. Result is
// clamped to [-1, 1]; noise_std == 0 returns the level means exactly.
double synthetic_score(const SyntheticProfile& profile, FrameIndex frame);

// Streaming confidence source consumed by the locator. score() may be called
// for arbitrary frames in any order and must be deterministic per frame.
// frame_count() returns the stream length when the source knows it.
class FrameScorer {
public:
    virtual ~FrameScorer() = default;
    virtual double score(FrameIndex frame) = 0;
    virtual std::optional<std::uint64_t> frame_count() const = 0;
};

class SyntheticScorer final : public FrameScorer {
public:
    explicit SyntheticScorer(SyntheticProfile profile);

    double score(FrameIndex frame) override { return synthetic_score(profile_, frame); }
    std::optional<std::uint64_t> frame_count() const override { return profile_.stream_length; }
    const SyntheticProfile& profile() const { return profile_; }

private:
    SyntheticProfile profile_;
};

// Scores precomputed embeddings loaded from text files (one vector per line:
// "<frame_index> <dim> <c_0> ... <c_{dim-1}>"; the question file holds exactly
// one record with frame_index -1).
class EmbeddingFileScorer final : public FrameScorer {
public:
    EmbeddingFileScorer(const std::filesystem::path& question_file,
                        const std::filesystem::path& frames_file);
    EmbeddingFileScorer(EmbeddingVector question, std::vector<EmbeddingVector> frames);

    double score(FrameIndex frame) override;
    std::optional<std::uint64_t> frame_count() const override { return frames_.size(); }

private:
    EmbeddingVector question_;
    std::vector<EmbeddingVector> frames_;
};

// Embedding file helpers. Readers reject malformed lines with FormatError
// (message carries file and line number) and mixed dimensions with
// DimMismatch. Writers round-trip doubles exactly (shortest decimal form).
std::vector<EmbeddingVector> read_frame_embeddings(const std::filesystem::path& path);
EmbeddingVector read_question_embedding(const std::filesystem::path& path);
void write_frame_embeddings(const std::filesystem::path& path,
                            const std::vector<EmbeddingVector>& frames);
void write_question_embedding(const std::filesystem::path& path, const EmbeddingVector& v);

}  // namespace streamloc
