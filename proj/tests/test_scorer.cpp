#include <doctest.h>

#include <cmath>
#include <fstream>

#include "helpers.hpp"
#include "streamloc/rng.hpp"
#include "streamloc/scorer.hpp"

using namespace streamloc;
using testutil::TempDir;

namespace {

EmbeddingVector random_vector(Rng& rng, std::size_t dim) {
    EmbeddingVector v;
    v.components.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) v.components.push_back(rng.normal());
    return v;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& line : lines) out << line << '\n';
}

}  // namespace

TEST_SUITE("scorer") {

TEST_CASE("normalize known vectors exactly") {
    const auto n = normalize(EmbeddingVector{{3.0, 4.0}});
    CHECK(n.components[0] == 0.6);
    CHECK(n.components[1] == 0.8);

    const auto q = normalize(EmbeddingVector{{1.0, 1.0, 1.0, 1.0}});
    for (const double c : q.components) CHECK(c == 0.5);

    CHECK_THROWS_AS(normalize(EmbeddingVector{{0.0, 0.0, 0.0}}), ZeroNorm);
    CHECK_THROWS_AS(normalize(EmbeddingVector{}), ZeroNorm);
    CHECK_THROWS_AS(normalize(EmbeddingVector{{std::nan(""), 1.0}}), ZeroNorm);
}

TEST_CASE("normalize yields unit norm and is idempotent") {
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        const auto v = random_vector(rng, 1 + rng.uniform_below(16));
        const auto n = normalize(v);
        double ss = 0.0;
        for (const double c : n.components) ss += c * c;
        CHECK(ss == doctest::Approx(1.0).epsilon(1e-12));
        const auto nn = normalize(n);
        for (std::size_t k = 0; k < n.dim(); ++k)
            CHECK(nn.components[k] == doctest::Approx(n.components[k]).epsilon(1e-12));
    }
}

TEST_CASE("confidence identities on known vectors") {
    const EmbeddingVector ex{{1.0, 0.0}};
    const EmbeddingVector ey{{0.0, 1.0}};
    const EmbeddingVector diag{{1.0, 1.0}};
    CHECK(confidence(ex, ex) == 1.0);
    CHECK(confidence(ex, ey) == 0.0);
    CHECK(confidence(ex, diag) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(confidence(ex, EmbeddingVector{{-2.0, 0.0}}) == -1.0);

    CHECK_THROWS_AS(confidence(ex, EmbeddingVector{{1.0, 2.0, 3.0}}), DimMismatch);
    CHECK_THROWS_AS(confidence(ex, EmbeddingVector{{0.0, 0.0}}), ZeroNorm);
}

TEST_CASE("confidence is symmetric, scale invariant, and bounded") {
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_vector(rng, 8);
        const auto b = random_vector(rng, 8);
        const double c = confidence(a, b);
        CHECK(c == confidence(b, a));
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
        CHECK(confidence(a, a) == doctest::Approx(1.0).epsilon(1e-9));

        auto scaled = a;
        const double s = 0.001 + rng.next_double() * 100.0;
        for (double& comp : scaled.components) comp *= s;
        CHECK(confidence(scaled, b) == doctest::Approx(c).epsilon(1e-9));
    }
}

TEST_CASE("synthetic score levels are exact without noise") {
    const SyntheticProfile p{.stream_length = 100,
                             .baseline_mean = 0.1,
                             .plateau_interval = {40, 60},
                             .plateau_mean = 0.9};
    CHECK(synthetic_score(p, 0) == 0.1);
    CHECK(synthetic_score(p, 39) == 0.1);
    CHECK(synthetic_score(p, 40) == 0.9);
    CHECK(synthetic_score(p, 59) == 0.9);
    CHECK(synthetic_score(p, 60) == 0.1);
    CHECK(synthetic_score(p, 99) == 0.1);
    CHECK_THROWS_AS(synthetic_score(p, 100), OutOfRange);
}

TEST_CASE("noisy scores are a pure function of (seed, frame)") {
    SyntheticProfile p{.stream_length = 100,
                       .baseline_mean = 0.1,
                       .plateau_interval = {40, 60},
                       .plateau_mean = 0.6,
                       .noise_std = 0.05,
                       .noise_seed = 9};
    std::vector<double> first;
    for (FrameIndex f = 0; f < 100; ++f) first.push_back(synthetic_score(p, f));

    // reversed and repeated queries see the same values
    for (FrameIndex f = 100; f-- > 0;) CHECK(synthetic_score(p, f) == first[f]);
    Rng order(4);
    for (int i = 0; i < 200; ++i) {
        const FrameIndex f = order.uniform_below(100);
        CHECK(synthetic_score(p, f) == first[f]);
    }

    // the noise actually does something, and another seed draws other noise
    std::size_t moved = 0;
    std::size_t reseeded = 0;
    SyntheticProfile p2 = p;
    p2.noise_seed = 10;
    for (FrameIndex f = 0; f < 100; ++f) {
        moved += first[f] != (p.plateau_interval.contains(f) ? 0.6 : 0.1) ? 1 : 0;
        reseeded += synthetic_score(p2, f) != first[f] ? 1 : 0;
    }
    CHECK(moved > 90);
    CHECK(reseeded > 90);
}

TEST_CASE("synthetic scores are clamped to [-1, 1]") {
    const SyntheticProfile loud{.stream_length = 500,
                                .baseline_mean = 0.1,
                                .plateau_interval = {100, 200},
                                .plateau_mean = 0.9,
                                .noise_std = 5.0,
                                .noise_seed = 1};
    for (FrameIndex f = 0; f < 500; ++f) {
        const double v = synthetic_score(loud, f);
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("synthetic profile validation") {
    SyntheticProfile p{.stream_length = 100,
                       .baseline_mean = 0.1,
                       .plateau_interval = {40, 60},
                       .plateau_mean = 0.6};
    CHECK_NOTHROW(p.validate());

    SyntheticProfile bad = p;
    bad.plateau_interval = {40, 101};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.plateau_mean = 0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.noise_std = -0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.stream_length = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("embedding files round-trip bitwise") {
    TempDir dir("emb-roundtrip");
    Rng rng(5);
    std::vector<EmbeddingVector> frames;
    for (int i = 0; i < 10; ++i) {
        auto v = random_vector(rng, 7);
        // mix in extreme magnitudes to stress the decimal round-trip
        v.components[0] *= 1e-200;
        v.components[1] *= 1e200;
        v.components[2] = 0.1 + 0.2;
        frames.push_back(std::move(v));
    }
    const auto fpath = dir.path() / "frames.txt";
    write_frame_embeddings(fpath, frames);
    CHECK(read_frame_embeddings(fpath) == frames);

    const auto q = random_vector(rng, 7);
    const auto qpath = dir.path() / "question.txt";
    write_question_embedding(qpath, q);
    CHECK(read_question_embedding(qpath) == q);
}

TEST_CASE("file scorer equals raw confidence") {
    Rng rng(11);
    const auto q = random_vector(rng, 6);
    std::vector<EmbeddingVector> frames;
    for (int i = 0; i < 25; ++i) frames.push_back(random_vector(rng, 6));

    TempDir dir("emb-scorer");
    const auto qpath = dir.path() / "q.txt";
    const auto fpath = dir.path() / "f.txt";
    write_question_embedding(qpath, q);
    write_frame_embeddings(fpath, frames);

    EmbeddingFileScorer from_files(qpath, fpath);
    EmbeddingFileScorer in_memory(q, frames);
    CHECK(from_files.frame_count() == frames.size());
    for (FrameIndex f = 0; f < frames.size(); ++f) {
        const double expect = confidence(q, frames[f]);
        CHECK(from_files.score(f) == expect);
        CHECK(in_memory.score(f) == expect);
    }
    CHECK_THROWS_AS(from_files.score(frames.size()), OutOfRange);
}

TEST_CASE("malformed embedding files carry file and line information") {
    TempDir dir("emb-bad");
    const auto path = dir.path() / "bad.txt";

    const auto read_fails_with = [&](const std::vector<std::string>& lines,
                                     const std::string& needle) {
        write_lines(path, lines);
        try {
            read_frame_embeddings(path);
            FAIL_CHECK("expected FormatError for ", needle);
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    read_fails_with({"0 3 1.0 2.0"}, ":1");              // fewer components than dim
    read_fails_with({"abc 3 1 2 3"}, ":1");               // unparseable index
    read_fails_with({"1 2 1.0 2.0"}, "frame index 0");    // must start at frame 0
    read_fails_with({"0 2 1.0 2.0", "2 2 1.0 2.0"}, ":2");  // gap in frame numbering
    read_fails_with({"0 2 1.0 nan"}, ":1");               // non-finite component
    read_fails_with({}, "no frame records");

    write_lines(path, {"0 2 1.0 2.0", "1 3 1.0 2.0 3.0"});
    CHECK_THROWS_AS(read_frame_embeddings(path), DimMismatch);

    write_lines(path, {"-1 2 1.0 2.0", "-1 2 3.0 4.0"});
    CHECK_THROWS_AS(read_question_embedding(path), FormatError);
    write_lines(path, {"0 2 1.0 2.0"});
    CHECK_THROWS_AS(read_question_embedding(path), FormatError);

    CHECK_THROWS_AS(read_frame_embeddings(dir.path() / "missing.txt"), FormatError);
}

TEST_CASE("question type names round-trip") {
    for (const QuestionType t : kQuestionTypes)
        CHECK(question_type_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(question_type_from_string("why"), FormatError);
}

}  // TEST_SUITE
