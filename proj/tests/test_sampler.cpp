#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "streamloc/rng.hpp"
#include "streamloc/sampler.hpp"

using namespace streamloc;

namespace {

std::vector<FrameIndex> full_interval(const FrameInterval& iv) {
    std::vector<FrameIndex> all;
    for (FrameIndex f = iv.start; f < iv.end; ++f) all.push_back(f);
    return all;
}

// How many of the offsets 0, 1, 2, 4, 7, 12, ... from end-1 stay inside the
// interval, counted without consulting the sampler.
std::uint64_t offsets_inside(const FrameInterval& iv) {
    const std::uint64_t reach = (iv.end - 1) - iv.start;
    std::uint64_t count = 1;  // offset 0, the anchor itself
    std::uint64_t offset = 0;
    std::uint64_t a = 1;
    std::uint64_t b = 1;
    for (;;) {
        offset += a;
        if (offset > reach) break;
        ++count;
        const std::uint64_t next = a + b;
        a = b;
        b = next;
    }
    return count;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("fibonacci sampling pinned examples") {
    CHECK(sample_fibonacci({0, 21}, 6) == std::vector<FrameIndex>{8, 13, 16, 18, 19, 20});
    CHECK(sample_fibonacci({0, 21}, 4) == std::vector<FrameIndex>{16, 18, 19, 20});
    CHECK(sample_fibonacci({5, 6}, 4) == std::vector<FrameIndex>{5});
    CHECK(sample_fibonacci({0, 100}, 1) == std::vector<FrameIndex>{99});
    // offsets 0,1,2,4,7,12,20 from 20: 33 would leave the interval
    CHECK(sample_fibonacci({0, 21}, 100) ==
          std::vector<FrameIndex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20});
}

TEST_CASE("sampling rejects empty intervals and n = 0") {
    CHECK_THROWS_AS(sample_fibonacci({5, 5}, 4), EmptyInterval);
    CHECK_THROWS_AS(sample_uniform_random({5, 5}, 4, 0), EmptyInterval);
    CHECK_THROWS_AS(sample_fibonacci({0, 10}, 0), ConfigError);
    CHECK_THROWS_AS(sample_uniform_random({0, 10}, 0, 0), ConfigError);
}

TEST_CASE("n >= interval length returns the full interval under both strategies") {
    const FrameInterval iv{10, 15};
    const auto all = full_interval(iv);
    CHECK(sample_fibonacci(iv, 5) == all);
    CHECK(sample_fibonacci(iv, 50) == all);
    CHECK(sample_uniform_random(iv, 5, 7) == all);
    CHECK(sample_uniform_random(iv, 50, 99) == all);
}

TEST_CASE("fibonacci samples lie inside, are distinct, sorted, and deterministic") {
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const FrameIndex start = rng.uniform_below(500);
        const FrameInterval iv{start, start + 1 + rng.uniform_below(500)};
        const std::uint64_t n = 1 + rng.uniform_below(30);
        const auto frames = sample_fibonacci(iv, n);

        CHECK(std::is_sorted(frames.begin(), frames.end()));
        CHECK(std::set<FrameIndex>(frames.begin(), frames.end()).size() == frames.size());
        for (const auto f : frames) CHECK(iv.contains(f));
        CHECK(frames == sample_fibonacci(iv, n));
        CHECK(frames.back() == iv.end - 1);  // the anchor is always kept

        if (n >= iv.length()) {
            CHECK(frames.size() == iv.length());
        } else {
            CHECK(frames.size() == std::min<std::uint64_t>(n, offsets_inside(iv)));
        }
    }
}

TEST_CASE("uniform samples lie inside, are distinct, sorted, and seed-stable") {
    Rng rng(32);
    for (int i = 0; i < 300; ++i) {
        const FrameIndex start = rng.uniform_below(500);
        const FrameInterval iv{start, start + 1 + rng.uniform_below(500)};
        const std::uint64_t n = 1 + rng.uniform_below(30);
        const std::uint64_t seed = rng.next_u64();
        const auto frames = sample_uniform_random(iv, n, seed);

        CHECK(frames.size() == std::min<std::uint64_t>(n, iv.length()));
        CHECK(std::is_sorted(frames.begin(), frames.end()));
        CHECK(std::set<FrameIndex>(frames.begin(), frames.end()).size() == frames.size());
        for (const auto f : frames) CHECK(iv.contains(f));
        CHECK(frames == sample_uniform_random(iv, n, seed));
    }

    // different seeds disagree somewhere
    bool differs = false;
    for (std::uint64_t seed = 0; seed < 10 && !differs; ++seed)
        differs = sample_uniform_random({0, 1000}, 4, seed) != sample_uniform_random({0, 1000}, 4, seed + 1);
    CHECK(differs);
}

TEST_CASE("uniform per-frame inclusion frequency is flat") {
    const FrameInterval iv{0, 200};
    const std::uint64_t n = 4;
    const int runs = 20000;
    std::vector<std::uint64_t> counts(iv.length(), 0);
    for (int seed = 0; seed < runs; ++seed)
        for (const auto f : sample_uniform_random(iv, n, static_cast<std::uint64_t>(seed)))
            ++counts[f];

    const double expected = static_cast<double>(runs) * n / static_cast<double>(iv.length());
    const double sigma = std::sqrt(static_cast<double>(runs) * (n / 200.0) * (1.0 - n / 200.0));
    double chi2 = 0.0;
    std::size_t within3 = 0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
        within3 += std::abs(d) <= 3.0 * sigma ? 1 : 0;
    }
    // dof 199 at the 0.999 quantile; the per-cell check is a loose complement
    // (a handful of 3-sigma excursions among 200 cells is expected)
    CHECK(chi2 < testutil::chi_square_critical(199.0, testutil::kZ999));
    CHECK(within3 >= counts.size() * 97 / 100);
}

TEST_CASE("run_sample_plan dispatches on strategy") {
    SamplePlan plan;
    plan.interval = {0, 21};
    plan.n = 6;
    plan.strategy = SampleStrategy::fibonacci;
    CHECK(run_sample_plan(plan) == std::vector<FrameIndex>{8, 13, 16, 18, 19, 20});

    plan.strategy = SampleStrategy::uniform_random;
    plan.seed = 3;
    CHECK(run_sample_plan(plan) == sample_uniform_random(plan.interval, plan.n, plan.seed));
}

TEST_CASE("strategy names round-trip") {
    for (const SampleStrategy s : {SampleStrategy::fibonacci, SampleStrategy::uniform_random})
        CHECK(sample_strategy_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(sample_strategy_from_string("stride"), FormatError);
}

}  // TEST_SUITE
