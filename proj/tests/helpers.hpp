#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "streamloc/errors.hpp"
#include "streamloc/scorer.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        const auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            auto candidate = base / (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = std::move(candidate);
                return;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
    const int status = ::pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

// Frame scorer over a plain vector, for handcrafted signals.
class VecScorer final : public streamloc::FrameScorer {
public:
    explicit VecScorer(std::vector<double> values) : values_(std::move(values)) {}

    double score(streamloc::FrameIndex frame) override {
        if (frame >= values_.size())
            throw streamloc::OutOfRange("vec scorer: frame " + std::to_string(frame));
        ++calls_;
        return values_[frame];
    }
    std::optional<std::uint64_t> frame_count() const override { return values_.size(); }
    std::uint64_t calls() const { return calls_; }

private:
    std::vector<double> values_;
    std::uint64_t calls_ = 0;
};

// Chi-square critical value via the Wilson-Hilferty cube approximation;
// good to a fraction of a percent for dof >= 4.
inline double chi_square_critical(double dof, double z) {
    const double a = 2.0 / (9.0 * dof);
    const double t = 1.0 - a + z * std::sqrt(a);
    return dof * t * t * t;
}

inline constexpr double kZ999 = 3.090232306167813;  // standard normal quantile at 0.999

}  // namespace testutil
