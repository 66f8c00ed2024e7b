#include "streamloc/external_scorer.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace streamloc {

namespace {

// A half-closed pipe must surface as an error return from write(), not kill
// the process.
void ignore_sigpipe_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

ExternalScorer::ExternalScorer(std::vector<std::string> argv, std::string question_text,
                               std::chrono::milliseconds timeout)
    : question_(std::move(question_text)), timeout_(timeout) {
    if (argv.empty()) throw ConfigError("external scorer: empty command line");
    if (timeout_.count() <= 0) throw ConfigError("external scorer: timeout must be positive");
    ignore_sigpipe_once();
    spawn(argv);
}

ExternalScorer::~ExternalScorer() { shutdown(); }

void ExternalScorer::spawn(const std::vector<std::string>& argv) {
    int to_child[2] = {-1, -1};
    int from_child[2] = {-1, -1};
    if (::pipe(to_child) != 0)
        throw ScorerProtocolError("external scorer: pipe() failed: " + errno_text());
    if (::pipe(from_child) != 0) {
        ::close(to_child[0]);
        ::close(to_child[1]);
        throw ScorerProtocolError("external scorer: pipe() failed: " + errno_text());
    }

    pid_ = ::fork();
    if (pid_ < 0) {
        for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
        throw ScorerProtocolError("external scorer: fork() failed: " + errno_text());
    }
    if (pid_ == 0) {
        ::dup2(to_child[0], STDIN_FILENO);
        ::dup2(from_child[1], STDOUT_FILENO);
        for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        _exit(127);  // exec failed; parent sees EOF on the response pipe
    }

    ::close(to_child[0]);
    ::close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
}

double ExternalScorer::score(FrameIndex frame) {
    if (pid_ < 0) throw ScorerProtocolError("external scorer: process is not running");

    const std::uint64_t id = next_id_++;
    const nlohmann::ordered_json request{{"id", id}, {"question", question_}, {"frame", frame}};
    std::string line = request.dump();
    line += '\n';

    const char* p = line.data();
    std::size_t left = line.size();
    while (left > 0) {
        const ssize_t w = ::write(to_child_, p, left);
        if (w < 0) {
            if (errno == EINTR) continue;
            throw ScorerProtocolError("external scorer: request write failed: " + errno_text());
        }
        p += w;
        left -= static_cast<std::size_t>(w);
    }

    const std::string response = read_response_line();

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(response);
    } catch (const std::exception&) {
        throw ScorerProtocolError("external scorer: response is not JSON: " + response);
    }
    if (!parsed.is_object() || !parsed.contains("id") || !parsed.contains("confidence") ||
        !parsed["id"].is_number_unsigned() || !parsed["confidence"].is_number())
        throw ScorerProtocolError("external scorer: malformed response: " + response);
    if (parsed["id"].get<std::uint64_t>() != id)
        throw ScorerProtocolError("external scorer: response id " +
                                  parsed["id"].dump() + " does not match request id " +
                                  std::to_string(id) + ": " + response);
    const double c = parsed["confidence"].get<double>();
    if (!(c >= -1.0 && c <= 1.0))  // also rejects NaN
        throw ScorerProtocolError("external scorer: confidence outside [-1, 1]: " + response);
    return c;
}

std::string ExternalScorer::read_response_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
        const std::size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }

        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline)
            throw ScorerTimeout("external scorer: no response within " +
                                std::to_string(timeout_.count()) + " ms");
        const auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1;

        struct pollfd pfd {};
        pfd.fd = from_child_;
        pfd.events = POLLIN;
        const int pr = ::poll(&pfd, 1, static_cast<int>(remaining));
        if (pr < 0) {
            if (errno == EINTR) continue;
            throw ScorerProtocolError("external scorer: poll failed: " + errno_text());
        }
        if (pr == 0)
            throw ScorerTimeout("external scorer: no response within " +
                                std::to_string(timeout_.count()) + " ms");

        char chunk[4096];
        const ssize_t r = ::read(from_child_, chunk, sizeof(chunk));
        if (r < 0) {
            if (errno == EINTR) continue;
            throw ScorerProtocolError("external scorer: response read failed: " + errno_text());
        }
        if (r == 0)
            throw ScorerProtocolError(
                buffer_.empty()
                    ? std::string("external scorer: process closed its output")
                    : "external scorer: process exited mid-line: " + buffer_);
        buffer_.append(chunk, static_cast<std::size_t>(r));
    }
}

void ExternalScorer::shutdown() noexcept {
    if (pid_ < 0) return;
    if (to_child_ >= 0) ::close(to_child_);  // EOF tells a well-behaved child to exit
    if (from_child_ >= 0) ::close(from_child_);
    to_child_ = -1;
    from_child_ = -1;

    int status = 0;
    for (int i = 0; i < 200; ++i) {  // up to ~2 s of graceful exit
        const pid_t r = ::waitpid(pid_, &status, WNOHANG);
        if (r == pid_ || (r < 0 && errno != EINTR)) {
            pid_ = -1;
            return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
}

}  // namespace streamloc
