#pragma once

// Line-oriented child process: one UTF-8 JSON object per line on stdin, one
// reply line per request line on stdout. POSIX pipes, poll-based read
// timeout.

#include <optional>
#include <string>

#include <sys/types.h>

namespace minilean {

class LineSubprocess {
public:
    LineSubprocess() = default;
    ~LineSubprocess();

    LineSubprocess(const LineSubprocess&) = delete;
    LineSubprocess& operator=(const LineSubprocess&) = delete;

    // Spawns `command` via /bin/sh -c. Throws std::runtime_error on failure.
    void start(const std::string& command);

    bool running() const { return pid_ > 0; }

    // False when the child's stdin is gone (process exited).
    bool write_line(const std::string& line);

    // One line without the trailing newline; nullopt on EOF or timeout.
    std::optional<std::string> read_line(int timeout_ms);

    void stop();

private:
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

}  // namespace minilean
