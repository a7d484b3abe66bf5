#include "minilean/subprocess.hpp"

#include <csignal>
#include <cstring>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace minilean {

LineSubprocess::~LineSubprocess() { stop(); }

void LineSubprocess::start(const std::string& command) {
    stop();
    int in_pipe[2];   // parent -> child
    int out_pipe[2];  // child -> parent
    if (pipe(in_pipe) != 0) throw std::runtime_error("pipe failed");
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        throw std::runtime_error("pipe failed");
    }
    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    buffer_.clear();
}

bool LineSubprocess::write_line(const std::string& line) {
    if (to_child_ < 0) return false;
    std::string data = line;
    data.push_back('\n');
    size_t written = 0;
    while (written < data.size()) {
        // the child may have exited; EPIPE must not kill the parent
        ssize_t n = write(to_child_, data.data() + written, data.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        written += static_cast<size_t>(n);
    }
    return true;
}

std::optional<std::string> LineSubprocess::read_line(int timeout_ms) {
    for (;;) {
        size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        if (from_child_ < 0) return std::nullopt;
        struct pollfd pfd {
            from_child_, POLLIN, 0
        };
        int rc = poll(&pfd, 1, timeout_ms);
        if (rc <= 0) return std::nullopt;  // timeout or error
        char chunk[4096];
        ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n <= 0) {
            if (n < 0 && errno == EINTR) continue;
            return std::nullopt;  // EOF: child closed stdout
        }
        buffer_.append(chunk, static_cast<size_t>(n));
    }
}

void LineSubprocess::stop() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        kill(pid_, SIGTERM);
        int status = 0;
        waitpid(pid_, &status, 0);
    }
    pid_ = -1;
    buffer_.clear();
}

}  // namespace minilean
