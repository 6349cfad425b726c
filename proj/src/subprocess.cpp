#include "veristruct/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <vector>

#include "veristruct/errors.hpp"

namespace veristruct {

ProcessResult run_process(const std::filesystem::path& executable,
                          const std::vector<std::string>& args,
                          const std::filesystem::path& cwd, double timeout_s) {
    int pipefd[2];
    if (pipe(pipefd) != 0) throw WorkspaceError("pipe failed");

    auto start = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw WorkspaceError("fork failed");
    }

    if (pid == 0) {
        // Child: stdout and stderr share the pipe.
        dup2(pipefd[1], STDOUT_FILENO);
        dup2(pipefd[1], STDERR_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(126);
        std::vector<char*> argv;
        std::string exe = executable.string();
        argv.push_back(exe.data());
        std::vector<std::string> copies = args;
        for (std::string& a : copies) argv.push_back(a.data());
        argv.push_back(nullptr);
        execvp(exe.c_str(), argv.data());
        _exit(127);
    }

    close(pipefd[1]);
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

    ProcessResult result;
    auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(timeout_s));
    bool child_done = false;
    char buf[4096];

    while (true) {
        struct pollfd pfd{pipefd[0], POLLIN, 0};
        int remaining_ms = static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                deadline - std::chrono::steady_clock::now())
                                                .count());
        if (remaining_ms < 0) remaining_ms = 0;
        int rc = poll(&pfd, 1, std::min(remaining_ms, 200));
        if (rc > 0) {
            ssize_t n;
            while ((n = read(pipefd[0], buf, sizeof buf)) > 0)
                result.output.append(buf, static_cast<std::size_t>(n));
            if (n == 0) {  // EOF: child closed its end
                close(pipefd[0]);
                break;
            }
        }
        if (!child_done) {
            int status = 0;
            pid_t w = waitpid(pid, &status, WNOHANG);
            if (w == pid) {
                child_done = true;
                result.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
            }
        }
        if (child_done && rc == 0) {
            // Drain whatever is left, then stop.
            ssize_t n;
            while ((n = read(pipefd[0], buf, sizeof buf)) > 0)
                result.output.append(buf, static_cast<std::size_t>(n));
            close(pipefd[0]);
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, nullptr, 0);
            close(pipefd[0]);
            result.timed_out = true;
            break;
        }
    }

    if (!child_done && !result.timed_out) {
        int status = 0;
        waitpid(pid, &status, 0);
        result.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }
    result.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace veristruct
