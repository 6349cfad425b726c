#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace veristruct {

struct ProcessResult {
    int exit_status = -1;
    std::string output;  // stdout and stderr interleaved
    bool timed_out = false;
    double elapsed_s = 0.0;
};

// fork/exec with combined output capture and a wall-clock timeout; the child
// is killed (SIGKILL) when the bound is exceeded.
ProcessResult run_process(const std::filesystem::path& executable,
                          const std::vector<std::string>& args,
                          const std::filesystem::path& cwd, double timeout_s);

}  // namespace veristruct
