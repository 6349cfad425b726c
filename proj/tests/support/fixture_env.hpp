#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "veristruct/task.hpp"

namespace testenv {

inline std::filesystem::path fixtures_dir() {
    const char* env = std::getenv("VERISTRUCT_FIXTURES");
    if (env && *env) return env;
    // Fallback for running test binaries by hand from the build tree.
    std::filesystem::path guess = std::filesystem::path(__FILE__).parent_path().parent_path() /
                                  "fixtures";
    if (std::filesystem::exists(guess)) return guess;
    throw std::runtime_error("VERISTRUCT_FIXTURES not set");
}

inline std::filesystem::path simverus_path() {
    const char* env = std::getenv("VERISTRUCT_SIMVERUS");
    if (env && *env) return env;
    throw std::runtime_error("VERISTRUCT_SIMVERUS not set");
}

inline std::filesystem::path cli_path() {
    const char* env = std::getenv("VERISTRUCT_CLI");
    if (env && *env) return env;
    throw std::runtime_error("VERISTRUCT_CLI not set");
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline veristruct::VerificationTask load_benchmark(const std::string& name) {
    auto dir = fixtures_dir() / "benchmarks" / name;
    return veristruct::VerificationTask{name, slurp(dir / "module.rs"), slurp(dir / "tests.rs")};
}

// A scratch directory under the build tree, wiped on creation.
inline std::filesystem::path fresh_dir(const std::string& label) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() /
                                ("veristruct_test_" + label);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testenv
