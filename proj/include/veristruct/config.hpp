#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "veristruct/task.hpp"

namespace veristruct {

// Minimal INI/TOML-style config: `[section]` headers plus `key = value`
// lines, exposed as dotted keys ("verifier.path"). Values may be quoted.
class Config {
public:
    Config() = default;
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;

    // Overlays file-provided settings onto a RunConfig.
    void apply(RunConfig& run) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace veristruct
