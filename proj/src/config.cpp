#include "veristruct/config.hpp"

#include <fstream>
#include <sstream>

#include "veristruct/errors.hpp"

namespace veristruct {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());

    Config config;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (!section.empty()) key = section + "." + key;
        config.values_[key] = value;
    }
    return config;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " is not an integer: " + it->second);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " is not a number: " + it->second);
    }
}

void Config::apply(RunConfig& run) const {
    run.sample_count = get_int("run.samples", run.sample_count);
    run.max_repair_rounds = get_int("run.max_repairs", run.max_repair_rounds);
    if (has("run.mode")) run.llm_mode = llm_mode_from_string(get("run.mode"));
    if (has("run.workspace")) run.workspace_root = get("run.workspace");
    if (has("run.transcripts")) run.transcript_dir = get("run.transcripts");

    if (has("verifier.path")) run.verifier_path = get("verifier.path");
    if (has("verifier.args")) {
        run.verifier_args.clear();
        std::istringstream ss(get("verifier.args"));
        std::string arg;
        while (ss >> arg) run.verifier_args.push_back(arg);
    }
    run.verifier_timeout_s = get_double("verifier.timeout_s", run.verifier_timeout_s);
    run.verifier_max_parallel = get_int("verifier.max_parallel", run.verifier_max_parallel);

    if (has("llm.provider")) run.provider = get("llm.provider");
    if (has("llm.model")) run.model = get("llm.model");
    if (has("llm.api_key_env")) run.api_key_env = get("llm.api_key_env");
    if (has("llm.base_url")) run.api_base_url = get("llm.base_url");
    if (has("llm.scenario")) run.scenario_path = get("llm.scenario");
    if (has("llm.decoding")) run.decoding_params = get("llm.decoding");
}

}  // namespace veristruct
