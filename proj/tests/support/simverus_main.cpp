// simverus: a scriptable stand-in for the Verus executable, used by the test
// and fixture suites. It matches the candidate file against scenario rules
// and prints diagnostics plus the verification summary in the same shape the
// real verifier emits, so the process adapter is exercised end to end.
//
// Usage: simverus [--multiple-errors N] [--scenario FILE_OR_DIR] <file.rs>
// The scenario can also come from $SIMVERUS_SCENARIO. Scenario files carry a
// top-level {"verifier": {"rules": [...]}} (or bare {"rules": [...]}); each
// rule is {"if_contains": [...], "unless_contains": [...], "errors":
// [{"message", "function", "line_snippet"?, "all"?}], "compile_error": bool}.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "simrules.hpp"

int main(int argc, char** argv) {
    std::string scenario_path;
    if (const char* env = std::getenv("SIMVERUS_SCENARIO")) scenario_path = env;
    std::string file_path;

    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--scenario" && i + 1 < argc) {
            scenario_path = argv[++i];
        } else if (arg == "--multiple-errors" && i + 1 < argc) {
            ++i;  // accepted for interface parity, rules decide the error list
        } else if (!arg.empty() && arg[0] != '-') {
            file_path = arg;
        }
    }
    if (file_path.empty()) {
        std::cerr << "simverus: no input file\n";
        return 2;
    }

    std::ifstream in(file_path, std::ios::binary);
    if (!in) {
        std::cerr << "simverus: cannot open " << file_path << "\n";
        return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    std::vector<simrules::Rule> rules;
    if (!scenario_path.empty()) rules = simrules::load_rules(scenario_path);

    const simrules::Rule* matched = nullptr;
    try {
        matched = simrules::first_match(rules, text);
        if (!matched) {
            // Unscripted input: report a hard failure rather than guessing.
            std::cout << "error: cannot find verification script for module\n";
            std::cout << "error: aborting due to previous error\n";
            return 1;
        }
        auto [output, exit_code] = simrules::render_output(*matched, text);
        std::cout << output;
        return exit_code;
    } catch (const std::exception& e) {
        std::cout << "error: unexpected token: " << e.what() << "\n";
        std::cout << "error: aborting due to previous error\n";
        return 1;
    }
}
