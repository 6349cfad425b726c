#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "veristruct/task.hpp"

namespace veristruct {

// One lexical token of the verifier's Rust-flavored input language.
// Comments are consumed by the lexer and never appear in the stream.
struct Token {
    std::string text;
    int line = 1;  // 1-based
    int col = 1;
};

// Tokenize source text. Handles line/block comments (nested), string and char
// literals, lifetimes, and multi-char operators. Throws MalformedSource on
// unterminated literals or comments.
std::vector<Token> lex(std::string_view source);

// An executable function item found in a source file. Spec/proof functions are
// not included; they are annotations.
struct FunctionInfo {
    std::string name;
    int signature_line = 0;  // line of the `fn` keyword
    int body_start_line = 0;
    int body_end_line = 0;   // line of the closing brace

    bool contains_line(int line) const {
        return line >= signature_line && line <= body_end_line;
    }
};

// Enumerate the executable functions of a source file, in order of appearance.
// This is the function-count convention used everywhere: every executable fn
// the verifier would report on, including test functions and main.
std::vector<FunctionInfo> analyze_functions(std::string_view source);

inline int count_exec_functions(std::string_view source) {
    return static_cast<int>(analyze_functions(source).size());
}

// Remove every verification-only construct from the source:
//   - spec/proof function items (with their verifier attributes)
//   - proof { ... } blocks
//   - requires / ensures / invariant / decreases / recommends clauses
//   - View and DeepView trait implementations
//   - #[verifier::...] attributes
//   - use_type_invariant(...) statements
//   - ghost/tracked let-bindings
//   - named return values: `-> (ret: T)` becomes `-> T`
//   - vstd/builtin imports
// Impl blocks left empty by the removals are dropped. The result is rendered
// as a canonical whitespace-normalized token stream, so two sources are
// annotation-equivalent iff their stripped forms compare equal as strings.
// Comments do not survive (generation rewrites them freely).
std::string strip_annotations(std::string_view source);

// True iff the candidate differs from the task's module+tests only by
// verification annotations. New specification-only items introduced by
// repairs are permitted because the stripper removes them.
bool check_preservation(const VerificationTask& task, std::string_view candidate_source);

}  // namespace veristruct
