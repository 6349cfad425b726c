#include "veristruct/source_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "veristruct/errors.hpp"

namespace veristruct {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const char* kThreeCharOps[] = {"&&&", "|||", "..=", "<<=", ">>=", "==>"};
const char* kTwoCharOps[] = {"->", "::", "=>", "==", "!=", "<=", ">=", "&&", "||", "..",
                             "+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=", "<<", ">>"};

}  // namespace

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](std::size_t begin, std::size_t end, int tline, int tcol) {
        out.push_back(Token{std::string(src.substr(begin, end - begin)), tline, tcol});
    };

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        // Line comment.
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        // Block comment, nested.
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            int depth = 0;
            int start_line = line;
            while (i < src.size()) {
                if (src[i] == '/' && i + 1 < src.size() && src[i + 1] == '*') {
                    ++depth;
                    advance(2);
                } else if (src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/') {
                    --depth;
                    advance(2);
                    if (depth == 0) break;
                } else {
                    advance(1);
                }
            }
            if (depth != 0)
                throw MalformedSource("unterminated block comment starting at line " +
                                      std::to_string(start_line));
            continue;
        }
        int tline = line, tcol = col;
        // Raw string r"..." / r#"..."#.
        if (c == 'r' && i + 1 < src.size() && (src[i + 1] == '"' || src[i + 1] == '#')) {
            std::size_t j = i + 1;
            std::size_t hashes = 0;
            while (j < src.size() && src[j] == '#') {
                ++hashes;
                ++j;
            }
            if (j < src.size() && src[j] == '"') {
                std::size_t begin = i;
                std::string closer = "\"" + std::string(hashes, '#');
                std::size_t end = src.find(closer, j + 1);
                if (end == std::string_view::npos)
                    throw MalformedSource("unterminated raw string at line " + std::to_string(tline));
                advance(end + closer.size() - i);
                push(begin, end + closer.size(), tline, tcol);
                continue;
            }
        }
        if (is_ident_start(c)) {
            std::size_t begin = i;
            while (i < src.size() && is_ident_char(src[i])) advance(1);
            push(begin, i, tline, tcol);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t begin = i;
            while (i < src.size() && (is_ident_char(src[i]))) advance(1);
            // Fractional part, but not a `..` range.
            if (i + 1 < src.size() && src[i] == '.' &&
                std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                advance(1);
                while (i < src.size() && is_ident_char(src[i])) advance(1);
            }
            push(begin, i, tline, tcol);
            continue;
        }
        if (c == '"') {
            std::size_t begin = i;
            advance(1);
            while (i < src.size() && src[i] != '"') {
                if (src[i] == '\\') advance(1);
                advance(1);
            }
            if (i >= src.size())
                throw MalformedSource("unterminated string at line " + std::to_string(tline));
            advance(1);
            push(begin, i, tline, tcol);
            continue;
        }
        if (c == '\'') {
            // Lifetime 'a vs char literal 'a'.
            if (i + 1 < src.size() && is_ident_start(src[i + 1]) &&
                !(i + 2 < src.size() && src[i + 2] == '\'')) {
                std::size_t begin = i;
                advance(1);
                while (i < src.size() && is_ident_char(src[i])) advance(1);
                push(begin, i, tline, tcol);
                continue;
            }
            std::size_t begin = i;
            advance(1);
            if (i < src.size() && src[i] == '\\') advance(1);
            advance(1);
            if (i >= src.size() || src[i] != '\'')
                throw MalformedSource("unterminated char literal at line " + std::to_string(tline));
            advance(1);
            push(begin, i, tline, tcol);
            continue;
        }
        bool matched = false;
        for (const char* op : kThreeCharOps) {
            if (src.substr(i, 3) == op) {
                std::size_t begin = i;
                advance(3);
                push(begin, i, tline, tcol);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (const char* op : kTwoCharOps) {
            if (src.substr(i, 2) == op) {
                std::size_t begin = i;
                advance(2);
                push(begin, i, tline, tcol);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        std::size_t begin = i;
        advance(1);
        push(begin, i, tline, tcol);
    }
    return out;
}

namespace {

using Tokens = std::vector<Token>;

const std::set<std::string>& fn_modifiers() {
    static const std::set<std::string> mods = {"pub",   "open",  "closed", "spec",
                                               "proof", "const", "unsafe", "async",
                                               "extern", "crate", "broadcast"};
    return mods;
}

const std::set<std::string>& clause_keywords() {
    static const std::set<std::string> kws = {"requires",  "ensures",
                                              "invariant", "invariant_except_break",
                                              "decreases", "recommends",
                                              "opens_invariants"};
    return kws;
}

// Index of the token just past the end of the item whose first `{` or `;`
// search starts at `from`: the matching `}` of the first brace at paren depth
// zero, or the first `;` seen before any brace.
std::size_t item_end(const Tokens& t, std::size_t from) {
    int paren = 0;
    for (std::size_t i = from; i < t.size(); ++i) {
        const std::string& s = t[i].text;
        if (s == "(" || s == "[") ++paren;
        else if (s == ")" || s == "]") --paren;
        else if (s == ";" && paren == 0) return i + 1;
        else if (s == "{" && paren == 0) {
            int depth = 0;
            for (std::size_t j = i; j < t.size(); ++j) {
                if (t[j].text == "{") ++depth;
                else if (t[j].text == "}") {
                    --depth;
                    if (depth == 0) return j + 1;
                }
            }
            throw MalformedSource("unbalanced braces near line " + std::to_string(t[i].line));
        }
    }
    throw MalformedSource("item without body near line " +
                          std::to_string(from < t.size() ? t[from].line : 0));
}

// Walk back over item modifiers (pub, closed, spec, ...) including a
// parenthesized visibility like pub(crate).
std::size_t modifier_start(const Tokens& t, std::size_t fn_index) {
    std::size_t start = fn_index;
    while (start > 0) {
        const std::string& prev = t[start - 1].text;
        if (fn_modifiers().count(prev)) {
            --start;
            continue;
        }
        if (prev == ")" && start >= 4 && t[start - 4].text == "pub" && t[start - 3].text == "(") {
            start -= 4;
            continue;
        }
        break;
    }
    return start;
}

bool has_spec_or_proof_modifier(const Tokens& t, std::size_t mod_start, std::size_t fn_index) {
    for (std::size_t i = mod_start; i < fn_index; ++i)
        if (t[i].text == "spec" || t[i].text == "proof") return true;
    return false;
}

struct Span {
    std::size_t begin;
    std::size_t end;  // exclusive
};

void add(std::vector<Span>& spans, std::size_t b, std::size_t e) {
    if (b < e) spans.push_back({b, e});
}

std::vector<bool> deletion_mask(const Tokens& t, const std::vector<Span>& spans) {
    std::vector<bool> del(t.size(), false);
    for (const Span& s : spans)
        for (std::size_t i = s.begin; i < s.end && i < t.size(); ++i) del[i] = true;
    return del;
}

std::size_t matching_close(const Tokens& t, std::size_t open, const std::string& o,
                           const std::string& c) {
    int depth = 0;
    for (std::size_t i = open; i < t.size(); ++i) {
        if (t[i].text == o) ++depth;
        else if (t[i].text == c) {
            --depth;
            if (depth == 0) return i;
        }
    }
    throw MalformedSource("unbalanced '" + o + "' near line " + std::to_string(t[open].line));
}

bool path_starts_with(const Tokens& t, std::size_t i, const std::string& head) {
    return i < t.size() && t[i].text == head;
}

}  // namespace

std::vector<FunctionInfo> analyze_functions(std::string_view source) {
    Tokens t = lex(source);
    std::vector<FunctionInfo> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].text != "fn") continue;
        std::size_t mods = modifier_start(t, i);
        if (has_spec_or_proof_modifier(t, mods, i)) continue;
        if (i + 1 >= t.size() || !is_ident_start(t[i + 1].text[0])) continue;
        FunctionInfo fi;
        fi.name = t[i + 1].text;
        fi.signature_line = t[i].line;
        // First `{` at paren depth zero is the body.
        int paren = 0;
        std::size_t body = t.size();
        for (std::size_t j = i + 2; j < t.size(); ++j) {
            const std::string& s = t[j].text;
            if (s == "(" || s == "[") ++paren;
            else if (s == ")" || s == "]") --paren;
            else if (s == ";" && paren == 0) break;  // bodyless declaration
            else if (s == "{" && paren == 0) {
                body = j;
                break;
            }
        }
        if (body == t.size()) {
            fi.body_start_line = fi.body_end_line = fi.signature_line;
            out.push_back(fi);
            continue;
        }
        std::size_t close = matching_close(t, body, "{", "}");
        fi.body_start_line = t[body].line;
        fi.body_end_line = t[close].line;
        out.push_back(fi);
        i = body;  // skip into the body; nested fns are not a thing here
    }
    return out;
}

std::string strip_annotations(std::string_view source) {
    Tokens t = lex(source);
    std::vector<Span> spans;

    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string& s = t[i].text;

        // #[verifier::...] and #[trigger] attributes.
        if (s == "#" && i + 1 < t.size() && t[i + 1].text == "[") {
            std::size_t name = i + 2;
            if (name < t.size() &&
                (t[name].text == "verifier" || t[name].text == "trigger")) {
                std::size_t close = matching_close(t, i + 1, "[", "]");
                add(spans, i, close + 1);
                i = close;
            }
            continue;
        }

        // spec/proof fn items, with their leading modifiers.
        if (s == "fn") {
            std::size_t mods = modifier_start(t, i);
            if (has_spec_or_proof_modifier(t, mods, i)) {
                std::size_t end = item_end(t, i);
                add(spans, mods, end);
                i = end - 1;
            }
            continue;
        }

        // View / DeepView trait implementations, removed wholesale.
        if (s == "impl") {
            std::size_t j = i + 1;
            if (j < t.size() && t[j].text == "<") j = matching_close(t, j, "<", ">") + 1;
            bool is_view = false;
            std::size_t k = j;
            for (; k < t.size(); ++k) {
                const std::string& w = t[k].text;
                if (w == "for") break;
                if (w == "{" || w == ";") {
                    k = t.size();
                    break;
                }
                if (w == "View" || w == "DeepView") is_view = true;
            }
            if (is_view && k < t.size()) {
                std::size_t end = item_end(t, i);
                add(spans, i, end);
                i = end - 1;
            }
            continue;
        }

        // proof { ... } blocks.
        if (s == "proof" && i + 1 < t.size() && t[i + 1].text == "{") {
            std::size_t close = matching_close(t, i + 1, "{", "}");
            add(spans, i, close + 1);
            i = close;
            continue;
        }

        // requires / ensures / invariant / decreases / ... clause lists.
        if (clause_keywords().count(s)) {
            bool path_pos = i > 0 && (t[i - 1].text == "." || t[i - 1].text == "::" ||
                                      t[i - 1].text == "fn" || t[i - 1].text == "let");
            bool field_pos = i + 1 < t.size() && t[i + 1].text == ":";
            if (path_pos || field_pos) continue;
            int paren = 0;
            std::size_t j = i + 1;
            for (; j < t.size(); ++j) {
                const std::string& w = t[j].text;
                if (w == "(" || w == "[") ++paren;
                else if (w == ")" || w == "]") --paren;
                else if (paren == 0 && (w == "{" || w == ";" || clause_keywords().count(w))) break;
            }
            add(spans, i, j);
            i = j - 1;
            continue;
        }

        // Named return value: -> (ret: T) becomes -> T.
        if (s == "->" && i + 3 < t.size() && t[i + 1].text == "(" &&
            is_ident_start(t[i + 2].text[0]) && t[i + 3].text == ":") {
            std::size_t close = matching_close(t, i + 1, "(", ")");
            add(spans, i + 1, i + 4);  // "(", name, ":"
            add(spans, close, close + 1);
            i = close;
            continue;
        }

        // use_type_invariant(...) statements.
        if (s == "use_type_invariant") {
            std::size_t j = i;
            int paren = 0;
            for (; j < t.size(); ++j) {
                if (t[j].text == "(") ++paren;
                else if (t[j].text == ")") --paren;
                else if (t[j].text == ";" && paren == 0) break;
            }
            add(spans, i, std::min(j + 1, t.size()));
            i = j;
            continue;
        }

        // ghost / tracked bindings.
        if (s == "let" && i + 1 < t.size() &&
            (t[i + 1].text == "ghost" || t[i + 1].text == "tracked")) {
            std::size_t j = i;
            int paren = 0;
            for (; j < t.size(); ++j) {
                if (t[j].text == "(" || t[j].text == "[") ++paren;
                else if (t[j].text == ")" || t[j].text == "]") --paren;
                else if (t[j].text == ";" && paren == 0) break;
            }
            add(spans, i, std::min(j + 1, t.size()));
            i = j;
            continue;
        }

        // Verification-library imports.
        if (s == "use" && i + 1 < t.size() &&
            (path_starts_with(t, i + 1, "vstd") || path_starts_with(t, i + 1, "builtin") ||
             path_starts_with(t, i + 1, "builtin_macros"))) {
            std::size_t j = i;
            while (j < t.size() && t[j].text != ";") ++j;
            add(spans, i, std::min(j + 1, t.size()));
            i = j;
            continue;
        }
    }

    std::vector<bool> del = deletion_mask(t, spans);
    Tokens kept;
    kept.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!del[i]) kept.push_back(t[i]);

    // Drop impl blocks whose bodies the removals emptied.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept[i].text != "impl") continue;
            int paren = 0;
            std::size_t open = kept.size();
            for (std::size_t j = i + 1; j < kept.size(); ++j) {
                const std::string& w = kept[j].text;
                if (w == "(" || w == "[") ++paren;
                else if (w == ")" || w == "]") --paren;
                else if (w == "{" && paren == 0) {
                    open = j;
                    break;
                } else if (w == ";" && paren == 0) {
                    break;
                }
            }
            if (open + 1 < kept.size() && kept[open + 1].text == "}") {
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i),
                           kept.begin() + static_cast<std::ptrdiff_t>(open + 2));
                changed = true;
                break;
            }
        }
    }

    // Canonical rendering: one space between tokens, line breaks at statement
    // and block boundaries.
    std::string out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        out += kept[i].text;
        const std::string& s = kept[i].text;
        bool break_here = (s == ";" || s == "{" || s == "}");
        if (i + 1 < kept.size()) out += break_here ? '\n' : ' ';
    }
    if (!out.empty() && out.back() != '\n') out += '\n';
    return out;
}

bool check_preservation(const VerificationTask& task, std::string_view candidate_source) {
    return strip_annotations(candidate_source) == strip_annotations(task.combined_source());
}

}  // namespace veristruct
