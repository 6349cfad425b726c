#include "veristruct/repair.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/source_analysis.hpp"

namespace veristruct {

namespace {

constexpr const char* kRepairSystem =
    "You are an expert in Verus, the SMT-backed deductive verifier for Rust. You repair "
    "verification annotations so that the verifier accepts the module. You never modify "
    "executable code or unit tests; you only change annotations, and you may add new "
    "specification functions.";

std::string rule_id_for(ErrorCategory c) {
    if (c == ErrorCategory::InvariantRedundant) return "invariant_removal";
    return to_string(c);
}

struct RuleText {
    const char* objective;
    const char* background;
    std::vector<const char*> instructions;
    const char* actions;
};

RuleText rule_text(const std::string& id) {
    if (id == "syntax")
        return {
            "Fix the syntax error in the annotated code below without touching executable "
            "items or tests.",
            "Verus extends Rust syntax with requires/ensures clause lists, spec functions, "
            "&&&/||| bullets, and @ view shorthand. Clause lists sit between the signature and "
            "the body and are comma-separated.",
            {"Balance the offending delimiters and correct malformed operators or generics.",
             "Insert missing view() calls where a sequence operation is applied to a Vec.",
             "Keep every annotation you do not need to change."},
            "Insert missing view() calls or lemmas, balance delimiters, and correct "
            "operators/generics.",
        };
    if (id == "type")
        return {
            "Fix the type error the verifier reported for the annotated code below.",
            "Spec code works on nat/int and Seq/Set/Map; executable code works on Rust types. "
            "Crossing between them needs explicit casts (as nat, as int) and view conversions "
            "(v@). Constructing a value may also fail its declared type invariant.",
            {"Rewrite the offending expression with the casts or generics it needs (e.g., "
             "None::<T>).",
             "If a constructor may violate the type invariant, add the missing requires "
             "clause.",
             "Prefer adjusting annotations over adding executable conversions."},
            "Rewrite expressions, add explicit generics (e.g., None::<T>), and patch missing "
            "requires clauses.",
        };
    if (id == "mode")
        return {
            "Fix the error for the following code. The error indicates that an executable "
            "function is called from annotations or vice versa.",
            "Verus separates specification functions (spec fn, pure, callable only from "
            "annotations and proofs) from executable functions. An annotation that calls an "
            "executable function is rejected, whatever its body does.",
            {"Make one of these changes:",
             "1. Adjust the function to be compatible with the calling context.",
             "2. Create a specification version of the function (a spec fn twin) and call it "
             "from the annotation instead.",
             "3. If proof context was intended, wrap the call in a proof block."},
            "Wrap calls in spec/proof blocks, retag functions, or set open/closed attributes.",
        };
    if (id == "missing_element")
        return {
            "Fix the unresolved name or missing implementation the verifier reported.",
            "Annotated modules rely on vstd::prelude and on trait implementations (View, "
            "DeepView) that the annotations reference.",
            {"Insert the missing use statement, or",
             "Synthesize the required trait implementation or method, with contracts."},
            "Insert use statements and synthesize required trait methods with contracts.",
        };
    if (id == "old_self")
        return {
            "Fix the pre-state reference error in the requires clause below.",
            "In a method taking &mut self, a requires clause constrains the caller's state, so "
            "it must reference old(self); bare self there is rejected.",
            {"Rewrite self. usages inside requires blocks to old(self)."},
            "Rewrite self. usages inside requires blocks to old(self).",
        };
    if (id == "arithmetic")
        return {
            "Fix the arithmetic overflow/underflow or nonlinear-arithmetic failure below.",
            "Verus checks executable arithmetic for overflow and underflow; bounds usually "
            "come from the type invariant or loop invariants. Nonlinear facts need dedicated "
            "proof support.",
            {"Assert the bounds the operation needs, bringing the type invariant into scope "
             "first.",
             "For nonlinear obligations, emit an assert ... by(nonlinear_arith) proof.",
             "Strengthen loop invariants so index arithmetic stays in range."},
            "Emit by(nonlinear_arith) proofs, assert bounds, and strengthen loop invariants.",
        };
    if (id == "precondition")
        return {
            "Fix the precondition violation the verifier reported at the call site below.",
            "Every call site must establish the callee's requires clause from facts in scope; "
            "vector indexing needs in-bounds proofs.",
            {"Introduce a proof block establishing the callee's precondition before the call.",
             "Assert the length or index constraint the call depends on.",
             "If the precondition is simply too strong, weaken it consistently."},
            "Introduce proof blocks, assert length/index constraints, or adjust calls "
            "violating permissions.",
        };
    if (id == "postcondition")
        return {
            "Fix the postcondition the function below fails to establish.",
            "Each function body must prove its ensures clauses from the assumed requires "
            "clauses; private fields are visible to specifications only through the view or "
            "through ghost accessors.",
            {"Add an exit proof block establishing the ensures clause.",
             "Tune the contract so it matches what the body actually guarantees.",
             "Expose a ghost accessor when the clause needs a private field."},
            "Add exit proofs, tune invariants, or expose ghost accessors for private fields.",
        };
    if (id == "loop_invariant")
        return {
            "Fix the loop invariant failure below.",
            "A loop invariant must hold on entry and be preserved by every iteration; on exit "
            "it is all the verifier knows about the loop's effect.",
            {"Assert the invariant before the loop when entry is the problem.",
             "Propagate the conditions the body needs into the invariant list.",
             "Revise or drop invariants the body cannot preserve."},
            "Assert invariants before loops, propagate conditions, or revise invalid "
            "invariants.",
        };
    if (id == "decreases")
        return {
            "Fix the unsatisfied decreases obligation below.",
            "Recursive functions and loops prove termination through a decreases clause whose "
            "measure strictly drops on every step.",
            {"Prove that the measure drops, or pick a measure that does.",
             "Adjust the decreases expression or the loop variable updates."},
            "Prove measure drops, adjust decreases expressions, or update loop variables.",
        };
    if (id == "assertion")
        return {
            "Fix the failing assertion: a unit-test assertion cannot be proven from the "
            "current contracts.",
            "Test assertions are verified from the postconditions of the methods called "
            "before them. A failing test assertion usually means the contract of the method "
            "invoked immediately before it is too weak.",
            {"Identify the method invoked immediately before the failing assertion.",
             "Strengthen that method's postcondition so the assertion holds.",
             "Add reveals or lemmas (e.g., lemma_seq_subrange_all) when sequence reasoning "
             "stalls."},
            "Add reveals or lemmas (e.g., lemma_seq_subrange_all) and lift tests into "
            "postconditions.",
        };
    if (id == "invariant_removal")
        return {
            "Remove the redundant invariant invocation the verifier flagged below.",
            "Once a property is declared as #[verifier::type_invariant], explicit self.inv() "
            "conjuncts and duplicate use_type_invariant calls add noise and can conflict.",
            {"Delete unnecessary self.inv() calls when enforced by "
             "#[verifier::type_invariant]."},
            "Delete unnecessary self.inv() calls when enforced by "
            "#[verifier::type_invariant].",
        };
    // default
    return {
        "Repair the annotated code below so the reported verifier error goes away.",
        "The error did not match any specialized failure class; reason directly from the "
        "message and the code.",
        {"Diagnose the reported error from its message and location.",
         "Apply the smallest annotation change that removes it."},
        "Attempt a repair based directly on the provided error message.",
    };
}

std::vector<RepairRule> build_registry() {
    std::vector<RepairRule> rules;
    for (const DiagnosticPatterns& dp : diagnostic_pattern_table()) {
        RepairRule rule;
        rule.id = rule_id_for(dp.category);
        rule.patterns = dp.patterns;
        RuleText text = rule_text(rule.id);
        rule.objective_text = text.objective;
        rule.background_text = text.background;
        for (const char* s : text.instructions) rule.instruction_steps.emplace_back(s);
        rule.representative_actions = text.actions;
        rules.push_back(std::move(rule));
    }
    RepairRule fallback;
    fallback.id = "default";
    RuleText text = rule_text("default");
    fallback.objective_text = text.objective;
    fallback.background_text = text.background;
    for (const char* s : text.instructions) fallback.instruction_steps.emplace_back(s);
    fallback.representative_actions = text.actions;
    rules.push_back(std::move(fallback));
    return rules;
}

}  // namespace

bool RepairRule::matches(const std::string& message) const {
    for (const std::string& p : patterns)
        if (std::regex_search(message, std::regex(p, std::regex::icase))) return true;
    return false;
}

const std::vector<RepairRule>& default_repair_registry() {
    static const std::vector<RepairRule> registry = build_registry();
    return registry;
}

std::vector<RepairRule> load_repair_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open repair registry " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<RepairRule> rules;
    for (const auto& jr : j.at("rules")) {
        RepairRule rule;
        rule.id = jr.at("id").get<std::string>();
        for (const auto& p : jr.value("patterns", nlohmann::json::array()))
            rule.patterns.push_back(p.get<std::string>());
        rule.objective_text = jr.value("objective", "");
        rule.background_text = jr.value("background", "");
        for (const auto& s : jr.value("instructions", nlohmann::json::array()))
            rule.instruction_steps.push_back(s.get<std::string>());
        rule.representative_actions = jr.value("actions", "");
        rules.push_back(std::move(rule));
    }
    if (rules.empty() || rules.back().id != "default")
        throw ConfigError("repair registry must end with the default rule");
    return rules;
}

const RepairRule& route_error(const VerifierError& error, const std::vector<RepairRule>& registry) {
    for (const RepairRule& rule : registry)
        if (!rule.patterns.empty() && rule.matches(error.message)) return rule;
    return registry.back();  // default fallback, pattern-free
}

PromptBundle build_repair_prompt(const RepairRule& rule, const CodeCandidate& candidate,
                                 const VerificationTask& task, const VerifierError& error,
                                 const std::string& extra_instruction) {
    PromptBundle prompt;
    prompt.system_text = kRepairSystem;
    prompt.module_tag = "repair_" + rule.id;

    std::string code = "The verifier reported:\n    error: " + error.message + "\n";
    if (error.location)
        code += "    --> main.rs:" + std::to_string(error.location->line) + ":" +
                std::to_string(error.location->column) + "\n";
    code += "\nThe current file (module and unit tests):\n```\n" + candidate.source;
    if (!candidate.source.empty() && candidate.source.back() != '\n') code += '\n';
    code += "```\n";

    std::string instructions;
    int step = 1;
    for (const std::string& s : rule.instruction_steps) {
        // Rule texts that already number their options are kept verbatim.
        bool pre_numbered = !s.empty() && std::isdigit(static_cast<unsigned char>(s[0]));
        if (pre_numbered)
            instructions += s + "\n";
        else
            instructions += std::to_string(step++) + ". " + s + "\n";
    }
    if (!extra_instruction.empty()) instructions += extra_instruction + "\n";
    instructions +=
        "Return the complete corrected file in one fenced code block; keep executable code and "
        "tests unchanged.\n";

    prompt.user_sections = {
        {"Objective", rule.objective_text},
        {"Relevant Background", rule.background_text},
        {"Code with Error, and Tests", code},
        {"Instructions", instructions},
    };
    (void)task;
    return prompt;
}

std::optional<std::string> locate_preceding_call(std::string_view test_source, int assertion_line,
                                                 const std::vector<std::string>& module_method_names) {
    int line_count = 1;
    for (char c : test_source)
        if (c == '\n') ++line_count;
    if (assertion_line < 1 || assertion_line > line_count)
        throw LocationOutOfRange("line " + std::to_string(assertion_line) + " outside source");

    std::vector<FunctionInfo> fns = analyze_functions(test_source);
    const FunctionInfo* enclosing = nullptr;
    for (const FunctionInfo& f : fns)
        if (f.contains_line(assertion_line)) enclosing = &f;
    if (!enclosing)
        throw LocationOutOfRange("line " + std::to_string(assertion_line) +
                                 " is not inside a test function");

    std::vector<Token> tokens = lex(test_source);
    std::optional<std::string> found;
    for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
        if (tokens[i].line < enclosing->body_start_line) continue;
        if (tokens[i].line >= assertion_line) break;
        bool method_call = (tokens[i].text == "." || tokens[i].text == "::") &&
                           tokens[i + 2].text == "(";
        if (!method_call) continue;
        const std::string& name = tokens[i + 1].text;
        for (const std::string& m : module_method_names)
            if (m == name) found = name;
    }
    return found;
}

RepairOutcome repair_annotations(const CodeCandidate& candidate, const VerificationTask& task,
                                 const RunConfig& config, const std::vector<RepairRule>& registry,
                                 Gateway& gateway, VerifierClient& verifier,
                                 const StageObserver& observe) {
    RepairOutcome outcome;
    CodeCandidate current = candidate;
    SamplingContext ctx{gateway, verifier, task, config, observe};

    std::vector<std::string> module_methods;
    for (const FunctionInfo& f : analyze_functions(task.module_source))
        module_methods.push_back(f.name);

    for (int round = 1; round <= config.max_repair_rounds; ++round) {
        outcome.rounds_used = round;

        CodeCandidate check = current;
        check.provenance = Provenance{"tryverify", "", round, 0};
        VerifierReport report = verifier.run(check, task.name, config);
        current.report = check.report;

        std::optional<VerifierError> err = select_primary_error(report);
        if (!err) {
            outcome.status = RepairStatus::Success;
            outcome.final_candidate = current;
            return outcome;
        }

        const RepairRule& rule = route_error(*err, registry);
        outcome.rule_trace.push_back(rule.id);

        std::string extra;
        if (rule.id == "assertion" && err->location) {
            // Map the candidate-file line back into the test suite, then find
            // the module method invoked immediately before the assertion.
            std::optional<int> test_line = [&]() -> std::optional<int> {
                std::istringstream cs(current.source);
                std::string line;
                int n = 1;
                std::string target;
                while (std::getline(cs, line)) {
                    if (n == err->location->line) {
                        target = line;
                        break;
                    }
                    ++n;
                }
                if (target.empty()) return std::nullopt;
                std::istringstream ts(task.test_source);
                n = 1;
                while (std::getline(ts, line)) {
                    if (line == target) return n;
                    ++n;
                }
                return std::nullopt;
            }();
            if (test_line) {
                try {
                    auto method =
                        locate_preceding_call(task.test_source, *test_line, module_methods);
                    if (method)
                        extra = "The method invoked immediately before the failing assertion is "
                                "`" + *method + "`. Strengthen that method's postcondition so "
                                "the assertion holds.";
                } catch (const LocationOutOfRange&) {
                    // The assertion is not inside a test function; skip the hint.
                }
            }
        }

        PromptBundle prompt = build_repair_prompt(rule, current, task, *err, extra);
        Provenance prov{"repair_" + rule.id, rule.id, round, 0};
        current = sampled_rewrite(prompt, prov, current, ctx);
    }

    outcome.status = RepairStatus::Failure;
    outcome.final_candidate = current;
    return outcome;
}

}  // namespace veristruct
