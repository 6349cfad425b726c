#include "veristruct/generation.hpp"

#include <algorithm>

#include "veristruct/errors.hpp"
#include "veristruct/planner.hpp"
#include "veristruct/source_analysis.hpp"

namespace veristruct {

namespace {

constexpr const char* kSystemText =
    "You are an expert in Verus, the SMT-backed deductive verifier for Rust. You add "
    "verification annotations to data-structure modules so that the verifier accepts them. "
    "You never modify executable code or unit tests; you only add annotations.";

const char* kViewOverview = R"(A View implementation maps a concrete data structure to the
mathematical abstraction its specifications reason about. Implement the trait as

    impl View for TheType {
        type V = <a logical type>;
        closed spec fn view(&self) -> Self::V { ... }
    }

After that, specifications refer to the abstraction as `x.view()` or the shorthand `x@`.)";

const char* kLogicalTypes = R"(Logical types: `nat` and `int` are unbounded integers; `Seq<T>`,
`Set<T>`, and `Map<K, V>` are mathematical collections. A `Vec<T>` value `v` abstracts to the
sequence `v@`. Useful Seq operations: `subrange(a, b)`, `add`, `push`, `update`, `len`. These
types exist only in specifications; executable code cannot construct them.)";

const char* kSpecSyntax = R"(Specification syntax: `&&&` and `|||` chain conjuncts and
disjuncts; integer casts are written `expr as nat` / `expr as int`; quantifiers are
`forall|i: int| ...` and `exists|i: int| ...`. Specification functions are declared with
`spec fn` and are pure; annotations may call only specification functions.)";

const char* kInvariantHowTo = R"(A type invariant is declared as

    #[verifier::type_invariant]
    closed spec fn inv(&self) -> bool { ... }

and every constructor and mutating method must preserve it. Inside a method body, bring the
invariant into the proof context with `proof { use_type_invariant(&self); }`.)";

const char* kInvariantPatterns =
    "Focus on common patterns such as range constraints, capacity checks, and arithmetic "
    "relationships between fields.";

const char* kMutabilityRule = R"(Mutability: in `requires` clauses of a method taking
`&mut self`, use `old(self)` to refer to the value prior to the call; in `ensures`, `old(self)`
is the pre-state and `self` is the post-state. Name return values as `-> (ret: T)` so `ensures`
clauses can constrain `ret`.)";

const char* kModeRule =
    "Annotations (requires, ensures, invariants, asserts) may call only specification "
    "functions. Calling an executable function from an annotation is a mode error.";

const char* kProofBlockHowTo = R"(Proof blocks are `proof { ... }` regions embedded in
executable code that give the verifier hints: `use_type_invariant(&self)`, `assert(...)`,
lemma calls. Loops carry `invariant` clauses listed between the loop head and its body, and
`decreases` clauses establish termination.)";

const char* kWholeFileRule =
    "Emit the complete file in one fenced code block, keeping every executable item and every "
    "unit test exactly as given.";

// In-context examples. Fixed across tasks and disjoint from every benchmark
// under evaluation.
const char* kViewExampleDll = R"(A View for a doubly-linked list that stores elements front to
back. The abstraction hides nodes and pointers entirely:

```rust
impl<T: Copy> View for DoublyLinkedList<T> {
    type V = Seq<T>;
    closed spec fn view(&self) -> Seq<T> {
        self.nodes@.map(|i: int, node: DllEntry<T>| node.value)
    }
}
```)";

const char* kViewExampleStack = R"(A View for a bounded stack. The logical object is the pair
of the stored sequence and the bound, because both appear in client-visible behavior:

```rust
impl<T: Copy> View for BoundedStack<T> {
    type V = (Seq<T>, nat);
    closed spec fn view(&self) -> (Seq<T>, nat) {
        (self.items@, self.limit as nat)
    }
}
```)";

const char* kInvariantExample = R"(Type invariant for the bounded stack: the stored length
never exceeds the bound, and the bound is positive.

```rust
#[verifier::type_invariant]
closed spec fn inv(&self) -> bool {
    &&& self.items.len() <= self.limit
    &&& self.limit > 0
}
```)";

const char* kSpecExample = R"(Contracts for the bounded stack's push, written against the
abstraction rather than the fields:

```rust
pub fn push(&mut self, value: T) -> (ok: bool)
    ensures
        ok == (old(self)@.0.len() < old(self)@.1),
        ok ==> self@.0 == old(self)@.0.push(value),
        !ok ==> self@.0 == old(self)@.0,
{ ... }
```)";

const char* kProofExample = R"(A proof block making the type invariant available before index
arithmetic, plus a counted loop with its invariant:

```rust
pub fn drain(&mut self) {
    proof { use_type_invariant(&self); }
    let mut i: usize = 0;
    while i < self.items.len()
        invariant i <= self.items.len(),
        decreases self.items.len() - i,
    { i = i + 1; }
}
```)";

std::vector<GenerationModuleSpec> build_modules() {
    std::vector<GenerationModuleSpec> mods;

    GenerationModuleSpec m1;
    m1.id = ModuleId::M1_View;
    m1.stage_label = "m1_view";
    m1.objective_text =
        "Generate a View trait implementation for the data-structure module below, so that "
        "specifications can describe its behavior against a mathematical abstraction. Return "
        "the complete file with the View implementation added.";
    m1.guideline_texts = {kViewOverview, kLogicalTypes, kSpecSyntax};
    m1.instruction_steps = {
        "Infer what should be contained in the View trait.",
        "Generate the view based on the inferred information.",
        kWholeFileRule,
    };
    m1.example_texts = {kViewExampleDll, kViewExampleStack};
    m1.needs_refinement_pass = true;
    mods.push_back(std::move(m1));

    GenerationModuleSpec m2;
    m2.id = ModuleId::M2_TypeInvariant;
    m2.stage_label = "m2_type_invariant";
    m2.objective_text =
        "Generate the type invariant for the data-structure module below: the logical property "
        "every instance must satisfy. Return the complete file with the invariant added.";
    m2.guideline_texts = {kInvariantHowTo, kInvariantPatterns, kSpecSyntax};
    m2.instruction_steps = {
        "Identify the relationships between fields that every reachable instance maintains.",
        "Declare them in a single #[verifier::type_invariant] spec function.",
        kWholeFileRule,
    };
    m2.example_texts = {kInvariantExample};
    mods.push_back(std::move(m2));

    GenerationModuleSpec m3;
    m3.id = ModuleId::M3_Specification;
    m3.stage_label = "m3_specification";
    m3.objective_text =
        "Generate specification functions, preconditions and postconditions for every public "
        "method of the module below. Return the complete file with the contracts added.";
    m3.guideline_texts = {kMutabilityRule, kModeRule, kSpecSyntax};
    m3.instruction_steps = {
        "Write each contract against the view abstraction, not the concrete fields.",
        "Add spec functions for properties the contracts need to share.",
        "Make the contracts strong enough to prove the assertions in the unit tests.",
        kWholeFileRule,
    };
    m3.example_texts = {kSpecExample};
    mods.push_back(std::move(m3));

    GenerationModuleSpec m4;
    m4.id = ModuleId::M4_ProofBlocks;
    m4.stage_label = "m4_proof_blocks";
    m4.objective_text =
        "Generate the proof blocks and loop invariants the module below needs to verify. "
        "Return the complete file with the proofs added.";
    m4.guideline_texts = {kProofBlockHowTo, kSpecSyntax};
    m4.instruction_steps = {
        "Construct the appropriate proof blocks and loop invariants, explicitly incorporating "
        "type invariants into the proof context, and applying relevant lemmas when necessary.",
        "Insert use_type_invariant before field accesses whose safety depends on the invariant.",
        kWholeFileRule,
    };
    m4.example_texts = {kProofExample};
    mods.push_back(std::move(m4));

    return mods;
}

GenerationModuleSpec build_refinement_module() {
    GenerationModuleSpec spec;
    spec.id = ModuleId::M1_View;
    spec.stage_label = "m1_view_refine";
    spec.objective_text =
        "Reconsider the View implementation already present in the file below and reconstruct "
        "it with fewer, more abstract components. Return the complete file with the "
        "reconstructed View.";
    spec.guideline_texts = {kViewOverview, kLogicalTypes};
    spec.instruction_steps = {
        "Judge the current View by abstraction, minimality, and logical coherence rather than "
        "by how completely it mirrors the concrete fields.",
        "A Cartesian product of all fields is rarely the right abstraction; hide "
        "implementation indices and layout wherever client-visible behavior does not need "
        "them.",
        kWholeFileRule,
    };
    spec.example_texts = {kViewExampleDll, kViewExampleStack};
    spec.needs_refinement_pass = false;
    return spec;
}

std::string code_and_tests_text(const std::string& source) {
    std::string out = "The module and its unit tests, as the single file under verification:\n";
    out += "```\n";
    out += source;
    if (!source.empty() && source.back() != '\n') out += '\n';
    out += "```\n";
    return out;
}

}  // namespace

const std::vector<GenerationModuleSpec>& default_generation_modules() {
    static const std::vector<GenerationModuleSpec> mods = build_modules();
    return mods;
}

const GenerationModuleSpec& generation_module(ModuleId id) {
    for (const GenerationModuleSpec& m : default_generation_modules())
        if (m.id == id) return m;
    throw Error("no generation module for " + to_string(id));
}

const GenerationModuleSpec& view_refinement_module() {
    static const GenerationModuleSpec spec = build_refinement_module();
    return spec;
}

PromptBundle build_generation_prompt(const GenerationModuleSpec& spec,
                                     const CodeCandidate& candidate,
                                     const VerificationTask& task) {
    PromptBundle prompt;
    prompt.system_text = kSystemText;
    prompt.module_tag = spec.stage_label;

    std::string guidelines;
    for (const std::string& g : spec.guideline_texts) guidelines += g + "\n\n";

    std::string instructions;
    int step = 1;
    for (const std::string& s : spec.instruction_steps)
        instructions += std::to_string(step++) + ". " + s + "\n";

    std::string examples;
    for (const std::string& e : spec.example_texts) examples += e + "\n\n";

    prompt.user_sections = {
        {"Objective", spec.objective_text},
        {"Verus Guidelines", guidelines},
        {"Step-by-Step Instructions", instructions},
        {"Examples", examples},
        {"Code and Tests", code_and_tests_text(candidate.source)},
    };
    (void)task;
    return prompt;
}

int select_best_index(const std::vector<int>& verified_counts) {
    if (verified_counts.empty()) return -1;
    int best = 0;
    for (int i = 1; i < static_cast<int>(verified_counts.size()); ++i)
        if (verified_counts[static_cast<std::size_t>(i)] >
            verified_counts[static_cast<std::size_t>(best)])
            best = i;
    return best;
}

CodeCandidate sampled_rewrite(const PromptBundle& prompt, const Provenance& provenance,
                              const CodeCandidate& current, SamplingContext& ctx) {
    std::vector<std::string> responses = ctx.gateway.complete(prompt, ctx.config.sample_count);

    std::vector<CodeCandidate> survivors;
    std::vector<int> counts;
    for (int i = 0; i < static_cast<int>(responses.size()); ++i) {
        auto code = extract_candidate(responses[static_cast<std::size_t>(i)]);
        if (!code) continue;
        CodeCandidate cand;
        cand.source = std::move(*code);
        cand.provenance = provenance;
        cand.provenance.sample_index = i + 1;
        bool preserved = false;
        try {
            preserved = check_preservation(ctx.task, cand.source);
        } catch (const MalformedSource&) {
            preserved = false;  // unparseable sample, same as failing preservation
        }
        if (!preserved) continue;
        ctx.verifier.run(cand, ctx.task.name, ctx.config);
        counts.push_back(count_verified(*cand.report));
        survivors.push_back(std::move(cand));
    }

    if (survivors.empty()) {
        // Nothing usable came back; keep the input and move on.
        if (ctx.observe) ctx.observe(prompt.module_tag, current);
        return current;
    }

    int best = select_best_index(counts);
    CodeCandidate adopted = survivors[static_cast<std::size_t>(best)];
    if (ctx.observe) ctx.observe(prompt.module_tag, adopted);
    return adopted;
}

CodeCandidate exec_with_sampling(const GenerationModuleSpec& spec, const CodeCandidate& current,
                                 SamplingContext& ctx) {
    PromptBundle prompt = build_generation_prompt(spec, current, ctx.task);
    Provenance prov{spec.stage_label, to_string(spec.id), 1, 0};
    return sampled_rewrite(prompt, prov, current, ctx);
}

bool has_view_impl(std::string_view source) {
    return source.find("View for") != std::string_view::npos;
}

CodeCandidate refine_view(const CodeCandidate& current, SamplingContext& ctx) {
    if (!has_view_impl(current.source)) return current;  // nothing to refine
    return exec_with_sampling(view_refinement_module(), current, ctx);
}

GenerationOutcome gen_annotations(const VerificationTask& task, const RunConfig& config,
                                  Gateway& gateway, VerifierClient& verifier,
                                  const StageObserver& observe) {
    CodeCandidate candidate;
    candidate.source = task.combined_source();
    candidate.provenance = {"input", "", 1, 0};

    PlannerDecision decision = exec_planner(task, config, gateway);
    if (observe) observe("planner", candidate);

    SamplingContext ctx{gateway, verifier, task, config, observe};
    for (ModuleId id : decision.plan.steps) {
        const GenerationModuleSpec& spec = generation_module(id);
        candidate = exec_with_sampling(spec, candidate, ctx);
        if (spec.needs_refinement_pass) candidate = refine_view(candidate, ctx);
    }
    return GenerationOutcome{std::move(candidate), decision.plan};
}

}  // namespace veristruct
