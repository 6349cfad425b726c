#pragma once

#include <functional>
#include <string>
#include <vector>

#include "veristruct/llm.hpp"
#include "veristruct/task.hpp"
#include "veristruct/verifier.hpp"

namespace veristruct {

// Prompt material for one generation module. The in-context examples are
// fixed and disjoint from every benchmark under evaluation.
struct GenerationModuleSpec {
    ModuleId id;
    std::string stage_label;  // "m1_view", ...
    std::string objective_text;
    std::vector<std::string> guideline_texts;
    std::vector<std::string> instruction_steps;
    std::vector<std::string> example_texts;
    bool needs_refinement_pass = false;  // true only for M1
};

// The four module specs, canonical order.
const std::vector<GenerationModuleSpec>& default_generation_modules();
const GenerationModuleSpec& generation_module(ModuleId id);

// The view-refinement variant of the M1 prompt: same skeleton, instructions
// emphasizing abstraction, minimality, and logical coherence.
const GenerationModuleSpec& view_refinement_module();

// Five sections in module-prompt order: Objective, Verus Guidelines,
// Step-by-Step Instructions, Examples, Code and Tests. The last carries the
// current candidate (annotations accumulated so far) with the tests.
PromptBundle build_generation_prompt(const GenerationModuleSpec& spec,
                                     const CodeCandidate& candidate,
                                     const VerificationTask& task);

// Index of the sample with the highest verified count; ties break toward the
// lowest index so replay is deterministic. Empty input -> -1.
int select_best_index(const std::vector<int>& verified_counts);

// Observer for per-invocation bookkeeping: stage label plus the candidate
// adopted after that invocation.
using StageObserver = std::function<void(const std::string& stage, const CodeCandidate& adopted)>;

struct SamplingContext {
    Gateway& gateway;
    VerifierClient& verifier;
    const VerificationTask& task;
    const RunConfig& config;
    StageObserver observe;  // called once per LLM invocation
};

// The shared best-of-n step used by every module and repair invocation:
// request n samples, extract a full-file candidate from each, discard samples
// failing extraction or preservation, verify the survivors, and adopt the one
// with the most verified functions. The winner is adopted even when its count
// is below the input's, so later repairs can see the faulty contracts. When
// nothing survives, the input candidate is returned unchanged.
// provenance.sample_index is overwritten per sample.
CodeCandidate sampled_rewrite(const PromptBundle& prompt, const Provenance& provenance,
                              const CodeCandidate& current, SamplingContext& ctx);

CodeCandidate exec_with_sampling(const GenerationModuleSpec& spec, const CodeCandidate& current,
                                 SamplingContext& ctx);

// One extra sampled invocation reconsidering the view with fewer, more
// abstract components. Runs after M1 whenever the candidate actually contains
// a view implementation; best-of selection makes it a safe no-op otherwise.
CodeCandidate refine_view(const CodeCandidate& current, SamplingContext& ctx);

bool has_view_impl(std::string_view source);

struct GenerationOutcome {
    CodeCandidate candidate;
    Plan plan;
};

// Stage 1: plan, then run each planned module in canonical order with
// sampling, refining the view right after M1.
GenerationOutcome gen_annotations(const VerificationTask& task, const RunConfig& config,
                                  Gateway& gateway, VerifierClient& verifier,
                                  const StageObserver& observe);

}  // namespace veristruct
