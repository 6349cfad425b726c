#include "doctest.h"

#include "support/fixture_env.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/source_analysis.hpp"

using namespace veristruct;

namespace {

const char* kToyAnnotated = R"(use vstd::prelude::*;

verus! {

pub struct Gauge {
    level: u32,
}

impl View for Gauge {
    type V = nat;
    closed spec fn view(&self) -> nat {
        self.level as nat
    }
}

impl Gauge {
    #[verifier::type_invariant]
    closed spec fn inv(&self) -> bool {
        self.level <= 100
    }

    pub fn new() -> Gauge {
        Gauge { level: 0 }
    }

    pub fn bump(&mut self) -> (ret: bool)
        requires
            old(self).level < 100,
        ensures
            ret ==> self@ == old(self)@ + 1,
    {
        proof {
            use_type_invariant(&self);
        }
        self.level = self.level + 1;
        true
    }
}

fn main() {
    let mut g = Gauge::new();
    let _ = g.bump();
}

} // verus!
)";

const char* kToyStrippedEquivalent = R"(use vstd::prelude::*;

verus! {

pub struct Gauge {
    level: u32,
}

impl Gauge {
    pub fn new() -> Gauge {
        Gauge { level: 0 }
    }

    pub fn bump(&mut self) -> bool {
        self.level = self.level + 1;
        true
    }
}

fn main() {
    let mut g = Gauge::new();
    let _ = g.bump();
}

} // verus!
)";

}  // namespace

TEST_CASE("strip removes every annotation construct from the toy file") {
    std::string stripped = strip_annotations(kToyAnnotated);
    CHECK(stripped == strip_annotations(kToyStrippedEquivalent));
    CHECK(stripped.find("spec") == std::string::npos);
    CHECK(stripped.find("ensures") == std::string::npos);
    CHECK(stripped.find("requires") == std::string::npos);
    CHECK(stripped.find("proof") == std::string::npos);
    CHECK(stripped.find("type_invariant") == std::string::npos);
    CHECK(stripped.find("View") == std::string::npos);
    CHECK(stripped.find("(ret") == std::string::npos);
}

TEST_CASE("strip is the identity on annotation-free sources, modulo whitespace") {
    std::string source = testenv::slurp(testenv::fixtures_dir() / "benchmarks" / "ringbuffer" /
                                        "module.rs");
    std::string once = strip_annotations(source);
    // Token content is unchanged: stripping the stripped text changes nothing.
    CHECK(strip_annotations(once) == once);
    CHECK(once.find("enqueue") != std::string::npos);
    CHECK(once.find("% self . ring . len ( )") != std::string::npos);
}

TEST_CASE("strip is idempotent across all benchmark fixtures") {
    const char* names[] = {"atomics",    "bitmap",   "treemap",    "invariants",
                           "node",       "option",   "ringbuffer", "rwlockvstd",
                           "setfromvec", "transfer", "vectors"};
    for (const char* name : names) {
        auto task = testenv::load_benchmark(name);
        std::string once = strip_annotations(task.combined_source());
        CHECK(strip_annotations(once) == once);
    }
}

TEST_CASE("check_preservation accepts annotation-only additions") {
    VerificationTask task = testenv::load_benchmark("ringbuffer");
    CHECK(check_preservation(task, task.combined_source()));

    // Adding a spec twin plus contracts must pass: the stripper removes them.
    std::string candidate = task.combined_source();
    std::string needle = "pub fn is_full(&self) -> bool {";
    auto pos = candidate.find(needle);
    REQUIRE(pos != std::string::npos);
    candidate.insert(pos,
                     "pub closed spec fn is_full_spec(&self) -> bool {\n"
                     "        self@.0.len() == self@.1 - 1\n"
                     "    }\n\n    ");
    CHECK(check_preservation(task, candidate));
}

TEST_CASE("check_preservation rejects executable edits") {
    VerificationTask task = testenv::load_benchmark("ringbuffer");

    // A changed test assertion literal is an edit, not an annotation.
    std::string mutant = task.combined_source();
    std::string needle = "assert(rb.capacity() == 4);";
    auto pos = mutant.find(needle);
    REQUIRE(pos != std::string::npos);
    mutant.replace(pos, needle.size(), "assert(rb.capacity() == 5);");
    CHECK_FALSE(check_preservation(task, mutant));

    // Dropping a statement from a method body is rejected too.
    std::string chopped = task.combined_source();
    needle = "self.head = self.tail;";
    pos = chopped.find(needle);
    REQUIRE(pos != std::string::npos);
    chopped.replace(pos, needle.size(), "");
    CHECK_FALSE(check_preservation(task, chopped));
}

TEST_CASE("comments do not affect preservation") {
    VerificationTask task = testenv::load_benchmark("atomics");
    std::string candidate = task.combined_source();
    std::string needle = "pub fn reset(&mut self) {";
    auto pos = candidate.find(needle);
    REQUIRE(pos != std::string::npos);
    candidate.insert(pos, "// zeroes the counter\n    ");
    CHECK(check_preservation(task, candidate));
}

TEST_CASE("named return values strip back to the plain type") {
    std::string with_named = "fn f(x: u32) -> (ret: u32) { x }";
    std::string plain = "fn f(x: u32) -> u32 { x }";
    CHECK(strip_annotations(with_named) == strip_annotations(plain));
}

TEST_CASE("loop invariant and decreases clauses strip from while loops") {
    std::string annotated = R"(
fn count(n: u32) -> u32 {
    let mut i: u32 = 0;
    while i < n
        invariant
            i <= n,
        decreases n - i,
    {
        i = i + 1;
    }
    i
}
)";
    std::string plain = R"(
fn count(n: u32) -> u32 {
    let mut i: u32 = 0;
    while i < n {
        i = i + 1;
    }
    i
}
)";
    CHECK(strip_annotations(annotated) == strip_annotations(plain));
}

TEST_CASE("impl blocks left empty by stripping disappear") {
    std::string annotated = R"(
struct S { x: u32 }
impl S {
    spec fn ghost_len(&self) -> nat { self.x as nat }
}
fn main() {}
)";
    std::string plain = "struct S { x: u32 }\nfn main() {}\n";
    CHECK(strip_annotations(annotated) == strip_annotations(plain));
}

TEST_CASE("malformed sources are reported, not mangled") {
    CHECK_THROWS_AS(strip_annotations("fn f() { proof { "), MalformedSource);
    CHECK_THROWS_AS(strip_annotations("let s = \"unterminated"), MalformedSource);
    CHECK_THROWS_AS(strip_annotations("/* never closed"), MalformedSource);
}

TEST_CASE("analyze_functions counts executable functions only") {
    auto fns = analyze_functions(kToyAnnotated);
    REQUIRE(fns.size() == 3);  // new, bump, main; spec fns excluded
    CHECK(fns[0].name == "new");
    CHECK(fns[1].name == "bump");
    CHECK(fns[2].name == "main");
    CHECK(fns[1].signature_line < fns[1].body_end_line);
}

TEST_CASE("benchmark fixtures have the declared function counts") {
    const std::pair<const char*, int> expected[] = {
        {"atomics", 11},    {"bitmap", 14},  {"treemap", 21},    {"invariants", 7},
        {"node", 12},       {"option", 15},  {"ringbuffer", 13}, {"rwlockvstd", 5},
        {"setfromvec", 10}, {"transfer", 5}, {"vectors", 16},
    };
    int total = 0;
    for (const auto& [name, count] : expected) {
        auto task = testenv::load_benchmark(name);
        CHECK_MESSAGE(count_exec_functions(task.combined_source()) == count, name);
        total += count;
    }
    CHECK(total == 129);
}
