#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "minilean/interpreter.hpp"
#include "minilean/parser.hpp"
#include "minilean/search.hpp"
#include "minilean/harness.hpp"
#include "support/test_util.hpp"

using namespace minilean;

namespace {

// generator driven by a fixed table: canonical state text -> candidates
class ScriptedGenerator : public TacticGenerator {
public:
    std::map<std::string, std::vector<std::pair<std::string, double>>> table;

    GenerateResult generate(const Theory&, const ProofState& state, size_t) override {
        auto it = table.find(canonical_state_text(state));
        if (it == table.end()) return std::vector<Candidate>{};
        std::vector<Candidate> out;
        for (const auto& [text, lp] : it->second)
            out.push_back({parse_tactic(text), lp, Provenance::Builtin});
        return out;
    }
};

// keeps every goal open forever: endless fresh obligations
class NeverClosingGenerator : public TacticGenerator {
public:
    GenerateResult generate(const Theory&, const ProofState& state, size_t) override {
        if (state.goals.empty()) return std::vector<Candidate>{};
        size_t n = state.goals.front().hyps.size();
        Tactic t = parse_tactic("have grow" + std::to_string(n) + " : Blue Cat");
        return std::vector<Candidate>{{t, -0.01, Provenance::Builtin}};
    }
};

GeneratorFactory builtin_factory(const Theory& theory) {
    return [&theory] {
        return std::unique_ptr<TacticGenerator>(new BuiltinGenerator(theory, GeneratorConfig{}));
    };
}

}  // namespace

TEST_CASE("a one-step proof is found in one expansion") {
    Theory t = parse_theory(
                   "constant obj : Type\nconstant c : obj\nconstant P : obj → Prop\n"
                   "axiom A1 : P c\n")
                   .theory;
    BuiltinGenerator gen(t, GeneratorConfig{});
    SearchOutcome out = search(t, parse_formula("P c"), gen, SearchConfig{});
    REQUIRE(out.proved());
    CHECK(out.stats.expanded == 1);
    REQUIRE(out.proof.size() == 1);
    CHECK(tactic_text(out.proof[0]) == "exact A1");
}

TEST_CASE("the frontier pops the higher cumulative log-probability first") {
    Theory t = testutil::load_golden("cow.thy");
    ScriptedGenerator gen;
    ProofState root = init_state(t, parse_formula("Blue Cat ∧ Nice Cat"));
    // two children: splitting (-0.5) and a have detour (-0.1); the detour
    // leads to a provable state and must be expanded first
    gen.table[canonical_state_text(root)] = {{"have d : Nice Tiger := T9", -0.1}, {"split", -0.5}};
    ProofState detour = std::get<ProofState>(apply_tactic(t, root, parse_tactic("have d : Nice Tiger := T9")));
    gen.table[canonical_state_text(detour)] = {{"split", -0.1}};
    ProofState after_split = std::get<ProofState>(apply_tactic(t, detour, parse_tactic("split")));
    gen.table[canonical_state_text(after_split)] = {{"exact T1", -0.1}};
    ProofState one_left = std::get<ProofState>(apply_tactic(t, after_split, parse_tactic("exact T1")));
    gen.table[canonical_state_text(one_left)] = {{"exact T2", -0.1}};

    SearchOutcome out = search(t, parse_formula("Blue Cat ∧ Nice Cat"), gen, SearchConfig{});
    REQUIRE(out.proved());
    // root, detour, after_split, one_left; the -0.5 split child never expands
    CHECK(out.stats.expanded == 4);
    CHECK(tactic_text(out.proof[0]) == "have d : Nice Tiger := T9");
}

TEST_CASE("an empty theory with an atomic target exhausts after one expansion") {
    Theory t = parse_theory("constant obj : Type\nconstant c : obj\nconstant P : obj → Prop\n").theory;
    BuiltinGenerator gen(t, GeneratorConfig{});
    SearchOutcome out = search(t, parse_formula("P c"), gen, SearchConfig{});
    CHECK(out.status == SearchStatus::Exhausted);
    CHECK(out.stats.expanded == 1);
}

TEST_CASE("is_subsumed checks multiset containment of goal texts") {
    std::vector<std::vector<std::string>> expanded = {{"G1"}};
    CHECK(is_subsumed({"G1", "G2"}, expanded, SubsumptionMode::MultisetContainment));
    CHECK(is_subsumed({"G1"}, expanded, SubsumptionMode::MultisetContainment));
    std::vector<std::vector<std::string>> bigger = {{"G1", "G2"}};
    CHECK(!is_subsumed({"G1"}, bigger, SubsumptionMode::MultisetContainment));
    CHECK(!is_subsumed({"G1"}, {}, SubsumptionMode::MultisetContainment));
    // multiset: multiplicity matters
    std::vector<std::vector<std::string>> doubled = {{"G1", "G1"}};
    CHECK(!is_subsumed({"G1", "G2"}, doubled, SubsumptionMode::MultisetContainment));
    CHECK(is_subsumed({"G1", "G1", "G3"}, doubled, SubsumptionMode::MultisetContainment));
}

TEST_CASE("prefix mode requires an exact leading sequence") {
    std::vector<std::vector<std::string>> expanded = {{"G2"}};
    CHECK(!is_subsumed({"G1", "G2"}, expanded, SubsumptionMode::PrefixSequence));
    CHECK(is_subsumed({"G2", "G1"}, expanded, SubsumptionMode::PrefixSequence));
}

TEST_CASE("identical states are deduplicated, not re-expanded") {
    Theory t = testutil::load_golden("cow.thy");
    ScriptedGenerator gen;
    ProofState root = init_state(t, parse_formula("Blue Cat"));
    // two distinct detours converging on the same state
    gen.table[canonical_state_text(root)] = {{"have a : Nice Cat := T2", -0.1},
                                             {"have b : Nice Cat := T2", -0.2}};
    SearchOutcome out = search(t, parse_formula("Blue Cat"), gen, SearchConfig{});
    CHECK(out.status == SearchStatus::Exhausted);
    CHECK(out.stats.deduplicated == 1);
}

TEST_CASE("search traces report events") {
    Theory t = testutil::load_golden("hudson.thy");
    std::ostringstream trace;
    BuiltinGenerator gen(t, GeneratorConfig{});
    SearchOutcome out =
        search(t, parse_formula("often_meow Hudson"), gen, SearchConfig{}, trace_to_stream(trace));
    REQUIRE(out.proved());
    std::string log = trace.str();
    CHECK(log.find("\"event\":\"pop\"") != std::string::npos);
    CHECK(log.find("\"event\":\"expand\"") != std::string::npos);
    CHECK(log.find("\"event\":\"proved\"") != std::string::npos);
}

TEST_CASE("proved outcomes replay as valid proofs") {
    for (const char* name : {"hudson.thy", "cow.thy", "f4_library.thy", "f7_chain.thy"}) {
        Theory t = testutil::load_golden(name);
        FormulaPtr question = question_from_theory(t);
        REQUIRE(question != nullptr);
        DualOutcome duals = prove_both(t, question, builtin_factory(t), SearchConfig{});
        const SearchOutcome* proved =
            duals.positive.proved() ? &duals.positive : duals.negative.proved() ? &duals.negative : nullptr;
        REQUIRE(proved != nullptr);
        FormulaPtr target = duals.positive.proved() ? question : negate(question);
        ProofReport report = check_script(t, target, script_from_path(proved->proof));
        CHECK(report.valid());
    }
}

TEST_CASE("two runs on identical inputs are byte-identical modulo wall time") {
    Theory t = testutil::load_golden("cow.thy");
    auto run = [&] {
        BuiltinGenerator gen(t, GeneratorConfig{});
        return search(t, parse_formula("¬ Chases Cow Cow"), gen, SearchConfig{});
    };
    SearchOutcome a = run();
    SearchOutcome b = run();
    REQUIRE(a.proved());
    REQUIRE(b.proved());
    CHECK(a.stats.expanded == b.stats.expanded);
    CHECK(a.stats.pruned_subsumed == b.stats.pruned_subsumed);
    CHECK(a.stats.deduplicated == b.stats.deduplicated);
    REQUIRE(a.proof.size() == b.proof.size());
    for (size_t i = 0; i < a.proof.size(); ++i)
        CHECK(tactic_text(a.proof[i]) == tactic_text(b.proof[i]));
}

TEST_CASE("a generator that never closes goals times out within budget") {
    Theory t = testutil::load_golden("cow.thy");
    NeverClosingGenerator gen;
    SearchConfig cfg;
    cfg.time_budget_secs = 1.0;
    auto start = std::chrono::steady_clock::now();
    SearchOutcome out = search(t, parse_formula("Blue Cat"), gen, cfg);
    double wall_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(out.status == SearchStatus::Timeout);
    CHECK(wall_secs <= cfg.time_budget_secs * 1.05);
}

TEST_CASE("prove_both runs both polarities with separate budgets") {
    Theory hudson = testutil::load_golden("hudson.thy");
    DualOutcome h = prove_both(hudson, parse_formula("often_meow Hudson"),
                               builtin_factory(hudson), SearchConfig{});
    CHECK(h.positive.proved());
    CHECK(!h.negative.proved());

    Theory cow = testutil::load_golden("cow.thy");
    DualOutcome c =
        prove_both(cow, parse_formula("Chases Cow Cow"), builtin_factory(cow), SearchConfig{});
    CHECK(!c.positive.proved());
    CHECK(c.negative.proved());

    Theory turkey = testutil::load_golden("turkey_q3.thy");
    DualOutcome u = prove_both(turkey, parse_formula("is_wild_turkey Joey"),
                               builtin_factory(turkey), SearchConfig{});
    CHECK(!u.positive.proved());
    CHECK(!u.negative.proved());
}

TEST_CASE("concurrent duals agree with sequential duals") {
    Theory cow = testutil::load_golden("cow.thy");
    SearchConfig cfg;
    cfg.concurrent_duals = true;
    DualOutcome fast =
        prove_both(cow, parse_formula("Chases Cow Cow"), builtin_factory(cow), cfg);
    CHECK(!fast.positive.proved());
    CHECK(fast.negative.proved());
}

TEST_CASE("generator failure aborts one search but not the dual") {
    Theory t = testutil::load_golden("cow.thy");
    GeneratorFactory dead = [] {
        return std::unique_ptr<TacticGenerator>(new ExternalGenerator(std::string(STUB_SCORER) + " die"));
    };
    DualOutcome duals = prove_both(t, parse_formula("Chases Cow Cow"), dead, SearchConfig{});
    CHECK(duals.positive.status == SearchStatus::GeneratorFailure);
    CHECK(duals.negative.status == SearchStatus::GeneratorFailure);
    CHECK(!duals.positive.error.empty());
}

TEST_CASE("disabling subsumption never changes verdicts on generated instances") {
    auto instances = generate_instances(11, 12, GenParams{});
    for (const auto& inst : instances) {
        SearchConfig with;
        SearchConfig without;
        without.subsumption = false;
        DualOutcome a = prove_both(inst.theory, inst.question, builtin_factory(inst.theory), with);
        DualOutcome b =
            prove_both(inst.theory, inst.question, builtin_factory(inst.theory), without);
        CHECK(interpret(a.positive, a.negative) == interpret(b.positive, b.negative));
        CHECK(a.positive.stats.expanded <= b.positive.stats.expanded);
        CHECK(a.negative.stats.expanded <= b.negative.stats.expanded);
    }
}
