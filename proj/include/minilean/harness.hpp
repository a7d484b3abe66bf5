#pragma once

// Problem corpora, the forward-chaining oracle, synthetic instance
// generation and the end-to-end evaluation loop.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minilean/gateway.hpp"
#include "minilean/interpreter.hpp"
#include "minilean/search.hpp"

namespace minilean {

// ---------------------------------------------------------------------------
// Corpus

struct ProblemRecord {
    std::string id;
    std::vector<std::string> context;
    std::string question;
    std::vector<std::string> options;
    std::string label;
    std::string theory_source;              // empty = must be formalized
    std::vector<std::string> gold_premises;
    std::map<std::string, std::string> proofs;  // style name -> script text
};

struct LoadError {
    std::string id;  // record id or "line N"
    std::string reason;
};

struct CorpusLoadResult {
    std::vector<ProblemRecord> records;  // sorted by id
    std::vector<LoadError> errors;
};

// One JSON object per line: {"id","context":[...],"question","options":[...],
// "label","theory":text,"gold_premises":[...],"proofs":{...}}. String fields
// "theory" and proof values may be "@relative/path" references resolved
// against the corpus file's directory.
CorpusLoadResult load_corpus(const std::string& path);

void write_corpus(const std::vector<ProblemRecord>& records, const std::string& path);

// ---------------------------------------------------------------------------
// Forward-chaining oracle
//
// Fragment: axioms are ground literals or universally quantified rules whose
// body is a conjunction of literals and whose head is a literal; the
// question is a ground literal.

class FragmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    std::vector<std::string> derived;  // canonical literal texts, sorted
    Verdict label = Verdict::Unknown;
    bool consistent = true;
    std::map<std::string, int> depths;  // derivation depth per literal text
};

OracleResult run_oracle(const Theory& theory, const FormulaPtr& question, int depth_cap = 5);

// ---------------------------------------------------------------------------
// Instance generation

struct GenParams {
    int num_constants = 4;
    int num_unary = 7;
    int num_binary = 2;
    int num_facts = 7;
    int num_rules = 10;  // <= 15 for the reference corpus
    int max_depth = 5;   // <= 5
};

struct GeneratedInstance {
    std::string id;
    Theory theory;               // includes a theorem declaration for the question
    FormulaPtr question;
    Verdict label;
    int derivation_depth = 0;    // oracle depth backing a True/False label
};

// Deterministic for a fixed seed; every instance is consistent and within
// the oracle fragment, labels cycle True/False/Unknown.
std::vector<GeneratedInstance> generate_instances(uint64_t seed, int count, const GenParams& params);

ProblemRecord record_from_instance(const GeneratedInstance& inst);

// ---------------------------------------------------------------------------
// Evaluation

struct PipelineConfig {
    SearchConfig search;
    GeneratorConfig generator;
    std::string scorer_command;        // empty = builtin generator
    std::string formalizer;            // "", "replay:<fixtures.jsonl>" or "http"
    std::string prompt_template_path;  // required when formalizer is set
    int workers = 1;
    std::string trace_path;  // search trace JSONL (single-problem runs)
};

struct SearchSummary {
    std::string status;
    size_t expanded = 0;
    size_t pruned = 0;
    size_t deduplicated = 0;
    double wall_time_ms = 0.0;
};

struct RecordOutcome {
    std::string id;
    std::string gold;
    std::string verdict;
    bool correct = false;
    std::string failure;  // non-empty when the record could not be run
    SearchSummary positive, negative;
    bool proof_found = false;
    bool proof_valid = false;
    std::string proof_script;
    int proof_tactics = 0;
    std::optional<double> recall_at_1, recall_at_4;
    int formalize_attempts = 0;
    double wall_time_ms = 0.0;
};

struct EvaluationReport {
    std::vector<RecordOutcome> records;
    size_t total = 0;
    size_t correct = 0;
    size_t inconsistent = 0;
    size_t timeouts = 0;            // searches (not records) that timed out
    size_t exhausted = 0;
    size_t generator_failures = 0;
    size_t record_failures = 0;     // records that could not be run at all
    size_t unknown_by_failure = 0;  // Unknown verdicts involving a timeout or failure
    double answer_accuracy = 0.0;
    // Valid replays among found proofs (per-proof validity).
    double proof_validity_rate = 0.0;
    // Correct answers that are additionally backed by a valid proof when one
    // was claimed (answer-linked variant).
    double proof_backed_accuracy = 0.0;
    std::optional<double> mean_recall_at_1, mean_recall_at_4;
    double wall_time_ms = 0.0;

    nlohmann::ordered_json to_json() const;
    std::string to_table() const;
};

using SolveFn = std::function<RecordOutcome(const ProblemRecord&)>;

// Full pipeline per record: obtain the theory (attached or via the
// formalizer), build duals from the first theorem declaration, run both
// searches, interpret. Per-record failures are recorded and the run
// continues.
RecordOutcome solve_record(const ProblemRecord& record, const PipelineConfig& config);

EvaluationReport evaluate(const std::vector<ProblemRecord>& corpus, const PipelineConfig& config);

// Same loop with an injected solver (used by tests and ablations).
EvaluationReport evaluate_with(const std::vector<ProblemRecord>& corpus, int workers,
                               const SolveFn& solve);

// The positive question formula encoded by a theory: the statement of its
// first theorem, un-negated when the theorem states the negative form.
FormulaPtr question_from_theory(const Theory& theory);

}  // namespace minilean
