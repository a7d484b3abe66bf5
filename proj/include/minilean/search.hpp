#pragma once

// Best-first proof search. The frontier is a max-priority queue keyed by
// cumulative log-probability (sum over the tactic path), ties broken by
// canonical state text. Popped states are skipped when an identical canonical
// state was already expanded (dedup) or when an expanded state's goal
// multiset is contained in theirs (subsumption).

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "minilean/generator.hpp"
#include "minilean/kernel.hpp"

namespace minilean {

struct SearchNode {
    ProofState state;
    std::vector<Tactic> path;  // from the root
    double logprob = 0.0;      // cumulative, <= 0
    std::string state_text;    // cached canonical text
};

enum class SubsumptionMode { MultisetContainment, PrefixSequence };

struct SearchConfig {
    double time_budget_secs = 180.0;
    size_t num_candidates = 64;
    size_t max_expansions = 0;  // 0 = unbounded
    bool subsumption = true;
    SubsumptionMode subsumption_mode = SubsumptionMode::MultisetContainment;
    unsigned random_seed = 0;  // reserved for stochastic scorers
    bool concurrent_duals = false;
};

enum class SearchStatus { Proved, Timeout, Exhausted, GeneratorFailure };

struct SearchStats {
    size_t expanded = 0;
    size_t pruned_subsumed = 0;
    size_t deduplicated = 0;
    size_t generated = 0;
    double wall_time_ms = 0.0;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    std::vector<Tactic> proof;  // set iff status == Proved
    SearchStats stats;
    std::string error;  // generator failure detail

    bool proved() const { return status == SearchStatus::Proved; }
};

std::string search_status_name(SearchStatus s);

// JSONL event sink for traces (pop / expand / dedup / prune / proved /
// timeout / exhausted).
using TraceSink = std::function<void(const std::string& event_json)>;
TraceSink trace_to_stream(std::ostream& os);

// True iff some element of `expanded` (a goal-text multiset, sorted) is
// contained in `node_goals` (multiset containment), or is a prefix of it in
// PrefixSequence mode (where both are in goal order).
bool is_subsumed(const std::vector<std::string>& node_goals,
                 const std::vector<std::vector<std::string>>& expanded, SubsumptionMode mode);

SearchOutcome search(const Theory& theory, const FormulaPtr& target, TacticGenerator& generator,
                     const SearchConfig& config, const TraceSink& trace = nullptr);

struct DualOutcome {
    SearchOutcome positive;
    SearchOutcome negative;
};

// Proves the question and its negation independently, each with the full
// time budget. A generator factory is taken so concurrent duals never share
// scorer state.
using GeneratorFactory = std::function<std::unique_ptr<TacticGenerator>()>;

DualOutcome prove_both(const Theory& theory, const FormulaPtr& question,
                       const GeneratorFactory& make_generator, const SearchConfig& config,
                       const TraceSink& trace = nullptr);

}  // namespace minilean
