#include "minilean/search.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace minilean {

using nlohmann::json;

std::string search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Proved: return "proved";
        case SearchStatus::Timeout: return "timeout";
        case SearchStatus::Exhausted: return "exhausted";
        case SearchStatus::GeneratorFailure: return "generator-failure";
    }
    return "?";
}

TraceSink trace_to_stream(std::ostream& os) {
    return [&os](const std::string& line) { os << line << "\n"; };
}

bool is_subsumed(const std::vector<std::string>& node_goals,
                 const std::vector<std::vector<std::string>>& expanded, SubsumptionMode mode) {
    for (const auto& prev : expanded) {
        if (prev.size() > node_goals.size()) continue;
        if (mode == SubsumptionMode::PrefixSequence) {
            if (std::equal(prev.begin(), prev.end(), node_goals.begin())) return true;
            continue;
        }
        // multiset containment; both sides sorted
        size_t i = 0, j = 0, found = 0;
        while (i < prev.size() && j < node_goals.size()) {
            if (prev[i] == node_goals[j]) {
                ++found;
                ++i;
                ++j;
            } else if (prev[i] < node_goals[j]) {
                break;
            } else {
                ++j;
            }
        }
        if (found == prev.size()) return true;
    }
    return false;
}

namespace {

std::vector<std::string> goal_texts(const ProofState& state, bool sorted) {
    std::vector<std::string> out;
    out.reserve(state.goals.size());
    for (const auto& g : state.goals) out.push_back(canonical_goal_text(g));
    if (sorted) std::sort(out.begin(), out.end());
    return out;
}

struct NodeCompare {
    // max-heap on (logprob, then canonical text ascending)
    bool operator()(const std::shared_ptr<SearchNode>& a,
                    const std::shared_ptr<SearchNode>& b) const {
        if (a->logprob != b->logprob) return a->logprob < b->logprob;
        return a->state_text > b->state_text;
    }
};

}  // namespace

SearchOutcome search(const Theory& theory, const FormulaPtr& target, TacticGenerator& generator,
                     const SearchConfig& config, const TraceSink& trace) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto deadline = start + std::chrono::duration_cast<clock::duration>(
                                      std::chrono::duration<double>(config.time_budget_secs));
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };
    auto emit = [&](const char* event, const SearchNode& node) {
        if (!trace) return;
        json j = {{"event", event}, {"logprob", node.logprob}, {"state", node.state_text}};
        trace(j.dump());
    };

    SearchOutcome outcome;
    std::priority_queue<std::shared_ptr<SearchNode>, std::vector<std::shared_ptr<SearchNode>>,
                        NodeCompare>
        frontier;
    std::unordered_set<std::string> expanded_texts;
    std::vector<std::vector<std::string>> expanded_goal_sets;

    auto root = std::make_shared<SearchNode>();
    root->state = init_state(theory, target);
    root->state_text = canonical_state_text(root->state);
    frontier.push(root);

    bool sorted_goals = config.subsumption_mode == SubsumptionMode::MultisetContainment;

    while (!frontier.empty()) {
        if (clock::now() >= deadline) {
            outcome.status = SearchStatus::Timeout;
            outcome.stats.wall_time_ms = elapsed_ms();
            if (trace) trace(json{{"event", "timeout"}}.dump());
            return outcome;
        }
        auto node = frontier.top();
        frontier.pop();
        emit("pop", *node);

        if (expanded_texts.count(node->state_text)) {
            ++outcome.stats.deduplicated;
            emit("dedup", *node);
            continue;
        }
        if (config.subsumption) {
            auto goals = goal_texts(node->state, sorted_goals);
            if (is_subsumed(goals, expanded_goal_sets, config.subsumption_mode)) {
                ++outcome.stats.pruned_subsumed;
                emit("prune", *node);
                continue;
            }
            expanded_goal_sets.push_back(std::move(goals));
        }
        expanded_texts.insert(node->state_text);
        ++outcome.stats.expanded;
        emit("expand", *node);

        GenerateResult gen = generator.generate(theory, node->state, config.num_candidates);
        if (gen.index() == 1) {
            outcome.status = SearchStatus::GeneratorFailure;
            outcome.error = std::get<GeneratorError>(gen).message;
            outcome.stats.wall_time_ms = elapsed_ms();
            if (trace) trace(json{{"event", "generator-failure"}, {"error", outcome.error}}.dump());
            return outcome;
        }
        for (const auto& cand : std::get<std::vector<Candidate>>(gen)) {
            if (cand.tactic.kind == TacticKind::Sorry) continue;  // cheating tactics never enter
            TacticOutcome applied = apply_tactic(theory, node->state, cand.tactic);
            if (applied.index() == 1) continue;  // inapplicable candidates are discarded silently
            ++outcome.stats.generated;
            auto child = std::make_shared<SearchNode>();
            child->state = std::get<ProofState>(std::move(applied));
            child->path = node->path;
            child->path.push_back(cand.tactic);
            child->logprob = node->logprob + cand.logprob;
            child->state_text = canonical_state_text(child->state);
            if (child->state.complete() && !child->state.tainted) {
                outcome.status = SearchStatus::Proved;
                outcome.proof = child->path;
                outcome.stats.wall_time_ms = elapsed_ms();
                emit("proved", *child);
                return outcome;
            }
            frontier.push(std::move(child));
        }
        if (config.max_expansions && outcome.stats.expanded >= config.max_expansions) break;
    }

    outcome.status = SearchStatus::Exhausted;
    outcome.stats.wall_time_ms = elapsed_ms();
    if (trace) trace(json{{"event", "exhausted"}}.dump());
    return outcome;
}

DualOutcome prove_both(const Theory& theory, const FormulaPtr& question,
                       const GeneratorFactory& make_generator, const SearchConfig& config,
                       const TraceSink& trace) {
    FormulaPtr positive = question;
    FormulaPtr negative = negate(question);
    DualOutcome out;
    if (config.concurrent_duals) {
        std::thread pos([&] {
            auto gen = make_generator();
            out.positive = search(theory, positive, *gen, config, nullptr);
        });
        std::thread neg([&] {
            auto gen = make_generator();
            out.negative = search(theory, negative, *gen, config, nullptr);
        });
        pos.join();
        neg.join();
        return out;
    }
    auto gen_pos = make_generator();
    out.positive = search(theory, positive, *gen_pos, config, trace);
    auto gen_neg = make_generator();
    out.negative = search(theory, negative, *gen_neg, config, trace);
    return out;
}

}  // namespace minilean
