#pragma once

// Candidate tactic generation. The built-in generator enumerates every
// applicable tactic from the kernel set over the first goal, then scores
// candidates by premise similarity plus a structural prior and normalizes
// with a log-softmax. An external scorer can replace it over a line-delimited
// JSON subprocess protocol; that is the seam where a neural generator sits.

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "minilean/kernel.hpp"
#include "minilean/retriever.hpp"
#include "minilean/subprocess.hpp"

namespace minilean {

enum class Provenance { Builtin, External };

struct Candidate {
    Tactic tactic;
    double logprob = 0.0;  // <= 0, finite
    Provenance provenance = Provenance::Builtin;
};

struct GeneratorConfig {
    size_t num_candidates = 64;
    double similarity_weight = 1.0;
    // structural prior by tactic kind; missing kinds default to 0
    std::map<TacticKind, double> priors = default_priors();

    static std::map<TacticKind, double> default_priors();
};

// Every kernel tactic applicable in principle to the goal: exact/assumption
// for matching axioms or hypotheses, apply with explicit instantiation
// arguments for matching conclusions, intro/split/left/right/use by target
// shape, cases for compound hypotheses and for instantiated disjunctive
// axioms whose antecedents are discharged by the context, a single
// forward-chaining have for the first derivable fact not yet in context, and
// contradiction when a complementary pair exists. Never emits sorry.
std::vector<Tactic> enumerate_tactics(const Theory& theory, const Goal& goal);

// Scores candidates: raw = weight * similarity(referenced premise, goal) +
// prior(kind); log-probabilities are the log-softmax of raw scores. Output is
// sorted by log-probability descending (ties by tactic text ascending) and
// truncated to num_candidates.
std::vector<Candidate> score_candidates(const std::vector<Tactic>& candidates, const Goal& goal,
                                        const PremiseIndex& index, const GeneratorConfig& config);

struct GeneratorError {
    enum class Kind { SubprocessDead, Protocol, Timeout };
    Kind kind;
    std::string message;
};

using GenerateResult = std::variant<std::vector<Candidate>, GeneratorError>;

class TacticGenerator {
public:
    virtual ~TacticGenerator() = default;
    virtual GenerateResult generate(const Theory& theory, const ProofState& state, size_t k) = 0;
};

class BuiltinGenerator : public TacticGenerator {
public:
    BuiltinGenerator(const Theory& theory, GeneratorConfig config);
    GenerateResult generate(const Theory& theory, const ProofState& state, size_t k) override;

private:
    GeneratorConfig config_;
    PremiseIndex index_;
};

// Drives an external scorer process. Requests are one JSON object per line:
//   {"kind":"generate","state":<canonical text>,"premises":[...],"k":n}
// and replies:
//   {"candidates":[{"tactic":"apply R3 Cow","logprob":-0.25}, ...]}
// Unparseable tactics and positive log-probabilities are dropped (counted in
// warnings); transport failures surface as GeneratorError.
class ExternalGenerator : public TacticGenerator {
public:
    ExternalGenerator(std::string command, int reply_timeout_ms = 30000);
    GenerateResult generate(const Theory& theory, const ProofState& state, size_t k) override;

    size_t dropped_candidates() const { return dropped_; }

private:
    std::string command_;
    int timeout_ms_;
    LineSubprocess proc_;
    size_t dropped_ = 0;
};

// External embedder over the same protocol: {"kind":"embed","text":...} ->
// {"embedding":[...]}.
EmbedFn subprocess_embedder(std::shared_ptr<LineSubprocess> proc, int timeout_ms = 30000);

}  // namespace minilean
