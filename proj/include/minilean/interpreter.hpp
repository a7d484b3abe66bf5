#pragma once

// Maps a pair of dual search outcomes to an answer. Proving the positive
// theorem yields True, proving the negation yields False, proving neither
// yields Unknown, and proving both flags an inconsistency that evaluation
// always scores as incorrect.

#include <optional>
#include <string>
#include <vector>

#include "minilean/search.hpp"

namespace minilean {

enum class Verdict { True, False, Unknown, Inconsistent };

std::string verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(const std::string& name);

struct DualTheorems {
    std::string positive_name;
    FormulaPtr positive;
    std::string negative_name;
    FormulaPtr negative;
};

// positive = question, negative = syntactic negation; names derived
// deterministically from the question (atom questions read naturally, e.g.
// Chases Cow Cow -> cow_chases_cow / not_cow_chases_cow).
DualTheorems build_duals(const FormulaPtr& question);

Verdict interpret(const SearchOutcome& positive, const SearchOutcome& negative);
Verdict interpret(SearchStatus positive, SearchStatus negative);

// Dataset label mapping, e.g. "uncertain" <-> Unknown. Total and injective
// over the dataset's option set.
class OptionMapping {
public:
    // Builds the mapping for a record's option labels; accepts the
    // spellings used by the corpora (true/false/unknown/uncertain, any
    // case). Throws std::invalid_argument when two options map to one
    // verdict or an option is unrecognized.
    explicit OptionMapping(const std::vector<std::string>& options);

    std::optional<std::string> label_for(Verdict v) const;
    std::optional<Verdict> verdict_for(const std::string& label) const;

private:
    std::vector<std::pair<std::string, Verdict>> pairs_;
};

}  // namespace minilean
