#include "minilean/interpreter.hpp"

#include <algorithm>
#include <cctype>

namespace minilean {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "True";
        case Verdict::False: return "False";
        case Verdict::Unknown: return "Unknown";
        case Verdict::Inconsistent: return "Inconsistent";
    }
    return "?";
}

static std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<Verdict> verdict_from_name(const std::string& name) {
    std::string n = lower(name);
    if (n == "true" || n == "yes") return Verdict::True;
    if (n == "false" || n == "no") return Verdict::False;
    if (n == "unknown" || n == "uncertain") return Verdict::Unknown;
    if (n == "inconsistent") return Verdict::Inconsistent;
    return std::nullopt;
}

static std::string sanitize(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

DualTheorems build_duals(const FormulaPtr& question) {
    if (!is_closed(question)) throw std::invalid_argument("build_duals: question has a free variable");
    std::string base;
    if (question->kind == FormulaKind::Atom && !question->args.empty()) {
        // subject-first reading: Chases Cow Cow -> cow_chases_cow
        base = sanitize(question->args[0].name);
        base += "_" + sanitize(question->name);
        for (size_t i = 1; i < question->args.size(); ++i)
            base += "_" + sanitize(question->args[i].name);
    } else if (question->kind == FormulaKind::Atom) {
        base = sanitize(question->name);
    } else {
        base = "goal_" + sanitize(canonical_text(question));
        if (base.size() > 60) base.resize(60);
    }
    DualTheorems d;
    d.positive = question;
    d.positive_name = base;
    d.negative = negate(question);
    d.negative_name = "not_" + base;
    return d;
}

Verdict interpret(SearchStatus positive, SearchStatus negative) {
    bool pos = positive == SearchStatus::Proved;
    bool neg = negative == SearchStatus::Proved;
    if (pos && neg) return Verdict::Inconsistent;
    if (pos) return Verdict::True;
    if (neg) return Verdict::False;
    return Verdict::Unknown;
}

Verdict interpret(const SearchOutcome& positive, const SearchOutcome& negative) {
    return interpret(positive.status, negative.status);
}

OptionMapping::OptionMapping(const std::vector<std::string>& options) {
    for (const auto& label : options) {
        auto v = verdict_from_name(label);
        if (!v) throw std::invalid_argument("OptionMapping: unrecognized option '" + label + "'");
        for (const auto& [existing, verdict] : pairs_)
            if (verdict == *v)
                throw std::invalid_argument("OptionMapping: options '" + existing + "' and '" +
                                            label + "' map to the same verdict");
        pairs_.emplace_back(label, *v);
    }
}

std::optional<std::string> OptionMapping::label_for(Verdict v) const {
    for (const auto& [label, verdict] : pairs_)
        if (verdict == v) return label;
    return std::nullopt;
}

std::optional<Verdict> OptionMapping::verdict_for(const std::string& label) const {
    for (const auto& [l, verdict] : pairs_)
        if (l == label) return verdict;
    return std::nullopt;
}

}  // namespace minilean
