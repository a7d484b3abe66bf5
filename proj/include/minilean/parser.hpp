#pragma once

// Parser and pretty-printer for the Lean-subset theory language:
// `universe`, `constant`, `axiom`, `theorem ... := begin ... end`, `--`
// comments, unicode connectives with ASCII aliases. Parse errors carry a
// source span; unknown tactic names parse into an opaque tactic that the
// kernel rejects at application time.

#include <stdexcept>
#include <string>

#include "minilean/kernel.hpp"
#include "minilean/logic.hpp"

namespace minilean {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceSpan span)
        : std::runtime_error(message + " (line " + std::to_string(span.line) + ", column " +
                             std::to_string(span.column) + ")"),
          span_(span),
          message_(std::move(message)) {}

    const SourceSpan& span() const { return span_; }
    const std::string& message() const { return message_; }

private:
    SourceSpan span_;
    std::string message_;
};

struct ParsedTheory {
    Theory theory;
    std::vector<std::string> warnings;  // e.g. trailing prose after the last declaration
};

ParsedTheory parse_theory(const std::string& source);

// Parses a single formula. Names bound by an enclosing quantifier become
// variables; everything else becomes a constant reference, resolved later by
// check_wf.
FormulaPtr parse_formula(const std::string& source);

// Parses a `begin ... end` block or a bare comma-separated tactic sequence.
TacticScript parse_script(const std::string& source);

// Parses one tactic ("apply R3 Cow"); used to validate external candidates.
Tactic parse_tactic(const std::string& source);

std::string pretty_print(const Theory& theory);
std::string print_formula(const FormulaPtr& f);
std::string print_script(const TacticScript& script, int indent = 0);

}  // namespace minilean
