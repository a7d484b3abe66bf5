#pragma once

// Proof states and tactic application. Semantics follow Lean 3 conventions
// for the tactic subset used by the theory language: intro, apply, exact,
// assumption, split, left/right, cases, have, contradiction, use, sorry.
// States are immutable; every tactic returns a fresh state or a TacticError.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minilean/logic.hpp"

namespace minilean {

// ---------------------------------------------------------------------------
// Proof terms: the small term grammar accepted as tactic arguments.
// `head` may be a hypothesis, axiom or theorem name, a constant (in argument
// position), or one of the builtin introducers and.intro / or.inl / or.inr.

struct ProofTerm {
    std::string head;
    std::vector<ProofTerm> args;

    bool is_name() const { return args.empty(); }
};

std::string proof_term_text(const ProofTerm& pt);

// ---------------------------------------------------------------------------
// Tactics

enum class TacticKind {
    Intro,
    Apply,
    Exact,
    Assumption,
    Split,
    Left,
    Right,
    Cases,
    Have,
    Contradiction,
    Use,
    Sorry,
    Opaque,  // parsed but unsupported; rejected at application time
};

struct Tactic {
    TacticKind kind = TacticKind::Assumption;
    std::string name;                  // intro binder / have hypothesis name
    std::optional<ProofTerm> term;     // apply / exact / cases argument, have := term
    FormulaPtr formula;                // have type annotation (may be null)
    std::optional<Term> witness;       // use argument
    std::string opaque_text;           // original text of an unsupported tactic
    SourceSpan span;
};

std::string tactic_text(const Tactic& t);

// A script is a sequence of tactics and brace blocks; a block focuses the
// first goal and must close it.
struct ScriptItem;
struct TacticScript {
    std::vector<ScriptItem> items;
    size_t size() const;  // number of tactics, blocks flattened
};
struct ScriptItem {
    std::variant<Tactic, TacticScript> node;
    bool is_block() const { return node.index() == 1; }
};

// ---------------------------------------------------------------------------
// Goals and proof states

struct Hypothesis {
    std::string name;
    FormulaPtr formula;
};

struct LocalConst {
    std::string name;
    std::string sort;
};

struct Goal {
    std::vector<LocalConst> locals;  // constants introduced by intro/cases, in order
    std::vector<Hypothesis> hyps;    // most recent last; lookups scan from the back
    FormulaPtr target;

    const Hypothesis* find_hyp(const std::string& name) const;
    bool has_local(const std::string& name) const;
};

struct ProofState {
    std::vector<Goal> goals;  // first goal is current
    bool tainted = false;     // true once a sorry has executed

    bool complete() const { return goals.empty(); }
};

// Canonical renderings used for search dedup and subsumption. Hypothesis
// names and order do not affect the text; duplicate hypothesis formulas
// collapse; intro'd locals are renamed in introduction order.
std::string canonical_goal_text(const Goal& goal);
std::string canonical_state_text(const ProofState& state);

// ---------------------------------------------------------------------------
// Tactic application

struct TacticError {
    std::string tactic;  // rendered tactic text
    std::string reason;
};

using TacticOutcome = std::variant<ProofState, TacticError>;

ProofState init_state(const Theory& theory, const FormulaPtr& target);

// Applies `tactic` to the first goal of `state`. `state` must have a goal.
TacticOutcome apply_tactic(const Theory& theory, const ProofState& state, const Tactic& tactic);

// ---------------------------------------------------------------------------
// Script checking

enum class ProofStatus { Complete, Incomplete, Failed };

struct ProofReport {
    ProofStatus status = ProofStatus::Incomplete;
    bool tainted = false;
    size_t failed_step = 0;            // 1-based tactic index when status == Failed
    std::optional<TacticError> error;  // first error encountered
    size_t steps = 0;                  // tactics executed

    // A proof is valid iff it replayed to completion without sorry.
    bool valid() const { return status == ProofStatus::Complete && !tainted; }
};

// Replays a script from init_state(theory, target). Replay continues past a
// failed tactic (leaving the state unchanged) so the taint flag reflects the
// whole script; the first error and its step index are reported.
ProofReport check_script(const Theory& theory, const FormulaPtr& target, const TacticScript& script);

// Convenience: checks the named theorem's attached or supplied script.
ProofReport check_theorem(const Theory& theory, const std::string& theorem_name,
                          const TacticScript* script = nullptr);

// Flat tactic paths (as produced by search) as a script.
TacticScript script_from_path(const std::vector<Tactic>& path);

// ---------------------------------------------------------------------------
// Matching utilities shared with the tactic enumerator.

// First-order match of `pattern` (whose Bound indices < num_vars refer to a
// leading universal prefix, innermost = 0) against closed `target`.
// On success appends bindings indexed by binder position (outermost first).
bool match_formula(const FormulaPtr& pattern, const FormulaPtr& target, int num_vars,
                   std::vector<std::optional<Term>>& bindings);

// Splits a formula into a leading universal prefix, an antecedent chain and a
// final conclusion, unfolding a trailing ¬X into X → false. suffixes[i] is
// the formula after consuming i antecedents (suffixes[0] = whole body).
struct ImplicationChain {
    std::vector<std::string> binder_sorts;  // leading universal prefix, outermost first
    std::vector<FormulaPtr> antecedents;    // with Bound indices into the prefix
    std::vector<FormulaPtr> suffixes;
};
ImplicationChain split_implication_chain(const FormulaPtr& f);

// Elaborates a proof term against a goal: resolves names through the local
// context, then theory axioms/theorems; applies universals to constant
// arguments and implications (or negations) to proof arguments. `expected`
// enables check-mode elaboration of or.inl / or.inr.
std::variant<FormulaPtr, std::string> elaborate_term(const Theory& theory, const Goal& goal,
                                                     const ProofTerm& pt,
                                                     const FormulaPtr& expected = nullptr);

// Fresh-name helpers following the Lean h, h_1, h_2, ... convention.
std::string fresh_hyp_name(const Goal& goal, const std::string& base);
std::string fresh_local_name(const Theory& theory, const Goal& goal, const std::string& base);

}  // namespace minilean
