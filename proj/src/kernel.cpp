#include "minilean/kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace minilean {

// ---------------------------------------------------------------------------
// Rendering

std::string proof_term_text(const ProofTerm& pt) {
    if (pt.is_name()) return pt.head;
    std::string s = pt.head;
    for (const auto& a : pt.args) {
        s += " ";
        s += a.is_name() ? a.head : "(" + proof_term_text(a) + ")";
    }
    return s;
}

std::string tactic_text(const Tactic& t) {
    switch (t.kind) {
        case TacticKind::Intro: return "intro " + t.name;
        case TacticKind::Apply: return "apply " + proof_term_text(*t.term);
        case TacticKind::Exact: return "exact " + proof_term_text(*t.term);
        case TacticKind::Assumption: return "assumption";
        case TacticKind::Split: return "split";
        case TacticKind::Left: return "left";
        case TacticKind::Right: return "right";
        case TacticKind::Cases: return "cases " + proof_term_text(*t.term);
        case TacticKind::Have: {
            std::string s = "have " + t.name;
            if (t.formula) s += " : " + canonical_text(t.formula);
            if (t.term) s += " := " + proof_term_text(*t.term);
            return s;
        }
        case TacticKind::Contradiction: return "contradiction";
        case TacticKind::Use: return "use " + t.witness->name;
        case TacticKind::Sorry: return "sorry";
        case TacticKind::Opaque: return t.opaque_text;
    }
    return "?";
}

size_t TacticScript::size() const {
    size_t n = 0;
    for (const auto& item : items) {
        if (item.is_block())
            n += std::get<TacticScript>(item.node).size();
        else
            n += 1;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Goals

const Hypothesis* Goal::find_hyp(const std::string& name) const {
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
        if (it->name == name) return &*it;
    return nullptr;
}

bool Goal::has_local(const std::string& name) const {
    for (const auto& l : locals)
        if (l.name == name) return true;
    return false;
}

std::string canonical_goal_text(const Goal& goal) {
    std::unordered_map<std::string, std::string> renames;
    for (size_t i = 0; i < goal.locals.size(); ++i)
        renames.emplace(goal.locals[i].name, "#" + std::to_string(i));
    std::set<std::string> hyp_texts;
    for (const auto& h : goal.hyps) hyp_texts.insert(canonical_text(h.formula, &renames));
    std::string s = "{";
    for (auto it = hyp_texts.begin(); it != hyp_texts.end(); ++it) {
        if (it != hyp_texts.begin()) s += "; ";
        s += *it;
    }
    s += "} ⊢ ";
    s += canonical_text(goal.target, &renames);
    return s;
}

std::string canonical_state_text(const ProofState& state) {
    std::string s;
    for (size_t i = 0; i < state.goals.size(); ++i) {
        if (i) s += " || ";
        s += canonical_goal_text(state.goals[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Fresh names. A shadowed hypothesis is renamed out of the way (Lean marks it
// inaccessible); assumption/contradiction still see it, name lookup does not.

std::string fresh_hyp_name(const Goal& goal, const std::string& base) {
    if (!goal.find_hyp(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!goal.find_hyp(candidate)) return candidate;
    }
}

std::string fresh_local_name(const Theory& theory, const Goal& goal, const std::string& base) {
    auto taken = [&](const std::string& n) { return theory.find(n) != nullptr || goal.has_local(n); };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken(candidate)) return candidate;
    }
}

static void add_hyp_shadowing(Goal& goal, const std::string& name, FormulaPtr formula) {
    for (auto& h : goal.hyps) {
        if (h.name == name) {
            std::string shadowed = name + "✝";
            while (goal.find_hyp(shadowed)) shadowed += "✝";
            h.name = shadowed;
        }
    }
    goal.hyps.push_back({name, std::move(formula)});
}

// ---------------------------------------------------------------------------
// Matching

static bool match_term(const Term& pattern, const Term& target, int num_vars,
                       std::vector<std::optional<Term>>& bindings, int depth) {
    if (pattern.kind == Term::Kind::Bound) {
        if (pattern.index < depth)  // bound by an inner quantifier: must mirror
            return target.kind == Term::Kind::Bound && target.index == pattern.index;
        int var = pattern.index - depth;  // innermost prefix binder = 0
        if (var >= num_vars) return false;
        size_t slot = static_cast<size_t>(num_vars - 1 - var);  // outermost first
        if (target.kind == Term::Kind::Bound) return false;     // must bind to a closed term
        if (bindings[slot]) return term_equal(*bindings[slot], target);
        bindings[slot] = target;
        return true;
    }
    return term_equal(pattern, target);
}

static bool match_rec(const FormulaPtr& pattern, const FormulaPtr& target, int num_vars,
                      std::vector<std::optional<Term>>& bindings, int depth) {
    if (!pattern || !target) return pattern == target;
    if (pattern->kind != target->kind) return false;
    switch (pattern->kind) {
        case FormulaKind::Atom:
        case FormulaKind::Equality: {
            if (pattern->name != target->name || pattern->args.size() != target->args.size())
                return false;
            for (size_t i = 0; i < pattern->args.size(); ++i)
                if (!match_term(pattern->args[i], target->args[i], num_vars, bindings, depth))
                    return false;
            return true;
        }
        case FormulaKind::Falsum:
            return true;
        case FormulaKind::Not:
            return match_rec(pattern->left, target->left, num_vars, bindings, depth);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            return match_rec(pattern->left, target->left, num_vars, bindings, depth) &&
                   match_rec(pattern->right, target->right, num_vars, bindings, depth);
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            if (pattern->sort != target->sort) return false;
            return match_rec(pattern->left, target->left, num_vars, bindings, depth + 1);
    }
    return false;
}

bool match_formula(const FormulaPtr& pattern, const FormulaPtr& target, int num_vars,
                   std::vector<std::optional<Term>>& bindings) {
    bindings.assign(static_cast<size_t>(num_vars), std::nullopt);
    return match_rec(pattern, target, num_vars, bindings, 0);
}

ImplicationChain split_implication_chain(const FormulaPtr& f) {
    ImplicationChain chain;
    FormulaPtr body = f;
    while (body && body->kind == FormulaKind::Forall) {
        chain.binder_sorts.push_back(body->sort);
        body = body->left;
    }
    for (;;) {
        chain.suffixes.push_back(body);
        if (body->kind == FormulaKind::Implies) {
            chain.antecedents.push_back(body->left);
            body = body->right;
        } else if (body->kind == FormulaKind::Not) {
            chain.antecedents.push_back(body->left);
            body = f_false();
        } else {
            break;
        }
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Proof term elaboration

using ElabResult = std::variant<FormulaPtr, std::string>;

static bool is_err(const ElabResult& r) { return r.index() == 1; }

static ElabResult resolve_name(const Theory& theory, const Goal& goal, const std::string& name) {
    if (const Hypothesis* h = goal.find_hyp(name)) return h->formula;
    if (const Declaration* d = theory.find(name)) {
        if (d->kind == DeclKind::Axiom || d->kind == DeclKind::Theorem) return d->formula;
        if (d->kind == DeclKind::Constant)
            return std::string("'" + name + "' is a constant, not a proof");
    }
    return std::string("unknown identifier '" + name + "'");
}

static std::optional<Term> resolve_constant(const Theory& theory, const Goal& goal,
                                            const std::string& name, std::string* sort_out) {
    if (auto s = theory.constant_sort(name)) {
        if (sort_out) *sort_out = *s;
        return Term::constant(name);
    }
    for (const auto& l : goal.locals) {
        if (l.name == name) {
            if (sort_out) *sort_out = l.sort;
            return Term::constant(name);
        }
    }
    return std::nullopt;
}

static ElabResult elaborate(const Theory& theory, const Goal& goal, const ProofTerm& pt,
                            const FormulaPtr& expected) {
    if (pt.head == "and.intro") {
        if (pt.args.size() != 2) return std::string("and.intro expects two arguments");
        FormulaPtr el, er;
        if (expected && expected->kind == FormulaKind::And) {
            el = expected->left;
            er = expected->right;
        }
        auto l = elaborate(theory, goal, pt.args[0], el);
        if (is_err(l)) return l;
        auto r = elaborate(theory, goal, pt.args[1], er);
        if (is_err(r)) return r;
        return f_and(std::get<FormulaPtr>(l), std::get<FormulaPtr>(r));
    }
    if (pt.head == "or.inl" || pt.head == "or.inr") {
        if (pt.args.size() != 1) return std::string(pt.head + " expects one argument");
        if (!expected || expected->kind != FormulaKind::Or)
            return std::string(pt.head + " needs an expected disjunction");
        bool left_side = pt.head == "or.inl";
        auto inner = elaborate(theory, goal, pt.args[0], left_side ? expected->left : expected->right);
        if (is_err(inner)) return inner;
        const FormulaPtr& got = std::get<FormulaPtr>(inner);
        if (!alpha_equal(got, left_side ? expected->left : expected->right))
            return std::string(pt.head + ": component does not match the expected disjunct");
        return expected;
    }

    auto head = resolve_name(theory, goal, pt.head);
    if (is_err(head)) return head;
    FormulaPtr f = std::get<FormulaPtr>(head);

    for (const auto& arg : pt.args) {
        if (f->kind == FormulaKind::Forall) {
            if (!arg.is_name())
                return std::string("expected a constant argument for the binder, got a compound term");
            std::string sort;
            auto c = resolve_constant(theory, goal, arg.head, &sort);
            if (!c) return std::string("unknown constant '" + arg.head + "'");
            if (sort != f->sort)
                return std::string("'" + arg.head + "' has sort " + sort + ", binder expects " + f->sort);
            f = open_binder(f->left, *c);
        } else if (f->kind == FormulaKind::Implies || f->kind == FormulaKind::Not) {
            FormulaPtr want = f->kind == FormulaKind::Implies ? f->left : f->left;
            auto proof = elaborate(theory, goal, arg, want);
            if (is_err(proof)) return proof;
            if (!alpha_equal(std::get<FormulaPtr>(proof), want))
                return std::string("argument proves " + canonical_text(std::get<FormulaPtr>(proof)) +
                                   " but " + canonical_text(want) + " is required");
            f = f->kind == FormulaKind::Implies ? f->right : f_false();
        } else {
            return std::string("cannot apply a proof of " + canonical_text(f) + " to an argument");
        }
    }
    return f;
}

std::variant<FormulaPtr, std::string> elaborate_term(const Theory& theory, const Goal& goal,
                                                     const ProofTerm& pt, const FormulaPtr& expected) {
    return elaborate(theory, goal, pt, expected);
}

// ---------------------------------------------------------------------------
// Tactic application

ProofState init_state(const Theory& theory, const FormulaPtr& target) {
    if (!target || !is_closed(target))
        throw std::invalid_argument("init_state: target must be closed");
    Theory probe = theory;  // validate against the full theory
    Declaration d;
    d.kind = DeclKind::Theorem;
    d.name = "#target";
    d.formula = target;
    probe.add(std::move(d));
    auto diags = check_wf(probe);
    for (const auto& diag : diags)
        if (diag.decl_name == "#target")
            throw std::invalid_argument("init_state: ill-formed target: " + format_diagnostic(diag));
    ProofState st;
    st.goals.push_back(Goal{{}, {}, target});
    return st;
}

namespace {

struct Applier {
    const Theory& theory;
    const ProofState& state;
    const Tactic& tactic;

    TacticOutcome fail(const std::string& reason) const {
        return TacticError{tactic_text(tactic), reason};
    }

    // Replaces the first goal with `replacement` (in order).
    ProofState splice(std::vector<Goal> replacement) const {
        ProofState out;
        out.tainted = state.tainted;
        out.goals = std::move(replacement);
        out.goals.insert(out.goals.end(), state.goals.begin() + 1, state.goals.end());
        return out;
    }

    TacticOutcome intro() const {
        const Goal& g = state.goals.front();
        switch (g.target->kind) {
            case FormulaKind::Implies: {
                Goal ng = g;
                add_hyp_shadowing(ng, tactic.name.empty() ? fresh_hyp_name(g, "h") : tactic.name,
                                  g.target->left);
                ng.target = g.target->right;
                return splice({std::move(ng)});
            }
            case FormulaKind::Not: {
                Goal ng = g;
                add_hyp_shadowing(ng, tactic.name.empty() ? fresh_hyp_name(g, "h") : tactic.name,
                                  g.target->left);
                ng.target = f_false();
                return splice({std::move(ng)});
            }
            case FormulaKind::Forall: {
                Goal ng = g;
                std::string base = tactic.name.empty() ? g.target->name : tactic.name;
                if (base.empty()) base = "x";
                std::string name = fresh_local_name(theory, g, base);
                ng.locals.push_back({name, g.target->sort});
                ng.target = open_binder(g.target->left, Term::constant(name));
                return splice({std::move(ng)});
            }
            default:
                return fail("target is not an implication, negation or universal");
        }
    }

    TacticOutcome apply() const {
        const Goal& g = state.goals.front();
        auto elab = elaborate_term(theory, g, *tactic.term);
        if (elab.index() == 1) return fail(std::get<std::string>(elab));
        FormulaPtr f = std::get<FormulaPtr>(elab);

        ImplicationChain chain = split_implication_chain(f);
        int num_vars = static_cast<int>(chain.binder_sorts.size());
        std::vector<std::optional<Term>> bindings;
        for (size_t consumed = 0; consumed < chain.suffixes.size(); ++consumed) {
            if (!match_formula(chain.suffixes[consumed], g.target, num_vars, bindings)) continue;
            bool all_bound = true;
            for (const auto& b : bindings) all_bound = all_bound && b.has_value();
            if (!all_bound) continue;
            // sort-check the inferred instantiation
            bool sorts_ok = true;
            for (int v = 0; v < num_vars && sorts_ok; ++v) {
                const Term& w = *bindings[static_cast<size_t>(v)];
                if (w.kind != Term::Kind::Constant) { sorts_ok = false; break; }
                std::string sort;
                if (!resolve_constant(theory, g, w.name, &sort) || sort != chain.binder_sorts[static_cast<size_t>(v)])
                    sorts_ok = false;
            }
            if (!sorts_ok) continue;

            auto instantiate_pattern = [&](FormulaPtr pat) {
                for (int v = num_vars - 1; v >= 0; --v)  // innermost binder first
                    pat = open_binder(pat, *bindings[static_cast<size_t>(v)]);
                return pat;
            };
            std::vector<Goal> subgoals;
            for (size_t i = 0; i < consumed; ++i) {
                Goal sg = g;
                sg.target = instantiate_pattern(chain.antecedents[i]);
                subgoals.push_back(std::move(sg));
            }
            return splice(std::move(subgoals));
        }
        return fail("conclusion does not match the target " + canonical_text(g.target));
    }

    TacticOutcome exact() const {
        const Goal& g = state.goals.front();
        auto elab = elaborate_term(theory, g, *tactic.term, g.target);
        if (elab.index() == 1) return fail(std::get<std::string>(elab));
        if (!alpha_equal(std::get<FormulaPtr>(elab), g.target))
            return fail("term proves " + canonical_text(std::get<FormulaPtr>(elab)) +
                        " but the target is " + canonical_text(g.target));
        return splice({});
    }

    TacticOutcome assumption() const {
        const Goal& g = state.goals.front();
        for (const auto& h : g.hyps)
            if (alpha_equal(h.formula, g.target)) return splice({});
        return fail("no hypothesis matches the target");
    }

    TacticOutcome split() const {
        const Goal& g = state.goals.front();
        if (g.target->kind == FormulaKind::And) {
            Goal a = g, b = g;
            a.target = g.target->left;
            b.target = g.target->right;
            return splice({std::move(a), std::move(b)});
        }
        if (g.target->kind == FormulaKind::Iff) {
            Goal a = g, b = g;
            a.target = f_implies(g.target->left, g.target->right);
            b.target = f_implies(g.target->right, g.target->left);
            return splice({std::move(a), std::move(b)});
        }
        return fail("target is not a conjunction or biconditional");
    }

    TacticOutcome pick_side(bool left_side) const {
        const Goal& g = state.goals.front();
        if (g.target->kind != FormulaKind::Or) return fail("target is not a disjunction");
        Goal ng = g;
        ng.target = left_side ? g.target->left : g.target->right;
        return splice({std::move(ng)});
    }

    TacticOutcome cases() const {
        const Goal& g = state.goals.front();
        auto elab = elaborate_term(theory, g, *tactic.term);
        if (elab.index() == 1) return fail(std::get<std::string>(elab));
        FormulaPtr f = std::get<FormulaPtr>(elab);

        bool from_hyp = tactic.term->is_name() && g.find_hyp(tactic.term->head) != nullptr;
        std::string base = from_hyp ? tactic.term->head : "h";
        Goal stripped = g;
        if (from_hyp) {
            auto& hs = stripped.hyps;
            for (auto it = hs.rbegin(); it != hs.rend(); ++it) {
                if (it->name == tactic.term->head) {
                    hs.erase(std::next(it).base());
                    break;
                }
            }
        }

        switch (f->kind) {
            case FormulaKind::Or: {
                Goal a = stripped, b = stripped;
                add_hyp_shadowing(a, fresh_hyp_name(stripped, base), f->left);
                add_hyp_shadowing(b, fresh_hyp_name(stripped, base), f->right);
                return splice({std::move(a), std::move(b)});
            }
            case FormulaKind::And: {
                Goal ng = stripped;
                add_hyp_shadowing(ng, fresh_hyp_name(ng, base), f->left);
                add_hyp_shadowing(ng, fresh_hyp_name(ng, base), f->right);
                return splice({std::move(ng)});
            }
            case FormulaKind::Iff: {
                Goal ng = stripped;
                add_hyp_shadowing(ng, fresh_hyp_name(ng, base), f_implies(f->left, f->right));
                add_hyp_shadowing(ng, fresh_hyp_name(ng, base), f_implies(f->right, f->left));
                return splice({std::move(ng)});
            }
            case FormulaKind::Exists: {
                Goal ng = stripped;
                std::string witness =
                    fresh_local_name(theory, ng, f->name.empty() ? "x" : f->name);
                ng.locals.push_back({witness, f->sort});
                add_hyp_shadowing(ng, fresh_hyp_name(ng, base),
                                  open_binder(f->left, Term::constant(witness)));
                return splice({std::move(ng)});
            }
            default:
                return fail("cases needs a disjunction, conjunction, biconditional or existential");
        }
    }

    TacticOutcome have() const {
        const Goal& g = state.goals.front();
        std::string name = tactic.name.empty() ? fresh_hyp_name(g, "h") : tactic.name;
        if (tactic.term) {
            auto elab = elaborate_term(theory, g, *tactic.term, tactic.formula);
            if (elab.index() == 1) return fail(std::get<std::string>(elab));
            FormulaPtr f = std::get<FormulaPtr>(elab);
            if (tactic.formula && !alpha_equal(f, tactic.formula))
                return fail("term proves " + canonical_text(f) + " but the annotation is " +
                            canonical_text(tactic.formula));
            Goal ng = g;
            add_hyp_shadowing(ng, name, tactic.formula ? tactic.formula : f);
            return splice({std::move(ng)});
        }
        if (!tactic.formula) return fail("have needs a type annotation or a := term");
        Goal obligation = g;
        obligation.target = tactic.formula;
        Goal continuation = g;
        add_hyp_shadowing(continuation, name, tactic.formula);
        return splice({std::move(obligation), std::move(continuation)});
    }

    TacticOutcome contradiction() const {
        const Goal& g = state.goals.front();
        std::vector<FormulaPtr> facts;
        for (const auto& h : g.hyps) facts.push_back(h.formula);
        for (const auto* ax : theory.axioms()) facts.push_back(ax->formula);
        // closing a ¬P target amounts to introducing P first
        if (g.target->kind == FormulaKind::Not) facts.push_back(g.target->left);
        for (const auto& f : facts)
            if (f->kind == FormulaKind::Falsum) return splice({});
        for (const auto& f : facts) {
            if (f->kind != FormulaKind::Not) continue;
            for (const auto& other : facts)
                if (alpha_equal(f->left, other)) return splice({});
        }
        return fail("no contradictory pair of hypotheses");
    }

    TacticOutcome use() const {
        const Goal& g = state.goals.front();
        if (g.target->kind != FormulaKind::Exists) return fail("target is not an existential");
        std::string sort;
        auto witness = resolve_constant(theory, g, tactic.witness->name, &sort);
        if (!witness) return fail("unknown constant '" + tactic.witness->name + "'");
        if (sort != g.target->sort)
            return fail("witness has sort " + sort + ", binder expects " + g.target->sort);
        Goal ng = g;
        ng.target = open_binder(g.target->left, *witness);
        return splice({std::move(ng)});
    }

    TacticOutcome run() const {
        switch (tactic.kind) {
            case TacticKind::Intro: return intro();
            case TacticKind::Apply: return apply();
            case TacticKind::Exact: return exact();
            case TacticKind::Assumption: return assumption();
            case TacticKind::Split: return split();
            case TacticKind::Left: return pick_side(true);
            case TacticKind::Right: return pick_side(false);
            case TacticKind::Cases: return cases();
            case TacticKind::Have: return have();
            case TacticKind::Contradiction: return contradiction();
            case TacticKind::Use: return use();
            case TacticKind::Sorry: {
                ProofState out = splice({});
                out.tainted = true;
                return out;
            }
            case TacticKind::Opaque:
                return fail("unsupported tactic");
        }
        return fail("unsupported tactic");
    }
};

}  // namespace

TacticOutcome apply_tactic(const Theory& theory, const ProofState& state, const Tactic& tactic) {
    if (state.goals.empty()) return TacticError{tactic_text(tactic), "no goals left"};
    return Applier{theory, state, tactic}.run();
}

// ---------------------------------------------------------------------------
// Script replay

namespace {

struct Replay {
    const Theory& theory;
    ProofReport report;
    size_t step = 0;

    void record_error(const TacticError& err) {
        if (report.status == ProofStatus::Failed) return;
        report.status = ProofStatus::Failed;
        report.failed_step = step;
        report.error = err;
    }

    void exec(const TacticScript& script, ProofState& state) {
        for (const auto& item : script.items) {
            if (item.is_block()) {
                if (state.goals.empty()) {
                    record_error({"{ ... }", "no goals left"});
                    continue;
                }
                ProofState focused;
                focused.tainted = state.tainted;
                focused.goals = {state.goals.front()};
                exec(std::get<TacticScript>(item.node), focused);
                std::vector<Goal> rest(state.goals.begin() + 1, state.goals.end());
                if (!focused.goals.empty())
                    record_error({"{ ... }", "block did not close its goal"});
                ProofState merged;
                merged.tainted = focused.tainted;
                merged.goals = std::move(focused.goals);
                merged.goals.insert(merged.goals.end(), rest.begin(), rest.end());
                state = std::move(merged);
                continue;
            }
            const Tactic& t = std::get<Tactic>(item.node);
            ++step;
            ++report.steps;
            TacticOutcome out = apply_tactic(theory, state, t);
            if (out.index() == 1) {
                record_error(std::get<TacticError>(out));
                continue;  // keep replaying so the taint flag covers the whole script
            }
            state = std::get<ProofState>(std::move(out));
        }
    }
};

}  // namespace

ProofReport check_script(const Theory& theory, const FormulaPtr& target, const TacticScript& script) {
    ProofState state = init_state(theory, target);
    Replay replay{theory};
    replay.report.status = ProofStatus::Incomplete;
    replay.exec(script, state);
    replay.report.tainted = state.tainted;
    if (replay.report.status != ProofStatus::Failed)
        replay.report.status = state.goals.empty() ? ProofStatus::Complete : ProofStatus::Incomplete;
    return replay.report;
}

ProofReport check_theorem(const Theory& theory, const std::string& theorem_name,
                          const TacticScript* script) {
    const Declaration* d = theory.find(theorem_name);
    if (!d || d->kind != DeclKind::Theorem)
        throw std::invalid_argument("check_theorem: no theorem named '" + theorem_name + "'");
    const TacticScript* s = script ? script : d->script.get();
    if (!s) throw std::invalid_argument("check_theorem: '" + theorem_name + "' has no proof script");
    return check_script(theory, d->formula, *s);
}

TacticScript script_from_path(const std::vector<Tactic>& path) {
    TacticScript s;
    for (const auto& t : path) s.items.push_back(ScriptItem{t});
    return s;
}

}  // namespace minilean
