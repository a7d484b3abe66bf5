#include "minilean/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "minilean/parser.hpp"

namespace minilean {

using nlohmann::json;

std::map<TacticKind, double> GeneratorConfig::default_priors() {
    return {
        {TacticKind::Exact, 2.0},        {TacticKind::Assumption, 2.0},
        {TacticKind::Contradiction, 1.5}, {TacticKind::Apply, 1.0},
        {TacticKind::Split, 0.5},        {TacticKind::Left, 0.5},
        {TacticKind::Right, 0.5},        {TacticKind::Intro, 0.5},
        {TacticKind::Cases, 0.0},        {TacticKind::Use, 0.0},
        {TacticKind::Have, -1.0},
    };
}

namespace {

// Bounded synthesis of a proof term for `want` from hypotheses, axioms and
// or/and introductions. Depth 2 covers the disjunct injections the corpus
// needs without opening a full term search.
std::optional<ProofTerm> discharge(const Theory& theory, const Goal& goal, const FormulaPtr& want,
                                   int depth = 2) {
    for (const auto& h : goal.hyps)
        if (alpha_equal(h.formula, want)) return ProofTerm{h.name, {}};
    for (const auto* ax : theory.axioms())
        if (alpha_equal(ax->formula, want)) return ProofTerm{ax->name, {}};
    if (depth <= 0) return std::nullopt;
    if (want->kind == FormulaKind::Or) {
        if (auto l = discharge(theory, goal, want->left, depth - 1))
            return ProofTerm{"or.inl", {*l}};
        if (auto r = discharge(theory, goal, want->right, depth - 1))
            return ProofTerm{"or.inr", {*r}};
    }
    if (want->kind == FormulaKind::And) {
        auto l = discharge(theory, goal, want->left, depth - 1);
        auto r = l ? discharge(theory, goal, want->right, depth - 1) : std::nullopt;
        if (l && r) return ProofTerm{"and.intro", {*l, *r}};
    }
    return std::nullopt;
}

bool hyp_has_formula(const Goal& goal, const FormulaPtr& f) {
    for (const auto& h : goal.hyps)
        if (alpha_equal(h.formula, f)) return true;
    return false;
}

struct Enumerator {
    const Theory& theory;
    const Goal& goal;
    std::vector<Tactic> out;
    std::set<std::string> seen;
    std::vector<std::string> const_pool;                       // all constants + locals
    std::unordered_map<std::string, std::string> const_sorts;  // name -> sort

    static constexpr size_t kMaxInstantiationsPerPremise = 128;

    explicit Enumerator(const Theory& t, const Goal& g) : theory(t), goal(g) {
        for (const auto& name : theory.constants()) {
            const_pool.push_back(name);
            const_sorts[name] = *theory.constant_sort(name);
        }
        for (const auto& l : goal.locals) {
            const_pool.push_back(l.name);
            const_sorts[l.name] = l.sort;
        }
    }

    void emit(Tactic t) {
        std::string text = tactic_text(t);
        if (seen.insert(std::move(text)).second) out.push_back(std::move(t));
    }

    std::vector<std::string> constants_of_sort(const std::string& sort) const {
        std::vector<std::string> cs;
        for (const auto& name : const_pool)
            if (const_sorts.at(name) == sort) cs.push_back(name);
        return cs;
    }

    // All completions of partially bound binder slots, capped.
    std::vector<std::vector<Term>> instantiations(const std::vector<std::string>& binder_sorts,
                                                  const std::vector<std::optional<Term>>& bound) {
        std::vector<std::vector<Term>> result{{}};
        for (size_t v = 0; v < binder_sorts.size(); ++v) {
            std::vector<Term> choices;
            if (v < bound.size() && bound[v]) {
                choices.push_back(*bound[v]);
            } else {
                for (const auto& c : constants_of_sort(binder_sorts[v]))
                    choices.push_back(Term::constant(c));
            }
            std::vector<std::vector<Term>> next;
            for (const auto& prefix : result) {
                for (const auto& c : choices) {
                    if (next.size() >= kMaxInstantiationsPerPremise) break;
                    auto row = prefix;
                    row.push_back(c);
                    next.push_back(std::move(row));
                }
            }
            result = std::move(next);
            if (result.empty()) return result;
        }
        return result;
    }

    static FormulaPtr instantiate_at(FormulaPtr pattern, const std::vector<Term>& args,
                                     size_t binder_count) {
        // `pattern` sits under the full prefix; close binders innermost-first
        for (size_t v = binder_count; v-- > 0;) pattern = open_binder(pattern, args[v]);
        return pattern;
    }

    void target_shape_moves() {
        switch (goal.target->kind) {
            case FormulaKind::Implies:
            case FormulaKind::Not: {
                Tactic t;
                t.kind = TacticKind::Intro;
                t.name = fresh_hyp_name(goal, "h");
                emit(t);
                break;
            }
            case FormulaKind::Forall: {
                Tactic t;
                t.kind = TacticKind::Intro;
                t.name = fresh_local_name(theory, goal,
                                          goal.target->name.empty() ? "x" : goal.target->name);
                emit(t);
                break;
            }
            case FormulaKind::And:
            case FormulaKind::Iff: {
                Tactic t;
                t.kind = TacticKind::Split;
                emit(t);
                break;
            }
            case FormulaKind::Or: {
                Tactic l, r;
                l.kind = TacticKind::Left;
                r.kind = TacticKind::Right;
                emit(l);
                emit(r);
                break;
            }
            case FormulaKind::Exists: {
                for (const auto& c : constants_of_sort(goal.target->sort)) {
                    Tactic t;
                    t.kind = TacticKind::Use;
                    t.witness = Term::constant(c);
                    emit(t);
                }
                break;
            }
            default:
                break;
        }
    }

    void closing_moves() {
        for (const auto& h : goal.hyps) {
            if (alpha_equal(h.formula, goal.target)) {
                Tactic t;
                t.kind = TacticKind::Assumption;
                emit(t);
                break;
            }
        }
        for (const auto* ax : theory.axioms()) {
            if (alpha_equal(ax->formula, goal.target)) {
                Tactic t;
                t.kind = TacticKind::Exact;
                t.term = ProofTerm{ax->name, {}};
                emit(t);
            }
        }
        // contradiction: complementary pair among hypotheses and axioms,
        // counting the virtual hypothesis of a negated target
        std::vector<FormulaPtr> facts;
        for (const auto& h : goal.hyps) facts.push_back(h.formula);
        for (const auto* ax : theory.axioms()) facts.push_back(ax->formula);
        if (goal.target->kind == FormulaKind::Not) facts.push_back(goal.target->left);
        bool contradictory = false;
        for (const auto& f : facts) {
            if (f->kind == FormulaKind::Falsum) contradictory = true;
            if (f->kind != FormulaKind::Not) continue;
            for (const auto& other : facts)
                if (alpha_equal(f->left, other)) contradictory = true;
        }
        if (contradictory) {
            Tactic t;
            t.kind = TacticKind::Contradiction;
            emit(t);
        }
    }

    void apply_moves(const std::string& premise_name, const FormulaPtr& formula) {
        ImplicationChain chain = split_implication_chain(formula);
        int num_vars = static_cast<int>(chain.binder_sorts.size());
        for (size_t consumed = 0; consumed < chain.suffixes.size(); ++consumed) {
            std::vector<std::optional<Term>> bindings;
            if (!match_formula(chain.suffixes[consumed], goal.target, num_vars, bindings)) continue;
            for (const auto& inst : instantiations(chain.binder_sorts, bindings)) {
                Tactic t;
                t.kind = TacticKind::Apply;
                ProofTerm pt{premise_name, {}};
                for (const auto& arg : inst) pt.args.push_back(ProofTerm{arg.name, {}});
                t.term = std::move(pt);
                emit(t);
            }
            break;  // further suffixes only add weaker matches of the same premise
        }
    }

    void hypothesis_cases() {
        for (const auto& h : goal.hyps) {
            switch (h.formula->kind) {
                case FormulaKind::Or:
                case FormulaKind::And:
                case FormulaKind::Exists:
                case FormulaKind::Iff: {
                    Tactic t;
                    t.kind = TacticKind::Cases;
                    t.term = ProofTerm{h.name, {}};
                    emit(t);
                    break;
                }
                default:
                    break;
            }
        }
    }

    // true when any node of the disjunction tree is already a hypothesis;
    // re-splitting such a disjunction only revisits weaker worlds
    bool or_tree_resolved(const FormulaPtr& f) const {
        if (hyp_has_formula(goal, f)) return true;
        if (f->kind != FormulaKind::Or) return false;
        return or_tree_resolved(f->left) || or_tree_resolved(f->right);
    }

    // cases on an instantiated axiom whose (partially applied) result is a
    // disjunction and whose antecedents are dischargeable from the context
    void axiom_cases() {
        for (const auto* ax : theory.axioms()) {
            ImplicationChain chain = split_implication_chain(ax->formula);
            size_t binder_count = chain.binder_sorts.size();
            std::vector<std::optional<Term>> unbound(binder_count, std::nullopt);
            for (const auto& inst : instantiations(chain.binder_sorts, unbound)) {
                for (size_t i = 0; i < chain.suffixes.size(); ++i) {
                    FormulaPtr suffix = instantiate_at(chain.suffixes[i], inst, binder_count);
                    if (suffix->kind != FormulaKind::Or) continue;
                    if (or_tree_resolved(suffix)) break;
                    ProofTerm pt{ax->name, {}};
                    for (const auto& arg : inst) pt.args.push_back(ProofTerm{arg.name, {}});
                    bool ok = true;
                    for (size_t a = 0; a < i && ok; ++a) {
                        FormulaPtr ant = instantiate_at(chain.antecedents[a], inst, binder_count);
                        auto proof = discharge(theory, goal, ant);
                        if (!proof)
                            ok = false;
                        else
                            pt.args.push_back(*proof);
                    }
                    if (!ok) break;
                    Tactic t;
                    t.kind = TacticKind::Cases;
                    t.term = std::move(pt);
                    emit(t);
                    break;
                }
            }
        }
    }

    // One forward-chaining step: derive the canonically smallest fact not in
    // context whose derivation is fully discharged. A single candidate per
    // state keeps saturation linear instead of exponential.
    void forward_have() {
        std::optional<std::pair<std::string, Tactic>> best;
        for (const auto* ax : theory.axioms()) {
            ImplicationChain chain = split_implication_chain(ax->formula);
            if (chain.antecedents.empty()) continue;  // bare facts are already premises
            size_t binder_count = chain.binder_sorts.size();
            std::vector<std::optional<Term>> unbound(binder_count, std::nullopt);
            for (const auto& inst : instantiations(chain.binder_sorts, unbound)) {
                ProofTerm pt{ax->name, {}};
                for (const auto& arg : inst) pt.args.push_back(ProofTerm{arg.name, {}});
                size_t consumed = 0;
                while (consumed < chain.antecedents.size()) {
                    FormulaPtr ant = instantiate_at(chain.antecedents[consumed], inst, binder_count);
                    auto proof = discharge(theory, goal, ant);
                    if (!proof) break;
                    pt.args.push_back(*proof);
                    ++consumed;
                }
                if (consumed == 0) continue;
                FormulaPtr result = instantiate_at(chain.suffixes[consumed], inst, binder_count);
                if (result->kind == FormulaKind::Falsum || result->kind == FormulaKind::Or) continue;
                if (hyp_has_formula(goal, result)) continue;
                bool known_axiom = false;
                for (const auto* other : theory.axioms())
                    known_axiom = known_axiom || alpha_equal(other->formula, result);
                if (known_axiom) continue;
                Tactic t;
                t.kind = TacticKind::Have;
                t.name = fresh_hyp_name(goal, "h");
                t.term = std::move(pt);
                std::string key = canonical_text(result);
                if (!best || key < best->first) best = {key, std::move(t)};
            }
        }
        if (best) emit(best->second);
    }

    std::vector<Tactic> run() {
        closing_moves();
        target_shape_moves();
        for (const auto& h : goal.hyps) apply_moves(h.name, h.formula);
        for (const auto* ax : theory.axioms()) apply_moves(ax->name, ax->formula);
        hypothesis_cases();
        axiom_cases();
        // forward chaining is a rescue move: saturate towards a
        // contradiction, or out of a state nothing else touches
        if (goal.target->kind == FormulaKind::Falsum || out.empty()) forward_have();
        return std::move(out);
    }
};

}  // namespace

std::vector<Tactic> enumerate_tactics(const Theory& theory, const Goal& goal) {
    return Enumerator(theory, goal).run();
}

std::vector<Candidate> score_candidates(const std::vector<Tactic>& candidates, const Goal& goal,
                                        const PremiseIndex& index, const GeneratorConfig& config) {
    if (candidates.empty()) return {};
    std::unordered_map<std::string, double> sims;
    for (const auto& rp : index.rank(canonical_goal_text(goal))) sims[rp.name] = rp.similarity;

    auto referenced_premise = [&](const Tactic& t) -> std::optional<std::string> {
        if (!t.term) return std::nullopt;
        const std::string& head = t.term->head;
        for (const auto& p : index.premises())
            if (p.name == head) return head;
        return std::nullopt;
    };

    std::vector<double> raw(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
        double sim = 0.0;
        if (auto premise = referenced_premise(candidates[i])) sim = sims.count(*premise) ? sims[*premise] : 0.0;
        auto it = config.priors.find(candidates[i].kind);
        double prior = it == config.priors.end() ? 0.0 : it->second;
        raw[i] = config.similarity_weight * sim + prior;
    }
    double mx = *std::max_element(raw.begin(), raw.end());
    double sum = 0.0;
    for (double r : raw) sum += std::exp(r - mx);
    double lse = mx + std::log(sum);

    std::vector<Candidate> scored;
    scored.reserve(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i)
        scored.push_back({candidates[i], raw[i] - lse, Provenance::Builtin});
    std::sort(scored.begin(), scored.end(), [](const Candidate& a, const Candidate& b) {
        if (a.logprob != b.logprob) return a.logprob > b.logprob;
        return tactic_text(a.tactic) < tactic_text(b.tactic);
    });
    if (scored.size() > config.num_candidates) scored.resize(config.num_candidates);
    return scored;
}

// ---------------------------------------------------------------------------
// Builtin generator

BuiltinGenerator::BuiltinGenerator(const Theory& theory, GeneratorConfig config)
    : config_(std::move(config)), index_(PremiseIndex::from_theory(theory)) {}

GenerateResult BuiltinGenerator::generate(const Theory& theory, const ProofState& state, size_t k) {
    if (state.goals.empty()) return std::vector<Candidate>{};
    GeneratorConfig cfg = config_;
    cfg.num_candidates = std::min(k, cfg.num_candidates);
    auto tactics = enumerate_tactics(theory, state.goals.front());
    if (tactics.empty()) return std::vector<Candidate>{};
    return score_candidates(tactics, state.goals.front(), index_, cfg);
}

// ---------------------------------------------------------------------------
// External generator

ExternalGenerator::ExternalGenerator(std::string command, int reply_timeout_ms)
    : command_(std::move(command)), timeout_ms_(reply_timeout_ms) {}

GenerateResult ExternalGenerator::generate(const Theory& theory, const ProofState& state, size_t k) {
    if (!proc_.running()) {
        try {
            proc_.start(command_);
        } catch (const std::exception& e) {
            return GeneratorError{GeneratorError::Kind::SubprocessDead, e.what()};
        }
    }
    json premises = json::array();
    for (const auto* ax : theory.axioms())
        premises.push_back({{"name", ax->name}, {"text", canonical_text(ax->formula)}});
    json request = {{"kind", "generate"},
                    {"state", canonical_state_text(state)},
                    {"premises", premises},
                    {"k", k}};
    if (!proc_.write_line(request.dump()))
        return GeneratorError{GeneratorError::Kind::SubprocessDead, "scorer stdin closed"};
    auto line = proc_.read_line(timeout_ms_);
    if (!line)
        return GeneratorError{GeneratorError::Kind::SubprocessDead,
                              "scorer produced no reply (crashed or timed out)"};
    json reply = json::parse(*line, nullptr, false);
    if (reply.is_discarded() || !reply.contains("candidates") || !reply["candidates"].is_array())
        return GeneratorError{GeneratorError::Kind::Protocol, "malformed scorer reply: " + *line};

    std::vector<Candidate> out;
    for (const auto& item : reply["candidates"]) {
        if (!item.contains("tactic") || !item.contains("logprob") ||
            !item["tactic"].is_string() || !item["logprob"].is_number()) {
            ++dropped_;
            continue;
        }
        double lp = item["logprob"].get<double>();
        if (!(lp <= 0.0) || !std::isfinite(lp)) {
            ++dropped_;
            continue;
        }
        try {
            Tactic t = parse_tactic(item["tactic"].get<std::string>());
            if (t.kind == TacticKind::Opaque) {
                ++dropped_;
                continue;
            }
            out.push_back({std::move(t), lp, Provenance::External});
        } catch (const ParseError&) {
            ++dropped_;
        }
    }
    if (out.size() > k) out.resize(k);
    return out;
}

EmbedFn subprocess_embedder(std::shared_ptr<LineSubprocess> proc, int timeout_ms) {
    return [proc, timeout_ms](const std::string& text) -> Embedding {
        json request = {{"kind", "embed"}, {"text", text}};
        if (!proc->write_line(request.dump()))
            throw std::runtime_error("embedder stdin closed");
        auto line = proc->read_line(timeout_ms);
        if (!line) throw std::runtime_error("embedder produced no reply");
        json reply = json::parse(*line, nullptr, false);
        if (reply.is_discarded() || !reply.contains("embedding") || !reply["embedding"].is_array())
            throw std::runtime_error("malformed embedder reply");
        Embedding v;
        for (const auto& x : reply["embedding"]) v.push_back(x.get<double>());
        return v;
    };
}

}  // namespace minilean
