#include "minilean/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "minilean/parser.hpp"

namespace minilean {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Corpus

namespace {

std::string dirname_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string resolve_ref(const std::string& value, const std::string& base_dir,
                        std::vector<std::string>& problems) {
    if (value.empty() || value[0] != '@') return value;
    std::string path = base_dir + "/" + value.substr(1);
    std::ifstream in(path);
    if (!in) {
        problems.push_back("cannot open referenced file " + path);
        return "";
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

CorpusLoadResult load_corpus(const std::string& path) {
    CorpusLoadResult result;
    std::ifstream in(path);
    if (!in) {
        result.errors.push_back({path, "cannot open corpus file"});
        return result;
    }
    std::string base_dir = dirname_of(path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string line_id = "line " + std::to_string(lineno);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            result.errors.push_back({line_id, "not valid JSON"});
            continue;
        }
        ProblemRecord rec;
        std::vector<std::string> problems;
        try {
            rec.id = j.at("id").get<std::string>();
            rec.question = j.at("question").get<std::string>();
            for (const auto& s : j.at("context")) rec.context.push_back(s.get<std::string>());
            for (const auto& s : j.at("options")) rec.options.push_back(s.get<std::string>());
            rec.label = j.at("label").get<std::string>();
        } catch (const json::exception& e) {
            result.errors.push_back({line_id, std::string("missing or malformed field: ") + e.what()});
            continue;
        }
        if (j.contains("theory"))
            rec.theory_source = resolve_ref(j["theory"].get<std::string>(), base_dir, problems);
        if (j.contains("gold_premises"))
            for (const auto& s : j["gold_premises"]) rec.gold_premises.push_back(s.get<std::string>());
        if (j.contains("proofs"))
            for (auto it = j["proofs"].begin(); it != j["proofs"].end(); ++it)
                rec.proofs[it.key()] = resolve_ref(it.value().get<std::string>(), base_dir, problems);

        if (std::find(rec.options.begin(), rec.options.end(), rec.label) == rec.options.end())
            problems.push_back("label '" + rec.label + "' is not among the options");
        try {
            OptionMapping mapping(rec.options);
        } catch (const std::invalid_argument& e) {
            problems.push_back(e.what());
        }
        if (!rec.theory_source.empty()) {
            try {
                ParsedTheory parsed = parse_theory(rec.theory_source);
                for (const auto& d : check_wf(parsed.theory))
                    problems.push_back("theory: " + format_diagnostic(d));
            } catch (const ParseError& e) {
                problems.push_back(std::string("theory: ") + e.what());
            }
        }
        if (!problems.empty()) {
            for (const auto& p : problems) result.errors.push_back({rec.id, p});
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const ProblemRecord& a, const ProblemRecord& b) { return a.id < b.id; });
    return result;
}

void write_corpus(const std::vector<ProblemRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& rec : records) {
        ordered_json j;
        j["id"] = rec.id;
        j["context"] = rec.context;
        j["question"] = rec.question;
        j["options"] = rec.options;
        j["label"] = rec.label;
        if (!rec.theory_source.empty()) j["theory"] = rec.theory_source;
        if (!rec.gold_premises.empty()) j["gold_premises"] = rec.gold_premises;
        if (!rec.proofs.empty()) {
            ordered_json proofs;
            for (const auto& [style, text] : rec.proofs) proofs[style] = text;
            j["proofs"] = proofs;
        }
        out << j.dump() << "\n";
    }
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

struct OracleLiteral {
    bool positive = true;
    FormulaPtr atom;  // may contain Bound indices into the rule prefix
};

struct OracleRule {
    std::vector<std::string> binder_sorts;
    std::vector<OracleLiteral> body;
    OracleLiteral head;
};

std::optional<OracleLiteral> as_literal(const FormulaPtr& f) {
    if (f->kind == FormulaKind::Atom) return OracleLiteral{true, f};
    if (f->kind == FormulaKind::Not && f->left->kind == FormulaKind::Atom)
        return OracleLiteral{false, f->left};
    return std::nullopt;
}

void flatten_conjunction(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == FormulaKind::And) {
        flatten_conjunction(f->left, out);
        flatten_conjunction(f->right, out);
        return;
    }
    out.push_back(f);
}

struct OracleProgram {
    std::vector<OracleLiteral> facts;
    std::vector<OracleRule> rules;
};

OracleProgram extract_program(const Theory& theory) {
    OracleProgram prog;
    for (const auto* ax : theory.axioms()) {
        FormulaPtr f = ax->formula;
        if (auto lit = as_literal(f)) {
            prog.facts.push_back(*lit);
            continue;
        }
        OracleRule rule;
        while (f->kind == FormulaKind::Forall) {
            rule.binder_sorts.push_back(f->sort);
            f = f->left;
        }
        std::vector<FormulaPtr> body_parts;
        while (f->kind == FormulaKind::Implies) {
            flatten_conjunction(f->left, body_parts);
            f = f->right;
        }
        if (body_parts.empty())
            throw FragmentError("axiom '" + ax->name + "' is outside the oracle fragment");
        auto head = as_literal(f);
        if (!head)
            throw FragmentError("axiom '" + ax->name +
                                "' is outside the oracle fragment (head is not a literal)");
        for (const auto& part : body_parts) {
            auto lit = as_literal(part);
            if (!lit)
                throw FragmentError("axiom '" + ax->name +
                                    "' is outside the oracle fragment (body is not a conjunction "
                                    "of literals)");
            rule.body.push_back(*lit);
        }
        rule.head = *head;
        prog.rules.push_back(std::move(rule));
    }
    return prog;
}

FormulaPtr ground_atom(const FormulaPtr& atom, const std::vector<Term>& binding) {
    // Bound index i refers to binder (depth-style): innermost = 0. The atom
    // sits directly under the whole prefix.
    std::vector<Term> args = atom->args;
    for (auto& t : args) {
        if (t.kind != Term::Kind::Bound) continue;
        size_t slot = binding.size() - 1 - static_cast<size_t>(t.index);
        t = binding[slot];
    }
    return f_atom(atom->name, std::move(args));
}

struct DepthMap {
    std::map<std::string, int> pos, neg;

    std::map<std::string, int>& side(bool positive) { return positive ? pos : neg; }
    const std::map<std::string, int>& side(bool positive) const { return positive ? pos : neg; }

    std::optional<int> depth(bool positive, const std::string& key) const {
        const auto& m = side(positive);
        auto it = m.find(key);
        if (it == m.end()) return std::nullopt;
        return it->second;
    }
};

}  // namespace

OracleResult run_oracle(const Theory& theory, const FormulaPtr& question, int depth_cap) {
    OracleProgram prog = extract_program(theory);
    auto qlit = as_literal(question);
    if (!qlit || !is_closed(question))
        throw FragmentError("question is not a ground literal");

    DepthMap derived;
    for (const auto& fact : prog.facts) {
        std::string key = canonical_text(fact.atom);
        auto& m = derived.side(fact.positive);
        if (!m.count(key)) m[key] = 0;
    }

    // all bindings for a rule's binder prefix
    auto bindings_for = [&](const OracleRule& rule) {
        std::vector<std::vector<Term>> result{{}};
        for (const auto& sort : rule.binder_sorts) {
            std::vector<std::vector<Term>> next;
            for (const auto& prefix : result) {
                for (const auto& cname : theory.constants()) {
                    if (*theory.constant_sort(cname) != sort) continue;
                    auto row = prefix;
                    row.push_back(Term::constant(cname));
                    next.push_back(std::move(row));
                }
            }
            result = std::move(next);
        }
        return result;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : prog.rules) {
            for (const auto& binding : bindings_for(rule)) {
                int depth = 0;
                bool applicable = true;
                for (const auto& lit : rule.body) {
                    auto d = derived.depth(lit.positive, canonical_text(ground_atom(lit.atom, binding)));
                    if (!d) {
                        applicable = false;
                        break;
                    }
                    depth = std::max(depth, *d);
                }
                if (!applicable) continue;
                int head_depth = depth + 1;
                if (head_depth > depth_cap) continue;
                std::string key = canonical_text(ground_atom(rule.head.atom, binding));
                auto& m = derived.side(rule.head.positive);
                auto it = m.find(key);
                if (it == m.end() || it->second > head_depth) {
                    m[key] = head_depth;
                    changed = true;
                }
            }
        }
    }

    OracleResult result;
    for (const auto& [key, d] : derived.pos) {
        result.derived.push_back(key);
        result.depths[key] = d;
    }
    for (const auto& [key, d] : derived.neg) {
        result.derived.push_back("¬ " + key);
        result.depths["¬ " + key] = d;
    }
    std::sort(result.derived.begin(), result.derived.end());

    result.consistent = true;
    for (const auto& [key, d] : derived.pos)
        if (derived.neg.count(key)) result.consistent = false;

    std::string qkey = canonical_text(qlit->atom);
    bool same_polarity = derived.depth(qlit->positive, qkey).has_value();
    bool complement = derived.depth(!qlit->positive, qkey).has_value();
    if (same_polarity)
        result.label = Verdict::True;
    else if (complement)
        result.label = Verdict::False;
    else
        result.label = Verdict::Unknown;
    return result;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

const std::vector<std::string> kConstantPool = {"Anne", "Bob",  "Carol", "Dave",
                                                "Erin", "Fred", "Gail",  "Hank"};
const std::vector<std::string> kUnaryPool = {"Red",   "Blue", "Green", "Kind",  "Nice",  "Big",
                                             "Round", "Cold", "Quiet", "Smart", "Furry", "Young"};
const std::vector<std::string> kBinaryPool = {"Likes", "Chases", "Needs", "Sees", "Visits", "Eats"};

// modulo-reduced draws; std::uniform_int_distribution is not specified
// bit-exactly across standard libraries
struct Rng {
    std::mt19937_64 engine;
    size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(engine() % n); }
    bool chance(int percent) { return below(100) < static_cast<size_t>(percent); }
};

std::string lower_first(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

std::string literal_sentence(const Theory& theory, const FormulaPtr& lit) {
    bool positive = lit->kind != FormulaKind::Not;
    const Formula& atom = positive ? *lit : *lit->left;
    std::string s;
    if (atom.args.size() == 1) {
        s = atom.args[0].name + (positive ? " is " : " is not ") + atom.name + ".";
    } else {
        s = atom.args[0].name + " " + lower_first(atom.name) + " " + atom.args[1].name + ".";
        if (!positive) s = "It is not true that " + lower_first(s);
    }
    (void)theory;
    return s;
}

std::string rule_sentence(const FormulaPtr& body, const FormulaPtr& head) {
    auto piece = [](const FormulaPtr& lit, bool subject) {
        bool positive = lit->kind != FormulaKind::Not;
        const Formula& atom = positive ? *lit : *lit->left;
        std::string who = subject ? "someone" : "they";
        std::string s;
        if (atom.args.size() == 1) {
            s = who + (positive ? " is " : " is not ") + atom.name;
        } else {
            s = who + " " + lower_first(atom.name) + " " + atom.args[1].name;
            if (!positive) s = "it is not true that " + s;
        }
        return s;
    };
    std::vector<FormulaPtr> parts;
    flatten_conjunction(body, parts);
    std::string s = "If " + piece(parts[0], true);
    for (size_t i = 1; i < parts.size(); ++i) s += " and " + piece(parts[i], false);
    std::string head_piece = piece(head, false);
    if (head_piece.rfind("they is", 0) == 0) head_piece = "they are" + head_piece.substr(7);
    s += " then " + head_piece + ".";
    return s;
}

}  // namespace

std::vector<GeneratedInstance> generate_instances(uint64_t seed, int count, const GenParams& params) {
    if (params.max_depth < 1 || params.max_depth > 5)
        throw std::invalid_argument("generate_instances: max_depth must be in [1, 5]");
    if (params.num_constants < 2 || params.num_constants > static_cast<int>(kConstantPool.size()))
        throw std::invalid_argument("generate_instances: num_constants out of range");
    if (params.num_unary < 2 || params.num_unary > static_cast<int>(kUnaryPool.size()) ||
        params.num_binary < 0 || params.num_binary > static_cast<int>(kBinaryPool.size()))
        throw std::invalid_argument("generate_instances: predicate counts out of range");
    if (params.num_rules < 1 || params.num_rules > 15)
        throw std::invalid_argument("generate_instances: num_rules must be in [1, 15]");

    std::vector<GeneratedInstance> out;
    for (int i = 0; i < count; ++i) {
        Verdict target = i % 3 == 0 ? Verdict::True : (i % 3 == 1 ? Verdict::False : Verdict::Unknown);
        bool built = false;
        for (uint32_t attempt = 0; attempt < 400 && !built; ++attempt) {
            std::seed_seq sseq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                              static_cast<uint32_t>(i), attempt};
            Rng rng{std::mt19937_64(sseq)};

            Theory theory;
            Declaration sort;
            sort.kind = DeclKind::Sort;
            sort.name = "obj";
            theory.add(sort);
            std::vector<std::string> consts(kConstantPool.begin(),
                                            kConstantPool.begin() + params.num_constants);
            for (const auto& c : consts) {
                Declaration d;
                d.kind = DeclKind::Constant;
                d.name = c;
                d.sort = "obj";
                theory.add(std::move(d));
            }
            std::vector<std::string> unary(kUnaryPool.begin(), kUnaryPool.begin() + params.num_unary);
            std::vector<std::string> binary(kBinaryPool.begin(),
                                            kBinaryPool.begin() + params.num_binary);
            for (const auto& p : unary) {
                Declaration d;
                d.kind = DeclKind::Predicate;
                d.name = p;
                d.arg_sorts = {"obj"};
                theory.add(std::move(d));
            }
            for (const auto& p : binary) {
                Declaration d;
                d.kind = DeclKind::Predicate;
                d.name = p;
                d.arg_sorts = {"obj", "obj"};
                theory.add(std::move(d));
            }

            auto random_ground_atom = [&]() {
                if (!binary.empty() && rng.chance(30)) {
                    std::string p = binary[rng.below(binary.size())];
                    std::string a = consts[rng.below(consts.size())];
                    std::string b = consts[rng.below(consts.size())];
                    return f_atom(p, {Term::constant(a), Term::constant(b)});
                }
                std::string p = unary[rng.below(unary.size())];
                std::string a = consts[rng.below(consts.size())];
                return f_atom(p, {Term::constant(a)});
            };

            std::set<std::string> fact_keys;
            int fact_count = 0;
            std::vector<std::string> context;
            for (int f = 0; f < params.num_facts * 3 && fact_count < params.num_facts; ++f) {
                FormulaPtr atom = random_ground_atom();
                FormulaPtr lit = rng.chance(15) ? f_not(atom) : atom;
                std::string key = canonical_text(lit);
                if (!fact_keys.insert(key).second) continue;
                // a fact and its complement in one theory would be inconsistent
                FormulaPtr comp = lit->kind == FormulaKind::Not ? lit->left : f_not(lit);
                if (fact_keys.count(canonical_text(comp))) continue;
                Declaration d;
                d.kind = DeclKind::Axiom;
                d.name = "T" + std::to_string(++fact_count);
                d.formula = lit;
                theory.add(std::move(d));
                context.push_back(literal_sentence(theory, lit));
            }

            auto rule_body_atom = [&]() -> FormulaPtr {
                if (!binary.empty() && rng.chance(25)) {
                    std::string p = binary[rng.below(binary.size())];
                    std::string c = consts[rng.below(consts.size())];
                    return f_atom(p, {Term::bound(0, "x"), Term::constant(c)});
                }
                return f_atom(unary[rng.below(unary.size())], {Term::bound(0, "x")});
            };

            for (int r = 0; r < params.num_rules; ++r) {
                int body_size = params.max_depth == 1 ? 1 : (rng.chance(60) ? 1 : 2);
                // bodies stay positive: hypothetical refutation through a
                // negated body condition is invisible to forward chaining
                FormulaPtr body = rule_body_atom();
                for (int b = 1; b < body_size; ++b) {
                    FormulaPtr extra = rule_body_atom();
                    body = f_and(body, extra);
                }
                FormulaPtr head_atom = rule_body_atom();
                FormulaPtr head = rng.chance(20) ? f_not(head_atom) : head_atom;
                Declaration d;
                d.kind = DeclKind::Axiom;
                d.name = "R" + std::to_string(r + 1);
                d.formula = f_forall("x", "obj", f_implies(body, head));
                theory.add(std::move(d));
                context.push_back(rule_sentence(body, head));
            }

            // the prover searches without a depth limit, so consistency and
            // question labels must hold in the full fixpoint; the cap only
            // bounds the depth of the witness derivation
            constexpr int kUncapped = 1000000;
            OracleResult oracle_all;
            try {
                // probe with an arbitrary literal; only the derived set matters here
                oracle_all = run_oracle(theory, f_atom(unary[0], {Term::constant(consts[0])}),
                                        kUncapped);
            } catch (const FragmentError&) {
                continue;
            }
            if (!oracle_all.consistent) continue;

            // a question is hypothetically safe when assuming it derives no
            // contradiction; otherwise the prover can refute it even though
            // the plain forward chain cannot
            auto hypothetically_consistent = [&](const FormulaPtr& q) {
                Theory probe = theory;
                Declaration extra;
                extra.kind = DeclKind::Axiom;
                extra.name = "Q0";
                extra.formula = q;
                probe.add(std::move(extra));
                return run_oracle(probe, q, kUncapped).consistent;
            };

            // collect candidates per polarity with their depths
            auto pick_question = [&]() -> std::optional<std::pair<FormulaPtr, int>> {
                std::vector<std::pair<std::string, int>> pool;
                if (target == Verdict::True) {
                    for (const auto& [key, d] : oracle_all.depths)
                        if (key.rfind("¬", 0) != 0 && d >= 1 && d <= params.max_depth)
                            pool.push_back({key, d});
                } else if (target == Verdict::False) {
                    for (const auto& [key, d] : oracle_all.depths) {
                        if (key.rfind("¬ ", 0) != 0 || d > params.max_depth) continue;
                        std::string atom_key = key.substr(std::string("¬ ").size());
                        if (!oracle_all.depths.count(atom_key)) pool.push_back({atom_key, d});
                    }
                } else {
                    // atoms with neither polarity derived, nor refutable by
                    // assuming them
                    std::vector<std::string> unknowns;
                    for (const auto& p : unary)
                        for (const auto& c : consts) {
                            std::string key = canonical_text(f_atom(p, {Term::constant(c)}));
                            if (!oracle_all.depths.count(key) &&
                                !oracle_all.depths.count("¬ " + key))
                                unknowns.push_back(key);
                        }
                    while (!unknowns.empty()) {
                        size_t at = rng.below(unknowns.size());
                        FormulaPtr q = parse_formula(unknowns[at]);
                        if (hypothetically_consistent(q)) return std::make_pair(q, 0);
                        unknowns.erase(unknowns.begin() + static_cast<long>(at));
                    }
                    return std::nullopt;
                }
                if (pool.empty()) return std::nullopt;
                // deepest first, canonical text breaking ties
                std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
                    if (a.second != b.second) return a.second > b.second;
                    return a.first < b.first;
                });
                return std::make_pair(parse_formula(pool.front().first), pool.front().second);
            };

            auto picked = pick_question();
            if (!picked) continue;

            GeneratedInstance inst;
            inst.id = "gen-" + std::to_string(seed) + "-" + std::to_string(i + 1);
            inst.question = picked->first;
            inst.label = target;
            inst.derivation_depth = picked->second;
            DualTheorems duals = build_duals(inst.question);
            Declaration thm;
            thm.kind = DeclKind::Theorem;
            thm.name = duals.positive_name;
            thm.formula = inst.question;
            theory.add(std::move(thm));
            inst.theory = std::move(theory);
            out.push_back(std::move(inst));
            built = true;
        }
        if (!built)
            throw std::runtime_error("generate_instances: could not build an instance for label " +
                                     verdict_name(target) + " (params too tight)");
    }
    return out;
}

ProblemRecord record_from_instance(const GeneratedInstance& inst) {
    ProblemRecord rec;
    rec.id = inst.id;
    for (const auto* ax : inst.theory.axioms()) {
        const FormulaPtr& f = ax->formula;
        if (f->kind == FormulaKind::Forall && f->left->kind == FormulaKind::Implies)
            rec.context.push_back(rule_sentence(f->left->left, f->left->right));
        else
            rec.context.push_back(literal_sentence(inst.theory, f));
    }
    rec.question = print_formula(inst.question) + "?";
    rec.options = {"True", "False", "Unknown"};
    rec.label = verdict_name(inst.label);
    rec.theory_source = pretty_print(inst.theory);
    return rec;
}

// ---------------------------------------------------------------------------
// Evaluation

FormulaPtr question_from_theory(const Theory& theory) {
    auto thms = theory.theorems();
    if (thms.empty()) return nullptr;
    const Declaration* first = thms.front();
    if (first->name.rfind("not_", 0) == 0 && first->formula->kind == FormulaKind::Not)
        return first->formula->left;
    return first->formula;
}

namespace {

SearchSummary summarize(const SearchOutcome& o) {
    SearchSummary s;
    s.status = search_status_name(o.status);
    s.expanded = o.stats.expanded;
    s.pruned = o.stats.pruned_subsumed;
    s.deduplicated = o.stats.deduplicated;
    s.wall_time_ms = o.stats.wall_time_ms;
    return s;
}

std::string render_path(const std::vector<Tactic>& path) {
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) s += ", ";
        s += tactic_text(path[i]);
    }
    return s;
}

}  // namespace

RecordOutcome solve_record(const ProblemRecord& record, const PipelineConfig& config) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    RecordOutcome out;
    out.id = record.id;
    out.gold = record.label;
    auto finish = [&]() -> RecordOutcome& {
        out.wall_time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        return out;
    };

    std::string source = record.theory_source;
    if (source.empty()) {
        if (config.formalizer.empty()) {
            out.failure = "record has no attached theory and no formalizer is configured";
            return finish();
        }
        try {
            std::unique_ptr<ChatClient> client;
            if (config.formalizer.rfind("replay:", 0) == 0)
                client = std::make_unique<ReplayChatClient>(config.formalizer.substr(7));
            else if (config.formalizer == "http")
                client = HttpChatClient::from_environment();
            else {
                out.failure = "unknown formalizer '" + config.formalizer + "'";
                return finish();
            }
            PromptTemplate tmpl = PromptTemplate::load(config.prompt_template_path);
            FormalizationResult fr =
                formalize_with_retry(*client, tmpl, record.context, {record.question});
            out.formalize_attempts = fr.attempts;
            if (fr.status != FormalizationStatus::Ok) {
                out.failure = "formalization failed";
                for (const auto& d : fr.diagnostics) out.failure += "; " + d;
                return finish();
            }
            source = fr.theory_source;
        } catch (const std::exception& e) {
            out.failure = std::string("formalizer error: ") + e.what();
            return finish();
        }
    }

    Theory theory;
    try {
        ParsedTheory parsed = parse_theory(source);
        theory = std::move(parsed.theory);
        auto diags = check_wf(theory);
        if (!diags.empty()) {
            out.failure = "theory failed well-formedness: " + format_diagnostic(diags.front());
            return finish();
        }
    } catch (const ParseError& e) {
        out.failure = std::string("theory parse error: ") + e.what();
        return finish();
    }

    FormulaPtr question = question_from_theory(theory);
    if (!question) {
        out.failure = "theory declares no theorem to prove";
        return finish();
    }

    GeneratorFactory factory;
    if (config.scorer_command.empty()) {
        const GeneratorConfig& gc = config.generator;
        factory = [&theory, gc]() -> std::unique_ptr<TacticGenerator> {
            return std::make_unique<BuiltinGenerator>(theory, gc);
        };
    } else {
        std::string cmd = config.scorer_command;
        factory = [cmd]() -> std::unique_ptr<TacticGenerator> {
            return std::make_unique<ExternalGenerator>(cmd);
        };
    }

    DualOutcome duals = prove_both(theory, question, factory, config.search);
    Verdict verdict = interpret(duals.positive, duals.negative);
    out.verdict = verdict_name(verdict);
    out.positive = summarize(duals.positive);
    out.negative = summarize(duals.negative);
    auto gold = verdict_from_name(record.label);
    out.correct = gold.has_value() && *gold == verdict;

    const SearchOutcome* proved = duals.positive.proved() ? &duals.positive
                                 : duals.negative.proved() ? &duals.negative
                                                           : nullptr;
    if (proved) {
        out.proof_found = true;
        out.proof_script = render_path(proved->proof);
        out.proof_tactics = static_cast<int>(proved->proof.size());
        FormulaPtr target = duals.positive.proved() ? question : negate(question);
        ProofReport report = check_script(theory, target, script_from_path(proved->proof));
        out.proof_valid = report.valid();
    }

    if (!record.gold_premises.empty()) {
        PremiseIndex index = PremiseIndex::from_theory(theory);
        ProofState root = init_state(theory, question);
        auto ranked = index.rank_all(canonical_goal_text(root.goals.front()));
        std::vector<std::string> names;
        for (const auto& rp : ranked) names.push_back(rp.name);
        out.recall_at_1 = recall_at_k(record.gold_premises, names, 1);
        out.recall_at_4 = recall_at_k(record.gold_premises, names, 4);
    }
    return finish();
}

EvaluationReport evaluate_with(const std::vector<ProblemRecord>& corpus, int workers,
                               const SolveFn& solve) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    EvaluationReport report;
    report.records.resize(corpus.size());

    if (workers < 1) workers = 1;
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= corpus.size()) return;
            report.records[i] = solve(corpus[i]);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    report.total = corpus.size();
    size_t proofs_found = 0, proofs_valid = 0, backed = 0;
    double recall1_sum = 0, recall4_sum = 0;
    size_t recall_n = 0;
    for (const auto& r : report.records) {
        if (r.correct) ++report.correct;
        if (!r.failure.empty()) ++report.record_failures;
        if (r.verdict == "Inconsistent") ++report.inconsistent;
        for (const auto* s : {&r.positive, &r.negative}) {
            if (s->status == "timeout") ++report.timeouts;
            if (s->status == "exhausted") ++report.exhausted;
            if (s->status == "generator-failure") ++report.generator_failures;
        }
        if (r.verdict == "Unknown" &&
            (r.positive.status == "timeout" || r.negative.status == "timeout" ||
             r.positive.status == "generator-failure" || r.negative.status == "generator-failure"))
            ++report.unknown_by_failure;
        if (r.proof_found) {
            ++proofs_found;
            if (r.proof_valid) ++proofs_valid;
        }
        if (r.correct && (!r.proof_found || r.proof_valid)) ++backed;
        if (r.recall_at_1) {
            recall1_sum += *r.recall_at_1;
            recall4_sum += *r.recall_at_4;
            ++recall_n;
        }
    }
    report.answer_accuracy =
        report.total ? static_cast<double>(report.correct) / static_cast<double>(report.total) : 0.0;
    report.proof_validity_rate =
        proofs_found ? static_cast<double>(proofs_valid) / static_cast<double>(proofs_found) : 1.0;
    report.proof_backed_accuracy =
        report.total ? static_cast<double>(backed) / static_cast<double>(report.total) : 0.0;
    if (recall_n) {
        report.mean_recall_at_1 = recall1_sum / static_cast<double>(recall_n);
        report.mean_recall_at_4 = recall4_sum / static_cast<double>(recall_n);
    }
    report.wall_time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    return report;
}

EvaluationReport evaluate(const std::vector<ProblemRecord>& corpus, const PipelineConfig& config) {
    return evaluate_with(corpus, config.workers,
                         [&config](const ProblemRecord& rec) { return solve_record(rec, config); });
}

// ---------------------------------------------------------------------------
// Report rendering

ordered_json EvaluationReport::to_json() const {
    ordered_json j;
    ordered_json summary;
    summary["records"] = total;
    summary["answer_accuracy"] = answer_accuracy;
    summary["correct"] = correct;
    summary["inconsistent"] = inconsistent;
    summary["timeouts"] = timeouts;
    summary["exhausted"] = exhausted;
    summary["generator_failures"] = generator_failures;
    summary["record_failures"] = record_failures;
    summary["unknown_by_failure"] = unknown_by_failure;
    summary["proof_validity_rate"] = proof_validity_rate;
    summary["proof_backed_accuracy"] = proof_backed_accuracy;
    summary["recall_at_1"] = mean_recall_at_1 ? ordered_json(*mean_recall_at_1) : ordered_json(nullptr);
    summary["recall_at_4"] = mean_recall_at_4 ? ordered_json(*mean_recall_at_4) : ordered_json(nullptr);
    summary["wall_time_ms"] = wall_time_ms;
    j["summary"] = summary;

    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        ordered_json rj;
        rj["id"] = r.id;
        rj["gold"] = r.gold;
        rj["verdict"] = r.verdict;
        rj["correct"] = r.correct;
        if (!r.failure.empty()) rj["failure"] = r.failure;
        auto side = [](const SearchSummary& s) {
            ordered_json sj;
            sj["status"] = s.status;
            sj["expanded"] = s.expanded;
            sj["pruned"] = s.pruned;
            sj["deduplicated"] = s.deduplicated;
            sj["wall_time_ms"] = s.wall_time_ms;
            return sj;
        };
        rj["positive"] = side(r.positive);
        rj["negative"] = side(r.negative);
        ordered_json proof;
        proof["found"] = r.proof_found;
        proof["valid"] = r.proof_valid;
        proof["tactics"] = r.proof_tactics;
        proof["script"] = r.proof_script;
        rj["proof"] = proof;
        if (r.recall_at_1) {
            rj["recall_at_1"] = *r.recall_at_1;
            rj["recall_at_4"] = *r.recall_at_4;
        }
        if (r.formalize_attempts) rj["formalize_attempts"] = r.formalize_attempts;
        rj["wall_time_ms"] = r.wall_time_ms;
        recs.push_back(std::move(rj));
    }
    j["records"] = recs;
    return j;
}

std::string EvaluationReport::to_table() const {
    std::ostringstream os;
    os << "id                         gold      verdict       ok  pos-status    neg-status\n";
    os << "-------------------------  --------  ------------  --  ------------  ------------\n";
    for (const auto& r : records) {
        auto pad = [](std::string s, size_t n) {
            if (s.size() > n) s.resize(n);
            return s + std::string(n - s.size(), ' ');
        };
        os << pad(r.id, 25) << "  " << pad(r.gold, 8) << "  " << pad(r.verdict, 12) << "  "
           << (r.correct ? "y " : ". ") << "  " << pad(r.positive.status, 12) << "  "
           << pad(r.negative.status, 12);
        if (!r.failure.empty()) os << "  ! " << r.failure;
        os << "\n";
    }
    os << "\n";
    os << "answer accuracy        " << answer_accuracy << "\n";
    os << "proof validity rate    " << proof_validity_rate << "\n";
    os << "proof-backed accuracy  " << proof_backed_accuracy << "\n";
    if (mean_recall_at_1) os << "recall@1               " << *mean_recall_at_1 << "\n";
    if (mean_recall_at_4) os << "recall@4               " << *mean_recall_at_4 << "\n";
    os << "inconsistent " << inconsistent << ", timeouts " << timeouts << ", exhausted " << exhausted
       << ", generator failures " << generator_failures << ", record failures " << record_failures
       << ", unknown-by-failure " << unknown_by_failure << "\n";
    return os.str();
}

}  // namespace minilean
