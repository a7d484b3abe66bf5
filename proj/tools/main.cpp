// minilean command-line interface: parse/check theory files, replay or
// search for proofs, answer questions via dual-theorem search, run the
// forward-chaining oracle, generate synthetic corpora and evaluate corpora
// end to end.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "minilean/harness.hpp"
#include "minilean/parser.hpp"

using namespace minilean;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitProblem = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GlobalOptions {
    double timeout_secs = 180.0;
    size_t num_tactics = 64;
    std::string scorer = "builtin";
    bool no_subsumption = false;
    std::string subsumption_mode = "multiset";
    std::string trace_path;
    bool concurrent_duals = false;
};

PipelineConfig pipeline_config(const GlobalOptions& g) {
    PipelineConfig cfg;
    cfg.search.time_budget_secs = g.timeout_secs;
    cfg.search.num_candidates = g.num_tactics;
    cfg.search.subsumption = !g.no_subsumption;
    cfg.search.subsumption_mode = g.subsumption_mode == "prefix"
                                      ? SubsumptionMode::PrefixSequence
                                      : SubsumptionMode::MultisetContainment;
    cfg.search.concurrent_duals = g.concurrent_duals;
    cfg.generator.num_candidates = g.num_tactics;
    if (g.scorer.rfind("subprocess:", 0) == 0) cfg.scorer_command = g.scorer.substr(11);
    cfg.trace_path = g.trace_path;
    return cfg;
}

GeneratorFactory make_factory(const Theory& theory, const PipelineConfig& cfg) {
    if (cfg.scorer_command.empty()) {
        const GeneratorConfig& gc = cfg.generator;
        return [&theory, gc] { return std::unique_ptr<TacticGenerator>(new BuiltinGenerator(theory, gc)); };
    }
    std::string cmd = cfg.scorer_command;
    return [cmd] { return std::unique_ptr<TacticGenerator>(new ExternalGenerator(cmd)); };
}

Theory load_checked_theory(const std::string& path) {
    ParsedTheory parsed = parse_theory(read_file(path));
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    auto diags = check_wf(parsed.theory);
    if (!diags.empty()) {
        for (const auto& d : diags) std::cerr << path << ": " << format_diagnostic(d) << "\n";
        throw std::runtime_error("theory failed well-formedness check");
    }
    return std::move(parsed.theory);
}

std::ofstream open_trace(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace file " + path);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minilean: a neuro-symbolic prover for a Lean-subset theory language"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--timeout-secs", g.timeout_secs, "search time budget per theorem");
    app.add_option("--num-tactics", g.num_tactics, "candidate tactics per expansion");
    app.add_option("--scorer", g.scorer, "builtin | subprocess:<command>");
    app.add_flag("--no-subsumption", g.no_subsumption, "disable subsumption pruning");
    app.add_option("--subsumption-mode", g.subsumption_mode, "multiset | prefix");
    app.add_option("--trace", g.trace_path, "write a JSONL search trace");
    app.add_flag("--concurrent-duals", g.concurrent_duals, "run the dual searches in parallel");

    // parse
    std::string parse_file;
    auto* cmd_parse = app.add_subcommand("parse", "parse a theory file and pretty-print it");
    cmd_parse->add_option("file", parse_file)->required();

    // check
    std::string check_file;
    auto* cmd_check = app.add_subcommand("check", "run the well-formedness checker");
    cmd_check->add_option("file", check_file)->required();

    // prove
    std::string prove_file, prove_theorem;
    auto* cmd_prove = app.add_subcommand("prove", "replay a theorem's script, or search for a proof");
    cmd_prove->add_option("file", prove_file)->required();
    cmd_prove->add_option("--theorem", prove_theorem, "theorem name")->required();

    // solve
    std::string solve_file, solve_question;
    auto* cmd_solve = app.add_subcommand("solve", "decide a question by dual-theorem search");
    cmd_solve->add_option("file", solve_file)->required();
    cmd_solve->add_option("--question", solve_question, "formula text")->required();

    // oracle
    std::string oracle_file, oracle_question;
    int oracle_depth = 5;
    auto* cmd_oracle = app.add_subcommand("oracle", "forward-chaining ground truth");
    cmd_oracle->add_option("file", oracle_file)->required();
    cmd_oracle->add_option("--question", oracle_question)->required();
    cmd_oracle->add_option("--depth", oracle_depth, "derivation depth cap");

    // retrieve
    std::string retrieve_file, retrieve_goal;
    size_t retrieve_k = 4;
    auto* cmd_retrieve = app.add_subcommand("retrieve", "rank premises against a goal");
    cmd_retrieve->add_option("file", retrieve_file)->required();
    cmd_retrieve->add_option("--goal", retrieve_goal, "goal formula text")->required();
    cmd_retrieve->add_option("-k", retrieve_k, "list length");

    // gen
    uint64_t gen_seed = 1;
    int gen_count = 10, gen_depth = 5, gen_rules = 10;
    std::string gen_out;
    auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic corpus");
    cmd_gen->add_option("--seed", gen_seed);
    cmd_gen->add_option("--count", gen_count);
    cmd_gen->add_option("--depth", gen_depth, "max derivation depth (<= 5)");
    cmd_gen->add_option("--rules", gen_rules, "rules per instance (<= 15)");
    cmd_gen->add_option("-o,--out", gen_out, "output corpus path (default stdout)");

    // eval
    std::string eval_corpus, eval_report, eval_formalizer, eval_template;
    int eval_workers = 1;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a corpus end to end");
    cmd_eval->add_option("corpus", eval_corpus)->required();
    cmd_eval->add_option("--report", eval_report, "write the JSON report here");
    cmd_eval->add_option("--formalizer", eval_formalizer, "replay:<fixtures.jsonl> | http");
    cmd_eval->add_option("--template", eval_template, "prompt template path");
    cmd_eval->add_option("--workers", eval_workers, "parallel records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*cmd_parse) {
            try {
                ParsedTheory parsed = parse_theory(read_file(parse_file));
                for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
                std::cout << pretty_print(parsed.theory);
            } catch (const ParseError& e) {
                std::cerr << parse_file << ": " << e.what() << "\n";
                return kExitProblem;
            }
            return kExitOk;
        }

        if (*cmd_check) {
            ParsedTheory parsed;
            try {
                parsed = parse_theory(read_file(check_file));
            } catch (const ParseError& e) {
                std::cerr << check_file << ": " << e.what() << "\n";
                return kExitProblem;
            }
            auto diags = check_wf(parsed.theory);
            for (const auto& d : diags) std::cout << format_diagnostic(d) << "\n";
            if (diags.empty()) std::cout << "ok: " << parsed.theory.decls.size() << " declarations\n";
            return diags.empty() ? kExitOk : kExitProblem;
        }

        PipelineConfig cfg = pipeline_config(g);

        if (*cmd_prove) {
            Theory theory = load_checked_theory(prove_file);
            const Declaration* thm = theory.find(prove_theorem);
            if (!thm || thm->kind != DeclKind::Theorem) {
                std::cerr << "no theorem named '" << prove_theorem << "'\n";
                return kExitProblem;
            }
            if (thm->script) {
                ProofReport report = check_theorem(theory, prove_theorem);
                std::cout << "replay: "
                          << (report.status == ProofStatus::Complete
                                  ? "complete"
                                  : report.status == ProofStatus::Incomplete ? "incomplete" : "failed")
                          << (report.tainted ? " (tainted by sorry)" : "") << "\n";
                if (report.error)
                    std::cout << "  step " << report.failed_step << ": " << report.error->tactic
                              << ": " << report.error->reason << "\n";
                std::cout << (report.valid() ? "VALID" : "INVALID") << "\n";
                return report.valid() ? kExitOk : kExitProblem;
            }
            auto factory = make_factory(theory, cfg);
            auto gen = factory();
            std::ofstream trace_file;
            TraceSink sink = nullptr;
            if (!cfg.trace_path.empty()) {
                trace_file = open_trace(cfg.trace_path);
                sink = trace_to_stream(trace_file);
            }
            SearchOutcome outcome = search(theory, thm->formula, *gen, cfg.search, sink);
            std::cout << "search: " << search_status_name(outcome.status) << " ("
                      << outcome.stats.expanded << " expansions)\n";
            if (outcome.proved()) {
                TacticScript script = script_from_path(outcome.proof);
                std::cout << "begin\n" << print_script(script, 1) << "end\n";
            }
            return outcome.proved() ? kExitOk : kExitProblem;
        }

        if (*cmd_solve) {
            Theory theory = load_checked_theory(solve_file);
            FormulaPtr question = parse_formula(solve_question);
            auto factory = make_factory(theory, cfg);
            std::ofstream trace_file;
            TraceSink sink = nullptr;
            if (!cfg.trace_path.empty()) {
                trace_file = open_trace(cfg.trace_path);
                sink = trace_to_stream(trace_file);
            }
            DualOutcome duals = prove_both(theory, question, factory, cfg.search, sink);
            Verdict verdict = interpret(duals.positive, duals.negative);
            std::cout << "positive: " << search_status_name(duals.positive.status) << " ("
                      << duals.positive.stats.expanded << " expansions)\n";
            std::cout << "negative: " << search_status_name(duals.negative.status) << " ("
                      << duals.negative.stats.expanded << " expansions)\n";
            std::cout << "verdict: " << verdict_name(verdict) << "\n";
            return kExitOk;
        }

        if (*cmd_oracle) {
            Theory theory = load_checked_theory(oracle_file);
            FormulaPtr question = parse_formula(oracle_question);
            try {
                OracleResult result = run_oracle(theory, question, oracle_depth);
                std::cout << "label: " << verdict_name(result.label) << "\n";
                std::cout << "consistent: " << (result.consistent ? "yes" : "no") << "\n";
                std::cout << "derived (" << result.derived.size() << "):\n";
                for (const auto& lit : result.derived)
                    std::cout << "  " << lit << "  [depth " << result.depths.at(lit) << "]\n";
            } catch (const FragmentError& e) {
                std::cerr << "oracle inapplicable: " << e.what() << "\n";
                return kExitProblem;
            }
            return kExitOk;
        }

        if (*cmd_retrieve) {
            Theory theory = load_checked_theory(retrieve_file);
            FormulaPtr goal = parse_formula(retrieve_goal);
            PremiseIndex index = PremiseIndex::from_theory(theory, retrieve_k);
            ProofState root = init_state(theory, goal);
            for (const auto& rp : index.rank(canonical_goal_text(root.goals.front())))
                std::cout << rp.name << "  " << rp.similarity << "\n";
            return kExitOk;
        }

        if (*cmd_gen) {
            GenParams params;
            params.max_depth = gen_depth;
            params.num_rules = gen_rules;
            auto instances = generate_instances(gen_seed, gen_count, params);
            std::vector<ProblemRecord> records;
            for (const auto& inst : instances) records.push_back(record_from_instance(inst));
            if (gen_out.empty()) {
                for (const auto& rec : records) {
                    nlohmann::ordered_json j;
                    j["id"] = rec.id;
                    j["label"] = rec.label;
                    j["question"] = rec.question;
                    std::cout << j.dump() << "\n";
                }
            } else {
                write_corpus(records, gen_out);
                std::cout << "wrote " << records.size() << " records to " << gen_out << "\n";
            }
            return kExitOk;
        }

        if (*cmd_eval) {
            CorpusLoadResult loaded = load_corpus(eval_corpus);
            for (const auto& e : loaded.errors)
                std::cerr << "corpus error [" << e.id << "]: " << e.reason << "\n";
            if (!loaded.errors.empty()) return kExitProblem;
            cfg.formalizer = eval_formalizer;
            cfg.prompt_template_path = eval_template;
            cfg.workers = eval_workers;
            EvaluationReport report = evaluate(loaded.records, cfg);
            std::cout << report.to_table();
            if (!eval_report.empty()) {
                std::ofstream out(eval_report);
                if (!out) throw std::runtime_error("cannot open " + eval_report);
                out << report.to_json().dump(2) << "\n";
                std::cout << "report written to " << eval_report << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProblem;
    }
    return kExitUsage;
}
