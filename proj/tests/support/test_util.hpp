#pragma once

// Shared test helpers: golden-data loading, random formula/theory
// generation, and alpha-equality over whole theories.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minilean/kernel.hpp"
#include "minilean/logic.hpp"
#include "minilean/parser.hpp"

namespace testutil {

using namespace minilean;

inline std::string data_path(const std::string& rel) { return std::string(DATA_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Theory load_golden(const std::string& name) {
    return parse_theory(read_file(data_path("golden/" + name))).theory;
}

// ---------------------------------------------------------------------------
// Random formulas over a fixed signature. Deterministic modulo the engine.

struct RandomGen {
    std::mt19937_64 engine;
    explicit RandomGen(uint64_t seed) : engine(seed) {}

    size_t below(size_t n) { return n == 0 ? 0 : engine() % n; }
    bool flip() { return below(2) == 0; }

    static const std::vector<std::string>& constants() {
        static std::vector<std::string> v{"Cat", "Cow", "Rabbit", "Tiger"};
        return v;
    }
    static const std::vector<std::string>& unary() {
        static std::vector<std::string> v{"Blue", "Nice", "Round", "Red"};
        return v;
    }
    static const std::vector<std::string>& binary() {
        static std::vector<std::string> v{"Likes", "Needs"};
        return v;
    }

    Term term(int depth) {
        if (depth > 0 && flip()) return Term::bound(static_cast<int>(below(static_cast<size_t>(depth))), "v");
        return Term::constant(constants()[below(constants().size())]);
    }

    FormulaPtr atom(int depth) {
        if (flip()) return f_atom(unary()[below(unary().size())], {term(depth)});
        return f_atom(binary()[below(binary().size())], {term(depth), term(depth)});
    }

    FormulaPtr formula(int fuel, int depth = 0) {
        if (fuel <= 0) return atom(depth);
        switch (below(8)) {
            case 0: return f_not(formula(fuel - 1, depth));
            case 1: return f_and(formula(fuel - 1, depth), formula(fuel - 1, depth));
            case 2: return f_or(formula(fuel - 1, depth), formula(fuel - 1, depth));
            case 3: return f_implies(formula(fuel - 1, depth), formula(fuel - 1, depth));
            case 4: return f_iff(formula(fuel - 1, depth), formula(fuel - 1, depth));
            case 5: return f_forall("x" + std::to_string(depth), "obj", formula(fuel - 1, depth + 1));
            case 6: return f_exists("y" + std::to_string(depth), "obj", formula(fuel - 1, depth + 1));
            default: return atom(depth);
        }
    }

    // same structure, different binder display names
    FormulaPtr rename_binders(const FormulaPtr& f, int salt = 0) {
        if (!f) return f;
        auto g = std::make_shared<Formula>(*f);
        if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists)
            g->name = "w" + std::to_string(salt + static_cast<int>(below(1000)));
        g->left = rename_binders(f->left, salt + 1);
        g->right = rename_binders(f->right, salt + 2);
        return g;
    }

    Theory theory(int num_axioms = 6, int formula_fuel = 3) {
        Theory t;
        Declaration sort;
        sort.kind = DeclKind::Sort;
        sort.name = "obj";
        t.add(sort);
        for (const auto& c : constants()) {
            Declaration d;
            d.kind = DeclKind::Constant;
            d.name = c;
            d.sort = "obj";
            t.add(std::move(d));
        }
        for (const auto& p : unary()) {
            Declaration d;
            d.kind = DeclKind::Predicate;
            d.name = p;
            d.arg_sorts = {"obj"};
            t.add(std::move(d));
        }
        for (const auto& p : binary()) {
            Declaration d;
            d.kind = DeclKind::Predicate;
            d.name = p;
            d.arg_sorts = {"obj", "obj"};
            t.add(std::move(d));
        }
        for (int i = 0; i < num_axioms; ++i) {
            FormulaPtr f = formula(formula_fuel);
            for (int guard = 0; guard < 50 && !is_closed(f); ++guard) f = formula(formula_fuel);
            if (!is_closed(f)) f = atom(0);
            Declaration d;
            d.kind = DeclKind::Axiom;
            d.name = "A" + std::to_string(i + 1);
            d.formula = f;
            t.add(std::move(d));
        }
        return t;
    }
};

inline bool scripts_alpha_equal(const TacticScript& a, const TacticScript& b);

inline bool tactics_alpha_equal(const Tactic& a, const Tactic& b) {
    if (a.kind != b.kind) return false;
    if (a.name != b.name) return false;
    if (a.term.has_value() != b.term.has_value()) return false;
    if (a.term && proof_term_text(*a.term) != proof_term_text(*b.term)) return false;
    if ((a.formula == nullptr) != (b.formula == nullptr)) return false;
    if (a.formula && !alpha_equal(a.formula, b.formula)) return false;
    if (a.witness.has_value() != b.witness.has_value()) return false;
    if (a.witness && a.witness->name != b.witness->name) return false;
    return true;
}

inline bool scripts_alpha_equal(const TacticScript& a, const TacticScript& b) {
    if (a.items.size() != b.items.size()) return false;
    for (size_t i = 0; i < a.items.size(); ++i) {
        if (a.items[i].is_block() != b.items[i].is_block()) return false;
        if (a.items[i].is_block()) {
            if (!scripts_alpha_equal(std::get<TacticScript>(a.items[i].node),
                                     std::get<TacticScript>(b.items[i].node)))
                return false;
        } else if (!tactics_alpha_equal(std::get<Tactic>(a.items[i].node),
                                        std::get<Tactic>(b.items[i].node))) {
            return false;
        }
    }
    return true;
}

inline bool theories_alpha_equal(const Theory& a, const Theory& b) {
    if (a.decls.size() != b.decls.size()) return false;
    for (size_t i = 0; i < a.decls.size(); ++i) {
        const Declaration& da = a.decls[i];
        const Declaration& db = b.decls[i];
        if (da.kind != db.kind || da.name != db.name) return false;
        if (da.sort != db.sort || da.arg_sorts != db.arg_sorts) return false;
        if ((da.formula == nullptr) != (db.formula == nullptr)) return false;
        if (da.formula && !alpha_equal(da.formula, db.formula)) return false;
        if ((da.script == nullptr) != (db.script == nullptr)) return false;
        if (da.script && !scripts_alpha_equal(*da.script, *db.script)) return false;
    }
    return true;
}

}  // namespace testutil
