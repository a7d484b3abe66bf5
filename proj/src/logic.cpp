#include "minilean/logic.hpp"

#include <algorithm>
#include <sstream>

namespace minilean {

bool term_equal(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Constant: return a.name == b.name;
        case Term::Kind::Bound: return a.index == b.index;  // display names ignored
        case Term::Kind::Numeral: return a.value == b.value;
    }
    return false;
}

static FormulaPtr make(FormulaKind k) { return std::make_shared<Formula>(Formula(k)); }

FormulaPtr f_atom(std::string predicate, std::vector<Term> args) {
    auto f = std::make_shared<Formula>(Formula(FormulaKind::Atom));
    f->name = std::move(predicate);
    f->args = std::move(args);
    return f;
}

FormulaPtr f_false() { return make(FormulaKind::Falsum); }

FormulaPtr f_equality(Term lhs, Term rhs) {
    auto f = std::make_shared<Formula>(Formula(FormulaKind::Equality));
    f->args = {std::move(lhs), std::move(rhs)};
    return f;
}

static FormulaPtr unary(FormulaKind k, FormulaPtr child) {
    auto f = std::make_shared<Formula>(Formula(k));
    f->left = std::move(child);
    return f;
}

static FormulaPtr binary(FormulaKind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>(Formula(k));
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

FormulaPtr f_not(FormulaPtr f) { return unary(FormulaKind::Not, std::move(f)); }
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) { return binary(FormulaKind::And, std::move(l), std::move(r)); }
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) { return binary(FormulaKind::Or, std::move(l), std::move(r)); }
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r) { return binary(FormulaKind::Implies, std::move(l), std::move(r)); }
FormulaPtr f_iff(FormulaPtr l, FormulaPtr r) { return binary(FormulaKind::Iff, std::move(l), std::move(r)); }

static FormulaPtr quantifier(FormulaKind k, std::string binder, std::string sort, FormulaPtr body) {
    auto f = std::make_shared<Formula>(Formula(k));
    f->name = std::move(binder);
    f->sort = std::move(sort);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_forall(std::string binder, std::string sort, FormulaPtr body) {
    return quantifier(FormulaKind::Forall, std::move(binder), std::move(sort), std::move(body));
}
FormulaPtr f_exists(std::string binder, std::string sort, FormulaPtr body) {
    return quantifier(FormulaKind::Exists, std::move(binder), std::move(sort), std::move(body));
}

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::Atom:
        case FormulaKind::Equality: {
            if (a->name != b->name || a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (!term_equal(a->args[i], b->args[i])) return false;
            return true;
        }
        case FormulaKind::Falsum:
            return true;
        case FormulaKind::Not:
            return alpha_equal(a->left, b->left);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            return alpha_equal(a->left, b->left) && alpha_equal(a->right, b->right);
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return a->sort == b->sort && alpha_equal(a->left, b->left);
    }
    return false;
}

static bool closed_at(const FormulaPtr& f, int depth) {
    if (!f) return true;
    switch (f->kind) {
        case FormulaKind::Atom:
        case FormulaKind::Equality:
            for (const auto& t : f->args)
                if (t.kind == Term::Kind::Bound && t.index >= depth) return false;
            return true;
        case FormulaKind::Falsum:
            return true;
        case FormulaKind::Not:
            return closed_at(f->left, depth);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            return closed_at(f->left, depth) && closed_at(f->right, depth);
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return closed_at(f->left, depth + 1);
    }
    return true;
}

bool is_closed(const FormulaPtr& f) { return closed_at(f, 0); }

static FormulaPtr subst(const FormulaPtr& f, int depth, const Term& witness) {
    if (!f) return f;
    switch (f->kind) {
        case FormulaKind::Atom:
        case FormulaKind::Equality: {
            bool touched = false;
            std::vector<Term> args = f->args;
            for (auto& t : args) {
                if (t.kind != Term::Kind::Bound) continue;
                if (t.index == depth) {
                    t = witness;
                    touched = true;
                } else if (t.index > depth) {
                    t.index -= 1;
                    touched = true;
                }
            }
            if (!touched) return f;
            auto g = std::make_shared<Formula>(*f);
            g->args = std::move(args);
            return g;
        }
        case FormulaKind::Falsum:
            return f;
        case FormulaKind::Not: {
            auto l = subst(f->left, depth, witness);
            if (l == f->left) return f;
            auto g = std::make_shared<Formula>(*f);
            g->left = l;
            return g;
        }
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff: {
            auto l = subst(f->left, depth, witness);
            auto r = subst(f->right, depth, witness);
            if (l == f->left && r == f->right) return f;
            auto g = std::make_shared<Formula>(*f);
            g->left = l;
            g->right = r;
            return g;
        }
        case FormulaKind::Forall:
        case FormulaKind::Exists: {
            auto body = subst(f->left, depth + 1, witness);
            if (body == f->left) return f;
            auto g = std::make_shared<Formula>(*f);
            g->left = body;
            return g;
        }
    }
    return f;
}

FormulaPtr open_binder(const FormulaPtr& body, const Term& witness) {
    return subst(body, 0, witness);
}

// ---------------------------------------------------------------------------
// Theory

void Theory::add(Declaration d) {
    index_.emplace(d.name, decls.size());
    decls.push_back(std::move(d));
}

const Declaration* Theory::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &decls[it->second];
}

bool Theory::is_sort(const std::string& name) const {
    const Declaration* d = find(name);
    return d && d->kind == DeclKind::Sort;
}

bool Theory::is_constant(const std::string& name) const {
    const Declaration* d = find(name);
    return d && d->kind == DeclKind::Constant;
}

bool Theory::is_predicate(const std::string& name) const {
    const Declaration* d = find(name);
    return d && d->kind == DeclKind::Predicate;
}

std::vector<const Declaration*> Theory::axioms() const {
    std::vector<const Declaration*> out;
    for (const auto& d : decls)
        if (d.kind == DeclKind::Axiom) out.push_back(&d);
    return out;
}

std::vector<const Declaration*> Theory::theorems() const {
    std::vector<const Declaration*> out;
    for (const auto& d : decls)
        if (d.kind == DeclKind::Theorem) out.push_back(&d);
    return out;
}

std::vector<std::string> Theory::constants() const {
    std::vector<std::string> out;
    for (const auto& d : decls)
        if (d.kind == DeclKind::Constant) out.push_back(d.name);
    return out;
}

std::optional<std::string> Theory::constant_sort(const std::string& name) const {
    const Declaration* d = find(name);
    if (!d || d->kind != DeclKind::Constant) return std::nullopt;
    return d->sort;
}

// ---------------------------------------------------------------------------
// check_wf

std::string diagnostic_kind_name(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::UnknownSymbol: return "unknown-symbol";
        case DiagnosticKind::ArityMismatch: return "arity-mismatch";
        case DiagnosticKind::DuplicateName: return "duplicate-name";
        case DiagnosticKind::FreeVariable: return "free-variable";
        case DiagnosticKind::SortMismatch: return "sort-mismatch";
        case DiagnosticKind::EqualityUnsupported: return "equality-unsupported";
        case DiagnosticKind::NumericUnsupported: return "numeric-unsupported";
    }
    return "unknown";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    if (d.span.known()) os << d.span.line << ":" << d.span.column << ": ";
    os << diagnostic_kind_name(d.kind) << " in '" << d.decl_name << "': " << d.message;
    return os.str();
}

namespace {

struct WfChecker {
    const Theory& theory;
    std::vector<Diagnostic>* out;
    const Declaration* decl = nullptr;
    size_t visible = 0;  // declarations before the one being checked

    void report(DiagnosticKind kind, std::string msg) {
        out->push_back({kind, decl->name, std::move(msg), decl->span});
    }

    const Declaration* lookup(const std::string& name) const {
        for (size_t i = 0; i < visible; ++i)
            if (theory.decls[i].name == name) return &theory.decls[i];
        return nullptr;
    }

    void check_term(const Term& t, int depth, const std::string& expected_sort) {
        switch (t.kind) {
            case Term::Kind::Numeral:
                report(DiagnosticKind::NumericUnsupported,
                       "numeric literal " + std::to_string(t.value) + " is not supported");
                return;
            case Term::Kind::Bound:
                if (t.index < 0 || t.index >= depth)
                    report(DiagnosticKind::FreeVariable,
                           "variable '" + t.name + "' does not resolve to an enclosing binder");
                return;
            case Term::Kind::Constant: {
                const Declaration* d = lookup(t.name);
                if (!d || d->kind != DeclKind::Constant) {
                    report(DiagnosticKind::UnknownSymbol, "constant '" + t.name + "' is not declared");
                    return;
                }
                if (!expected_sort.empty() && d->sort != expected_sort)
                    report(DiagnosticKind::SortMismatch,
                           "'" + t.name + "' has sort " + d->sort + ", expected " + expected_sort);
                return;
            }
        }
    }

    // binder_sorts: innermost last; Bound index counts from innermost.
    void check_formula(const FormulaPtr& f, std::vector<std::string>& binder_sorts) {
        if (!f) return;
        switch (f->kind) {
            case FormulaKind::Atom: {
                const Declaration* d = lookup(f->name);
                if (!d || d->kind != DeclKind::Predicate) {
                    report(DiagnosticKind::UnknownSymbol, "predicate '" + f->name + "' is not declared");
                    return;
                }
                if (d->arg_sorts.size() != f->args.size()) {
                    report(DiagnosticKind::ArityMismatch,
                           "'" + f->name + "' expects " + std::to_string(d->arg_sorts.size()) +
                               " argument(s), got " + std::to_string(f->args.size()));
                    return;
                }
                for (size_t i = 0; i < f->args.size(); ++i) {
                    const Term& t = f->args[i];
                    std::string expected = d->arg_sorts[i];
                    if (t.kind == Term::Kind::Bound) {
                        int pos = static_cast<int>(binder_sorts.size()) - 1 - t.index;
                        if (pos < 0 || pos >= static_cast<int>(binder_sorts.size())) {
                            report(DiagnosticKind::FreeVariable,
                                   "variable '" + t.name + "' does not resolve to an enclosing binder");
                        } else if (binder_sorts[pos] != expected) {
                            report(DiagnosticKind::SortMismatch,
                                   "variable '" + t.name + "' has sort " + binder_sorts[pos] +
                                       ", expected " + expected);
                        }
                    } else {
                        check_term(t, static_cast<int>(binder_sorts.size()), expected);
                    }
                }
                return;
            }
            case FormulaKind::Equality:
                report(DiagnosticKind::EqualityUnsupported, "equality atoms are not supported");
                for (const auto& t : f->args)
                    if (t.kind == Term::Kind::Numeral)
                        report(DiagnosticKind::NumericUnsupported,
                               "numeric literal " + std::to_string(t.value) + " is not supported");
                return;
            case FormulaKind::Falsum:
                return;
            case FormulaKind::Not:
                check_formula(f->left, binder_sorts);
                return;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
            case FormulaKind::Iff:
                check_formula(f->left, binder_sorts);
                check_formula(f->right, binder_sorts);
                return;
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                if (!lookup(f->sort) || !theory.is_sort(f->sort))
                    report(DiagnosticKind::UnknownSymbol, "sort '" + f->sort + "' is not declared");
                binder_sorts.push_back(f->sort);
                check_formula(f->left, binder_sorts);
                binder_sorts.pop_back();
                return;
            }
        }
    }
};

}  // namespace

std::vector<Diagnostic> check_wf(const Theory& theory) {
    std::vector<Diagnostic> out;
    WfChecker chk{theory, &out};
    std::unordered_map<std::string, size_t> seen;
    for (size_t i = 0; i < theory.decls.size(); ++i) {
        const Declaration& d = theory.decls[i];
        chk.decl = &d;
        chk.visible = i;
        if (seen.count(d.name)) {
            chk.report(DiagnosticKind::DuplicateName, "name '" + d.name + "' already declared");
        } else {
            seen.emplace(d.name, i);
        }
        switch (d.kind) {
            case DeclKind::Sort:
                break;
            case DeclKind::Constant:
                if (!chk.lookup(d.sort) || theory.decls[seen.count(d.sort) ? seen[d.sort] : 0].kind != DeclKind::Sort) {
                    const Declaration* s = chk.lookup(d.sort);
                    if (!s || s->kind != DeclKind::Sort)
                        chk.report(DiagnosticKind::UnknownSymbol, "sort '" + d.sort + "' is not declared");
                }
                break;
            case DeclKind::Predicate:
                for (const auto& s : d.arg_sorts) {
                    const Declaration* sd = chk.lookup(s);
                    if (!sd || sd->kind != DeclKind::Sort)
                        chk.report(DiagnosticKind::UnknownSymbol, "sort '" + s + "' is not declared");
                }
                break;
            case DeclKind::Axiom:
            case DeclKind::Theorem: {
                if (!d.formula) break;
                if (!is_closed(d.formula))
                    chk.report(DiagnosticKind::FreeVariable, "statement has a free variable");
                std::vector<std::string> binders;
                chk.check_formula(d.formula, binders);
                break;
            }
        }
    }
    return out;
}

FormulaPtr instantiate(const Theory& theory, const FormulaPtr& formula, const Term& witness) {
    if (!formula || formula->kind != FormulaKind::Forall)
        throw std::invalid_argument("instantiate: formula is not a universal");
    if (witness.kind != Term::Kind::Constant)
        throw std::invalid_argument("instantiate: witness is not a constant");
    auto sort = theory.constant_sort(witness.name);
    if (!sort)
        throw std::invalid_argument("instantiate: witness '" + witness.name + "' is not declared");
    if (*sort != formula->sort)
        throw std::invalid_argument("instantiate: witness '" + witness.name + "' has sort " + *sort +
                                    ", binder expects " + formula->sort);
    return open_binder(formula->left, witness);
}

FormulaPtr negate(const FormulaPtr& formula) {
    if (!is_closed(formula)) throw std::invalid_argument("negate: formula has a free variable");
    return f_not(formula);
}

// ---------------------------------------------------------------------------
// Canonical rendering

namespace {

struct CanonicalPrinter {
    const std::unordered_map<std::string, std::string>* renames;
    int depth = 0;

    std::string term(const Term& t) const {
        switch (t.kind) {
            case Term::Kind::Bound:
                // canonical binder names count from the outside in
                return "$" + std::to_string(depth - 1 - t.index);
            case Term::Kind::Numeral:
                return std::to_string(t.value);
            case Term::Kind::Constant: {
                if (renames) {
                    auto it = renames->find(t.name);
                    if (it != renames->end()) return it->second;
                }
                return t.name;
            }
        }
        return "?";
    }

    std::string print(const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaKind::Atom: {
                std::string s = f->name;
                for (const auto& a : f->args) s += " " + term(a);
                return s;
            }
            case FormulaKind::Falsum:
                return "false";
            case FormulaKind::Equality:
                return "(" + term(f->args[0]) + " = " + term(f->args[1]) + ")";
            case FormulaKind::Not:
                return "¬" + wrap(f->left);
            case FormulaKind::And:
                return "(" + print(f->left) + " ∧ " + print(f->right) + ")";
            case FormulaKind::Or:
                return "(" + print(f->left) + " ∨ " + print(f->right) + ")";
            case FormulaKind::Implies:
                return "(" + print(f->left) + " → " + print(f->right) + ")";
            case FormulaKind::Iff:
                return "(" + print(f->left) + " ↔ " + print(f->right) + ")";
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string head = f->kind == FormulaKind::Forall ? "∀" : "∃";
                std::string v = "$" + std::to_string(depth);
                ++depth;
                std::string body = print(f->left);
                --depth;
                return "(" + head + v + ":" + f->sort + ", " + body + ")";
            }
        }
        return "?";
    }

    std::string wrap(const FormulaPtr& f) {
        if (f->kind == FormulaKind::Atom && f->args.empty()) return print(f);
        if (f->kind == FormulaKind::Falsum) return print(f);
        if (f->kind == FormulaKind::Atom) return "(" + print(f) + ")";
        return print(f);  // every compound already prints parenthesized
    }
};

}  // namespace

std::string canonical_text(const FormulaPtr& f,
                           const std::unordered_map<std::string, std::string>* renames) {
    CanonicalPrinter p{renames};
    return p.print(f);
}

}  // namespace minilean
