#pragma once

// First-order core: terms, formulas, declarations and theories for the
// Lean-subset theory language. Formulas are immutable trees shared by
// pointer; bound variables are depth-indexed (de Bruijn), display names are
// kept only for printing, so alpha-equivalence is plain structural equality.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace minilean {

struct SourceSpan {
    size_t begin = 0;  // byte offsets, begin <= end
    size_t end = 0;
    int line = 0;  // 1-based; 0 = unknown
    int column = 0;

    bool known() const { return line > 0; }
};

// ---------------------------------------------------------------------------
// Terms

struct Term {
    enum class Kind { Constant, Bound, Numeral };

    Kind kind = Kind::Constant;
    std::string name;  // constant name, or binder display name for Bound
    int index = 0;     // de Bruijn depth for Bound
    long value = 0;    // Numeral payload (rejected by check_wf, kept for diagnostics)

    static Term constant(std::string n) {
        Term t;
        t.kind = Kind::Constant;
        t.name = std::move(n);
        return t;
    }
    static Term bound(int index, std::string display) {
        Term t;
        t.kind = Kind::Bound;
        t.index = index;
        t.name = std::move(display);
        return t;
    }
    static Term numeral(long v) {
        Term t;
        t.kind = Kind::Numeral;
        t.value = v;
        return t;
    }
};

bool term_equal(const Term& a, const Term& b);

// ---------------------------------------------------------------------------
// Formulas

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FormulaKind {
    Atom,     // predicate applied to terms (possibly zero-ary)
    Falsum,   // internal absurdity target; surface keyword `false`
    Equality, // parsed so check_wf can reject it with a dedicated diagnostic
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
};

class Formula {
public:
    FormulaKind kind;
    std::string name;        // predicate name (Atom) or binder display name
    std::string sort;        // binder sort (quantifiers)
    std::vector<Term> args;  // Atom / Equality operands
    FormulaPtr left, right;  // children; unary nodes use `left`

    explicit Formula(FormulaKind k) : kind(k) {}
};

FormulaPtr f_atom(std::string predicate, std::vector<Term> args = {});
FormulaPtr f_false();
FormulaPtr f_equality(Term lhs, Term rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr f_iff(FormulaPtr l, FormulaPtr r);
FormulaPtr f_forall(std::string binder, std::string sort, FormulaPtr body);
FormulaPtr f_exists(std::string binder, std::string sort, FormulaPtr body);

// Structural equality modulo binder display names (alpha-equivalence).
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// True when no bound-variable index escapes its binder.
bool is_closed(const FormulaPtr& f);

// Substitutes `witness` for the outermost binder variable of `body`,
// shifting the remaining indices down. `witness` must be closed.
FormulaPtr open_binder(const FormulaPtr& body, const Term& witness);

// ---------------------------------------------------------------------------
// Declarations and theories

struct TacticScript;  // defined in kernel.hpp; attached to theorem declarations

enum class DeclKind { Sort, Constant, Predicate, Axiom, Theorem };

struct Declaration {
    DeclKind kind = DeclKind::Axiom;
    std::string name;
    std::string sort;                    // Constant: its sort
    std::vector<std::string> arg_sorts;  // Predicate signature
    FormulaPtr formula;                  // Axiom / Theorem statement
    std::shared_ptr<const TacticScript> script;  // optional theorem proof
    std::vector<std::string> comments;   // `--` lines attached to this declaration
    SourceSpan span;
};

class Theory {
public:
    std::vector<Declaration> decls;

    void add(Declaration d);
    const Declaration* find(const std::string& name) const;
    bool is_sort(const std::string& name) const;
    bool is_constant(const std::string& name) const;
    bool is_predicate(const std::string& name) const;

    std::vector<const Declaration*> axioms() const;     // axiom declarations, in order
    std::vector<const Declaration*> theorems() const;   // theorem declarations, in order
    std::vector<std::string> constants() const;         // constant names, in order
    std::optional<std::string> constant_sort(const std::string& name) const;

private:
    std::unordered_map<std::string, size_t> index_;
};

// ---------------------------------------------------------------------------
// Well-formedness

enum class DiagnosticKind {
    UnknownSymbol,
    ArityMismatch,
    DuplicateName,
    FreeVariable,
    SortMismatch,
    EqualityUnsupported,
    NumericUnsupported,
};

struct Diagnostic {
    DiagnosticKind kind;
    std::string decl_name;
    std::string message;
    SourceSpan span;
};

std::string diagnostic_kind_name(DiagnosticKind k);
std::string format_diagnostic(const Diagnostic& d);

// Returns an empty list iff every Theory invariant holds: unique names,
// symbols declared before use, matching arities and sorts, closed
// axiom/theorem statements, no equality or numeric atoms.
std::vector<Diagnostic> check_wf(const Theory& theory);

// Sort-checked universal instantiation. Throws std::invalid_argument when
// `formula` is not a universal or `witness` is not a declared constant of
// the binder's sort.
FormulaPtr instantiate(const Theory& theory, const FormulaPtr& formula, const Term& witness);

// Syntactic negation of a closed formula (no normalization).
FormulaPtr negate(const FormulaPtr& formula);

// ---------------------------------------------------------------------------
// Canonical rendering
//
// Deterministic, whitespace-normalized, alpha-renamed text. Alpha-equivalent
// formulas render byte-identically; canonical_text(f) == canonical_text(g)
// iff alpha_equal(f, g). Local constants may be renamed through `renames`.

std::string canonical_text(const FormulaPtr& f,
                           const std::unordered_map<std::string, std::string>* renames = nullptr);

}  // namespace minilean
