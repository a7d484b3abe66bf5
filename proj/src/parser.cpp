#include "minilean/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace minilean {

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
    Ident,     // identifiers, possibly dotted (and.intro)
    Number,
    Colon,
    ColonEq,   // :=
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Arrow,     // → or ->
    Iff,       // ↔ or <->
    And,       // ∧ or /\ .
    Or,        // ∨ or \/
    Not,       // ¬ or ~
    Forall,    // ∀ or forall
    Exists,    // ∃ or exists
    Comment,   // -- to end of line
    End,       // end of input
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    bool starts_with(const char* s) const {
        size_t n = std::char_traits<char>::length(s);
        return src.compare(pos, n, s) == 0;
    }

    void advance(size_t n) {
        for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[pos]) & 0xC0) != 0x80) {
                ++col;  // count code points, not continuation bytes
            }
        }
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance(1);
            SourceSpan span{pos, pos, line, col};
            if (pos >= src.size()) {
                out.push_back({Tok::End, "", span});
                return out;
            }
            auto emit = [&](Tok k, size_t n, const std::string& text) {
                advance(n);
                span.end = pos;
                out.push_back({k, text, span});
            };
            char c = src[pos];
            if (starts_with("--")) {
                size_t eol = src.find('\n', pos);
                if (eol == std::string::npos) eol = src.size();
                std::string text = src.substr(pos + 2, eol - pos - 2);
                if (!text.empty() && text.front() == ' ') text.erase(text.begin());
                emit(Tok::Comment, eol - pos, text);
                continue;
            }
            if (starts_with(":=")) { emit(Tok::ColonEq, 2, ":="); continue; }
            if (starts_with("->")) { emit(Tok::Arrow, 2, "->"); continue; }
            if (starts_with("<->")) { emit(Tok::Iff, 3, "<->"); continue; }
            if (starts_with("/\\")) { emit(Tok::And, 2, "/\\"); continue; }
            if (starts_with("\\/")) { emit(Tok::Or, 2, "\\/"); continue; }
            if (starts_with("→")) { emit(Tok::Arrow, 3, "→"); continue; }
            if (starts_with("↔")) { emit(Tok::Iff, 3, "↔"); continue; }
            if (starts_with("∧")) { emit(Tok::And, 3, "∧"); continue; }
            if (starts_with("∨")) { emit(Tok::Or, 3, "∨"); continue; }
            if (starts_with("¬")) { emit(Tok::Not, 2, "¬"); continue; }
            if (starts_with("∀")) { emit(Tok::Forall, 3, "∀"); continue; }
            if (starts_with("∃")) { emit(Tok::Exists, 3, "∃"); continue; }
            switch (c) {
                case ':': emit(Tok::Colon, 1, ":"); continue;
                case ',': emit(Tok::Comma, 1, ","); continue;
                case '(': emit(Tok::LParen, 1, "("); continue;
                case ')': emit(Tok::RParen, 1, ")"); continue;
                case '{': emit(Tok::LBrace, 1, "{"); continue;
                case '}': emit(Tok::RBrace, 1, "}"); continue;
                case '~': emit(Tok::Not, 1, "~"); continue;
                case '=': emit(Tok::Ident, 1, "="); continue;  // rejected by check_wf
                default: break;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t start = pos;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
                span.end = pos;
                out.push_back({Tok::Number, src.substr(start, pos - start), span});
                continue;
            }
            if (ident_start(c)) {
                size_t start = pos;
                while (pos < src.size() && ident_char(src[pos])) advance(1);
                // dotted names: and.intro, or.inl
                while (pos + 1 < src.size() && src[pos] == '.' && ident_start(src[pos + 1])) {
                    advance(1);
                    while (pos < src.size() && ident_char(src[pos])) advance(1);
                }
                span.end = pos;
                std::string text = src.substr(start, pos - start);
                if (text == "forall") { out.push_back({Tok::Forall, text, span}); continue; }
                if (text == "exists") { out.push_back({Tok::Exists, text, span}); continue; }
                out.push_back({Tok::Ident, text, span});
                continue;
            }
            throw ParseError("unexpected character", span);
        }
    }
};

// ---------------------------------------------------------------------------
// Parser

// words that terminate name sequences (declarations are not line-delimited)
bool is_reserved(const std::string& s) {
    static const char* kReserved[] = {"universe", "constant", "constants", "axiom", "theorem",
                                      "begin",    "end",      "from",      "false", "Type",
                                      "Prop"};
    for (const char* r : kReserved)
        if (s == r) return true;
    return false;
}

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    std::vector<std::string> binders;  // innermost last
    std::vector<std::string> warnings;

    const Token& peek(size_t n = 0) const { return toks[std::min(at + n, toks.size() - 1)]; }
    const Token& next() { return toks[at == toks.size() - 1 ? at : at++]; }
    bool check(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!check(k)) return false;
        next();
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (!check(k)) throw ParseError("expected " + what, peek().span);
        return next();
    }
    bool check_kw(const char* kw) const { return check(Tok::Ident) && peek().text == kw; }
    bool accept_kw(const char* kw) {
        if (!check_kw(kw)) return false;
        next();
        return true;
    }

    void skip_comments() {
        while (check(Tok::Comment)) next();
    }

    std::optional<int> binder_index(const std::string& name) const {
        for (size_t i = binders.size(); i-- > 0;)
            if (binders[i] == name) return static_cast<int>(binders.size() - 1 - i);
        return std::nullopt;
    }

    Term term() {
        skip_comments();
        if (check(Tok::Number)) {
            Token t = next();
            return Term::numeral(std::stol(t.text));
        }
        Token t = expect(Tok::Ident, "a term");
        if (auto idx = binder_index(t.text)) return Term::bound(*idx, t.text);
        return Term::constant(t.text);
    }

    // atom | false | ( formula ) | quantifier
    FormulaPtr primary() {
        skip_comments();
        if (accept(Tok::LParen)) {
            FormulaPtr f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (check(Tok::Forall) || check(Tok::Exists)) return quantifier();
        if (check_kw("false")) {
            next();
            return f_false();
        }
        Token head = expect(Tok::Ident, "a formula");
        if (auto idx = binder_index(head.text)) {
            // a bound variable in predicate position is not in the fragment
            throw ParseError("variable '" + head.text + "' used as a predicate", head.span);
        }
        std::vector<Term> args;
        while ((check(Tok::Ident) && !is_reserved(peek().text)) || check(Tok::Number)) {
            if (peek().text == "=") break;
            args.push_back(term());
        }
        if (check(Tok::Ident) && peek().text == "=") {
            next();
            if (args.size() != 1)
                throw ParseError("equality needs exactly one term on each side", head.span);
            Term lhs = args[0];
            Term rhs = term();
            return f_equality(lhs, rhs);
        }
        // a bare numeral-headed equality like `86 = x` is not worth supporting
        return f_atom(head.text, std::move(args));
    }

    FormulaPtr quantifier() {
        bool universal = check(Tok::Forall);
        next();
        // binder lists: ∀ x y : obj, body  |  ∀ (t : Turkey), body
        bool parens = accept(Tok::LParen);
        std::vector<std::string> names;
        names.push_back(expect(Tok::Ident, "a binder name").text);
        while (check(Tok::Ident) && !is_reserved(peek().text)) names.push_back(next().text);
        std::string sort = "obj";
        if (accept(Tok::Colon)) sort = expect(Tok::Ident, "a sort name").text;
        if (parens) expect(Tok::RParen, "')'");
        expect(Tok::Comma, "','");
        for (const auto& n : names) binders.push_back(n);
        FormulaPtr body = formula();
        for (size_t i = names.size(); i-- > 0;) {
            binders.pop_back();
            body = universal ? f_forall(names[i], sort, std::move(body))
                             : f_exists(names[i], sort, std::move(body));
        }
        return body;
    }

    FormulaPtr negation() {
        skip_comments();
        if (accept(Tok::Not)) return f_not(negation());
        return primary();
    }

    FormulaPtr conjunction() {
        FormulaPtr l = negation();
        if (accept(Tok::And)) return f_and(std::move(l), conjunction());
        return l;
    }

    FormulaPtr disjunction() {
        FormulaPtr l = conjunction();
        if (accept(Tok::Or)) return f_or(std::move(l), disjunction());
        return l;
    }

    FormulaPtr implication() {
        FormulaPtr l = disjunction();
        if (accept(Tok::Arrow)) return f_implies(std::move(l), implication());
        return l;
    }

    FormulaPtr formula() {
        FormulaPtr l = implication();
        if (accept(Tok::Iff)) return f_iff(std::move(l), formula());
        return l;
    }

    // ---- proof terms ------------------------------------------------------

    ProofTerm proof_term_atom() {
        skip_comments();
        if (accept(Tok::LParen)) {
            ProofTerm pt = proof_term();
            expect(Tok::RParen, "')'");
            return pt;
        }
        Token t = expect(Tok::Ident, "a proof term");
        return ProofTerm{t.text, {}};
    }

    ProofTerm proof_term() {
        ProofTerm head = proof_term_atom();
        std::vector<ProofTerm> args;
        while ((check(Tok::Ident) && !is_reserved(peek().text)) || check(Tok::LParen))
            args.push_back(proof_term_atom());
        if (args.empty()) return head;
        if (!head.args.empty()) {
            // (f a) b flattens to f a b
            for (auto& a : args) head.args.push_back(std::move(a));
            return head;
        }
        return ProofTerm{head.head, std::move(args)};
    }

    // ---- tactics -----------------------------------------------------------

    bool at_tactic_end() const {
        return check(Tok::Comma) || check(Tok::RBrace) || check_kw("end") || check(Tok::End);
    }

    Tactic opaque_tactic(const Token& first) {
        Tactic t;
        t.kind = TacticKind::Opaque;
        t.span = first.span;
        std::string text = first.text;
        int parens = 0;
        while (!(parens == 0 && at_tactic_end())) {
            const Token& tok = peek();
            if (tok.kind == Tok::End) break;
            if (tok.kind == Tok::LParen) ++parens;
            if (tok.kind == Tok::RParen) --parens;
            if (tok.kind != Tok::Comment) text += " " + tok.text;
            next();
        }
        t.opaque_text = text;
        return t;
    }

    Tactic tactic() {
        skip_comments();
        Token head = expect(Tok::Ident, "a tactic");
        Tactic t;
        t.span = head.span;
        const std::string& k = head.text;
        if (k == "intro") {
            t.kind = TacticKind::Intro;
            if (check(Tok::Ident)) t.name = next().text;
            return t;
        }
        if (k == "apply" || k == "exact") {
            t.kind = k == "apply" ? TacticKind::Apply : TacticKind::Exact;
            t.term = proof_term();
            return t;
        }
        if (k == "assumption") { t.kind = TacticKind::Assumption; return t; }
        if (k == "split") { t.kind = TacticKind::Split; return t; }
        if (k == "left") { t.kind = TacticKind::Left; return t; }
        if (k == "right") { t.kind = TacticKind::Right; return t; }
        if (k == "contradiction") { t.kind = TacticKind::Contradiction; return t; }
        if (k == "sorry") { t.kind = TacticKind::Sorry; return t; }
        if (k == "cases") {
            t.kind = TacticKind::Cases;
            t.term = proof_term();
            return t;
        }
        if (k == "use") {
            t.kind = TacticKind::Use;
            Token w = expect(Tok::Ident, "a witness constant");
            t.witness = Term::constant(w.text);
            return t;
        }
        if (k == "have") {
            t.kind = TacticKind::Have;
            t.name = expect(Tok::Ident, "a hypothesis name").text;
            if (accept(Tok::Colon)) t.formula = formula();
            if (accept(Tok::ColonEq)) {
                t.term = proof_term();
            } else if (check(Tok::Comma) && peek(1).kind == Tok::Ident && peek(1).text == "from") {
                next();  // ','
                next();  // 'from'
                t.term = proof_term();
            }
            return t;
        }
        return opaque_tactic(head);
    }

    TacticScript script_items(bool brace_block) {
        TacticScript s;
        for (;;) {
            skip_comments();
            if (brace_block ? check(Tok::RBrace) : (check_kw("end") || check(Tok::End))) break;
            if (accept(Tok::LBrace)) {
                TacticScript block = script_items(true);
                expect(Tok::RBrace, "'}'");
                s.items.push_back(ScriptItem{std::move(block)});
            } else {
                s.items.push_back(ScriptItem{tactic()});
            }
            skip_comments();
            if (!accept(Tok::Comma)) break;
        }
        return s;
    }

    TacticScript begin_end_block() {
        if (!accept_kw("begin")) throw ParseError("expected 'begin'", peek().span);
        TacticScript s = script_items(false);
        if (!accept_kw("end")) throw ParseError("expected 'end'", peek().span);
        if (s.items.empty()) throw ParseError("empty proof script", peek().span);
        return s;
    }

    // ---- declarations -------------------------------------------------------

    void declaration(Theory& theory, std::vector<std::string> comments) {
        Token head = expect(Tok::Ident, "a declaration");
        const std::string& k = head.text;
        if (k == "universe") {
            expect(Tok::Ident, "a universe name");  // parsed and ignored
            return;
        }
        if (k == "constant" || k == "constants") {
            std::vector<Token> names;
            names.push_back(expect(Tok::Ident, "a constant name"));
            while (check(Tok::Ident) && !check(Tok::Colon)) names.push_back(next());
            expect(Tok::Colon, "':'");
            // Type [u]  |  sort  |  sort → ... → Prop
            if (check_kw("Type")) {
                next();
                if (check(Tok::Ident) && !starts_declaration()) next();  // universe variable
                for (auto& n : names) {
                    Declaration d;
                    d.kind = DeclKind::Sort;
                    d.name = n.text;
                    d.comments = comments;
                    d.span = n.span;
                    theory.add(std::move(d));
                }
                return;
            }
            std::vector<std::string> parts;
            parts.push_back(expect(Tok::Ident, "a sort name").text);
            while (accept(Tok::Arrow)) parts.push_back(expect(Tok::Ident, "a sort or Prop").text);
            for (auto& n : names) {
                Declaration d;
                d.name = n.text;
                d.comments = comments;
                d.span = n.span;
                if (parts.back() == "Prop") {
                    d.kind = DeclKind::Predicate;
                    d.arg_sorts.assign(parts.begin(), parts.end() - 1);
                } else if (parts.size() == 1) {
                    d.kind = DeclKind::Constant;
                    d.sort = parts[0];
                } else {
                    throw ParseError("function-valued constants are not supported", n.span);
                }
                theory.add(std::move(d));
            }
            return;
        }
        if (k == "axiom" || k == "theorem") {
            Token name = expect(Tok::Ident, "a name");
            expect(Tok::Colon, "':'");
            FormulaPtr f = formula();
            Declaration d;
            d.kind = k == "axiom" ? DeclKind::Axiom : DeclKind::Theorem;
            d.name = name.text;
            d.formula = std::move(f);
            d.comments = std::move(comments);
            d.span = name.span;
            if (d.kind == DeclKind::Theorem && accept(Tok::ColonEq))
                d.script = std::make_shared<TacticScript>(begin_end_block());
            theory.add(std::move(d));
            return;
        }
        throw ParseError("expected a declaration (universe, constant, axiom or theorem)", head.span);
    }

    bool starts_declaration() const {
        if (!check(Tok::Ident)) return false;
        const std::string& t = peek().text;
        return t == "universe" || t == "constant" || t == "constants" || t == "axiom" ||
               t == "theorem";
    }

    ParsedTheory theory_file() {
        ParsedTheory out;
        std::vector<std::string> comments;
        for (;;) {
            if (check(Tok::Comment)) {
                comments.push_back(next().text);
                continue;
            }
            if (check(Tok::End)) break;
            if (!starts_declaration()) {
                warnings.push_back("ignoring trailing text at line " +
                                   std::to_string(peek().span.line));
                next();
                continue;
            }
            declaration(out.theory, std::move(comments));
            comments.clear();
        }
        out.warnings = std::move(warnings);
        return out;
    }
};

}  // namespace

ParsedTheory parse_theory(const std::string& source) {
    Parser p{Lexer(source).run(), 0, {}, {}};
    return p.theory_file();
}

FormulaPtr parse_formula(const std::string& source) {
    Parser p{Lexer(source).run(), 0, {}, {}};
    FormulaPtr f = p.formula();
    p.skip_comments();
    if (!p.check(Tok::End)) throw ParseError("unexpected trailing input", p.peek().span);
    return f;
}

TacticScript parse_script(const std::string& source) {
    Parser p{Lexer(source).run(), 0, {}, {}};
    p.skip_comments();
    if (p.check_kw("begin")) {
        TacticScript s = p.begin_end_block();
        p.skip_comments();
        if (!p.check(Tok::End)) throw ParseError("unexpected trailing input", p.peek().span);
        return s;
    }
    TacticScript s = p.script_items(false);
    if (!p.check(Tok::End)) throw ParseError("unexpected trailing input", p.peek().span);
    return s;
}

Tactic parse_tactic(const std::string& source) {
    Parser p{Lexer(source).run(), 0, {}, {}};
    Tactic t = p.tactic();
    p.skip_comments();
    if (!p.check(Tok::End)) throw ParseError("unexpected trailing input", p.peek().span);
    return t;
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

int precedence(FormulaKind k) {
    switch (k) {
        case FormulaKind::Iff: return 1;
        case FormulaKind::Implies: return 2;
        case FormulaKind::Or: return 3;
        case FormulaKind::And: return 4;
        case FormulaKind::Not: return 5;
        default: return 6;
    }
}

struct Printer {
    std::vector<std::string> binders;

    std::string term(const Term& t) const {
        switch (t.kind) {
            case Term::Kind::Constant: return t.name;
            case Term::Kind::Numeral: return std::to_string(t.value);
            case Term::Kind::Bound: {
                int pos = static_cast<int>(binders.size()) - 1 - t.index;
                if (pos >= 0 && pos < static_cast<int>(binders.size())) return binders[pos];
                return t.name.empty() ? "_x" : t.name;
            }
        }
        return "?";
    }

    std::string binder_name(const FormulaPtr& q) {
        // keep the display name unless it collides with an enclosing binder
        std::string base = q->name.empty() ? "x" : q->name;
        std::string name = base;
        int i = 1;
        while (std::find(binders.begin(), binders.end(), name) != binders.end())
            name = base + std::to_string(i++);
        return name;
    }

    std::string print(const FormulaPtr& f, int parent_prec) {
        int prec = precedence(f->kind);
        std::string s;
        switch (f->kind) {
            case FormulaKind::Atom: {
                s = f->name;
                for (const auto& a : f->args) s += " " + term(a);
                break;
            }
            case FormulaKind::Falsum:
                s = "false";
                break;
            case FormulaKind::Equality:
                s = term(f->args[0]) + " = " + term(f->args[1]);
                break;
            case FormulaKind::Not:
                s = "¬ " + print(f->left, prec);
                return parent_prec > prec ? "(" + s + ")" : s;
            case FormulaKind::And:
                s = print(f->left, prec + 1) + " ∧ " + print(f->right, prec);
                break;
            case FormulaKind::Or:
                s = print(f->left, prec + 1) + " ∨ " + print(f->right, prec);
                break;
            case FormulaKind::Implies:
                s = print(f->left, prec + 1) + " → " + print(f->right, prec);
                break;
            case FormulaKind::Iff:
                s = print(f->left, prec + 1) + " ↔ " + print(f->right, prec);
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string name = binder_name(f);
                binders.push_back(name);
                std::string body = print(f->left, 0);
                binders.pop_back();
                s = (f->kind == FormulaKind::Forall ? "∀ " : "∃ ") + name + " : " + f->sort +
                    ", " + body;
                return parent_prec > 0 ? "(" + s + ")" : s;
            }
        }
        if (f->kind == FormulaKind::Atom && !f->args.empty() && parent_prec >= 6)
            return "(" + s + ")";
        return parent_prec > prec ? "(" + s + ")" : s;
    }
};

std::string indent_str(int n) { return std::string(static_cast<size_t>(n) * 2, ' '); }

void print_items(const TacticScript& s, int indent, std::string& out) {
    for (size_t i = 0; i < s.items.size(); ++i) {
        const auto& item = s.items[i];
        if (item.is_block()) {
            out += indent_str(indent) + "{\n";
            print_items(std::get<TacticScript>(item.node), indent + 1, out);
            out += indent_str(indent) + "},\n";
        } else {
            const Tactic& t = std::get<Tactic>(item.node);
            std::string text;
            if (t.kind == TacticKind::Have) {
                text = "have " + t.name;
                if (t.formula) text += " : " + print_formula(t.formula);
                if (t.term) text += " := " + proof_term_text(*t.term);
            } else {
                text = tactic_text(t);
            }
            out += indent_str(indent) + text + ",\n";
        }
    }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    Printer p;
    return p.print(f, 0);
}

std::string print_script(const TacticScript& script, int indent) {
    std::string out;
    print_items(script, indent, out);
    return out;
}

std::string pretty_print(const Theory& theory) {
    std::ostringstream os;
    bool printed_sort_header = false;
    for (const auto& d : theory.decls) {
        for (const auto& c : d.comments) os << "-- " << c << "\n";
        switch (d.kind) {
            case DeclKind::Sort:
                if (!printed_sort_header) {
                    // `universe u` is accepted on input; emit the plain form
                    printed_sort_header = true;
                }
                os << "constant " << d.name << " : Type\n";
                break;
            case DeclKind::Constant:
                os << "constant " << d.name << " : " << d.sort << "\n";
                break;
            case DeclKind::Predicate: {
                os << "constant " << d.name << " : ";
                for (const auto& s : d.arg_sorts) os << s << " → ";
                os << "Prop\n";
                break;
            }
            case DeclKind::Axiom:
                os << "axiom " << d.name << " : " << print_formula(d.formula) << "\n";
                break;
            case DeclKind::Theorem:
                os << "theorem " << d.name << " : " << print_formula(d.formula);
                if (d.script) {
                    os << " :=\nbegin\n" << print_script(*d.script, 1) << "end\n";
                } else {
                    os << "\n";
                }
                break;
        }
    }
    return os.str();
}

}  // namespace minilean
