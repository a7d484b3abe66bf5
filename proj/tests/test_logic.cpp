#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minilean/logic.hpp"
#include "minilean/parser.hpp"
#include "support/test_util.hpp"

using namespace minilean;
using testutil::RandomGen;

namespace {

Theory small_theory(const std::string& extra = "") {
    std::string src =
        "constant obj : Type\n"
        "constant Hudson : obj\n"
        "constant Cat : obj\n"
        "constant is_cat : obj → Prop\n"
        "constant is_animal : obj → Prop\n"
        "constant often_meow : obj → Prop\n"
        "constant Likes : obj → obj → Prop\n";
    return parse_theory(src + extra).theory;
}

}  // namespace

TEST_CASE("check_wf accepts the full golden formalizations") {
    for (const char* name : {"cow.thy", "turkey_q1.thy", "sea_eel.thy", "hudson.thy"}) {
        Theory t = testutil::load_golden(name);
        CHECK(check_wf(t).empty());
    }
}

TEST_CASE("check_wf reports arity mismatches") {
    Theory t = small_theory("axiom B1 : Likes Cat\n");
    auto diags = check_wf(t);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].kind == DiagnosticKind::ArityMismatch);
    CHECK(diags[0].decl_name == "B1");
}

TEST_CASE("check_wf reports unknown symbols") {
    Theory t = small_theory("axiom B1 : Flies Cat\n");
    auto diags = check_wf(t);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].kind == DiagnosticKind::UnknownSymbol);
}

TEST_CASE("check_wf reports duplicates, free variables and sort errors") {
    Theory t = small_theory("axiom B1 : is_cat Cat\naxiom B1 : is_cat Cat\n");
    auto diags = check_wf(t);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].kind == DiagnosticKind::DuplicateName);

    // a dangling bound variable built programmatically
    Theory t2 = small_theory();
    Declaration d;
    d.kind = DeclKind::Axiom;
    d.name = "Bad";
    d.formula = f_atom("is_cat", {Term::bound(0, "x")});
    t2.add(d);
    auto diags2 = check_wf(t2);
    bool found_free = false;
    for (const auto& dg : diags2) found_free = found_free || dg.kind == DiagnosticKind::FreeVariable;
    CHECK(found_free);
}

TEST_CASE("check_wf rejects equality and numerals with dedicated diagnostics") {
    Theory t = small_theory("constant weight : obj → Prop\naxiom B1 : Hudson = Cat\n");
    auto diags = check_wf(t);
    REQUIRE(!diags.empty());
    CHECK(diags[0].kind == DiagnosticKind::EqualityUnsupported);

    Theory t2 = small_theory("axiom B2 : is_cat 86\n");
    auto diags2 = check_wf(t2);
    bool found = false;
    for (const auto& dg : diags2) found = found || dg.kind == DiagnosticKind::NumericUnsupported;
    CHECK(found);
}

TEST_CASE("instantiate substitutes the binder") {
    Theory t = small_theory();
    FormulaPtr f = parse_formula("∀ x : obj, is_cat x → is_animal x");
    FormulaPtr got = instantiate(t, f, Term::constant("Hudson"));
    CHECK(alpha_equal(got, parse_formula("is_cat Hudson → is_animal Hudson")));
}

TEST_CASE("instantiate on an appendix rule") {
    Theory t = testutil::load_golden("cow.thy");
    const Declaration* r5 = t.find("R5");
    REQUIRE(r5 != nullptr);
    FormulaPtr got = instantiate(t, r5->formula, Term::constant("Rabbit"));
    CHECK(alpha_equal(got, parse_formula("Round Rabbit → Needs Rabbit Cat")));
}

TEST_CASE("instantiate rejects bad inputs") {
    Theory t = small_theory("constant Turkey : Type\nconstant Tom : Turkey\n");
    FormulaPtr f = parse_formula("∀ x : obj, is_cat x");
    CHECK_THROWS_AS(instantiate(t, f, Term::constant("Tom")), std::invalid_argument);  // wrong sort
    CHECK_THROWS_AS(instantiate(t, parse_formula("is_cat Hudson"), Term::constant("Hudson")),
                    std::invalid_argument);  // not a universal
    CHECK_THROWS_AS(instantiate(t, f, Term::constant("Nobody")), std::invalid_argument);
}

TEST_CASE("negate wraps syntactically") {
    FormulaPtr f = parse_formula("often_meow Hudson");
    FormulaPtr n = negate(f);
    CHECK(n->kind == FormulaKind::Not);
    CHECK(alpha_equal(n->left, f));

    FormulaPtr nn = negate(n);
    CHECK(nn->kind == FormulaKind::Not);
    CHECK(canonical_text(nn) != canonical_text(f));  // no double-negation elimination

    CHECK(canonical_text(negate(parse_formula("Chases Cow Cow"))) == "¬(Chases Cow Cow)");

    FormulaPtr open = f_atom("is_cat", {Term::bound(0, "x")});
    CHECK_THROWS_AS(negate(open), std::invalid_argument);
}

TEST_CASE("canonical_text ignores binder names and fixes parentheses") {
    CHECK(canonical_text(parse_formula("∀ x : obj, Blue x")) ==
          canonical_text(parse_formula("∀ y : obj, Blue y")));
    CHECK(canonical_text(parse_formula("Blue Cat ∧ Nice Cat")) == "(Blue Cat ∧ Nice Cat)");
    // determinism for the same value built twice
    CHECK(canonical_text(parse_formula("Blue Cat → Nice Cat")) ==
          canonical_text(parse_formula("Blue Cat → Nice Cat")));
}

TEST_CASE("canonical_text characterizes alpha equivalence on random formulas") {
    RandomGen gen(20240817);
    for (int i = 0; i < 300; ++i) {
        FormulaPtr a = gen.formula(3);
        FormulaPtr renamed = gen.rename_binders(a);
        CHECK(alpha_equal(a, renamed));
        CHECK(canonical_text(a) == canonical_text(renamed));

        FormulaPtr b = gen.formula(3);
        CHECK(alpha_equal(a, b) == (canonical_text(a) == canonical_text(b)));
    }
}

TEST_CASE("open_binder never captures and preserves closedness") {
    RandomGen gen(77);
    int quantified = 0;
    for (int i = 0; i < 500 && quantified < 100; ++i) {
        FormulaPtr f = gen.formula(3);
        if (f->kind != FormulaKind::Forall || !is_closed(f)) continue;
        ++quantified;
        FormulaPtr opened = open_binder(f->left, Term::constant("Cat"));
        CHECK(is_closed(opened));
    }
    CHECK(quantified > 10);
}
