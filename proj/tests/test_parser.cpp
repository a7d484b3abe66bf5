#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minilean/parser.hpp"
#include "support/test_util.hpp"

using namespace minilean;
using testutil::RandomGen;
using testutil::theories_alpha_equal;

TEST_CASE("declarations parse into the expected shapes") {
    Theory t = parse_theory(
                   "universe u\n"
                   "constant obj : Type u\n"
                   "constant Cat : obj\n"
                   "constant Blue : obj → Prop\n"
                   "constant Likes : obj → obj → Prop\n"
                   "axiom T1 : Blue Cat\n")
                   .theory;
    CHECK(t.is_sort("obj"));
    CHECK(t.is_constant("Cat"));
    REQUIRE(t.find("Likes") != nullptr);
    CHECK(t.find("Likes")->arg_sorts.size() == 2);
    const Declaration* t1 = t.find("T1");
    REQUIRE(t1 != nullptr);
    CHECK(t1->formula->kind == FormulaKind::Atom);
    CHECK(t1->formula->name == "Blue");
    REQUIRE(t1->formula->args.size() == 1);
    CHECK(t1->formula->args[0].name == "Cat");
}

TEST_CASE("multiple names in one constant declaration") {
    Theory t = parse_theory(
                   "constant Turkey : Type\n"
                   "constant Eastern Osceola Goulds : Turkey → Prop\n"
                   "constant Tom Bob : Turkey\n")
                   .theory;
    CHECK(t.is_predicate("Eastern"));
    CHECK(t.is_predicate("Goulds"));
    CHECK(t.is_constant("Tom"));
    CHECK(t.is_constant("Bob"));
}

TEST_CASE("missing end is a parse error at end of input") {
    CHECK_THROWS_AS(parse_theory("constant obj : Type\nconstant P : obj → Prop\n"
                                 "constant c : obj\ntheorem t : P c := begin\n  sorry,\n"),
                    ParseError);
}

TEST_CASE("connective precedence and associativity") {
    FormulaPtr f = parse_formula("Likes x Cat ∧ Chases x Cat → Blue x");
    REQUIRE(f->kind == FormulaKind::Implies);
    CHECK(f->left->kind == FormulaKind::And);

    FormulaPtr n = parse_formula("¬ Needs Cow Rabbit");
    REQUIRE(n->kind == FormulaKind::Not);
    CHECK(n->left->kind == FormulaKind::Atom);

    FormulaPtr orr = parse_formula("P ∨ Q ∨ R");
    REQUIRE(orr->kind == FormulaKind::Or);
    CHECK(orr->left->kind == FormulaKind::Atom);
    CHECK(orr->right->kind == FormulaKind::Or);  // right-associative

    FormulaPtr imp = parse_formula("P → Q → R");
    CHECK(imp->right->kind == FormulaKind::Implies);

    FormulaPtr iff = parse_formula("P ↔ Q → R");
    REQUIRE(iff->kind == FormulaKind::Iff);
    CHECK(iff->right->kind == FormulaKind::Implies);

    // quantifier body extends maximally right
    FormulaPtr q = parse_formula("∀ x : obj, Blue x → Nice x");
    REQUIRE(q->kind == FormulaKind::Forall);
    CHECK(q->left->kind == FormulaKind::Implies);
}

TEST_CASE("ascii aliases parse identically to unicode") {
    auto pairs = {
        std::make_pair("forall x : obj, Blue x -> Nice x", "∀ x : obj, Blue x → Nice x"),
        std::make_pair("~ Blue Cat", "¬ Blue Cat"),
        std::make_pair("Blue Cat /\\ Nice Cat", "Blue Cat ∧ Nice Cat"),
        std::make_pair("Blue Cat \\/ Nice Cat", "Blue Cat ∨ Nice Cat"),
        std::make_pair("Blue Cat <-> Nice Cat", "Blue Cat ↔ Nice Cat"),
        std::make_pair("exists x : obj, Blue x", "∃ x : obj, Blue x"),
    };
    for (const auto& [ascii, unicode] : pairs)
        CHECK(alpha_equal(parse_formula(ascii), parse_formula(unicode)));
}

TEST_CASE("parenthesized binders and binder lists") {
    CHECK(alpha_equal(parse_formula("∀ (t : Turkey), Blue t"), parse_formula("∀ t : Turkey, Blue t")));
    FormulaPtr multi = parse_formula("∀ x y : obj, Likes x y");
    REQUIRE(multi->kind == FormulaKind::Forall);
    CHECK(multi->left->kind == FormulaKind::Forall);
}

TEST_CASE("parse errors carry spans inside the input") {
    const char* bad[] = {
        "axiom : Blue Cat",
        "constant obj :",
        "theorem t Blue",
        "axiom A1 : ∧ Blue",
        "axiom A1 : (Blue Cat",
    };
    for (const char* src : bad) {
        try {
            parse_theory(src);
            FAIL_CHECK("expected a parse error for: " << src);
        } catch (const ParseError& e) {
            CHECK(e.span().begin <= std::string(src).size());
            CHECK(e.span().end <= std::string(src).size());
            CHECK(e.span().line >= 1);
        }
    }
}

TEST_CASE("comments attach to the following declaration") {
    Theory t = parse_theory(
                   "constant obj : Type\nconstant Cat : obj\nconstant Blue : obj → Prop\n"
                   "-- the cat is blue\naxiom T1 : Blue Cat\n")
                   .theory;
    REQUIRE(t.find("T1") != nullptr);
    REQUIRE(t.find("T1")->comments.size() == 1);
    CHECK(t.find("T1")->comments[0] == "the cat is blue");
}

TEST_CASE("unknown tactics parse as opaque") {
    TacticScript s = parse_script("begin ring, linarith x y, exact A1 end");
    REQUIRE(s.items.size() == 3);
    CHECK(std::get<Tactic>(s.items[0].node).kind == TacticKind::Opaque);
    CHECK(std::get<Tactic>(s.items[1].node).kind == TacticKind::Opaque);
    CHECK(std::get<Tactic>(s.items[1].node).opaque_text == "linarith x y");
    CHECK(std::get<Tactic>(s.items[2].node).kind == TacticKind::Exact);
}

TEST_CASE("have forms parse") {
    TacticScript s = parse_script(
        "have H1 : Needs Cow Tiger := T7,"
        "have h1 : ¬ Blue Cat, from A1,"
        "have temp := A2 sea_eel h,"
        "have h3 : Blue Cat");
    REQUIRE(s.items.size() == 4);
    const Tactic& a = std::get<Tactic>(s.items[0].node);
    CHECK(a.formula != nullptr);
    CHECK(a.term.has_value());
    const Tactic& b = std::get<Tactic>(s.items[1].node);
    CHECK(b.formula != nullptr);
    REQUIRE(b.term.has_value());
    CHECK(b.term->head == "A1");
    const Tactic& c = std::get<Tactic>(s.items[2].node);
    CHECK(c.formula == nullptr);
    REQUIRE(c.term.has_value());
    CHECK(proof_term_text(*c.term) == "A2 sea_eel h");
    const Tactic& d = std::get<Tactic>(s.items[3].node);
    CHECK(d.formula != nullptr);
    CHECK(!d.term.has_value());
}

TEST_CASE("nested brace blocks and compound proof terms") {
    TacticScript s = parse_script(
        "begin cases A6 (or.inr h), { contradiction, }, { exact A4 sea_eel (A5 sea_eel h_1), } end");
    REQUIRE(s.items.size() == 3);
    const Tactic& c = std::get<Tactic>(s.items[0].node);
    CHECK(c.kind == TacticKind::Cases);
    CHECK(proof_term_text(*c.term) == "A6 (or.inr h)");
    CHECK(s.items[1].is_block());
    CHECK(s.items[2].is_block());
}

TEST_CASE("trailing prose after declarations warns instead of failing") {
    ParsedTheory parsed = parse_theory(
        "constant obj : Type\nconstant Cat : obj\nconstant Blue : obj → Prop\n"
        "axiom T1 : Blue Cat\nThe answer should follow from T1.\n");
    CHECK(!parsed.warnings.empty());
    CHECK(parsed.theory.find("T1") != nullptr);
}

TEST_CASE("pretty_print round-trips the golden corpus") {
    for (const char* name : {"hudson.thy", "cow.thy", "turkey_q1.thy", "turkey_q2.thy",
                             "turkey_q3.thy", "sea_eel.thy", "f1_garden.thy", "f4_library.thy",
                             "f6_pond.thy", "f7_chain.thy"}) {
        Theory original = testutil::load_golden(name);
        Theory reparsed = parse_theory(pretty_print(original)).theory;
        CHECK_MESSAGE(theories_alpha_equal(original, reparsed), "round-trip failed for " << name);
    }
}

TEST_CASE("pretty_print of an empty theory is empty") {
    Theory t;
    CHECK(pretty_print(t).empty());
}

TEST_CASE("pretty_print round-trips random theories") {
    RandomGen gen(20240818);
    for (int i = 0; i < 60; ++i) {
        Theory t = gen.theory(5, 3);
        Theory reparsed = parse_theory(pretty_print(t)).theory;
        CHECK(theories_alpha_equal(t, reparsed));
    }
}
