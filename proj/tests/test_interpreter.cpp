#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minilean/interpreter.hpp"
#include "minilean/parser.hpp"

using namespace minilean;

TEST_CASE("interpret covers the whole outcome grid") {
    const SearchStatus statuses[] = {SearchStatus::Proved, SearchStatus::Timeout,
                                     SearchStatus::Exhausted, SearchStatus::GeneratorFailure};
    for (SearchStatus pos : statuses) {
        for (SearchStatus neg : statuses) {
            Verdict v = interpret(pos, neg);
            bool p = pos == SearchStatus::Proved;
            bool n = neg == SearchStatus::Proved;
            if (p && n)
                CHECK(v == Verdict::Inconsistent);
            else if (p)
                CHECK(v == Verdict::True);
            else if (n)
                CHECK(v == Verdict::False);
            else
                CHECK(v == Verdict::Unknown);
        }
    }
}

TEST_CASE("interpret is invariant under timeout/exhausted swaps") {
    CHECK(interpret(SearchStatus::Timeout, SearchStatus::Timeout) ==
          interpret(SearchStatus::Exhausted, SearchStatus::Exhausted));
    CHECK(interpret(SearchStatus::Proved, SearchStatus::Timeout) ==
          interpret(SearchStatus::Proved, SearchStatus::Exhausted));
    CHECK(interpret(SearchStatus::Timeout, SearchStatus::Proved) ==
          interpret(SearchStatus::Exhausted, SearchStatus::Proved));
}

TEST_CASE("build_duals negates syntactically and names deterministically") {
    DualTheorems d = build_duals(parse_formula("often_meow Hudson"));
    CHECK(alpha_equal(d.positive, parse_formula("often_meow Hudson")));
    CHECK(alpha_equal(d.negative, parse_formula("¬ often_meow Hudson")));
    CHECK(d.negative_name == "not_" + d.positive_name);

    DualTheorems cow = build_duals(parse_formula("Chases Cow Cow"));
    CHECK(cow.positive_name == "cow_chases_cow");
    CHECK(cow.negative_name == "not_cow_chases_cow");

    DualTheorems turkey = build_duals(parse_formula("is_ocellated_wild_turkey Tom"));
    CHECK(turkey.positive_name == "tom_is_ocellated_wild_turkey");

    // double negation stays syntactic
    DualTheorems neg = build_duals(parse_formula("¬ Blue Cat"));
    CHECK(neg.negative->kind == FormulaKind::Not);
    CHECK(neg.negative->left->kind == FormulaKind::Not);

    // deterministic across calls
    CHECK(build_duals(parse_formula("Chases Cow Cow")).positive_name == "cow_chases_cow");
}

TEST_CASE("option mappings are total and injective over the option set") {
    OptionMapping pw({"True", "False", "Unknown"});
    CHECK(pw.verdict_for("Unknown") == Verdict::Unknown);
    CHECK(pw.label_for(Verdict::False) == std::string("False"));

    OptionMapping folio({"True", "False", "Uncertain"});
    CHECK(folio.verdict_for("Uncertain") == Verdict::Unknown);
    CHECK(folio.label_for(Verdict::Unknown) == std::string("Uncertain"));

    CHECK_THROWS_AS(OptionMapping({"True", "Yes"}), std::invalid_argument);   // not injective
    CHECK_THROWS_AS(OptionMapping({"True", "Maybe"}), std::invalid_argument); // unrecognized
}

TEST_CASE("verdict names round-trip") {
    for (Verdict v : {Verdict::True, Verdict::False, Verdict::Unknown, Verdict::Inconsistent})
        CHECK(verdict_from_name(verdict_name(v)) == v);
    CHECK(!verdict_from_name("Sideways").has_value());
}
