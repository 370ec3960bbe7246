#include "belief/error.hpp"
#include "belief/proposition.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace belief;

TEST_CASE("parser honours ! > & > | precedence, left-associative")
{
    const auto p = Proposition::parse("a | b & !c");
    REQUIRE(p.kind() == Proposition::Kind::disjunction);
    CHECK(p.left().atom_name() == "a");
    CHECK(p.right().kind() == Proposition::Kind::conjunction);
    CHECK(p.right().right().kind() == Proposition::Kind::negation);

    const auto q = Proposition::parse("a & b & c");
    REQUIRE(q.kind() == Proposition::Kind::conjunction);
    CHECK(q.left().kind() == Proposition::Kind::conjunction);
    CHECK(q.right().atom_name() == "c");

    CHECK(Proposition::parse("(a | b) & c").kind() == Proposition::Kind::conjunction);
    CHECK(Proposition::parse("!!x").operand().kind() == Proposition::Kind::negation);
    CHECK(Proposition::parse(" true ").constant_value());
    CHECK_FALSE(Proposition::parse("false").constant_value());
    CHECK(Proposition::parse("E_1").atom_name() == "E_1");
}

TEST_CASE("parser rejects malformed input")
{
    for (const char* bad : {"", "a &", "(a", "a b", "a && b", "1a", "a | | b", ")"}) {
        CAPTURE(bad);
        try {
            Proposition::parse(bad);
            FAIL("accepted malformed proposition");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::parse_error);
            CHECK(e.category() == ErrorCategory::input);
        }
    }
}

TEST_CASE("to_string is canonical: parse(to_string(p)) rebuilds the same tree")
{
    std::mt19937_64 rng(11);
    const std::vector<std::string> atoms{"H", "E1", "E2", "x"};
    for (int i = 0; i < 500; ++i) {
        const auto p = oracle::random_formula(rng, atoms, 5);
        const auto text = p.to_string();
        CAPTURE(text);
        const auto q = Proposition::parse(text);
        CHECK(q.structurally_equal(p));
        CHECK(q.to_string() == text);
    }
    CHECK((Proposition::atom("a") & (Proposition::atom("b") & Proposition::atom("c"))).to_string() ==
          "a & (b & c)");
    CHECK((!(Proposition::atom("a") | Proposition::atom("b"))).to_string() == "!(a | b)");
}

TEST_CASE("evaluate and atoms")
{
    const auto p = Proposition::parse("a & !b | c & a");
    CHECK(p.atoms() == std::vector<std::string>{"a", "b", "c"});
    auto val = [](bool a, bool b, bool c) {
        return [=](const std::string& n) { return n == "a" ? a : n == "b" ? b : c; };
    };
    CHECK(p.evaluate(val(true, false, false)));
    CHECK_FALSE(p.evaluate(val(true, true, false)));
    CHECK(p.evaluate(val(true, true, true)));
    CHECK_FALSE(p.evaluate(val(false, false, true)));
    CHECK(Proposition().constant_value());
}
