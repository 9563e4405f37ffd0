#include <catch_amalgamated.hpp>

#include "cocert/errors.hpp"
#include "cocert/functor.hpp"

using namespace cocert;
using FK = FunctorExpr::Kind;

TEST_CASE("functor: atoms") {
    CHECK(parse_functor("X").kind == FK::Identity);
    CHECK(parse_functor("P").kind == FK::Powerset);
    CHECK(parse_functor("P(X)") == parse_functor("P"));
    CHECK(parse_functor("D(X)").kind == FK::Distribution);
    auto r = parse_functor("R^(X)");
    CHECK(r.kind == FK::Monoid);
    CHECK(r.monoid == MonoidKind::Real);
    CHECK(parse_functor("B^(X)").is_set_like());
    CHECK(parse_functor("N^(X)").is_weighted());
    auto one = parse_functor("1");
    CHECK(one.kind == FK::Constant);
    CHECK(one.names == std::vector<std::string>{"*"});
    CHECK(parse_functor("3").names.size() == 3);
    auto sig = parse_functor("Sig(f/2, a/0)");
    CHECK(sig.names == std::vector<std::string>{"f", "a"});
    CHECK(sig.arities == std::vector<int>{2, 0});
}

TEST_CASE("functor: compound forms") {
    auto f = parse_functor("C{a, b} x P");
    CHECK(f.kind == FK::Product);
    CHECK(f.children.size() == 2);
    auto g = parse_functor("D(X) + 1");
    CHECK(g.kind == FK::Coproduct);
    auto h = parse_functor("(D(X) + 1)^{a, b}");
    CHECK(h.kind == FK::Exponent);
    CHECK(h.names == std::vector<std::string>{"a", "b"});
    auto k = parse_functor("P . (C{a, b} x X)");
    CHECK(k.kind == FK::Composite);
    CHECK(composite_chain(k).size() == 2);
    CHECK(composite_chain(parse_functor("P . P . X")).size() == 3);
}

TEST_CASE("functor: printing round-trips") {
    for (const char* text : {"X", "P", "R^(X)", "Z^(X)", "N^(X)", "B^(X)", "D(X)", "D(X) + 1", "C{a, b} x P",
                             "(D(X) + 1)^{a, b}", "Sig(f/2, a/0)", "P . (C{a, b} x X)", "1 + X x X"}) {
        CAPTURE(text);
        auto f = parse_functor(text);
        CHECK(parse_functor(to_string(f)) == f);
    }
}

TEST_CASE("functor: parse errors carry positions") {
    for (const char* bad : {"", "Q", "P +", "C{}", "C{a, a}", "Sig(f/-1)", "Sig(f/1, f/2)", "(P", "Y^(X)", "P^{}"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_functor(bad), ParseError);
    }
    try {
        parse_functor("P + Q");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 5);
    }
}

TEST_CASE("functor: zippability") {
    for (const char* text : {"P", "R^(X)", "D(X) + 1", "C{a} x P", "P^{a, b}", "Sig(f/2)"}) {
        CAPTURE(text);
        CHECK(is_zippable(parse_functor(text)).zippable);
    }
    CHECK_THROWS_AS(is_zippable(parse_functor("P . P")), IncompatibleError);
}

TEST_CASE("functor: cancellativity") {
    CHECK(is_cancellative(parse_functor("R^(X)")));
    CHECK(is_cancellative(parse_functor("Z^(X)")));
    CHECK(is_cancellative(parse_functor("N^(X)")));
    CHECK(is_cancellative(parse_functor("D(X) + 1")));
    CHECK(is_cancellative(parse_functor("Sig(f/2, a/0)")));
    CHECK(is_cancellative(parse_functor("(D(X) + 1)^{a, b}")));
    CHECK_FALSE(is_cancellative(parse_functor("P")));
    CHECK_FALSE(is_cancellative(parse_functor("B^(X)")));
    CHECK_FALSE(is_cancellative(parse_functor("C{a} x P")));
}
