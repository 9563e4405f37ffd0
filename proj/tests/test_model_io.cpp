#include <catch_amalgamated.hpp>

#include "cocert/coalgebra.hpp"
#include "cocert/oracle.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;

TEST_CASE("model: fixtures parse") {
    Coalgebra c = load_model("transition_system.model");
    CHECK(c.n() == 4);
    CHECK(c.m == 6);
    CHECK(c.state("x1") == 1);
    CHECK_FALSE(c.find("nope").has_value());
    CHECK_THROWS_AS(c.state("nope"), InputError);

    Coalgebra w = load_model("weighted_chain.model");
    CHECK(w.m == 4);
    CHECK(w.structure[0].weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("model: write then parse is the identity") {
    for (const char* name : {"transition_system.model", "weighted_chain.model", "partial_chain.model"}) {
        Coalgebra c = load_model(name);
        CAPTURE(name);
        CHECK(write_model(parse_coalgebra(write_model(c))) == write_model(c));
    }
}

TEST_CASE("model: comments and blank lines") {
    Coalgebra c = parse_coalgebra("# header\n\nfunctor: P   # trailing\nstates: a, b\n\na -> {b}  # edge\nb -> {}\n");
    CHECK(c.n() == 2);
    CHECK(c.m == 1);
}

TEST_CASE("model: duplicates merge, zero weights drop") {
    Coalgebra c = parse_coalgebra("functor: R^(X)\nstates: a, b\na -> {b: 1, b: 2, a: 0}\nb -> {a: 1, a: -1}\n");
    CHECK(term_to_string(c.structure[0], c) == "{b: 3}");
    CHECK(term_to_string(c.structure[1], c) == "{}");
    Coalgebra p = parse_coalgebra("functor: P\nstates: a, b\na -> {b, a, b}\nb -> {}\n");
    CHECK(p.structure[0].items.size() == 2);
}

TEST_CASE("model: errors report line and column") {
    struct Bad {
        const char* text;
        std::size_t line;
    };
    for (const Bad& b : std::vector<Bad>{
             {"states: a\na -> {}\n", 1},
             {"functor: P\na -> {}\n", 2},
             {"functor: P\nstates: a\na -> {b}\n", 3},
             {"functor: P\nstates: a\na -> {}\na -> {}\n", 4},
             {"functor: N^(X)\nstates: a\na -> {a: -1}\n", 3},
             {"functor: Z^(X)\nstates: a\na -> {a: 1/2}\n", 3},
             {"functor: D(X)\nstates: a, b\na -> {a: 1/2}\nb -> {b: 1}\n", 3},
             {"functor: Sig(f/2)\nstates: a\na -> f(a)\n", 3},
             {"functor: B^(X)\nstates: a\na -> {a: 2}\n", 3},
             {"functor: D(X) + 1\nstates: a\na -> in3(*)\n", 3},
             {"functor: P^{a, b}\nstates: s\ns -> [a: {}]\n", 3},
         }) {
        CAPTURE(b.text);
        try {
            parse_coalgebra(b.text);
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(e.line() == b.line);
        } catch (const InputError& e) {
            SUCCEED(e.what());
        }
    }
}

TEST_CASE("model: undefined states are an error") {
    CHECK_THROWS_AS(parse_coalgebra("functor: P\nstates: a, b\na -> {}\n"), InputError);
}

TEST_CASE("model: composite desugaring") {
    Coalgebra c = parse_coalgebra(
        "functor: P . (C{a, b} x X)\nstates: p, q\n"
        "p -> {(a, q), (b, p)}\nq -> {}\n");
    Desugared d = desugar_composite(c);
    CHECK(d.original_count == 2);
    CHECK(d.coalgebra.n() == 4);
    CHECK(d.original == std::vector<bool>{true, true, false, false});
    CHECK(d.coalgebra.names[2].rfind("p'", 0) == 0);
    CHECK_NOTHROW(validate(d.coalgebra));
    auto nested = naive_bisimilarity(c);
    auto flat = naive_bisimilarity(d.coalgebra);
    CHECK((nested[0] == nested[1]) == (flat[0] == flat[1]));
}

TEST_CASE("model: quotient keeps one state per block") {
    Coalgebra c = load_model("transition_system.model");
    Coalgebra q = quotient(c, naive_bisimilarity(c));
    CHECK(q.n() == 3);
    CHECK(q.names == std::vector<std::string>{"x", "x1", "z"});
    CHECK(write_model(q) == "functor: P\nstates: x, x1, z\nx -> {x, x1}\nx1 -> {x1, z}\nz -> {}\n");
}
