#include <catch_amalgamated.hpp>

#include <set>

#include "cocert/oracle.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;

namespace {

std::set<std::set<std::string>> classes_of(const Coalgebra& c, const std::vector<std::uint32_t>& block_of) {
    std::map<std::uint32_t, std::set<std::string>> by_block;
    for (StateId s = 0; s < c.n(); ++s) by_block[block_of[s]].insert(c.names[s]);
    std::set<std::set<std::string>> out;
    for (auto& [b, names] : by_block) out.insert(names);
    return out;
}

}  // namespace

TEST_CASE("oracle: transition system with a looping and a stuck branch") {
    Coalgebra c = load_model("transition_system.model");
    auto p = naive_bisimilarity(c);
    CHECK(classes_of(c, p) == std::set<std::set<std::string>>{{"x"}, {"x1", "y"}, {"z"}});
}

TEST_CASE("oracle: weighted chain") {
    Coalgebra c = load_model("weighted_chain.model");
    CHECK(classes_of(c, naive_bisimilarity(c)) == std::set<std::set<std::string>>{{"x"}, {"z2", "y"}, {"z1"}});
}

TEST_CASE("oracle: partial Markov chain") {
    Coalgebra c = load_model("partial_chain.model");
    CHECK(classes_of(c, naive_bisimilarity(c)) == std::set<std::set<std::string>>{{"x"}, {"z2", "y"}, {"z1"}});
}

TEST_CASE("oracle: result is normalized by first occurrence") {
    Coalgebra c = load_model("transition_system.model");
    auto p = naive_bisimilarity(c);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == 0);
    for (std::size_t s = 1; s < p.size(); ++s) {
        std::uint32_t seen = 0;
        for (std::size_t t = 0; t < s; ++t) seen = std::max(seen, p[t] + 1);
        CHECK(p[s] <= seen);
    }
}

TEST_CASE("oracle: round count is bounded by n") {
    Coalgebra c = load_model("transition_system.model");
    std::size_t rounds = 0;
    naive_bisimilarity(c, &rounds);
    CHECK(rounds >= 1);
    CHECK(rounds <= c.n() + 1);
}

TEST_CASE("oracle: empty and single-state coalgebras") {
    Coalgebra one = parse_coalgebra("functor: P\nstates: a\na -> {a}\n");
    CHECK(naive_bisimilarity(one) == std::vector<std::uint32_t>{0});
    Coalgebra two = parse_coalgebra("functor: P\nstates: a, b\na -> {a}\nb -> {b}\n");
    CHECK(naive_bisimilarity(two) == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("oracle: weights that cancel make states equivalent") {
    Coalgebra c = parse_coalgebra(
        "functor: Z^(X)\nstates: p, q, u, v\n"
        "p -> {u: 1, v: -1}\nq -> {}\nu -> {}\nv -> {}\n");
    CHECK(naive_bisimilarity(c) == std::vector<std::uint32_t>{0, 0, 0, 0});
}

TEST_CASE("oracle: composite functor is compared on nested terms") {
    Coalgebra c = parse_coalgebra(
        "functor: P . (C{a, b} x X)\nstates: p, q, r\n"
        "p -> {(a, r)}\nq -> {(a, r), (a, r)}\nr -> {(b, r)}\n");
    auto p = naive_bisimilarity(c);
    CHECK(p[0] == p[1]);
    CHECK(p[0] != p[2]);
}

TEST_CASE("generator: deterministic for a fixed seed") {
    GeneratorSpec spec;
    spec.functor = parse_functor("R^(X)");
    spec.n = 30;
    spec.seed = 42;
    Coalgebra a = generate(spec), b = generate(spec);
    CHECK(write_model(a) == write_model(b));
    spec.seed = 43;
    CHECK(write_model(generate(spec)) != write_model(a));
}

TEST_CASE("generator: output validates and round-trips through the model format") {
    for (const auto& text : cocert::testing::suite_functors()) {
        GeneratorSpec spec;
        spec.functor = parse_functor(text);
        spec.n = 12;
        spec.seed = 7;
        Coalgebra c = generate(spec);
        CAPTURE(text);
        REQUIRE_NOTHROW(validate(c));
        Coalgebra back = parse_coalgebra(write_model(c));
        CHECK(write_model(back) == write_model(c));
    }
}

TEST_CASE("generator: planted classes are unions of oracle blocks") {
    for (const auto& text : cocert::testing::suite_functors()) {
        GeneratorSpec spec;
        spec.functor = parse_functor(text);
        spec.n = 24;
        spec.classes = 5;
        spec.seed = 11;
        spec.density = 0.3;
        Coalgebra c = generate(spec);
        auto p = naive_bisimilarity(c);
        CAPTURE(text);
        for (StateId s = 0; s < c.n(); ++s) CHECK(p[s] == p[s % 5]);
    }
}

TEST_CASE("generator: rejects nested composites") {
    GeneratorSpec spec;
    spec.functor = parse_functor("P x (P . X)");
    CHECK_THROWS_AS(generate(spec), InputError);
}

TEST_CASE("layered worst case: shape") {
    Coalgebra c = layered_worstcase(3);
    CHECK(c.n() == 16);
    CHECK(c.names[0] == "w0");
    CHECK(c.names[3] == "z0");
    CHECK(c.names[4] == "w1");
    CHECK(c.m == 52);
    auto p = naive_bisimilarity(c);
    std::set<std::uint32_t> blocks(p.begin(), p.end());
    CHECK(blocks.size() == 16);
}
