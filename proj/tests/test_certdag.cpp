#include <catch_amalgamated.hpp>

#include "cocert/certdag.hpp"
#include "cocert/logic_eval.hpp"
#include "cocert/oracle.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;

namespace {

CertificateSet certs_for(const Coalgebra& c, RefineMode m, CertOptions opts = {}) {
    auto r = refine(c, m);
    return certify(c, r.trace, opts);
}

std::uint32_t block_of(const CertificateSet& cs, const Coalgebra& c, const char* name) {
    return cs.block_of[c.state(name)];
}

}  // namespace

TEST_CASE("dag: construction and sizes") {
    FormulaDag dag;
    CHECK(dag.size() == 1);
    CHECK(format_ref(dag.top()) == "true");
    CHECK(tree_size(dag, dag.top()) == 1);
    auto f = parse_functor("P");
    EdgeRef empty = dag.modal(FValue::colour_set({}), 0);
    EdgeRef m = dag.modal(FValue::colour_set({1}), 2, empty, dag.top());
    EdgeRef both = dag.conj(m, !empty);
    CHECK(format_node(dag, m.id, f) == "<{1}>(#1, true)");
    CHECK(format_node(dag, both.id, f) == "(#2 & ~#1)");
    CHECK(format_expanded(dag, both, f) == "(<{1}>(<{}>, true) & ~<{}>)");
    CHECK(tree_size(dag, both) == 5);
    CHECK(modal_depth(dag, both) == 2);
    CHECK(dag.conjuncts(both).size() == 2);
    CHECK(dag.conjuncts(!both).size() == 1);
    auto sz = dag_size(dag, {both});
    CHECK(sz.nodes == 4);
    CHECK(sz.height == 2);
    CHECK_THROWS_AS(format_expanded(dag, both, f, 3), InputError);
    CHECK_THROWS_AS(dag.modal(FValue::colour_set({}), 3), InputError);
}

TEST_CASE("dag: formula parser round-trips") {
    auto f = parse_functor("R^(X)");
    FormulaDag dag;
    for (const char* text : {"true", "~true", "<(1)>", "(<(1)> & ~<(0)>)", "<(0,1/2,1/2)>(<(0)>, true)",
                             "<(1,1)>(~<(0)>)"}) {
        CAPTURE(text);
        EdgeRef e = parse_formula(text, dag, f);
        CHECK(format_expanded(dag, e, f) == text);
    }
    EdgeRef d = parse_formula("(<(1)> | <(0)>)", dag, f);
    CHECK(format_expanded(dag, d, f) == "~(~<(1)> & ~<(0)>)");
    CHECK(format_expanded(dag, parse_formula("false", dag, f), f) == "~true");
    for (const char* bad : {"", "(true &", "<(1)", "<(1,2,3,4)>(true)", "<{1}>", "foo"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_formula(bad, dag, f), InputError);
    }
}

TEST_CASE("certificates: transition system golden output") {
    Coalgebra c = load_model("transition_system.model");
    auto cs = certs_for(c, RefineMode::Generic);
    REQUIRE(cs.block_count() == 3);
    CHECK(format_expanded(cs.dag, cs.delta[block_of(cs, c, "z")], c.functor) == "<{}>");
    CHECK(format_expanded(cs.dag, cs.delta[block_of(cs, c, "x")], c.functor) == "(<{0}> & <{1}>(<{}>, true))");
    CHECK(format_expanded(cs.dag, cs.delta[block_of(cs, c, "y")], c.functor) == "(<{0}> & <{1,2}>(<{}>, true))");
    CHECK(check_certificates(cs, c).ok());
    auto sz = dag_size(cs.dag, cs.delta);
    CHECK(sz.nodes <= 12);
    CHECK(sz.height <= c.n() + 1);
}

TEST_CASE("certificates: certificate file layout") {
    Coalgebra c = load_model("transition_system.model");
    auto cs = certs_for(c, RefineMode::Generic);
    std::string text = format_certificates(cs, c);
    CHECK(text.rfind("functor: P\ncertificates: generic\nblocks: 3\n", 0) == 0);
    CHECK(text.find("block 0 {x} := #") != std::string::npos);
    CHECK(text.find("{x1, y}") != std::string::npos);
    CHECK(text.find("\ndag:\n") != std::string::npos);
    CHECK(text.find("#2 := <{}>") != std::string::npos);
}

TEST_CASE("certificates: weighted chain, cancellative and negation-free") {
    Coalgebra c = load_model("weighted_chain.model");
    auto cs = certs_for(c, RefineMode::Cancellative);
    CHECK(cs.cancellative);
    CHECK(cs.beta.empty());
    CHECK(check_certificates(cs, c).ok());
    for (NodeId id = 0; id < cs.dag.size(); ++id) {
        const auto& n = cs.dag.node(id);
        CHECK(n.arity <= 2);
        for (std::uint8_t i = 0; i < n.arity; ++i) CHECK_FALSE(n.args[i].neg);
        if (n.kind == FormulaNode::Kind::Modal) CHECK(n.arity <= 1);
    }
    for (auto d : cs.delta) CHECK_FALSE(d.neg);
    CHECK(format_expanded(cs.dag, cs.delta[block_of(cs, c, "x")], c.functor) == "(<(1)> & <(1/2,1/2)>(<(0)>))");
}

TEST_CASE("certificates: single block has one nullary modality") {
    Coalgebra c = parse_coalgebra("functor: P\nstates: a, b\na -> {b}\nb -> {a}\n");
    auto cs = certs_for(c, RefineMode::Generic);
    REQUIRE(cs.block_count() == 1);
    CHECK(format_expanded(cs.dag, cs.delta[0], c.functor) == "<{0}>");
    CHECK(dag_size(cs.dag, cs.delta).nodes == 1);
    CHECK(cs.dag.size() == 2);
}

TEST_CASE("certificates: cancellative builder needs a cancellative trace") {
    Coalgebra c = load_model("weighted_chain.model");
    auto r = refine(c, RefineMode::Generic);
    CHECK_THROWS_AS(build_certificates_cancellative(c, r.trace), IncompatibleError);
    Coalgebra p = load_model("transition_system.model");
    CHECK_THROWS_AS(build_certificates_cancellative(p, refine(p, RefineMode::Generic).trace), IncompatibleError);
}

TEST_CASE("certificates: every step is sound on the random suite") {
    auto suite = cocert::testing::random_suite(3, 30);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        for (auto m : {RefineMode::Generic, RefineMode::Naive, RefineMode::Cancellative}) {
            if (m == RefineMode::Cancellative && !is_cancellative(tc.c.functor)) continue;
            CAPTURE(tc.label, to_string(m));
            REQUIRE_NOTHROW(certs_for(tc.c, m, {.check_each_step = true}));
        }
    }
}

TEST_CASE("certificates: beta variants agree extensionally") {
    auto suite = cocert::testing::random_suite(3, 40);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        auto r = refine(tc.c, RefineMode::Generic);
        auto local = build_certificates(tc.c, r.trace, {.beta = BetaStyle::Local});
        auto literal = build_certificates(tc.c, r.trace, {.beta = BetaStyle::Literal});
        auto plain = build_certificates(tc.c, r.trace, {.beta = BetaStyle::Unreduced});
        REQUIRE(local.beta.size() == plain.beta.size());
        REQUIRE(literal.beta.size() == plain.beta.size());
        for (std::size_t k = 0; k < plain.beta.size(); ++k) {
            auto want = eval(plain.beta[k], plain.dag, tc.c);
            CHECK(eval(local.beta[k], local.dag, tc.c) == want);
            CHECK(eval(literal.beta[k], literal.dag, tc.c) == want);
        }
        CHECK(check_certificates(local, tc.c).ok());
        CHECK(check_certificates(literal, tc.c).ok());
        CHECK(check_certificates(plain, tc.c).ok());
    }
}

TEST_CASE("certificates: arena work is linear in split events") {
    auto suite = cocert::testing::random_suite(4, 50);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        auto r = refine(tc.c, RefineMode::Generic);
        auto cs = certify(tc.c, r.trace);
        CHECK(cs.counters.split_events == r.stats.child_records);
        CHECK(cs.counters.allocations <= 4 * cs.counters.split_events + 2 * tc.c.n());
    }
}

TEST_CASE("distinguish: golden pairs") {
    Coalgebra c = load_model("transition_system.model");
    auto cs = certs_for(c, RefineMode::Generic);
    StateId x = c.state("x"), y = c.state("y"), x1 = c.state("x1");
    auto phi = distinguish(x, y, cs, c);
    REQUIRE(phi);
    CHECK(format_expanded(cs.dag, *phi, c.functor) == "<{1}>(<{}>, true)");
    CHECK_FALSE(distinguish(x1, y, cs, c));
    CHECK_FALSE(distinguish(x, x, cs, c));
    CHECK_THROWS_AS(distinguish(x, 99, cs, c), InputError);
}

TEST_CASE("distinguish: exhaustive pairs on small random coalgebras") {
    auto suite = cocert::testing::random_suite(3, 20);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        auto oracle = naive_bisimilarity(tc.c);
        auto cs = certs_for(tc.c, RefineMode::Generic);
        for (StateId x = 0; x < tc.c.n(); ++x)
            for (StateId y = 0; y < tc.c.n(); ++y) {
                auto phi = distinguish(x, y, cs, tc.c);
                CHECK(phi.has_value() == (oracle[x] != oracle[y]));
                if (phi) {
                    auto ext = eval(*phi, cs.dag, tc.c);
                    CHECK(ext.test(x));
                    CHECK_FALSE(ext.test(y));
                }
            }
    }
}
