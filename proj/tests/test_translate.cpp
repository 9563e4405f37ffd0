#include <catch_amalgamated.hpp>

#include "cocert/oracle.hpp"
#include "cocert/translate.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;

namespace {

std::vector<std::string> names(const Extension& e, const Coalgebra& c) {
    std::vector<std::string> out;
    for (StateId s : e.states()) out.push_back(c.names[s]);
    return out;
}

std::vector<std::string> sat(const char* formula, const Coalgebra& c, const DomainLogic& L) {
    DSDag dag;
    return names(eval_ds(parse_ds(formula, dag, L), dag, c, L), c);
}

CertificateSet certs_for(const Coalgebra& c, RefineMode m) { return certify(c, refine(c, m).trace); }

void check_translation(const Coalgebra& c, RefineMode m, const DomainLogic& L) {
    auto cs = certs_for(c, m);
    auto ds = translate(cs, L);
    REQUIRE(ds.delta.size() == cs.block_count());
    for (std::uint32_t b = 0; b < cs.block_count(); ++b) {
        Extension want(c.n());
        for (StateId s = 0; s < c.n(); ++s)
            if (cs.block_of[s] == b) want.set(s);
        CHECK(eval_ds(ds.delta[b], ds.dag, c, L) == want);
    }
}

}  // namespace

TEST_CASE("logic: compatibility") {
    CHECK(make_logic(LogicKind::HennessyMilner, parse_functor("P")).kind == LogicKind::HennessyMilner);
    CHECK(make_logic(LogicKind::Prob, parse_functor("D(X) + 1")).shape == DomainLogic::ProbShape::Partial);
    CHECK(make_logic(LogicKind::Prob, parse_functor("D(X)")).shape == DomainLogic::ProbShape::Total);
    auto lab = make_logic(LogicKind::Prob, parse_functor("(D(X) + 1)^{a, b}"));
    CHECK(lab.shape == DomainLogic::ProbShape::Labelled);
    CHECK(lab.actions == std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS(make_logic(LogicKind::HennessyMilner, parse_functor("R^(X)")), IncompatibleError);
    CHECK_THROWS_AS(make_logic(LogicKind::Signature, parse_functor("P")), IncompatibleError);
    CHECK_THROWS_AS(make_logic(LogicKind::Weighted, parse_functor("C{a} x P")), IncompatibleError);
    CHECK(natural_logic(parse_functor("P"))->kind == LogicKind::HennessyMilner);
    CHECK(natural_logic(parse_functor("R^(X)"))->kind == LogicKind::Weighted);
    CHECK(natural_logic(parse_functor("D(X) + 1"))->kind == LogicKind::Prob);
    CHECK(natural_logic(parse_functor("Sig(f/1)"))->kind == LogicKind::Signature);
    CHECK_FALSE(natural_logic(parse_functor("C{a} x P")).has_value());
    CHECK(make_logic(LogicKind::Weighted, parse_functor("R^(X)")).simple());
    CHECK_FALSE(make_logic(LogicKind::Weighted, parse_functor("B^(X)")).simple());
    CHECK(parse_logic_kind("prob") == LogicKind::Prob);
    CHECK_THROWS_AS(parse_logic_kind("ctl"), InputError);
}

TEST_CASE("hm: golden formulas on the transition system") {
    Coalgebra c = load_model("transition_system.model");
    auto L = make_logic(LogicKind::HennessyMilner, c.functor);
    CHECK(sat("[]<>true", c, L) == std::vector<std::string>{"x", "z"});
    CHECK(sat("(<>true & []<>true)", c, L) == std::vector<std::string>{"x"});
    CHECK(sat("<>~<>true", c, L) == std::vector<std::string>{"x1", "y"});
    CHECK(sat("false", c, L).empty());
    DSDag dag;
    CHECK_THROWS_AS(parse_ds("<1>true", dag, L), InputError);
    CHECK_THROWS_AS(parse_ds("<>", dag, L), InputError);
}

TEST_CASE("hm: translated certificates separate x from y") {
    Coalgebra c = load_model("transition_system.model");
    auto L = make_logic(LogicKind::HennessyMilner, c.functor);
    auto cs = certs_for(c, RefineMode::Generic);
    auto ds = translate(cs, L);
    auto bx = cs.block_of[c.state("x")];
    auto ext = eval_ds(ds.delta[bx], ds.dag, c, L);
    CHECK(ext.test(c.state("x")));
    CHECK_FALSE(ext.test(c.state("y")));
    CHECK(format_ds(ds.delta[bx], ds.dag, L) == "(<>true & []<>true)");
    check_translation(c, RefineMode::Generic, L);
}

TEST_CASE("weighted: cancellative translation is negation-free") {
    Coalgebra c = load_model("weighted_chain.model");
    auto L = make_logic(LogicKind::Weighted, c.functor);
    auto cs = certs_for(c, RefineMode::Cancellative);
    auto ds = translate(cs, L);
    for (auto d : ds.delta) CHECK(negation_free(d, ds.dag));
    auto bx = cs.block_of[c.state("x")];
    CHECK(format_ds(ds.delta[bx], ds.dag, L) == "(<1>true & <1/2><0>true)");
    check_translation(c, RefineMode::Cancellative, L);
    check_translation(c, RefineMode::Generic, L);
    CHECK(sat("<1/2><0>true", c, L) == std::vector<std::string>{"x"});
}

TEST_CASE("prob: partial chain formulas") {
    Coalgebra c = load_model("partial_chain.model");
    auto L = make_logic(LogicKind::Prob, c.functor);
    CHECK(sat("<>_{1/2}<>_{1}true", c, L) == std::vector<std::string>{"x"});
    CHECK(sat("<>_{0}true", c, L) == std::vector<std::string>{"x", "z2", "y"});
    CHECK(sat("~<>_{0}true", c, L) == std::vector<std::string>{"z1"});
    DSDag dag;
    CHECK_THROWS_AS(parse_ds("<>_{3/2}true", dag, L), InputError);
    check_translation(c, RefineMode::Generic, L);
    check_translation(c, RefineMode::Cancellative, L);
}

TEST_CASE("prob: labelled chain") {
    Coalgebra c = load_model("lmc.model");
    auto L = make_logic(LogicKind::Prob, c.functor);
    CHECK(sat("<b>_{1/2}<a>_{1}true", c, L) == std::vector<std::string>{"s", "t"});
    DSDag dag;
    CHECK_THROWS_AS(parse_ds("<>_{1}true", dag, L), InputError);
    CHECK_THROWS_AS(parse_ds("<c>_{1}true", dag, L), InputError);
    check_translation(c, RefineMode::Generic, L);
    check_translation(c, RefineMode::Cancellative, L);
}

TEST_CASE("signature: trees") {
    Coalgebra c = load_model("trees.model");
    auto L = make_logic(LogicKind::Signature, c.functor);
    CHECK(sat("a", c, L) == std::vector<std::string>{"leaf"});
    CHECK(sat("<{1}>a", c, L) == std::vector<std::string>{"p", "q"});
    CHECK(sat("<{2}>a", c, L) == std::vector<std::string>{"r"});
    auto cs = certs_for(c, RefineMode::Cancellative);
    auto ds = translate(cs, L);
    for (auto d : ds.delta) CHECK(negation_free(d, ds.dag));
    check_translation(c, RefineMode::Cancellative, L);
    check_translation(c, RefineMode::Generic, L);
}

TEST_CASE("translation: formats parse back") {
    for (const char* name : {"transition_system.model", "weighted_chain.model", "partial_chain.model", "lmc.model", "trees.model"}) {
        Coalgebra c = load_model(name);
        auto L = *natural_logic(c.functor);
        auto cs = certs_for(c, RefineMode::Generic);
        auto ds = translate(cs, L);
        for (auto d : ds.delta) {
            CAPTURE(name, format_ds(d, ds.dag, L));
            DSDag again;
            DSEdge e = parse_ds(format_ds(d, ds.dag, L), again, L);
            CHECK(eval_ds(e, again, c, L) == eval_ds(d, ds.dag, c, L));
        }
    }
}

TEST_CASE("translation: composite functors are rejected") {
    Coalgebra c = parse_coalgebra("functor: P . (C{a} x X)\nstates: p\np -> {(a, p)}\n");
    CHECK_THROWS_AS(make_logic(LogicKind::HennessyMilner, c.functor), IncompatibleError);
}

TEST_CASE("translation: interpretation axioms on fixtures") {
    for (const char* name : {"transition_system.model", "weighted_chain.model", "partial_chain.model", "lmc.model", "trees.model"}) {
        Coalgebra c = load_model(name);
        auto rep = verify_dsi(*natural_logic(c.functor), c);
        CAPTURE(name, rep.violations);
        CHECK(rep.ok());
        CHECK(rep.values_checked > 0);
    }
}

TEST_CASE("translation: random suite round trip") {
    auto suite = cocert::testing::random_suite(4, 30);
    for (const auto& tc : suite) {
        auto L = natural_logic(tc.c.functor);
        if (!L || contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        check_translation(tc.c, RefineMode::Generic, *L);
        if (is_cancellative(tc.c.functor)) check_translation(tc.c, RefineMode::Cancellative, *L);
    }
}
