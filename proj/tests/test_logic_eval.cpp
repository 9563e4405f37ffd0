#include <catch_amalgamated.hpp>

#include "cocert/certdag.hpp"
#include "cocert/logic_eval.hpp"
#include "cocert/oracle.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;

namespace {

std::vector<std::string> names(const Extension& e, const Coalgebra& c) {
    std::vector<std::string> out;
    for (StateId s : e.states()) out.push_back(c.names[s]);
    return out;
}

}  // namespace

TEST_CASE("extension: bit operations") {
    Extension e(70);
    CHECK(e.count() == 0);
    e.set(0);
    e.set(69);
    CHECK(e.test(69));
    CHECK(e.count() == 2);
    e.complement();
    CHECK(e.count() == 68);
    CHECK_FALSE(e.test(0));
    Extension full(70, true);
    CHECK(full.count() == 70);
    full &= e;
    CHECK(full == e);
    CHECK(Extension(3, true).states() == std::vector<StateId>{0, 1, 2});
}

TEST_CASE("eval: modal semantics on a transition system") {
    Coalgebra c = load_model("transition_system.model");
    FormulaDag dag;
    auto f = c.functor;
    // Nullary: the one-colour value of the successor set.
    CHECK(names(eval(parse_formula("<{}>", dag, f), dag, c), c) == std::vector<std::string>{"z"});
    // Binary: successors coloured 2 if in the first argument, 1 if in the second, else 0.
    EdgeRef dead = parse_formula("<{}>", dag, f);
    EdgeRef into_dead = dag.modal(FValue::colour_set({1}), 2, dead, dag.top());
    CHECK(names(eval(into_dead, dag, c), c) == std::vector<std::string>{"x"});
    EdgeRef mixed = dag.modal(FValue::colour_set({1, 2}), 2, dead, dag.top());
    CHECK(names(eval(mixed, dag, c), c) == std::vector<std::string>{"x1", "y"});
    // Unary: colour 1 marks successors in the argument.
    EdgeRef some_dead = dag.modal(FValue::colour_set({0, 1}), 1, dead);
    CHECK(names(eval(some_dead, dag, c), c) == std::vector<std::string>{"x1", "y"});
    CHECK(eval(!dag.top(), dag, c).count() == 0);
}

TEST_CASE("eval: weighted modalities count exactly") {
    Coalgebra c = load_model("weighted_chain.model");
    FormulaDag dag;
    EdgeRef stop = parse_formula("<(0)>", dag, c.functor);
    EdgeRef half = parse_formula("<(1/2,1/2)>(<(0)>)", dag, c.functor);
    CHECK(names(eval(stop, dag, c), c) == std::vector<std::string>{"z1"});
    CHECK(names(eval(half, dag, c), c) == std::vector<std::string>{"x"});
}

TEST_CASE("eval: shared and unshared evaluation agree") {
    auto suite = cocert::testing::random_suite(2, 25);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        FormulaDag dag;
        FormulaSampler sampler(tc.c, 5, 3);
        Evaluator ev(dag, tc.c);
        for (int i = 0; i < 10; ++i) {
            EdgeRef phi = sampler.sample(dag);
            CHECK(eval_unshared(phi, dag, tc.c) == eval(phi, dag, tc.c));
        }
    }
}

TEST_CASE("eval: certificate checker reports mismatches") {
    Coalgebra c = load_model("transition_system.model");
    auto r = refine(c, RefineMode::Generic);
    auto cs = certify(c, r.trace);
    CHECK(check_certificates(cs, c).ok());
    std::swap(cs.delta[0], cs.delta[1]);
    auto rep = check_certificates(cs, c);
    CHECK_FALSE(rep.ok());
    CHECK(rep.mismatches.size() == 2);
}

TEST_CASE("adequacy: equivalent states agree on sampled formulas") {
    auto suite = cocert::testing::random_suite(2, 30);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        CAPTURE(tc.label);
        auto oracle = naive_bisimilarity(tc.c);
        std::vector<std::pair<StateId, StateId>> pairs;
        for (StateId x = 0; x < tc.c.n(); ++x)
            for (StateId y = x + 1; y < tc.c.n(); ++y)
                if (oracle[x] == oracle[y]) pairs.emplace_back(x, y);
        FormulaSampler sampler(tc.c, 9, 4);
        auto rep = adequacy_probe(tc.c, pairs, sampler, 25);
        CHECK(rep.ok());
    }
}

TEST_CASE("adequacy: probe detects a planted difference") {
    Coalgebra c = load_model("transition_system.model");
    FormulaSampler sampler(c, 3, 3);
    auto rep = adequacy_probe(c, {{c.state("x"), c.state("y")}}, sampler, 200);
    CHECK_FALSE(rep.ok());
}
