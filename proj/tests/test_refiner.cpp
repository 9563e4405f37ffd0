#include <catch_amalgamated.hpp>

#include <bit>
#include <set>

#include "cocert/oracle.hpp"
#include "cocert/refiner.hpp"
#include "suite.hpp"

using namespace cocert;
using cocert::testing::load_model;
using cocert::testing::refined_blocks;

namespace {

std::vector<RefineMode> modes_for(const FunctorExpr& f) {
    std::vector<RefineMode> ms{RefineMode::Generic, RefineMode::Naive};
    if (is_cancellative(f)) ms.push_back(RefineMode::Cancellative);
    return ms;
}

}  // namespace

TEST_CASE("refiner: mode names") {
    for (auto m : {RefineMode::Generic, RefineMode::Cancellative, RefineMode::Naive})
        CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mode("fast"), InputError);
}

TEST_CASE("refiner: initial partition groups by one-step shape") {
    Coalgebra c = load_model("transition_system.model");
    auto [p, values] = initial_partition(c);
    CHECK(p.block_count() == 2);
    CHECK(p.block_of(0) == p.block_of(1));
    StateId z = c.state("z");
    CHECK(p.block_of(z) != p.block_of(0));
    CHECK(to_string(values[p.block_of(z)], c.functor) == "{}");
    CHECK(to_string(values[p.block_of(0)], c.functor) == "{0}");
}

TEST_CASE("refiner: golden partitions in every mode") {
    Coalgebra ts = load_model("transition_system.model");
    for (auto m : {RefineMode::Generic, RefineMode::Naive}) {
        CAPTURE(to_string(m));
        CHECK(refined_blocks(ts, m) == std::vector<std::uint32_t>{0, 1, 2, 1});  // x, x1, z, y
    }
    CHECK_THROWS_AS(refine(ts, RefineMode::Cancellative), IncompatibleError);

    for (const char* name : {"weighted_chain.model", "partial_chain.model"}) {
        Coalgebra c = load_model(name);
        for (auto m : {RefineMode::Generic, RefineMode::Naive, RefineMode::Cancellative}) {
            CAPTURE(name, to_string(m));
            CHECK(refined_blocks(c, m) == std::vector<std::uint32_t>{0, 1, 1, 2});  // x, z2, y, z1
        }
    }
}

TEST_CASE("refiner: agrees with the oracle on the random suite") {
    auto suite = cocert::testing::random_suite(8, 30);
    for (const auto& tc : suite) {
        CAPTURE(tc.label);
        auto expected = naive_bisimilarity(tc.c);
        for (auto m : modes_for(tc.c.functor)) {
            CAPTURE(to_string(m));
            CHECK(refined_blocks(tc.c, m, {.audit = true}) == expected);
        }
    }
}

TEST_CASE("refiner: trace replays to the final partition") {
    auto suite = cocert::testing::random_suite(4, 40);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        for (auto m : modes_for(tc.c.functor)) {
            CAPTURE(tc.label, to_string(m));
            auto r = refine(tc.c, m);
            auto again = replay(r.trace);
            CHECK(normalize_blocks(again.assignment()) == normalize_blocks(r.partition.assignment()));
        }
    }
}

TEST_CASE("refiner: tampered trace is rejected") {
    Coalgebra c = load_model("transition_system.model");
    auto r = refine(c, RefineMode::Generic);
    REQUIRE_FALSE(r.trace.splits.empty());
    auto bad = r.trace;
    while (!bad.splits.empty() && bad.splits.back().refined.empty()) bad.splits.pop_back();
    REQUIRE_FALSE(bad.splits.empty());
    bad.splits.pop_back();
    // Dropping a split either changes the partition or leaves an inconsistent trace.
    bool rejected = false;
    try {
        auto p = replay(bad);
        rejected = normalize_blocks(p.assignment()) != normalize_blocks(r.partition.assignment());
    } catch (const VerificationError&) {
        rejected = true;
    }
    CHECK(rejected);
}

TEST_CASE("refiner: each state is in a splitter at most log2(n)+1 times") {
    auto suite = cocert::testing::random_suite(4, 50);
    for (const auto& tc : suite) {
        if (contains_composite(tc.c.functor)) continue;
        for (auto m : {RefineMode::Generic, RefineMode::Cancellative}) {
            if (m == RefineMode::Cancellative && !is_cancellative(tc.c.functor)) continue;
            CAPTURE(tc.label, to_string(m));
            auto r = refine(tc.c, m);
            CHECK(r.stats.max_splitter_role <= static_cast<std::size_t>(std::bit_width(tc.c.n())));
        }
    }
}

TEST_CASE("refiner: stepping exposes the keys of each iteration") {
    Coalgebra c = load_model("transition_system.model");
    Refiner r(c, RefineMode::Generic, {.audit = true});
    std::size_t steps = 0;
    while (r.step()) {
        ++steps;
        for (const auto& [s, v] : r.last_keys()) CHECK(fits_palette(v, c.functor, 3));
    }
    CHECK(steps == r.stats().iterations);
    CHECK(r.partition().block_count() == 3);
    auto result = r.finish();
    CHECK(result.stats.child_records > 0);
    CHECK(result.trace.mode == RefineMode::Generic);
    CHECK(result.trace.n == 4);
}

TEST_CASE("refiner: trace children carry values over the right palette") {
    Coalgebra c = load_model("weighted_chain.model");
    for (auto m : {RefineMode::Generic, RefineMode::Cancellative}) {
        auto r = refine(c, m);
        std::uint32_t k = m == RefineMode::Cancellative ? 2 : 3;
        for (const auto& split : r.trace.splits)
            for (const auto& ref : split.refined) {
                REQUIRE(ref.children.size() >= 2);
                CHECK(ref.children[0].id == ref.parent);
                CHECK(ref.children[0].moved.empty());
                for (const auto& ch : ref.children) CHECK(fits_palette(ch.value, c.functor, k));
                for (std::size_t i = 1; i < ref.children.size(); ++i) CHECK_FALSE(ref.children[i].moved.empty());
            }
    }
}

TEST_CASE("refiner: trivial inputs") {
    Coalgebra one = parse_coalgebra("functor: P\nstates: a\na -> {}\n");
    auto r = refine(one, RefineMode::Generic);
    CHECK(r.partition.block_count() == 1);
    CHECK(r.trace.splits.empty());
    Coalgebra empty;
    empty.functor = parse_functor("P");
    CHECK(refine(empty, RefineMode::Generic).partition.block_count() == 0);
}

TEST_CASE("refiner: composite functor requires desugaring") {
    Coalgebra c = parse_coalgebra("functor: P . (C{a} x X)\nstates: p\np -> {(a, p)}\n");
    CHECK_THROWS_AS(refine(c, RefineMode::Generic), IncompatibleError);
}

TEST_CASE("refiner: layered worst case separates every state") {
    for (std::size_t k = 1; k <= 6; ++k) {
        Coalgebra c = layered_worstcase(k);
        for (auto m : {RefineMode::Generic, RefineMode::Cancellative, RefineMode::Naive}) {
            auto r = refine(c, m);
            CHECK(normalize_blocks(r.partition.assignment()) == naive_bisimilarity(c));
        }
    }
}
