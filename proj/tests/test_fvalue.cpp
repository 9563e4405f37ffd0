#include <catch_amalgamated.hpp>

#include "cocert/errors.hpp"
#include "cocert/fvalue.hpp"

using namespace cocert;

namespace {

void round_trip(const char* functor, const char* text, std::uint32_t k) {
    auto f = parse_functor(functor);
    CAPTURE(functor, text);
    FValue v = parse_fvalue(text, f, k);
    CHECK(to_string(v, f) == text);
    CHECK(fits_palette(v, f, k));
}

}  // namespace

TEST_CASE("fvalue: canonical text round-trips") {
    round_trip("P", "{1,2}", 3);
    round_trip("P", "{}", 1);
    round_trip("R^(X)", "(0,1/2,1/2)", 3);
    round_trip("Sig(f/2, a/0)", "f(2,1)", 3);
    round_trip("Sig(f/2, a/0)", "a", 3);
    round_trip("D(X) + 1", "in2(*)", 2);
    round_trip("D(X) + 1", "in1((1/4,3/4))", 2);
    round_trip("(D(X) + 1)^{a, b}", "[a:in1((1/2,1/2)),b:in2(*)]", 2);
    round_trip("C{a, b} x P", "(b,{0})", 1);
}

TEST_CASE("fvalue: colour sets are canonicalized") {
    CHECK(FValue::colour_set({2, 0, 2}) == FValue::colour_set({0, 2}));
    auto f = parse_functor("P");
    CHECK(to_string(parse_fvalue("{2,0}", f, 3), f) == "{0,2}");
}

TEST_CASE("fvalue: palette violations are rejected") {
    auto p = parse_functor("P");
    CHECK_THROWS_AS(parse_fvalue("{3}", p, 3), InputError);
    auto r = parse_functor("R^(X)");
    CHECK_THROWS_AS(parse_fvalue("(1,2)", r, 3), InputError);
    CHECK_FALSE(fits_palette(FValue::colour_set({5}), p, 3));
    CHECK_FALSE(fits_palette(FValue::weight_vector({Rational(1)}), r, 3));
}

TEST_CASE("fvalue: relabel merges weights and colours") {
    auto r = parse_functor("R^(X)");
    FValue v = parse_fvalue("(1,2,3)", r, 3);
    FValue w = relabel(v, r, {0, 1, 1}, 2);
    CHECK(to_string(w, r) == "(1,5)");
    auto p = parse_functor("P");
    CHECK(to_string(relabel(parse_fvalue("{0,1,2}", p, 3), p, {0, 0, 0}, 1), p) == "{0}");
    auto sig = parse_functor("Sig(f/2)");
    CHECK(to_string(relabel(parse_fvalue("f(2,1)", sig, 3), sig, {0, 1, 0}, 2), sig) == "f(0,1)");
}

TEST_CASE("fvalue: relabel is functorial") {
    auto f = parse_functor("(D(X) + 1)^{a, b}");
    FValue v = parse_fvalue("[a:in1((1/4,1/4,1/2)),b:in2(*)]", f, 3);
    std::vector<Colour> r1{0, 1, 1}, r2{0, 0};
    FValue two_step = relabel(relabel(v, f, r1, 2), f, r2, 1);
    FValue direct = relabel(v, f, {0, 0, 0}, 1);
    CHECK(two_step == direct);
    CHECK(relabel(v, f, {0, 1, 2}, 3) == v);
}

TEST_CASE("fvalue: ordering is total and consistent") {
    FValue a = FValue::colour_set({0}), b = FValue::colour_set({0, 1}), c = FValue::colour_set({1});
    CHECK((a <=> a) == std::strong_ordering::equal);
    CHECK((a < b) != (b < a));
    CHECK(((a < b && b < c) ? a < c : true));
    CHECK(a.hash() == FValue::colour_set({0}).hash());
}
