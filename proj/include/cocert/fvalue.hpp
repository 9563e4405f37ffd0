#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cocert/functor.hpp"
#include "cocert/rational.hpp"

namespace cocert {

using Colour = std::uint32_t;

// Canonical element of F(k) for a palette {0, ..., k-1}.
// The palette size is implicit: weight vectors have length k, colours are < k.
struct FValue {
    enum class Kind : std::uint8_t {
        Colour,     // Identity
        Atom,       // Constant: tag = atom index
        ColourSet,  // Powerset / B^(X): sorted, duplicate-free
        Weights,    // Monoid / Distribution: dense vector indexed by colour
        Op,         // Signature: tag = operation index, colours = arguments
        Tuple,      // Product, Exponent (label order of the alphabet)
        Inj,        // Coproduct: tag = branch (0-based), items = {payload}
    };

    Kind kind = Kind::Colour;
    std::uint32_t tag = 0;
    std::vector<Colour> colours;
    std::vector<Rational> weights;
    std::vector<FValue> items;

    static FValue colour(Colour c);
    static FValue atom(std::uint32_t index);
    static FValue colour_set(std::vector<Colour> cs);  // canonicalizes
    static FValue weight_vector(std::vector<Rational> ws);
    static FValue op(std::uint32_t index, std::vector<Colour> args);
    static FValue tuple(std::vector<FValue> items);
    static FValue inj(std::uint32_t branch, FValue payload);

    std::size_t hash() const;

    friend bool operator==(const FValue&, const FValue&) = default;
    friend std::strong_ordering operator<=>(const FValue& a, const FValue& b);
};

struct FValueHash {
    std::size_t operator()(const FValue& v) const { return v.hash(); }
};

// Canonical text, e.g. {1,2}  (0,1/2,1/2)  f(2,1)  in2(*)  [a:in1((1/2,1/2)),b:in2(*)].
std::string to_string(const FValue& v, const FunctorExpr& f);

// Parses the canonical text for functor f over palette k.
FValue parse_fvalue(std::string_view text, const FunctorExpr& f, std::uint32_t k);

// Functorial action of a colour map r: k -> k' on an element of F(k).
FValue relabel(const FValue& v, const FunctorExpr& f, const std::vector<Colour>& r, std::uint32_t new_k);

// True when v is a well-shaped element of F(k).
bool fits_palette(const FValue& v, const FunctorExpr& f, std::uint32_t k);

}  // namespace cocert

template <>
struct std::hash<cocert::FValue> {
    std::size_t operator()(const cocert::FValue& v) const { return v.hash(); }
};
