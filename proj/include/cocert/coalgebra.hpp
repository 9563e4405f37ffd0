#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocert/errors.hpp"
#include "cocert/functor.hpp"
#include "cocert/fvalue.hpp"
#include "cocert/rational.hpp"

namespace cocert {

using StateId = std::uint32_t;

// Encoded successor structure of one state; mirrors the functor shape.
struct Term {
    enum class Kind : std::uint8_t {
        State,     // Identity position: tag = state id
        Atom,      // Constant: tag = atom index
        Set,       // Powerset / B^(X): items
        Weighted,  // Monoid / Distribution: items with parallel weights (never zero)
        Op,        // Signature: tag = operation, items = arguments
        Tuple,     // Product / Exponent
        Inj,       // Coproduct: tag = branch (0-based), items = {payload}
    };

    Kind kind = Kind::State;
    std::uint32_t tag = 0;
    std::vector<Term> items;
    std::vector<Rational> weights;

    static Term state(StateId s) {
        Term t;
        t.tag = s;
        return t;
    }
    static Term atom(std::uint32_t a) {
        Term t;
        t.kind = Kind::Atom;
        t.tag = a;
        return t;
    }
    static Term set(std::vector<Term> items) {
        Term t;
        t.kind = Kind::Set;
        t.items = std::move(items);
        return t;
    }
    static Term weighted(std::vector<Term> items, std::vector<Rational> weights) {
        Term t;
        t.kind = Kind::Weighted;
        t.items = std::move(items);
        t.weights = std::move(weights);
        return t;
    }
    static Term op(std::uint32_t o, std::vector<Term> args) {
        Term t;
        t.kind = Kind::Op;
        t.tag = o;
        t.items = std::move(args);
        return t;
    }
    static Term tuple(std::vector<Term> items) {
        Term t;
        t.kind = Kind::Tuple;
        t.items = std::move(items);
        return t;
    }
    static Term inj(std::uint32_t branch, Term payload) {
        Term t;
        t.kind = Kind::Inj;
        t.tag = branch;
        t.items.push_back(std::move(payload));
        return t;
    }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Coalgebra {
    FunctorExpr functor;
    std::vector<std::string> names;
    std::vector<Term> structure;
    std::size_t m = 0;

    std::size_t n() const { return names.size(); }
    std::optional<StateId> find(std::string_view name) const;
    StateId state(std::string_view name) const;  // throws InputError
};

struct Coloring {
    std::uint32_t k = 1;
    std::vector<Colour> colour;
};

// Functorial action of a colouring on an encoded term; `col` maps StateId -> colour < k.
template <class ColourFn>
FValue apply_coloring(const FunctorExpr& f, const Term& t, std::uint32_t k, const ColourFn& col) {
    using FK = FunctorExpr::Kind;
    switch (f.kind) {
    case FK::Identity: return FValue::colour(col(t.tag));
    case FK::Constant: return FValue::atom(t.tag);
    case FK::Powerset:
    case FK::Monoid:
    case FK::Distribution:
        if (f.is_set_like()) {
            std::vector<Colour> cs;
            cs.reserve(t.items.size());
            for (const auto& it : t.items) cs.push_back(col(it.tag));
            return FValue::colour_set(std::move(cs));
        } else {
            std::vector<Rational> ws(k);
            for (std::size_t i = 0; i < t.items.size(); ++i) ws[col(t.items[i].tag)] += t.weights[i];
            return FValue::weight_vector(std::move(ws));
        }
    case FK::Signature: {
        std::vector<Colour> args;
        args.reserve(t.items.size());
        for (const auto& it : t.items) args.push_back(col(it.tag));
        return FValue::op(t.tag, std::move(args));
    }
    case FK::Product: {
        std::vector<FValue> items;
        items.reserve(t.items.size());
        for (std::size_t i = 0; i < t.items.size(); ++i) items.push_back(apply_coloring(f.children[i], t.items[i], k, col));
        return FValue::tuple(std::move(items));
    }
    case FK::Exponent: {
        std::vector<FValue> items;
        items.reserve(t.items.size());
        for (const auto& it : t.items) items.push_back(apply_coloring(f.children[0], it, k, col));
        return FValue::tuple(std::move(items));
    }
    case FK::Coproduct: return FValue::inj(t.tag, apply_coloring(f.children[t.tag], t.items[0], k, col));
    case FK::Composite: throw IncompatibleError("composite functor: desugar before applying a colouring");
    }
    return {};
}

FValue f_apply_coloring(const FunctorExpr& f, const Term& t, const Coloring& col);

// F!(t): the value over the one-colour palette.
FValue terminal_value(const FunctorExpr& f, const Term& t);

// Number of state occurrences in a term (edge count contribution).
std::size_t count_occurrences(const Term& t);

// Sorts/deduplicates sets and merges weights so equal structures have equal terms.
void canonicalize(Term& t, const FunctorExpr& f);

// Applies a state renaming and re-canonicalizes.
Term map_states(const Term& t, const FunctorExpr& f, const std::vector<StateId>& r);

// Checks shape against the functor, state ids < n, weight constraints. Throws InputError.
void validate(const Coalgebra& c);

// Recomputes m.
void recount(Coalgebra& c);

struct Desugared {
    Coalgebra coalgebra;
    std::vector<bool> original;  // per state of the sum coalgebra
    std::size_t original_count = 0;
};

// F1 . ... . Fk  ->  coalgebra over F1 + ... + Fk with one auxiliary state per inner value.
// Non-composite input is returned unchanged with every state original.
Desugared desugar_composite(const Coalgebra& c);

// One state per block (block ids dense, given per state); representative = least state of the block.
// Output blocks are ordered by their least state.
Coalgebra quotient(const Coalgebra& c, const std::vector<std::uint32_t>& block_of);

// Model file I/O.
Coalgebra parse_coalgebra(std::string_view text);
std::string write_model(const Coalgebra& c);
std::string term_to_string(const Term& t, const Coalgebra& c);

}  // namespace cocert
