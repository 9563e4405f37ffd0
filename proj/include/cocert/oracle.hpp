#pragma once

#include <cstdint>
#include <vector>

#include "cocert/coalgebra.hpp"

namespace cocert {

// Iterated kernel refinement by sort-and-group; shares only the colouring action with the refiner.
// Composite functors are handled directly on the nested terms. Result is normalized
// (blocks numbered by first occurrence).
std::vector<std::uint32_t> naive_bisimilarity(const Coalgebra& c, std::size_t* rounds = nullptr);

struct GeneratorSpec {
    FunctorExpr functor;
    std::size_t n = 10;
    double density = 0.3;        // probability of each potential successor in collections
    std::int64_t max_weight = 3; // weights drawn from 1..max_weight (sign random for Z)
    std::uint64_t seed = 1;
    // When > 0, build a base of `classes` states and fill the rest with behaviourally
    // equivalent copies, so the result has nontrivial equivalence classes.
    std::size_t classes = 0;
};

// Deterministic for a given GeneratorSpec. Throws InputError for impossible shapes.
Coalgebra generate(const GeneratorSpec& spec);

// 4(k+1) states w_i, x_i, y_i, z_i over R^(X): layer 0 loops with weights 1..4,
// layer i+1 points into layer i.
Coalgebra layered_worstcase(std::size_t k);

}  // namespace cocert
