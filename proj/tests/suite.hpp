#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cocert/coalgebra.hpp"
#include "cocert/functor.hpp"
#include "cocert/oracle.hpp"
#include "cocert/refiner.hpp"

namespace cocert::testing {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string model_path(const std::string& name) { return std::string(COCERT_MODELS_DIR) + "/" + name; }

inline Coalgebra load_model(const std::string& name) { return parse_coalgebra(read_file(model_path(name))); }

struct SuiteCase {
    std::string label;
    Coalgebra c;
};

// Functors covered by the random suite; the last one is composite.
inline const std::vector<std::string>& suite_functors() {
    static const std::vector<std::string> fs = {
        "P",
        "R^(X)",
        "Z^(X)",
        "N^(X)",
        "B^(X)",
        "D(X) + 1",
        "Sig(f/2, g/1, a/0, b/0)",
        "C{a, b} x P",
        "P + N^(X)",
        "(D(X) + 1)^{a, b}",
        "P^{a, b}",
        "P . (C{a, b} x X)",
    };
    return fs;
}

// Seeded random coalgebras with n <= max_n; every second case has planted equivalence classes.
inline std::vector<SuiteCase> random_suite(std::size_t per_functor = 44, std::size_t max_n = 50) {
    std::vector<SuiteCase> out;
    std::uint64_t seed = 1;
    for (const auto& text : suite_functors()) {
        FunctorExpr f = parse_functor(text);
        bool composite = contains_composite(f);
        for (std::size_t i = 0; i < per_functor; ++i, ++seed) {
            GeneratorSpec spec;
            spec.functor = f;
            spec.seed = seed;
            spec.n = 1 + (seed * 7919) % max_n;
            if (composite) spec.n = std::min<std::size_t>(spec.n, 20);
            spec.density = std::min(1.0, 2.5 / static_cast<double>(spec.n));
            spec.max_weight = 3;
            if (i % 2 == 1 && spec.n > 3) spec.classes = 1 + spec.n / (2 + i % 5);
            out.push_back({text + " seed=" + std::to_string(seed) + " n=" + std::to_string(spec.n), generate(spec)});
        }
    }
    return out;
}

// Refined partition of the original states; composite models are desugared first.
inline std::vector<std::uint32_t> refined_blocks(const Coalgebra& c, RefineMode mode, RefineOptions opts = {}) {
    Desugared d = desugar_composite(c);
    auto r = refine(d.coalgebra, mode, opts);
    std::vector<std::uint32_t> out(r.partition.assignment().begin(),
                                   r.partition.assignment().begin() + static_cast<std::ptrdiff_t>(c.n()));
    return normalize_blocks(out);
}

}  // namespace cocert::testing
