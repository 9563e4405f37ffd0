#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cocert/certdag.hpp"
#include "cocert/coalgebra.hpp"

namespace cocert {

// Set of states as a bitset.
class Extension {
public:
    Extension() = default;
    explicit Extension(std::size_t n, bool full = false);

    std::size_t size() const { return n_; }
    bool test(StateId s) const { return (w_[s >> 6] >> (s & 63)) & 1U; }
    void set(StateId s) { w_[s >> 6] |= std::uint64_t{1} << (s & 63); }
    std::size_t count() const;
    void complement();
    Extension& operator&=(const Extension& o);
    friend bool operator==(const Extension&, const Extension&) = default;
    std::vector<StateId> states() const;

private:
    void trim();
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Bottom-up memoized evaluator over one coalgebra; reusable across calls on the same dag.
class Evaluator {
public:
    Evaluator(const FormulaDag& dag, const Coalgebra& c);
    Extension eval(EdgeRef e);

private:
    const Extension& node(NodeId id);
    const FormulaDag& dag_;
    const Coalgebra& c_;
    std::vector<Extension> memo_;
    std::vector<bool> done_;
};

Extension eval(EdgeRef e, const FormulaDag& dag, const Coalgebra& c);
// Direct recursive evaluation without sharing; exponential on shared dags.
Extension eval_unshared(EdgeRef e, const FormulaDag& dag, const Coalgebra& c);

struct CertMismatch {
    std::uint32_t block;
    std::vector<StateId> expected;
    std::vector<StateId> actual;
};

struct CertCheckReport {
    std::vector<CertMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

CertCheckReport check_certificates(const CertificateSet& certs, const Coalgebra& c);

// Random formulas of bounded depth whose modal labels are values realized at some state.
class FormulaSampler {
public:
    FormulaSampler(const Coalgebra& c, std::uint64_t seed, std::size_t max_depth = 4);
    EdgeRef sample(FormulaDag& dag);

private:
    EdgeRef sample_at(FormulaDag& dag, std::size_t depth);
    const Coalgebra& c_;
    std::mt19937_64 rng_;
    std::size_t max_depth_;
};

struct AdequacyViolation {
    StateId x, y;
    std::string formula;
};

struct AdequacyReport {
    std::size_t checked = 0;
    std::vector<AdequacyViolation> violations;
    bool ok() const { return violations.empty(); }
};

// For each pair and each sampled formula: x satisfies it iff y does.
AdequacyReport adequacy_probe(const Coalgebra& c, const std::vector<std::pair<StateId, StateId>>& pairs,
                              FormulaSampler& sampler, std::size_t samples);

}  // namespace cocert
