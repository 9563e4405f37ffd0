#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocert/certdag.hpp"
#include "cocert/coalgebra.hpp"
#include "cocert/logic_eval.hpp"

namespace cocert {

enum class LogicKind : std::uint8_t { HennessyMilner, Weighted, Signature, Prob };

std::string to_string(LogicKind k);
LogicKind parse_logic_kind(const std::string& s);  // hm | weighted | signature | prob; throws InputError

// A domain-specific logic bound to a functor it can describe.
struct DomainLogic {
    enum class ProbShape : std::uint8_t { Labelled, Partial, Total };  // (D+1)^A, D+1, D

    LogicKind kind = LogicKind::HennessyMilner;
    FunctorExpr functor;
    ProbShape shape = ProbShape::Total;
    std::vector<std::string> actions;  // Labelled only

    // Weighted logic over a cancellative monoid or D: one conjunct per modal step suffices.
    bool cancellative_weights() const;
    // Has a unary interpretation of F2 values (negation-free cancellative translation).
    bool simple() const;
};

// Throws IncompatibleError when the logic does not fit the functor.
DomainLogic make_logic(LogicKind kind, const FunctorExpr& f);
// The logic naturally associated with f, if any.
std::optional<DomainLogic> natural_logic(const FunctorExpr& f);

struct DSEdge {
    std::uint32_t id = 0;
    bool neg = false;
    DSEdge operator!() const { return {id, !neg}; }
    friend bool operator==(const DSEdge&, const DSEdge&) = default;
};

struct DSNode {
    enum class Kind : std::uint8_t {
        Top,
        And,
        Or,
        Var,      // placeholder argument (tag = index), used when checking interpretations
        Diamond,  // <>phi
        Weight,   // <m>phi: accumulated weight of successors satisfying phi is exactly m
        Index,    // <I>phi: the i-th argument satisfies phi iff i in I
        Prob,     // <a>_{p}phi: on a, phi is reached with probability at least p
        OpAtom,   // operation symbol tag
    };

    Kind kind = Kind::Top;
    std::uint32_t tag = 0;  // Var index, Prob action, OpAtom operation
    Rational param;         // Weight m, Prob p
    std::vector<std::uint32_t> index;
    DSEdge args[2];
    std::uint8_t arity = 0;
};

class DSDag {
public:
    DSDag();

    DSEdge top() const { return {0, false}; }
    // Boolean connectives fold away true operands.
    DSEdge conj(DSEdge a, DSEdge b);
    DSEdge disj(DSEdge a, DSEdge b);
    DSEdge var(std::uint32_t i);
    DSEdge diamond(DSEdge a);
    DSEdge weight(Rational m, DSEdge a);
    DSEdge index(std::vector<std::uint32_t> set, DSEdge a);
    DSEdge prob(std::uint32_t action, Rational p, DSEdge a);
    DSEdge op_atom(std::uint32_t op);

    const DSNode& node(std::uint32_t id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }

private:
    DSEdge add(DSNode n);
    std::vector<DSNode> nodes_;
};

// Nullary interpretation of an F1 value.
DSEdge tau(const FValue& o, const DomainLogic& L, DSDag& dag);
// Binary interpretation of an F3 value; rho is only built if the instance needs it.
DSEdge lambda(const FValue& t, const DomainLogic& L, DSDag& dag, DSEdge delta, const std::function<DSEdge()>& rho);
// Unary interpretation of an F2 value; only for simple logics.
DSEdge kappa(const FValue& s, const DomainLogic& L, DSDag& dag, DSEdge delta);

struct DSCertificates {
    DSDag dag;
    std::vector<DSEdge> delta;  // per block, parallel to CertificateSet::delta
};

// Translates formulas of one certificate dag; memoized across calls.
class Translator {
public:
    Translator(const FormulaDag& src, const DomainLogic& L, DSDag& out);
    DSEdge translate(EdgeRef e);

private:
    DSEdge node(std::uint32_t id);
    const FormulaDag& src_;
    const DomainLogic& L_;
    DSDag& out_;
    std::vector<std::optional<DSEdge>> memo_;
};

DSCertificates translate(const CertificateSet& certs, const DomainLogic& L);

Extension eval_ds(DSEdge e, const DSDag& dag, const Coalgebra& c, const DomainLogic& L);
// True when every modal node in e is negation-free and no Or node occurs.
bool negation_free(DSEdge e, const DSDag& dag);

std::string format_ds(DSEdge e, const DSDag& dag, const DomainLogic& L, std::size_t limit = 100000);
std::uint64_t ds_tree_size(DSEdge e, const DSDag& dag);
DSEdge parse_ds(std::string_view text, DSDag& dag, const DomainLogic& L);

struct DsiReport {
    std::size_t values_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Brute-force check of the interpretation axioms over values realizable in c.
DsiReport verify_dsi(const DomainLogic& L, const Coalgebra& c, std::uint64_t seed = 1);

}  // namespace cocert
