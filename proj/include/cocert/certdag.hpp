#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocert/coalgebra.hpp"
#include "cocert/refiner.hpp"

namespace cocert {

using NodeId = std::uint32_t;

struct EdgeRef {
    NodeId id = 0;
    bool neg = false;

    EdgeRef operator!() const { return {id, !neg}; }
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct FormulaNode {
    enum class Kind : std::uint8_t { Top, And, Modal };

    Kind kind = Kind::Top;
    FValue label;          // Modal only; over palette arity + 1
    std::uint8_t arity = 0;
    EdgeRef args[2];
    // Modal only: formula whose negation, conjoined with args[1], has extension B \ S.
    // Used by the domain-specific translation; not part of the semantics.
    std::optional<EdgeRef> hint;
};

// Append-only arena; children always have smaller ids than their parents.
class FormulaDag {
public:
    FormulaDag();

    EdgeRef top() const { return {0, false}; }
    // Folds away true operands.
    EdgeRef conj(EdgeRef a, EdgeRef b);
    EdgeRef modal(FValue label, std::uint8_t arity, EdgeRef a = {}, EdgeRef b = {},
                  std::optional<EdgeRef> hint = std::nullopt);

    const FormulaNode& node(NodeId id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t edge_count() const;

    // Conjuncts reached through non-negated And edges, left to right.
    std::vector<EdgeRef> conjuncts(EdgeRef e) const;

private:
    std::vector<FormulaNode> nodes_;
};

enum class BetaStyle : std::uint8_t {
    Local,      // beta(B \ S) = beta(B) & ~(conjuncts of delta(S) added since S's compound got its beta)
    Literal,    // beta(B \ S) = beta(B) & ~(delta(S) without the conjuncts it shares with beta(B))
    Unreduced,  // beta(B \ S) = beta(B) & ~delta(S)
};

struct CertOptions {
    BetaStyle beta = BetaStyle::Local;
    // Check every delta and beta by model checking after each split (small inputs only).
    bool check_each_step = false;
};

struct CertCounters {
    std::size_t allocations = 0;   // arena nodes created by the builder
    std::size_t split_events = 0;  // child records processed
    std::size_t splits = 0;        // trace split entries processed
};

struct CertificateSet {
    FormulaDag dag;
    std::vector<EdgeRef> delta;           // per final block
    std::vector<EdgeRef> beta;            // per compound; empty for cancellative certificates
    std::vector<std::uint32_t> block_of;  // final partition
    bool cancellative = false;
    CertCounters counters;

    std::size_t block_count() const { return delta.size(); }
};

CertificateSet build_certificates(const Coalgebra& c, const RefinementTrace& trace, CertOptions opts = {});
CertificateSet build_certificates_cancellative(const Coalgebra& c, const RefinementTrace& trace,
                                               CertOptions opts = {});
// Dispatches on trace.mode; naive traces use the generic builder.
CertificateSet certify(const Coalgebra& c, const RefinementTrace& trace, CertOptions opts = {});

// Formula true at x and false at y, or nothing when x and y share a block. Verified by evaluation.
std::optional<EdgeRef> distinguish(StateId x, StateId y, const CertificateSet& certs, const Coalgebra& c);

struct DagSize {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t height = 0;  // modal depth
};

// Whole arena.
DagSize dag_size(const FormulaDag& dag);
// Nodes reachable from the given roots.
DagSize dag_size(const FormulaDag& dag, const std::vector<EdgeRef>& roots);
// Node count of the fully expanded term, saturating at UINT64_MAX.
std::uint64_t tree_size(const FormulaDag& dag, EdgeRef e);
std::size_t modal_depth(const FormulaDag& dag, EdgeRef e);

// Text forms. Listing: one `#k := ...` line per reachable node, children first.
std::string format_node(const FormulaDag& dag, NodeId id, const FunctorExpr& f);
std::string format_listing(const FormulaDag& dag, const std::vector<EdgeRef>& roots, const FunctorExpr& f);
std::string format_ref(EdgeRef e);
// Fully expanded formula; throws InputError if the expansion exceeds `limit` nodes.
std::string format_expanded(const FormulaDag& dag, EdgeRef e, const FunctorExpr& f, std::size_t limit = 100000);

// Parses `true`, `~p`, `(p & q)`, `(p | q)`, `<V>`, `<V>(p)`, `<V>(p, q)` into dag.
EdgeRef parse_formula(std::string_view text, FormulaDag& dag, const FunctorExpr& f);

// Certificate file: functor, block table, shared listing.
std::string format_certificates(const CertificateSet& certs, const Coalgebra& c,
                                const std::vector<bool>* visible = nullptr);

}  // namespace cocert
