#include "cocert/certdag.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "cocert/logic_eval.hpp"

namespace cocert {

using NK = FormulaNode::Kind;

FormulaDag::FormulaDag() { nodes_.push_back(FormulaNode{}); }

EdgeRef FormulaDag::conj(EdgeRef a, EdgeRef b) {
    if (a == top()) return b;
    if (b == top()) return a;
    FormulaNode n;
    n.kind = NK::And;
    n.arity = 2;
    n.args[0] = a;
    n.args[1] = b;
    nodes_.push_back(std::move(n));
    return {static_cast<NodeId>(nodes_.size() - 1), false};
}

EdgeRef FormulaDag::modal(FValue label, std::uint8_t arity, EdgeRef a, EdgeRef b, std::optional<EdgeRef> hint) {
    if (arity > 2) throw InputError("modal arity must be 0, 1 or 2");
    FormulaNode n;
    n.kind = NK::Modal;
    n.label = std::move(label);
    n.arity = arity;
    n.args[0] = a;
    n.args[1] = b;
    n.hint = hint;
    nodes_.push_back(std::move(n));
    return {static_cast<NodeId>(nodes_.size() - 1), false};
}

std::size_t FormulaDag::edge_count() const {
    std::size_t e = 0;
    for (const auto& n : nodes_) e += n.arity;
    return e;
}

std::vector<EdgeRef> FormulaDag::conjuncts(EdgeRef e) const {
    std::vector<EdgeRef> out;
    std::vector<EdgeRef> stack{e};
    while (!stack.empty()) {
        EdgeRef r = stack.back();
        stack.pop_back();
        const auto& n = nodes_[r.id];
        if (!r.neg && n.kind == NK::And) {
            stack.push_back(n.args[1]);
            stack.push_back(n.args[0]);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

namespace {

// Replays the trace alongside the builder so that each step can be model checked.
struct StepChecker {
    const Coalgebra& c;
    const FormulaDag& dag;
    RefinablePartition part;
    std::vector<CompoundId> compound_of;
    std::size_t compounds = 1;

    StepChecker(const Coalgebra& coalg, const FormulaDag& d, const RefinementTrace& trace)
        : c(coalg), dag(d), part(RefinablePartition::from_assignment(trace.init_block_of)) {
        compound_of.assign(part.block_count(), 0);
    }

    void apply(const TraceSplit& ev) {
        compound_of[ev.splitter] = ev.splitter_compound;
        compounds = std::max<std::size_t>(compounds, ev.splitter_compound + 1);
        for (const auto& ref : ev.refined) {
            for (std::size_t i = 1; i < ref.children.size(); ++i) {
                for (StateId s : ref.children[i].moved) part.mark(s);
                auto nb = part.split_marked(ref.parent);
                if (!nb || *nb != ref.children[i].id) throw VerificationError("certificate builder: trace mismatch");
                compound_of.resize(*nb + 1);
                compound_of[*nb] = compound_of[ref.parent];
            }
        }
    }

    void check(const std::vector<EdgeRef>& delta, const std::vector<EdgeRef>& beta) {
        Evaluator ev(dag, c);
        for (BlockId b = 0; b < part.block_count(); ++b) {
            Extension want(c.n());
            for (StateId s : part.members(b)) want.set(s);
            if (ev.eval(delta[b]) != want) throw VerificationError("delta of block " + std::to_string(b) + " is not a certificate");
        }
        if (beta.empty()) return;
        std::vector<Extension> want(compounds, Extension(c.n()));
        for (StateId s = 0; s < c.n(); ++s) want[compound_of[part.block_of(s)]].set(s);
        for (CompoundId k = 0; k < compounds; ++k)
            if (ev.eval(beta[k]) != want[k]) throw VerificationError("beta of compound " + std::to_string(k) + " is wrong");
    }
};

void check_trace_shape(const Coalgebra& c, const RefinementTrace& trace) {
    if (trace.n != c.n() || trace.init_block_of.size() != c.n())
        throw VerificationError("trace does not belong to this coalgebra");
}

}  // namespace

CertificateSet build_certificates(const Coalgebra& c, const RefinementTrace& trace, CertOptions opts) {
    check_trace_shape(c, trace);
    CertificateSet out;
    FormulaDag& dag = out.dag;
    std::size_t before = dag.size();
    std::vector<EdgeRef>& delta = out.delta;
    std::vector<std::optional<EdgeRef>> local;
    std::vector<EdgeRef>& beta = out.beta;

    for (const auto& v : trace.init_values) {
        EdgeRef d = dag.modal(v, 0);
        delta.push_back(d);
        local.push_back(d);
    }
    if (c.n() > 0) beta.push_back(dag.top());
    std::optional<StepChecker> checker;
    if (opts.check_each_step) {
        checker.emplace(c, dag, trace);
        checker->check(delta, beta);
    }

    for (const auto& ev : trace.splits) {
        ++out.counters.splits;
        EdgeRef dS = delta.at(ev.splitter);
        EdgeRef bB = beta.at(ev.compound);
        std::optional<EdgeRef> lS = local[ev.splitter];
        EdgeRef removed = dS;
        switch (opts.beta) {
        case BetaStyle::Local:
            if (!lS) throw VerificationError("splitter has no local conjuncts");
            removed = *lS;
            break;
        case BetaStyle::Literal: {
            auto shared = dag.conjuncts(bB);
            std::unordered_set<std::uint64_t> seen;
            for (auto r : shared) seen.insert(std::uint64_t{r.id} << 1 | r.neg);
            std::optional<EdgeRef> rest;
            for (auto r : dag.conjuncts(dS)) {
                if (seen.count(std::uint64_t{r.id} << 1 | r.neg)) continue;
                rest = rest ? dag.conj(*rest, r) : r;
            }
            removed = rest ? *rest : dag.top();
            break;
        }
        case BetaStyle::Unreduced: break;
        }
        if (beta.size() <= ev.splitter_compound) beta.resize(ev.splitter_compound + 1);
        beta[ev.splitter_compound] = dS;
        beta[ev.compound] = dag.conj(bB, !removed);
        local[ev.splitter].reset();

        for (const auto& ref : ev.refined) {
            EdgeRef d_old = delta.at(ref.parent);
            std::optional<EdgeRef> l_old = local[ref.parent];
            for (const auto& ch : ref.children) {
                EdgeRef m = dag.modal(ch.value, 2, dS, bB, removed);
                if (delta.size() <= ch.id) {
                    delta.resize(ch.id + 1);
                    local.resize(ch.id + 1);
                }
                delta[ch.id] = dag.conj(d_old, m);
                local[ch.id] = l_old ? dag.conj(*l_old, m) : m;
                ++out.counters.split_events;
            }
        }
        if (checker) {
            checker->apply(ev);
            checker->check(delta, beta);
        }
    }
    out.counters.allocations = dag.size() - before;
    auto final_part = replay(trace);
    out.block_of = final_part.assignment();
    if (delta.size() != final_part.block_count()) throw VerificationError("certificate count differs from block count");
    return out;
}

CertificateSet build_certificates_cancellative(const Coalgebra& c, const RefinementTrace& trace, CertOptions opts) {
    check_trace_shape(c, trace);
    if (!is_cancellative(c.functor))
        throw IncompatibleError("functor " + to_string(c.functor) + " is not cancellative");
    if (trace.mode != RefineMode::Cancellative)
        throw IncompatibleError("cancellative certificates need a trace from cancellative refinement");
    CertificateSet out;
    out.cancellative = true;
    FormulaDag& dag = out.dag;
    std::size_t before = dag.size();
    auto& delta = out.delta;
    for (const auto& v : trace.init_values) delta.push_back(dag.modal(v, 0));
    std::optional<StepChecker> checker;
    if (opts.check_each_step) {
        checker.emplace(c, dag, trace);
        checker->check(delta, {});
    }
    for (const auto& ev : trace.splits) {
        ++out.counters.splits;
        EdgeRef dS = delta.at(ev.splitter);
        for (const auto& ref : ev.refined) {
            EdgeRef d_old = delta.at(ref.parent);
            for (const auto& ch : ref.children) {
                EdgeRef m = dag.modal(ch.value, 1, dS);
                if (delta.size() <= ch.id) delta.resize(ch.id + 1);
                delta[ch.id] = dag.conj(d_old, m);
                ++out.counters.split_events;
            }
        }
        if (checker) {
            checker->apply(ev);
            checker->check(delta, {});
        }
    }
    out.counters.allocations = dag.size() - before;
    auto final_part = replay(trace);
    out.block_of = final_part.assignment();
    if (delta.size() != final_part.block_count()) throw VerificationError("certificate count differs from block count");
    return out;
}

CertificateSet certify(const Coalgebra& c, const RefinementTrace& trace, CertOptions opts) {
    if (trace.mode == RefineMode::Cancellative) return build_certificates_cancellative(c, trace, opts);
    return build_certificates(c, trace, opts);
}

std::optional<EdgeRef> distinguish(StateId x, StateId y, const CertificateSet& certs, const Coalgebra& c) {
    if (x >= c.n() || y >= c.n()) throw InputError("state index out of range");
    auto bx = certs.block_of[x], by = certs.block_of[y];
    if (bx == by) return std::nullopt;
    auto cx = certs.dag.conjuncts(certs.delta[bx]);
    auto cy = certs.dag.conjuncts(certs.delta[by]);
    std::size_t i = 0;
    while (i < cx.size() && i < cy.size() && cx[i] == cy[i]) ++i;
    if (i == cx.size()) throw VerificationError("certificate of one block is a prefix of another's");
    EdgeRef phi = cx[i];
    Extension ext = eval(phi, certs.dag, c);
    if (!ext.test(x) || ext.test(y)) throw VerificationError("extracted formula does not separate the states");
    return phi;
}

namespace {

void count_reachable(const FormulaDag& dag, const std::vector<EdgeRef>& roots, std::vector<bool>& seen) {
    std::vector<NodeId> stack;
    for (auto r : roots) stack.push_back(r.id);
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (seen[id]) continue;
        seen[id] = true;
        const auto& n = dag.node(id);
        for (std::uint8_t i = 0; i < n.arity; ++i) stack.push_back(n.args[i].id);
    }
}

std::vector<std::size_t> depths(const FormulaDag& dag) {
    std::vector<std::size_t> d(dag.size(), 0);
    for (NodeId id = 0; id < dag.size(); ++id) {
        const auto& n = dag.node(id);
        std::size_t m = 0;
        for (std::uint8_t i = 0; i < n.arity; ++i) m = std::max(m, d[n.args[i].id]);
        d[id] = m + (n.kind == NK::Modal ? 1 : 0);
    }
    return d;
}

}  // namespace

DagSize dag_size(const FormulaDag& dag) {
    DagSize s;
    s.nodes = dag.size();
    s.edges = dag.edge_count();
    auto d = depths(dag);
    for (auto x : d) s.height = std::max(s.height, x);
    return s;
}

DagSize dag_size(const FormulaDag& dag, const std::vector<EdgeRef>& roots) {
    std::vector<bool> seen(dag.size(), false);
    count_reachable(dag, roots, seen);
    auto d = depths(dag);
    DagSize s;
    for (NodeId id = 0; id < dag.size(); ++id) {
        if (!seen[id]) continue;
        ++s.nodes;
        s.edges += dag.node(id).arity;
        s.height = std::max(s.height, d[id]);
    }
    return s;
}

std::uint64_t tree_size(const FormulaDag& dag, EdgeRef e) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> t(e.id + 1, 0);
    for (NodeId id = 0; id <= e.id; ++id) {
        const auto& n = dag.node(id);
        std::uint64_t s = 1;
        for (std::uint8_t i = 0; i < n.arity; ++i) {
            std::uint64_t a = t[n.args[i].id];
            s = (s > cap - a) ? cap : s + a;
        }
        t[id] = s;
    }
    return t[e.id];
}

std::size_t modal_depth(const FormulaDag& dag, EdgeRef e) {
    std::vector<std::size_t> d(e.id + 1, 0);
    for (NodeId id = 0; id <= e.id; ++id) {
        const auto& n = dag.node(id);
        std::size_t m = 0;
        for (std::uint8_t i = 0; i < n.arity; ++i) m = std::max(m, d[n.args[i].id]);
        d[id] = m + (n.kind == NK::Modal ? 1 : 0);
    }
    return d[e.id];
}

std::string format_ref(EdgeRef e) {
    std::string s = e.neg ? "~" : "";
    return s + (e.id == 0 ? "true" : "#" + std::to_string(e.id));
}

std::string format_node(const FormulaDag& dag, NodeId id, const FunctorExpr& f) {
    const auto& n = dag.node(id);
    switch (n.kind) {
    case NK::Top: return "true";
    case NK::And: return "(" + format_ref(n.args[0]) + " & " + format_ref(n.args[1]) + ")";
    case NK::Modal: {
        std::string s = "<" + to_string(n.label, f) + ">";
        if (n.arity == 1) s += "(" + format_ref(n.args[0]) + ")";
        if (n.arity == 2) s += "(" + format_ref(n.args[0]) + ", " + format_ref(n.args[1]) + ")";
        return s;
    }
    }
    return "?";
}

std::string format_listing(const FormulaDag& dag, const std::vector<EdgeRef>& roots, const FunctorExpr& f) {
    std::vector<bool> seen(dag.size(), false);
    count_reachable(dag, roots, seen);
    std::string out;
    for (NodeId id = 1; id < dag.size(); ++id) {
        if (!seen[id]) continue;
        out += "#" + std::to_string(id) + " := " + format_node(dag, id, f) + "\n";
    }
    return out;
}

namespace {

void expand(const FormulaDag& dag, EdgeRef e, const FunctorExpr& f, std::string& out) {
    if (e.neg) out += "~";
    const auto& n = dag.node(e.id);
    switch (n.kind) {
    case NK::Top: out += "true"; return;
    case NK::And:
        out += "(";
        expand(dag, n.args[0], f, out);
        out += " & ";
        expand(dag, n.args[1], f, out);
        out += ")";
        return;
    case NK::Modal:
        out += "<" + to_string(n.label, f) + ">";
        if (n.arity == 0) return;
        out += "(";
        expand(dag, n.args[0], f, out);
        if (n.arity == 2) {
            out += ", ";
            expand(dag, n.args[1], f, out);
        }
        out += ")";
        return;
    }
}

}  // namespace

std::string format_expanded(const FormulaDag& dag, EdgeRef e, const FunctorExpr& f, std::size_t limit) {
    auto size = tree_size(dag, e);
    if (size > limit)
        throw InputError("expanded formula has " + std::to_string(size) + " nodes, above the limit of " +
                         std::to_string(limit));
    std::string out;
    expand(dag, e, f, out);
    return out;
}

std::string format_certificates(const CertificateSet& certs, const Coalgebra& c, const std::vector<bool>* visible) {
    std::vector<std::vector<StateId>> members(certs.block_count());
    for (StateId s = 0; s < c.n(); ++s)
        if (!visible || (*visible)[s]) members[certs.block_of[s]].push_back(s);
    std::string out = "functor: " + to_string(c.functor) + "\n";
    out += std::string("certificates: ") + (certs.cancellative ? "cancellative" : "generic") + "\n";
    std::vector<EdgeRef> roots;
    std::string table;
    std::size_t shown = 0;
    for (BlockId b = 0; b < certs.block_count(); ++b) {
        if (members[b].empty()) continue;
        table += "block " + std::to_string(shown++) + " {";
        for (std::size_t i = 0; i < members[b].size(); ++i) table += (i ? ", " : "") + c.names[members[b][i]];
        table += "} := " + format_ref(certs.delta[b]) + "\n";
        roots.push_back(certs.delta[b]);
    }
    out += "blocks: " + std::to_string(shown) + "\n" + table + "dag:\n" + format_listing(certs.dag, roots, c.functor);
    return out;
}

}  // namespace cocert
