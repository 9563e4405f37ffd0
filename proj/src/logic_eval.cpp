#include "cocert/logic_eval.hpp"

#include <bit>

namespace cocert {

using NK = FormulaNode::Kind;

Extension::Extension(std::size_t n, bool full) : n_(n), w_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) { trim(); }

void Extension::trim() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t Extension::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

void Extension::complement() {
    for (auto& w : w_) w = ~w;
    trim();
}

Extension& Extension::operator&=(const Extension& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

std::vector<StateId> Extension::states() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < n_; ++s)
        if (test(s)) out.push_back(s);
    return out;
}

namespace {

Extension apply_edge(const Extension& base, bool neg) {
    Extension e = base;
    if (neg) e.complement();
    return e;
}

Extension modal_ext(const FormulaNode& n, const Coalgebra& c, const Extension& a, const Extension& b) {
    Extension out(c.n());
    for (StateId x = 0; x < c.n(); ++x) {
        FValue v;
        switch (n.arity) {
        case 0: v = terminal_value(c.functor, c.structure[x]); break;
        case 1: v = apply_coloring(c.functor, c.structure[x], 2, [&](StateId y) { return a.test(y) ? 1U : 0U; }); break;
        default:
            v = apply_coloring(c.functor, c.structure[x], 3, [&](StateId y) -> Colour {
                if (!b.test(y)) return 0;
                return a.test(y) ? 2 : 1;
            });
        }
        if (v == n.label) out.set(x);
    }
    return out;
}

}  // namespace

Evaluator::Evaluator(const FormulaDag& dag, const Coalgebra& c)
    : dag_(dag), c_(c), memo_(dag.size()), done_(dag.size(), false) {}

const Extension& Evaluator::node(NodeId root) {
    // Iterative post-order so deep certificate chains do not exhaust the stack.
    std::vector<std::pair<NodeId, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        if (done_[id]) continue;
        const auto& n = dag_.node(id);
        if (!expanded) {
            stack.emplace_back(id, true);
            for (std::uint8_t i = 0; i < n.arity; ++i)
                if (!done_[n.args[i].id]) stack.emplace_back(n.args[i].id, false);
            continue;
        }
        switch (n.kind) {
        case NK::Top: memo_[id] = Extension(c_.n(), true); break;
        case NK::And: {
            Extension e = apply_edge(memo_[n.args[0].id], n.args[0].neg);
            e &= apply_edge(memo_[n.args[1].id], n.args[1].neg);
            memo_[id] = std::move(e);
            break;
        }
        case NK::Modal: {
            Extension a = n.arity > 0 ? apply_edge(memo_[n.args[0].id], n.args[0].neg) : Extension();
            Extension b = n.arity > 1 ? apply_edge(memo_[n.args[1].id], n.args[1].neg) : Extension();
            memo_[id] = modal_ext(n, c_, a, b);
            break;
        }
        }
        done_[id] = true;
    }
    return memo_[root];
}

Extension Evaluator::eval(EdgeRef e) {
    if (dag_.size() > memo_.size()) {
        memo_.resize(dag_.size());
        done_.resize(dag_.size(), false);
    }
    if (contains_composite(c_.functor)) throw IncompatibleError("evaluate over the desugared coalgebra");
    return apply_edge(node(e.id), e.neg);
}

Extension eval(EdgeRef e, const FormulaDag& dag, const Coalgebra& c) { return Evaluator(dag, c).eval(e); }

Extension eval_unshared(EdgeRef e, const FormulaDag& dag, const Coalgebra& c) {
    const auto& n = dag.node(e.id);
    Extension out;
    switch (n.kind) {
    case NK::Top: out = Extension(c.n(), true); break;
    case NK::And:
        out = eval_unshared(n.args[0], dag, c);
        out &= eval_unshared(n.args[1], dag, c);
        break;
    case NK::Modal: {
        Extension a = n.arity > 0 ? eval_unshared(n.args[0], dag, c) : Extension();
        Extension b = n.arity > 1 ? eval_unshared(n.args[1], dag, c) : Extension();
        out = modal_ext(n, c, a, b);
        break;
    }
    }
    if (e.neg) out.complement();
    return out;
}

CertCheckReport check_certificates(const CertificateSet& certs, const Coalgebra& c) {
    CertCheckReport r;
    Evaluator ev(certs.dag, c);
    std::vector<Extension> want(certs.block_count(), Extension(c.n()));
    for (StateId s = 0; s < c.n(); ++s) want[certs.block_of[s]].set(s);
    for (std::uint32_t b = 0; b < certs.block_count(); ++b) {
        Extension got = ev.eval(certs.delta[b]);
        if (got != want[b]) r.mismatches.push_back({b, want[b].states(), got.states()});
    }
    return r;
}

FormulaSampler::FormulaSampler(const Coalgebra& c, std::uint64_t seed, std::size_t max_depth)
    : c_(c), rng_(seed), max_depth_(max_depth) {}

EdgeRef FormulaSampler::sample(FormulaDag& dag) { return sample_at(dag, max_depth_); }

EdgeRef FormulaSampler::sample_at(FormulaDag& dag, std::size_t depth) {
    if (depth == 0 || c_.n() == 0) return dag.top();
    std::uniform_int_distribution<int> pick(0, 9);
    int k = pick(rng_);
    if (k < 2) return !sample_at(dag, depth - 1);
    if (k < 4) {
        EdgeRef a = sample_at(dag, depth - 1);
        return dag.conj(a, sample_at(dag, depth - 1));
    }
    // Modal node labelled by the value of a random state, so that the formula is often satisfiable.
    std::uint8_t arity = static_cast<std::uint8_t>(k % 3);
    EdgeRef a = arity > 0 ? sample_at(dag, depth - 1) : dag.top();
    EdgeRef b = arity > 1 ? sample_at(dag, depth - 1) : dag.top();
    std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(c_.n() - 1));
    StateId x = st(rng_);
    FValue v;
    if (arity == 0) {
        v = terminal_value(c_.functor, c_.structure[x]);
    } else {
        Extension ea = eval(a, dag, c_);
        Extension eb = arity > 1 ? eval(b, dag, c_) : Extension(c_.n(), true);
        if (arity == 1)
            v = apply_coloring(c_.functor, c_.structure[x], 2, [&](StateId y) { return ea.test(y) ? 1U : 0U; });
        else
            v = apply_coloring(c_.functor, c_.structure[x], 3, [&](StateId y) -> Colour {
                if (!eb.test(y)) return 0;
                return ea.test(y) ? 2 : 1;
            });
    }
    return dag.modal(std::move(v), arity, a, b);
}

AdequacyReport adequacy_probe(const Coalgebra& c, const std::vector<std::pair<StateId, StateId>>& pairs,
                              FormulaSampler& sampler, std::size_t samples) {
    AdequacyReport r;
    FormulaDag dag;
    for (std::size_t i = 0; i < samples; ++i) {
        EdgeRef phi = sampler.sample(dag);
        Extension e = eval(phi, dag, c);
        for (auto [x, y] : pairs) {
            ++r.checked;
            if (e.test(x) != e.test(y))
                r.violations.push_back({x, y, format_expanded(dag, phi, c.functor, 1U << 20)});
        }
    }
    return r;
}

}  // namespace cocert
