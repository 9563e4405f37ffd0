#include "cocert/coalgebra.hpp"

#include <map>
#include <numeric>

namespace cocert {

using FK = FunctorExpr::Kind;
using TK = Term::Kind;

std::optional<StateId> Coalgebra::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

StateId Coalgebra::state(std::string_view name) const {
    auto s = find(name);
    if (!s) throw InputError("unknown state '" + std::string(name) + "'");
    return *s;
}

FValue f_apply_coloring(const FunctorExpr& f, const Term& t, const Coloring& col) {
    return apply_coloring(f, t, col.k, [&](StateId s) { return col.colour[s]; });
}

FValue terminal_value(const FunctorExpr& f, const Term& t) {
    return apply_coloring(f, t, 1, [](StateId) { return Colour{0}; });
}

std::size_t count_occurrences(const Term& t) {
    if (t.kind == TK::State) return 1;
    std::size_t n = 0;
    for (const auto& it : t.items) n += count_occurrences(it);
    return n;
}

namespace {

int compare_terms(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.items.size(); ++i)
        if (int c = compare_terms(a.items[i], b.items[i])) return c;
    for (std::size_t i = 0; i < a.weights.size() && i < b.weights.size(); ++i)
        if (a.weights[i] != b.weights[i]) return a.weights[i] < b.weights[i] ? -1 : 1;
    return 0;
}

// Collection whose items are inner-functor values: sort, then drop or merge equal items.
void merge_nested(Term& t) {
    std::vector<std::size_t> order(t.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return compare_terms(t.items[a], t.items[b]) < 0; });
    bool weighted = t.kind == TK::Weighted;
    std::vector<Term> items;
    std::vector<Rational> weights;
    for (std::size_t i : order) {
        if (!items.empty() && compare_terms(items.back(), t.items[i]) == 0) {
            if (weighted) weights.back() += t.weights[i];
            continue;
        }
        items.push_back(std::move(t.items[i]));
        if (weighted) weights.push_back(t.weights[i]);
    }
    t.items.clear();
    t.weights.clear();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (weighted && weights[i].is_zero()) continue;
        t.items.push_back(std::move(items[i]));
        if (weighted) t.weights.push_back(weights[i]);
    }
}

// Chain-aware walk: level indexes into the composite chain, the last level holds states.
void canonicalize_at(Term& t, const std::vector<FunctorExpr>& chain, std::size_t level, const FunctorExpr& f) {
    bool last = level + 1 == chain.size();
    auto leaf = [&](Term& x) {
        if (!last) canonicalize_at(x, chain, level + 1, chain[level + 1]);
    };
    switch (f.kind) {
    case FK::Identity: leaf(t); return;
    case FK::Constant: return;
    case FK::Powerset:
    case FK::Monoid:
    case FK::Distribution:
        if (!last) {
            for (auto& it : t.items) leaf(it);
            merge_nested(t);
            return;
        }
        if (t.kind == TK::Set) {
            std::sort(t.items.begin(), t.items.end(), [](const Term& a, const Term& b) { return a.tag < b.tag; });
            t.items.erase(std::unique(t.items.begin(), t.items.end(),
                                      [](const Term& a, const Term& b) { return a.tag == b.tag; }),
                          t.items.end());
        } else {
            std::map<StateId, Rational> acc;
            for (std::size_t i = 0; i < t.items.size(); ++i) acc[t.items[i].tag] += t.weights[i];
            t.items.clear();
            t.weights.clear();
            for (auto& [s, w] : acc) {
                if (w.is_zero()) continue;
                t.items.push_back(Term::state(s));
                t.weights.push_back(w);
            }
        }
        return;
    case FK::Signature:
        for (auto& it : t.items) leaf(it);
        return;
    case FK::Product:
        for (std::size_t i = 0; i < t.items.size(); ++i) canonicalize_at(t.items[i], chain, level, f.children[i]);
        return;
    case FK::Exponent:
        for (auto& it : t.items) canonicalize_at(it, chain, level, f.children[0]);
        return;
    case FK::Coproduct: canonicalize_at(t.items[0], chain, level, f.children[t.tag]); return;
    case FK::Composite: return;
    }
}

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

void check_at(const Term& t, const std::vector<FunctorExpr>& chain, std::size_t level, const FunctorExpr& f,
              std::size_t n) {
    bool last = level + 1 == chain.size();
    auto leaf = [&](const Term& x) {
        if (last) {
            if (x.kind != TK::State) bad("expected a state reference");
            if (x.tag >= n) bad("state id " + std::to_string(x.tag) + " out of range");
        } else {
            check_at(x, chain, level + 1, chain[level + 1], n);
        }
    };
    switch (f.kind) {
    case FK::Identity: leaf(t); return;
    case FK::Constant:
        if (t.kind != TK::Atom || t.tag >= f.names.size()) bad("expected an atom of " + to_string(f));
        return;
    case FK::Powerset:
    case FK::Monoid:
    case FK::Distribution: {
        if (f.is_set_like()) {
            if (t.kind != TK::Set) bad("expected a set for " + to_string(f));
        } else {
            if (t.kind != TK::Weighted || t.weights.size() != t.items.size()) bad("expected weights for " + to_string(f));
            Rational sum;
            for (const auto& w : t.weights) {
                if (w.is_zero()) bad("zero weight in encoding");
                if (f.kind == FK::Monoid && f.monoid != MonoidKind::Real && !w.is_integer()) bad("non-integer weight");
                if ((f.kind == FK::Distribution || f.monoid == MonoidKind::Nat) && w.sign() < 0) bad("negative weight");
                sum += w;
            }
            if (f.kind == FK::Distribution && sum != Rational(1)) bad("distribution weights sum to " + sum.str());
        }
        for (const auto& it : t.items) leaf(it);
        return;
    }
    case FK::Signature:
        if (t.kind != TK::Op || t.tag >= f.names.size()) bad("expected an operation of " + to_string(f));
        if (static_cast<int>(t.items.size()) != f.arities[t.tag]) bad("wrong arity for '" + f.names[t.tag] + "'");
        for (const auto& it : t.items) leaf(it);
        return;
    case FK::Product:
        if (t.kind != TK::Tuple || t.items.size() != f.children.size()) bad("expected a tuple for " + to_string(f));
        for (std::size_t i = 0; i < t.items.size(); ++i) check_at(t.items[i], chain, level, f.children[i], n);
        return;
    case FK::Exponent:
        if (t.kind != TK::Tuple || t.items.size() != f.names.size()) bad("expected a labelled tuple for " + to_string(f));
        for (const auto& it : t.items) check_at(it, chain, level, f.children[0], n);
        return;
    case FK::Coproduct:
        if (t.kind != TK::Inj || t.tag >= f.children.size() || t.items.size() != 1)
            bad("expected an injection for " + to_string(f));
        check_at(t.items[0], chain, level, f.children[t.tag], n);
        return;
    case FK::Composite: bad("nested composite inside a functor is not supported");
    }
}

Term map_at(const Term& t, const FunctorExpr& f, const std::vector<StateId>& r) {
    Term out = t;
    struct Walk {
        const std::vector<StateId>& r;
        void operator()(Term& x) const {
            if (x.kind == TK::State) {
                x.tag = r.at(x.tag);
                return;
            }
            for (auto& it : x.items) (*this)(it);
        }
    };
    Walk{r}(out);
    canonicalize(out, f);
    return out;
}

struct Lifter {
    const std::vector<FunctorExpr>& chain;
    Coalgebra& out;
    std::vector<bool>& original;
    std::string owner;
    std::size_t counter = 0;

    // Rewrites a term at `level`, replacing inner values by fresh auxiliary states.
    Term lift(const Term& t, std::size_t level, const FunctorExpr& f) {
        bool last = level + 1 == chain.size();
        auto leaf = [&](const Term& x) -> Term {
            if (last) return x;
            Term inner = lift(x, level + 1, chain[level + 1]);
            auto id = static_cast<StateId>(out.names.size());
            out.names.push_back(owner + "'" + std::to_string(++counter));
            out.structure.push_back(Term::inj(static_cast<std::uint32_t>(level + 1), std::move(inner)));
            original.push_back(false);
            return Term::state(id);
        };
        Term r = t;
        switch (f.kind) {
        case FK::Identity: return leaf(t);
        case FK::Constant: return r;
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution:
        case FK::Signature:
            for (std::size_t i = 0; i < t.items.size(); ++i) r.items[i] = leaf(t.items[i]);
            return r;
        case FK::Product:
            for (std::size_t i = 0; i < t.items.size(); ++i) r.items[i] = lift(t.items[i], level, f.children[i]);
            return r;
        case FK::Exponent:
            for (std::size_t i = 0; i < t.items.size(); ++i) r.items[i] = lift(t.items[i], level, f.children[0]);
            return r;
        case FK::Coproduct: r.items[0] = lift(t.items[0], level, f.children[t.tag]); return r;
        case FK::Composite: break;
        }
        return r;
    }
};

}  // namespace

void canonicalize(Term& t, const FunctorExpr& f) {
    auto chain = composite_chain(f);
    canonicalize_at(t, chain, 0, chain[0]);
}

Term map_states(const Term& t, const FunctorExpr& f, const std::vector<StateId>& r) { return map_at(t, f, r); }

void validate(const Coalgebra& c) {
    if (c.structure.size() != c.names.size()) bad("structure/state count mismatch");
    auto chain = composite_chain(c.functor);
    for (const auto& part : chain)
        if (contains_composite(part)) bad("nested composite inside a functor is not supported");
    for (std::size_t s = 0; s < c.structure.size(); ++s) {
        try {
            check_at(c.structure[s], chain, 0, chain[0], c.n());
        } catch (const InputError& e) {
            throw InputError("state '" + c.names[s] + "': " + e.what());
        }
    }
}

void recount(Coalgebra& c) {
    c.m = 0;
    for (const auto& t : c.structure) c.m += count_occurrences(t);
}

Desugared desugar_composite(const Coalgebra& c) {
    Desugared d;
    auto chain = composite_chain(c.functor);
    d.original_count = c.n();
    if (chain.size() == 1) {
        d.coalgebra = c;
        d.original.assign(c.n(), true);
        return d;
    }
    Coalgebra& out = d.coalgebra;
    out.functor = FunctorExpr::coproduct(chain);
    out.names = c.names;
    out.structure.resize(c.n());
    d.original.assign(c.n(), true);
    for (std::size_t s = 0; s < c.n(); ++s) {
        Lifter lifter{chain, out, d.original, c.names[s]};
        Term lifted = lifter.lift(c.structure[s], 0, chain[0]);
        out.structure[s] = Term::inj(0, std::move(lifted));
    }
    for (auto& t : out.structure) canonicalize(t, out.functor);
    recount(out);
    return d;
}

Coalgebra quotient(const Coalgebra& c, const std::vector<std::uint32_t>& block_of) {
    std::uint32_t blocks = 0;
    for (auto b : block_of) blocks = std::max(blocks, b + 1);
    // Renumber blocks by least member.
    std::vector<std::uint32_t> order(blocks, UINT32_MAX);
    std::vector<StateId> rep(blocks, 0);
    std::uint32_t next = 0;
    for (StateId s = 0; s < c.n(); ++s) {
        auto b = block_of[s];
        if (order[b] == UINT32_MAX) {
            order[b] = next++;
            rep[order[b]] = s;
        }
    }
    std::vector<StateId> r(c.n());
    for (StateId s = 0; s < c.n(); ++s) r[s] = order[block_of[s]];
    Coalgebra q;
    q.functor = c.functor;
    for (std::uint32_t b = 0; b < next; ++b) {
        q.names.push_back(c.names[rep[b]]);
        q.structure.push_back(map_states(c.structure[rep[b]], c.functor, r));
    }
    recount(q);
    return q;
}

}  // namespace cocert
