#include "cocert/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

namespace cocert {

using FK = FunctorExpr::Kind;

namespace {

void term_key(const Term& t, std::string& out) {
    out += static_cast<char>('A' + static_cast<int>(t.kind));
    out += std::to_string(t.tag);
    if (!t.items.empty()) {
        out += '[';
        for (std::size_t i = 0; i < t.items.size(); ++i) {
            term_key(t.items[i], out);
            if (i < t.weights.size()) out += ':' + t.weights[i].str();
            out += ',';
        }
        out += ']';
    }
}

template <class Key>
std::vector<std::uint32_t> group(const std::vector<std::uint32_t>& block, std::vector<Key>& keys) {
    std::size_t n = block.size();
    std::vector<StateId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](StateId a, StateId b) {
        if (block[a] != block[b]) return block[a] < block[b];
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return a < b;
    });
    std::vector<std::uint32_t> next(n, 0);
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (block[order[i]] != block[order[i - 1]] || keys[order[i]] != keys[order[i - 1]])) ++id;
        next[order[i]] = id;
    }
    // Renumber by first occurrence.
    std::vector<std::uint32_t> rename(n, UINT32_MAX), out(n);
    std::uint32_t fresh = 0;
    for (StateId s = 0; s < n; ++s) {
        if (rename[next[s]] == UINT32_MAX) rename[next[s]] = fresh++;
        out[s] = rename[next[s]];
    }
    return out;
}

std::size_t block_count(const std::vector<std::uint32_t>& b) {
    std::uint32_t m = 0;
    for (auto x : b) m = std::max(m, x + 1);
    return m;
}

}  // namespace

std::vector<std::uint32_t> naive_bisimilarity(const Coalgebra& c, std::size_t* rounds) {
    std::size_t n = c.n();
    std::vector<std::uint32_t> block(n, 0);
    bool composite = contains_composite(c.functor);
    std::size_t count = n ? 1 : 0;
    std::size_t r = 0;
    while (true) {
        ++r;
        std::vector<std::uint32_t> next;
        if (composite) {
            std::vector<std::string> keys(n);
            for (StateId x = 0; x < n; ++x) term_key(map_states(c.structure[x], c.functor, block), keys[x]);
            next = group(block, keys);
        } else {
            Coloring col{static_cast<std::uint32_t>(std::max<std::size_t>(count, 1)), block};
            std::vector<FValue> keys(n);
            for (StateId x = 0; x < n; ++x) keys[x] = f_apply_coloring(c.functor, c.structure[x], col);
            next = group(block, keys);
        }
        std::size_t nc = block_count(next);
        block = std::move(next);
        if (nc == count) break;
        count = nc;
    }
    if (rounds) *rounds = r;
    return block;
}

namespace {

class Generator {
public:
    explicit Generator(const GeneratorSpec& spec)
        : spec_(spec), chain_(composite_chain(spec.functor)), rng_(spec.seed) {}

    Coalgebra run() {
        Coalgebra c;
        c.functor = spec_.functor;
        if (spec_.classes > 0 && spec_.classes < spec_.n) return with_copies();
        n_ = spec_.n;
        for (std::size_t i = 0; i < n_; ++i) c.names.push_back("s" + std::to_string(i));
        for (std::size_t i = 0; i < n_; ++i) {
            Term t = term(chain_[0], 0);
            canonicalize(t, c.functor);
            c.structure.push_back(std::move(t));
        }
        recount(c);
        validate(c);
        return c;
    }

private:
    bool last(std::size_t level) const { return level + 1 == chain_.size(); }

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    StateId state() { return static_cast<StateId>(uniform(0, n_ - 1)); }

    // k distinct states (Floyd's sampling).
    std::vector<StateId> distinct_states(std::size_t k) {
        k = std::min(k, n_);
        std::unordered_set<StateId> chosen;
        std::vector<StateId> out;
        for (std::size_t j = n_ - k; j < n_; ++j) {
            auto t = static_cast<StateId>(uniform(0, j));
            if (!chosen.insert(t).second) t = static_cast<StateId>(j), chosen.insert(t);
            out.push_back(t);
        }
        return out;
    }

    std::size_t successor_count(std::size_t level) {
        if (!last(level)) return std::binomial_distribution<std::size_t>(3, 0.5)(rng_);
        return std::binomial_distribution<std::size_t>(n_, std::clamp(spec_.density, 0.0, 1.0))(rng_);
    }

    Rational weight(const FunctorExpr& f) {
        auto w = static_cast<std::int64_t>(uniform(1, static_cast<std::size_t>(std::max<std::int64_t>(spec_.max_weight, 1))));
        if (f.kind == FK::Monoid && f.monoid == MonoidKind::Int && uniform(0, 2) == 0) w = -w;
        if (f.kind == FK::Monoid && f.monoid == MonoidKind::Real && uniform(0, 1) == 0)
            return Rational(w) / Rational(static_cast<std::int64_t>(uniform(2, 4)));
        return Rational(w);
    }

    Term leaf(std::size_t level) {
        if (last(level)) return Term::state(state());
        return term(chain_[level + 1], level + 1);
    }

    Term term(const FunctorExpr& f, std::size_t level) {
        switch (f.kind) {
        case FK::Identity: return leaf(level);
        case FK::Constant: return Term::atom(static_cast<std::uint32_t>(uniform(0, f.names.size() - 1)));
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution: {
            std::size_t k = successor_count(level);
            if (f.kind == FK::Distribution && k == 0) k = 1;
            std::vector<Term> items;
            if (last(level)) {
                for (StateId s : distinct_states(k)) items.push_back(Term::state(s));
            } else {
                for (std::size_t i = 0; i < k; ++i) items.push_back(leaf(level));
            }
            if (f.is_set_like()) return Term::set(std::move(items));
            std::vector<Rational> ws;
            for (std::size_t i = 0; i < items.size(); ++i) ws.push_back(weight(f));
            if (f.kind == FK::Distribution) {
                Rational sum;
                for (const auto& w : ws) sum += w;
                for (auto& w : ws) w = w / sum;
            }
            return Term::weighted(std::move(items), std::move(ws));
        }
        case FK::Signature: {
            auto op = static_cast<std::uint32_t>(uniform(0, f.names.size() - 1));
            std::vector<Term> args;
            for (int i = 0; i < f.arities[op]; ++i) args.push_back(leaf(level));
            return Term::op(op, std::move(args));
        }
        case FK::Product: {
            std::vector<Term> items;
            for (const auto& ch : f.children) items.push_back(term(ch, level));
            return Term::tuple(std::move(items));
        }
        case FK::Exponent: {
            std::vector<Term> items;
            for (std::size_t i = 0; i < f.names.size(); ++i) items.push_back(term(f.children[0], level));
            return Term::tuple(std::move(items));
        }
        case FK::Coproduct: {
            auto b = static_cast<std::uint32_t>(uniform(0, f.children.size() - 1));
            return Term::inj(b, term(f.children[b], level));
        }
        case FK::Composite: break;
        }
        throw InputError("nested composite functors are not supported by the generator");
    }

    // Copies: state j behaves like base state j % classes.
    Coalgebra with_copies() {
        GeneratorSpec base_spec = spec_;
        base_spec.n = spec_.classes;
        base_spec.classes = 0;
        Coalgebra base = Generator(base_spec).run();
        n_ = spec_.n;
        k_ = spec_.classes;
        Coalgebra c;
        c.functor = spec_.functor;
        for (std::size_t i = 0; i < n_; ++i) c.names.push_back("s" + std::to_string(i));
        for (std::size_t j = 0; j < n_; ++j) {
            Term t = spread(base.structure[j % k_], chain_[0], 0);
            canonicalize(t, c.functor);
            c.structure.push_back(std::move(t));
        }
        recount(c);
        validate(c);
        return c;
    }

    std::vector<StateId> members(StateId b) const {
        std::vector<StateId> out;
        for (std::size_t s = b; s < n_; s += k_) out.push_back(static_cast<StateId>(s));
        return out;
    }

    StateId copy_of(StateId b) {
        auto m = members(b);
        return m[uniform(0, m.size() - 1)];
    }

    Term spread_leaf(const Term& t, std::size_t level) {
        if (last(level)) return Term::state(copy_of(t.tag));
        return spread(t, chain_[level + 1], level + 1);
    }

    Term spread(const Term& t, const FunctorExpr& f, std::size_t level) {
        switch (f.kind) {
        case FK::Identity: return spread_leaf(t, level);
        case FK::Constant: return t;
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution: {
            std::vector<Term> items;
            std::vector<Rational> ws;
            for (std::size_t i = 0; i < t.items.size(); ++i) {
                if (!last(level)) {
                    items.push_back(spread_leaf(t.items[i], level));
                    if (!f.is_set_like()) ws.push_back(t.weights[i]);
                    continue;
                }
                auto m = members(t.items[i].tag);
                std::shuffle(m.begin(), m.end(), rng_);
                if (f.is_set_like()) {
                    std::size_t take = uniform(1, std::min<std::size_t>(m.size(), 3));
                    for (std::size_t j = 0; j < take; ++j) items.push_back(Term::state(m[j]));
                    continue;
                }
                const Rational& w = t.weights[i];
                bool integral = f.kind == FK::Monoid && f.monoid != MonoidKind::Real;
                std::size_t parts = std::min<std::size_t>(m.size(), 2);
                if (integral && (w * w) < Rational(4)) parts = 1;
                parts = uniform(1, parts);
                if (parts == 1) {
                    items.push_back(Term::state(m[0]));
                    ws.push_back(w);
                } else if (integral) {
                    std::int64_t total = std::stoll(w.str());
                    std::int64_t mag = total < 0 ? -total : total;
                    auto a = static_cast<std::int64_t>(uniform(1, static_cast<std::size_t>(mag - 1)));
                    if (total < 0) a = -a;
                    items.push_back(Term::state(m[0]));
                    ws.push_back(Rational(a));
                    items.push_back(Term::state(m[1]));
                    ws.push_back(Rational(total - a));
                } else {
                    Rational frac = Rational(static_cast<std::int64_t>(uniform(1, 3))) / Rational(4);
                    items.push_back(Term::state(m[0]));
                    ws.push_back(w * frac);
                    items.push_back(Term::state(m[1]));
                    ws.push_back(w - w * frac);
                }
            }
            if (f.is_set_like()) return Term::set(std::move(items));
            return Term::weighted(std::move(items), std::move(ws));
        }
        case FK::Signature: {
            std::vector<Term> args;
            for (const auto& a : t.items) args.push_back(spread_leaf(a, level));
            return Term::op(t.tag, std::move(args));
        }
        case FK::Product: {
            std::vector<Term> items;
            for (std::size_t i = 0; i < t.items.size(); ++i) items.push_back(spread(t.items[i], f.children[i], level));
            return Term::tuple(std::move(items));
        }
        case FK::Exponent: {
            std::vector<Term> items;
            for (const auto& it : t.items) items.push_back(spread(it, f.children[0], level));
            return Term::tuple(std::move(items));
        }
        case FK::Coproduct: return Term::inj(t.tag, spread(t.items[0], f.children[t.tag], level));
        case FK::Composite: break;
        }
        throw InputError("nested composite functors are not supported by the generator");
    }

    const GeneratorSpec& spec_;
    std::vector<FunctorExpr> chain_;
    std::mt19937_64 rng_;
    std::size_t n_ = 0;
    std::size_t k_ = 1;
};

}  // namespace

Coalgebra generate(const GeneratorSpec& spec) {
    for (const auto& part : composite_chain(spec.functor))
        if (contains_composite(part)) throw InputError("nested composite functors are not supported by the generator");
    return Generator(spec).run();
}

Coalgebra layered_worstcase(std::size_t k) {
    Coalgebra c;
    c.functor = FunctorExpr::monoid_of(MonoidKind::Real);
    const char* letters = "wxyz";
    for (std::size_t i = 0; i <= k; ++i)
        for (int j = 0; j < 4; ++j) c.names.push_back(std::string(1, letters[j]) + std::to_string(i));
    // Weights into (w, x, y, z) of the layer below.
    static const int rows[4][4] = {{1, 2, 1, 2}, {1, 2, 2, 1}, {2, 1, 1, 2}, {2, 1, 2, 1}};
    for (std::size_t i = 0; i <= k; ++i) {
        for (int j = 0; j < 4; ++j) {
            auto self = static_cast<StateId>(4 * i + j);
            if (i == 0) {
                c.structure.push_back(Term::weighted({Term::state(self)}, {Rational(j + 1)}));
                continue;
            }
            std::vector<Term> items;
            std::vector<Rational> ws;
            for (int t = 0; t < 4; ++t) {
                items.push_back(Term::state(static_cast<StateId>(4 * (i - 1) + t)));
                ws.push_back(Rational(rows[j][t]));
            }
            c.structure.push_back(Term::weighted(std::move(items), std::move(ws)));
        }
    }
    recount(c);
    return c;
}

}  // namespace cocert
