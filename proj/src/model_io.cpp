#include <unordered_map>

#include "cocert/coalgebra.hpp"
#include "scanner.hpp"

namespace cocert {

using FK = FunctorExpr::Kind;
using TK = Term::Kind;

namespace {

class TermParser {
public:
    TermParser(detail::Scanner& s, const std::vector<FunctorExpr>& chain,
               const std::unordered_map<std::string, StateId>& ids)
        : s_(s), chain_(chain), ids_(ids) {}

    Term parse(std::size_t level, const FunctorExpr& f) {
        switch (f.kind) {
        case FK::Identity: return leaf(level);
        case FK::Constant: {
            std::size_t at = s_.pos();
            std::string a = s_.ident("atom");
            for (std::size_t i = 0; i < f.names.size(); ++i)
                if (f.names[i] == a) return Term::atom(static_cast<std::uint32_t>(i));
            s_.fail_at(at, "'" + a + "' is not an atom of " + to_string(f));
        }
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution: return collection(level, f);
        case FK::Signature: {
            std::size_t at = s_.pos();
            std::string op = s_.ident("operation");
            std::size_t idx = f.names.size();
            for (std::size_t i = 0; i < f.names.size(); ++i)
                if (f.names[i] == op) idx = i;
            if (idx == f.names.size()) s_.fail_at(at, "'" + op + "' is not an operation of " + to_string(f));
            std::vector<Term> args;
            if (s_.accept('(')) {
                if (!s_.accept(')')) {
                    do args.push_back(leaf(level));
                    while (s_.accept(','));
                    s_.expect(')');
                }
            }
            if (static_cast<int>(args.size()) != f.arities[idx])
                s_.fail_at(at, "operation '" + op + "' expects " + std::to_string(f.arities[idx]) + " arguments, got " +
                                   std::to_string(args.size()));
            return Term::op(static_cast<std::uint32_t>(idx), std::move(args));
        }
        case FK::Product: {
            s_.expect('(');
            std::vector<Term> items;
            for (std::size_t i = 0; i < f.children.size(); ++i) {
                if (i) s_.expect(',');
                items.push_back(parse(level, f.children[i]));
            }
            s_.expect(')');
            return Term::tuple(std::move(items));
        }
        case FK::Coproduct: {
            std::size_t at = s_.pos();
            std::string tag = s_.peek_ident() ? s_.ident() : "";
            if (tag.size() < 3 || tag.compare(0, 2, "in") != 0 ||
                tag.find_first_not_of("0123456789", 2) != std::string::npos)
                s_.fail_at(at, "expected injection in1..in" + std::to_string(f.children.size()) + " for " + to_string(f));
            unsigned long b = std::stoul(tag.substr(2));
            if (b < 1 || b > f.children.size()) s_.fail_at(at, "injection '" + tag + "' out of range");
            s_.expect('(');
            Term inner = parse(level, f.children[b - 1]);
            s_.expect(')');
            return Term::inj(static_cast<std::uint32_t>(b - 1), std::move(inner));
        }
        case FK::Exponent: {
            std::size_t at0 = s_.pos();
            s_.expect('[');
            std::vector<Term> items(f.names.size());
            std::vector<bool> seen(f.names.size(), false);
            if (!s_.accept(']')) {
                do {
                    std::size_t at = s_.pos();
                    std::string label = s_.ident("label");
                    std::size_t i = 0;
                    while (i < f.names.size() && f.names[i] != label) ++i;
                    if (i == f.names.size()) s_.fail_at(at, "unknown label '" + label + "'");
                    if (seen[i]) s_.fail_at(at, "duplicate label '" + label + "'");
                    seen[i] = true;
                    s_.expect(':');
                    items[i] = parse(level, f.children[0]);
                } while (s_.accept(','));
                s_.expect(']');
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (!seen[i]) s_.fail_at(at0, "missing label '" + f.names[i] + "'");
            return Term::tuple(std::move(items));
        }
        case FK::Composite: s_.fail("nested composite inside a functor is not supported");
        }
        s_.fail("unsupported functor");
    }

private:
    Term leaf(std::size_t level) {
        if (level + 1 < chain_.size()) return parse(level + 1, chain_[level + 1]);
        std::size_t at = s_.pos();
        std::string name = s_.ident("state name");
        auto it = ids_.find(name);
        if (it == ids_.end()) s_.fail_at(at, "undeclared state '" + name + "'");
        return Term::state(it->second);
    }

    Term collection(std::size_t level, const FunctorExpr& f) {
        std::size_t at0 = s_.pos();
        s_.expect('{');
        std::vector<Term> items;
        std::vector<Rational> weights;
        bool set_like = f.is_set_like();
        if (!s_.accept('}')) {
            do {
                Term item = leaf(level);
                bool has_weight = s_.accept(':');
                if (!has_weight && !set_like) s_.fail("expected ':' and a weight" + s_.found());
                if (has_weight) {
                    std::size_t at = s_.pos();
                    std::string num = s_.number();
                    Rational w;
                    try {
                        w = Rational::parse(num);
                    } catch (const std::exception& e) {
                        s_.fail_at(at, std::string("malformed weight: ") + e.what());
                    }
                    if (set_like) {
                        if (w != Rational(0) && w != Rational(1)) s_.fail_at(at, "boolean weight must be 0 or 1");
                        if (w.is_zero()) continue;
                    } else if (f.kind == FK::Monoid) {
                        if (f.monoid != MonoidKind::Real && !w.is_integer())
                            s_.fail_at(at, "weight " + num + " is not an integer");
                        if (f.monoid == MonoidKind::Nat && w.sign() < 0) s_.fail_at(at, "weight " + num + " is negative");
                    } else if (w.sign() < 0) {
                        s_.fail_at(at, "probability " + num + " is negative");
                    }
                    weights.push_back(std::move(w));
                }
                items.push_back(std::move(item));
            } while (s_.accept(','));
            s_.expect('}');
        }
        if (set_like) return Term::set(std::move(items));
        if (f.kind == FK::Distribution) {
            Rational sum;
            for (const auto& w : weights) sum += w;
            if (sum != Rational(1)) s_.fail_at(at0, "distribution weights sum to " + sum.str() + ", not 1");
        }
        return Term::weighted(std::move(items), std::move(weights));
    }

    detail::Scanner& s_;
    const std::vector<FunctorExpr>& chain_;
    const std::unordered_map<std::string, StateId>& ids_;
};

std::string_view strip_comment(std::string_view line) {
    auto h = line.find('#');
    return h == std::string_view::npos ? line : line.substr(0, h);
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; }

std::string join_names(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i];
    }
    return out;
}

struct Printer {
    const Coalgebra& c;
    const std::vector<FunctorExpr>& chain;

    std::string leaf(const Term& t, std::size_t level) const {
        if (level + 1 < chain.size()) return print(t, level + 1, chain[level + 1]);
        return c.names.at(t.tag);
    }

    std::string print(const Term& t, std::size_t level, const FunctorExpr& f) const {
        switch (f.kind) {
        case FK::Identity: return leaf(t, level);
        case FK::Constant: return f.names.at(t.tag);
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution: {
            std::string out = "{";
            for (std::size_t i = 0; i < t.items.size(); ++i) {
                if (i) out += ", ";
                out += leaf(t.items[i], level);
                if (t.kind == TK::Weighted) out += ": " + t.weights[i].str();
            }
            return out + "}";
        }
        case FK::Signature: {
            std::string out = f.names.at(t.tag);
            if (t.items.empty()) return out;
            out += "(";
            for (std::size_t i = 0; i < t.items.size(); ++i) {
                if (i) out += ", ";
                out += leaf(t.items[i], level);
            }
            return out + ")";
        }
        case FK::Product: {
            std::string out = "(";
            for (std::size_t i = 0; i < t.items.size(); ++i) {
                if (i) out += ", ";
                out += print(t.items[i], level, f.children[i]);
            }
            return out + ")";
        }
        case FK::Coproduct:
            return "in" + std::to_string(t.tag + 1) + "(" + print(t.items[0], level, f.children[t.tag]) + ")";
        case FK::Exponent: {
            std::string out = "[";
            for (std::size_t i = 0; i < t.items.size(); ++i) {
                if (i) out += ", ";
                out += f.names[i] + ": " + print(t.items[i], level, f.children[0]);
            }
            return out + "]";
        }
        case FK::Composite: return "?";
        }
        return "?";
    }
};

}  // namespace

Coalgebra parse_coalgebra(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }

    Coalgebra c;
    bool have_functor = false, have_states = false;
    std::vector<FunctorExpr> chain;
    std::unordered_map<std::string, StateId> ids;
    std::vector<bool> defined;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = strip_comment(lines[ln]);
        if (blank(line)) continue;
        std::size_t lineno = ln + 1;
        detail::Scanner s(line, lineno);
        if (!have_functor) {
            if (!s.accept("functor")) s.fail("expected 'functor:' declaration first");
            s.expect(':');
            std::size_t off = s.pos();
            try {
                c.functor = parse_functor(line.substr(off));
            } catch (const ParseError& e) {
                throw ParseError(e.message(), lineno, off + e.column());
            }
            chain = composite_chain(c.functor);
            for (const auto& part : chain)
                if (contains_composite(part)) s.fail("nested composite inside a functor is not supported");
            have_functor = true;
            continue;
        }
        if (!have_states) {
            if (!s.accept("states")) s.fail("expected 'states:' declaration");
            s.expect(':');
            if (!s.at_end()) {
                do {
                    std::size_t at = s.pos();
                    std::string name = s.ident("state name");
                    if (ids.count(name)) s.fail_at(at, "duplicate state '" + name + "'");
                    ids.emplace(name, static_cast<StateId>(c.names.size()));
                    c.names.push_back(name);
                } while (s.accept(','));
                if (!s.at_end()) s.fail("unexpected input" + s.found());
            }
            c.structure.resize(c.names.size());
            defined.assign(c.names.size(), false);
            have_states = true;
            continue;
        }
        std::size_t at = s.pos();
        std::string name = s.ident("state name");
        auto it = ids.find(name);
        if (it == ids.end()) s.fail_at(at, "undeclared state '" + name + "'");
        if (defined[it->second]) s.fail_at(at, "duplicate definition of state '" + name + "'");
        s.expect("->");
        TermParser tp(s, chain, ids);
        Term t = tp.parse(0, chain[0]);
        if (!s.at_end()) s.fail("unexpected input after term" + s.found());
        canonicalize(t, c.functor);
        c.structure[it->second] = std::move(t);
        defined[it->second] = true;
    }
    if (!have_functor) throw ParseError("missing 'functor:' declaration", 1, 1);
    if (!have_states) throw ParseError("missing 'states:' declaration", lines.size(), 1);
    for (std::size_t i = 0; i < defined.size(); ++i)
        if (!defined[i]) throw InputError("state '" + c.names[i] + "' has no definition");
    recount(c);
    return c;
}

std::string term_to_string(const Term& t, const Coalgebra& c) {
    auto chain = composite_chain(c.functor);
    return Printer{c, chain}.print(t, 0, chain[0]);
}

std::string write_model(const Coalgebra& c) {
    auto chain = composite_chain(c.functor);
    Printer p{c, chain};
    std::string out = "functor: " + to_string(c.functor) + "\n";
    out += "states: " + join_names(c.names) + "\n";
    for (std::size_t s = 0; s < c.n(); ++s) out += c.names[s] + " -> " + p.print(c.structure[s], 0, chain[0]) + "\n";
    return out;
}

}  // namespace cocert
