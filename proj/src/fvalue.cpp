#include "cocert/fvalue.hpp"

#include <algorithm>

#include "cocert/errors.hpp"
#include "scanner.hpp"

namespace cocert {

using Kind = FunctorExpr::Kind;

FValue FValue::colour(Colour c) {
    FValue v;
    v.kind = Kind::Colour;
    v.tag = c;
    return v;
}

FValue FValue::atom(std::uint32_t index) {
    FValue v;
    v.kind = Kind::Atom;
    v.tag = index;
    return v;
}

FValue FValue::colour_set(std::vector<Colour> cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    FValue v;
    v.kind = Kind::ColourSet;
    v.colours = std::move(cs);
    return v;
}

FValue FValue::weight_vector(std::vector<Rational> ws) {
    FValue v;
    v.kind = Kind::Weights;
    v.weights = std::move(ws);
    return v;
}

FValue FValue::op(std::uint32_t index, std::vector<Colour> args) {
    FValue v;
    v.kind = Kind::Op;
    v.tag = index;
    v.colours = std::move(args);
    return v;
}

FValue FValue::tuple(std::vector<FValue> items) {
    FValue v;
    v.kind = Kind::Tuple;
    v.items = std::move(items);
    return v;
}

FValue FValue::inj(std::uint32_t branch, FValue payload) {
    FValue v;
    v.kind = Kind::Inj;
    v.tag = branch;
    v.items.push_back(std::move(payload));
    return v;
}

std::size_t FValue::hash() const {
    std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL ^ (static_cast<std::size_t>(tag) << 8);
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (Colour c : colours) mix(c);
    for (const auto& w : weights) mix(w.hash());
    for (const auto& it : items) mix(it.hash());
    return h;
}

std::strong_ordering operator<=>(const FValue& a, const FValue& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.tag <=> b.tag; c != 0) return c;
    if (auto c = a.colours <=> b.colours; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.weights.begin(), a.weights.end(), b.weights.begin(),
                                                        b.weights.end());
        c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.items.begin(), a.items.end(), b.items.begin(), b.items.end());
}

namespace {

std::string print(const FValue& v, const FunctorExpr& f) {
    switch (f.kind) {
    case Kind::Identity: return std::to_string(v.tag);
    case Kind::Constant: return v.tag < f.names.size() ? f.names[v.tag] : "?";
    case Kind::Powerset:
    case Kind::Monoid:
    case Kind::Distribution:
        if (f.is_set_like()) {
            std::string out = "{";
            for (std::size_t i = 0; i < v.colours.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(v.colours[i]);
            }
            return out + "}";
        } else {
            std::string out = "(";
            for (std::size_t i = 0; i < v.weights.size(); ++i) {
                if (i) out += ",";
                out += v.weights[i].str();
            }
            return out + ")";
        }
    case Kind::Signature: {
        std::string out = v.tag < f.names.size() ? f.names[v.tag] : "?";
        if (v.colours.empty()) return out;
        out += "(";
        for (std::size_t i = 0; i < v.colours.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(v.colours[i]);
        }
        return out + ")";
    }
    case Kind::Product: {
        std::string out = "(";
        for (std::size_t i = 0; i < v.items.size(); ++i) {
            if (i) out += ",";
            out += print(v.items[i], f.children[i]);
        }
        return out + ")";
    }
    case Kind::Coproduct:
        return "in" + std::to_string(v.tag + 1) + "(" + print(v.items[0], f.children[v.tag]) + ")";
    case Kind::Exponent: {
        std::string out = "[";
        for (std::size_t i = 0; i < v.items.size(); ++i) {
            if (i) out += ",";
            out += f.names[i] + ":" + print(v.items[i], f.children[0]);
        }
        return out + "]";
    }
    case Kind::Composite: return "?";
    }
    return "?";
}

class ValueParser {
public:
    ValueParser(std::string_view text, std::uint32_t k) : s_(text, 0, 0, false), k_(k) {}

    FValue parse(const FunctorExpr& f) {
        FValue v = value(f);
        if (!s_.at_end()) s_.fail("unexpected input after value" + s_.found());
        return v;
    }

private:
    Colour colour() {
        std::size_t at = s_.pos();
        std::string num = s_.number();
        if (num.find_first_not_of("0123456789") != std::string::npos) s_.fail_at(at, "expected colour, got '" + num + "'");
        unsigned long c = std::stoul(num);
        if (c >= k_) s_.fail_at(at, "colour " + num + " outside palette of size " + std::to_string(k_));
        return static_cast<Colour>(c);
    }

    FValue value(const FunctorExpr& f) {
        switch (f.kind) {
        case Kind::Identity: return FValue::colour(colour());
        case Kind::Constant: {
            std::size_t at = s_.pos();
            std::string a = s_.ident("atom");
            auto it = std::find(f.names.begin(), f.names.end(), a);
            if (it == f.names.end()) s_.fail_at(at, "unknown atom '" + a + "'");
            return FValue::atom(static_cast<std::uint32_t>(it - f.names.begin()));
        }
        case Kind::Powerset:
        case Kind::Monoid:
        case Kind::Distribution: {
            if (f.is_set_like()) {
                s_.expect('{');
                std::vector<Colour> cs;
                if (!s_.accept('}')) {
                    do cs.push_back(colour());
                    while (s_.accept(','));
                    s_.expect('}');
                }
                return FValue::colour_set(std::move(cs));
            }
            std::size_t at = s_.pos();
            s_.expect('(');
            std::vector<Rational> ws;
            do {
                std::size_t p = s_.pos();
                std::string num = s_.number();
                try {
                    ws.push_back(Rational::parse(num));
                } catch (const std::exception& e) {
                    s_.fail_at(p, e.what());
                }
                if (f.kind == Kind::Monoid) {
                    const Rational& w = ws.back();
                    if (f.monoid != MonoidKind::Real && !w.is_integer()) s_.fail_at(p, "weight must be an integer");
                    if (f.monoid == MonoidKind::Nat && w.sign() < 0) s_.fail_at(p, "weight must be nonnegative");
                }
                if (f.kind == Kind::Distribution && ws.back().sign() < 0) s_.fail_at(p, "probability must be nonnegative");
            } while (s_.accept(','));
            s_.expect(')');
            if (ws.size() != k_)
                s_.fail_at(at, "weight vector has " + std::to_string(ws.size()) + " entries, palette has " +
                                   std::to_string(k_));
            if (f.kind == Kind::Distribution) {
                Rational sum;
                for (const auto& w : ws) sum += w;
                if (sum != Rational(1)) s_.fail_at(at, "distribution does not sum to 1");
            }
            return FValue::weight_vector(std::move(ws));
        }
        case Kind::Signature: {
            std::size_t at = s_.pos();
            std::string op = s_.ident("operation");
            auto it = std::find(f.names.begin(), f.names.end(), op);
            if (it == f.names.end()) s_.fail_at(at, "unknown operation '" + op + "'");
            auto idx = static_cast<std::uint32_t>(it - f.names.begin());
            std::vector<Colour> args;
            if (s_.accept('(')) {
                if (!s_.accept(')')) {
                    do args.push_back(colour());
                    while (s_.accept(','));
                    s_.expect(')');
                }
            }
            if (static_cast<int>(args.size()) != f.arities[idx])
                s_.fail_at(at, "operation '" + op + "' expects " + std::to_string(f.arities[idx]) + " arguments");
            return FValue::op(idx, std::move(args));
        }
        case Kind::Product: {
            s_.expect('(');
            std::vector<FValue> items;
            for (std::size_t i = 0; i < f.children.size(); ++i) {
                if (i) s_.expect(',');
                items.push_back(value(f.children[i]));
            }
            s_.expect(')');
            return FValue::tuple(std::move(items));
        }
        case Kind::Coproduct: {
            std::size_t at = s_.pos();
            std::string tag = s_.ident("injection");
            if (tag.size() < 3 || tag.substr(0, 2) != "in" ||
                tag.find_first_not_of("0123456789", 2) != std::string::npos)
                s_.fail_at(at, "expected injection inN");
            unsigned long b = std::stoul(tag.substr(2));
            if (b < 1 || b > f.children.size()) s_.fail_at(at, "injection index out of range");
            s_.expect('(');
            FValue inner = value(f.children[b - 1]);
            s_.expect(')');
            return FValue::inj(static_cast<std::uint32_t>(b - 1), std::move(inner));
        }
        case Kind::Exponent: {
            s_.expect('[');
            std::vector<FValue> items(f.names.size());
            std::vector<bool> seen(f.names.size(), false);
            if (!s_.accept(']')) {
                do {
                    std::size_t at = s_.pos();
                    std::string label = s_.ident("label");
                    auto it = std::find(f.names.begin(), f.names.end(), label);
                    if (it == f.names.end()) s_.fail_at(at, "unknown label '" + label + "'");
                    auto i = static_cast<std::size_t>(it - f.names.begin());
                    if (seen[i]) s_.fail_at(at, "duplicate label '" + label + "'");
                    seen[i] = true;
                    s_.expect(':');
                    items[i] = value(f.children[0]);
                } while (s_.accept(','));
                s_.expect(']');
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (!seen[i]) s_.fail("missing label '" + f.names[i] + "'");
            return FValue::tuple(std::move(items));
        }
        case Kind::Composite: s_.fail("composite functors have no value syntax; desugar first");
        }
        s_.fail("unsupported functor");
    }

    detail::Scanner s_;
    std::uint32_t k_;
};

}  // namespace

std::string to_string(const FValue& v, const FunctorExpr& f) { return print(v, f); }

FValue parse_fvalue(std::string_view text, const FunctorExpr& f, std::uint32_t k) {
    return ValueParser(text, k).parse(f);
}

FValue relabel(const FValue& v, const FunctorExpr& f, const std::vector<Colour>& r, std::uint32_t new_k) {
    switch (f.kind) {
    case Kind::Identity: return FValue::colour(r.at(v.tag));
    case Kind::Constant: return v;
    case Kind::Powerset:
    case Kind::Monoid:
    case Kind::Distribution:
        if (f.is_set_like()) {
            std::vector<Colour> cs;
            cs.reserve(v.colours.size());
            for (Colour c : v.colours) cs.push_back(r.at(c));
            return FValue::colour_set(std::move(cs));
        } else {
            std::vector<Rational> ws(new_k);
            for (std::size_t c = 0; c < v.weights.size(); ++c)
                if (!v.weights[c].is_zero()) ws[r.at(c)] += v.weights[c];
            return FValue::weight_vector(std::move(ws));
        }
    case Kind::Signature: {
        std::vector<Colour> args;
        args.reserve(v.colours.size());
        for (Colour c : v.colours) args.push_back(r.at(c));
        return FValue::op(v.tag, std::move(args));
    }
    case Kind::Product: {
        std::vector<FValue> items;
        for (std::size_t i = 0; i < v.items.size(); ++i) items.push_back(relabel(v.items[i], f.children[i], r, new_k));
        return FValue::tuple(std::move(items));
    }
    case Kind::Exponent: {
        std::vector<FValue> items;
        for (const auto& it : v.items) items.push_back(relabel(it, f.children[0], r, new_k));
        return FValue::tuple(std::move(items));
    }
    case Kind::Coproduct: return FValue::inj(v.tag, relabel(v.items[0], f.children[v.tag], r, new_k));
    case Kind::Composite: throw IncompatibleError("cannot relabel a composite-functor value; desugar first");
    }
    return v;
}

bool fits_palette(const FValue& v, const FunctorExpr& f, std::uint32_t k) {
    switch (f.kind) {
    case Kind::Identity: return v.kind == FValue::Kind::Colour && v.tag < k;
    case Kind::Constant: return v.kind == FValue::Kind::Atom && v.tag < f.names.size();
    case Kind::Powerset:
    case Kind::Monoid:
    case Kind::Distribution:
        if (f.is_set_like()) {
            if (v.kind != FValue::Kind::ColourSet) return false;
            for (Colour c : v.colours)
                if (c >= k) return false;
            return true;
        }
        return v.kind == FValue::Kind::Weights && v.weights.size() == k;
    case Kind::Signature:
        if (v.kind != FValue::Kind::Op || v.tag >= f.names.size()) return false;
        if (static_cast<int>(v.colours.size()) != f.arities[v.tag]) return false;
        for (Colour c : v.colours)
            if (c >= k) return false;
        return true;
    case Kind::Product:
        if (v.kind != FValue::Kind::Tuple || v.items.size() != f.children.size()) return false;
        for (std::size_t i = 0; i < v.items.size(); ++i)
            if (!fits_palette(v.items[i], f.children[i], k)) return false;
        return true;
    case Kind::Exponent:
        if (v.kind != FValue::Kind::Tuple || v.items.size() != f.names.size()) return false;
        for (const auto& it : v.items)
            if (!fits_palette(it, f.children[0], k)) return false;
        return true;
    case Kind::Coproduct:
        return v.kind == FValue::Kind::Inj && v.tag < f.children.size() && v.items.size() == 1 &&
               fits_palette(v.items[0], f.children[v.tag], k);
    case Kind::Composite: return false;
    }
    return false;
}

}  // namespace cocert
