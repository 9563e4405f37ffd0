#include "cocert/functor.hpp"

#include <set>

#include "cocert/errors.hpp"
#include "scanner.hpp"

namespace cocert {

FunctorExpr FunctorExpr::identity() { return FunctorExpr{}; }

FunctorExpr FunctorExpr::constant(std::vector<std::string> atoms) {
    FunctorExpr f;
    f.kind = Kind::Constant;
    f.names = std::move(atoms);
    return f;
}

FunctorExpr FunctorExpr::powerset() {
    FunctorExpr f;
    f.kind = Kind::Powerset;
    return f;
}

FunctorExpr FunctorExpr::monoid_of(MonoidKind k) {
    FunctorExpr f;
    f.kind = Kind::Monoid;
    f.monoid = k;
    return f;
}

FunctorExpr FunctorExpr::distribution() {
    FunctorExpr f;
    f.kind = Kind::Distribution;
    return f;
}

FunctorExpr FunctorExpr::signature(std::vector<std::string> ops, std::vector<int> arities) {
    FunctorExpr f;
    f.kind = Kind::Signature;
    f.names = std::move(ops);
    f.arities = std::move(arities);
    return f;
}

FunctorExpr FunctorExpr::product(std::vector<FunctorExpr> parts) {
    FunctorExpr f;
    f.kind = Kind::Product;
    f.children = std::move(parts);
    return f;
}

FunctorExpr FunctorExpr::coproduct(std::vector<FunctorExpr> parts) {
    FunctorExpr f;
    f.kind = Kind::Coproduct;
    f.children = std::move(parts);
    return f;
}

FunctorExpr FunctorExpr::exponent(FunctorExpr base, std::vector<std::string> alphabet) {
    FunctorExpr f;
    f.kind = Kind::Exponent;
    f.children.push_back(std::move(base));
    f.names = std::move(alphabet);
    return f;
}

FunctorExpr FunctorExpr::composite(FunctorExpr outer, FunctorExpr inner) {
    FunctorExpr f;
    f.kind = Kind::Composite;
    f.children.push_back(std::move(outer));
    f.children.push_back(std::move(inner));
    return f;
}

namespace {

using detail::Scanner;

class FunctorParser {
public:
    explicit FunctorParser(std::string_view text) : s_(text) {}

    FunctorExpr parse() {
        FunctorExpr f = composite();
        if (!s_.at_end()) s_.fail("unexpected input" + s_.found());
        return f;
    }

private:
    FunctorExpr composite() {
        FunctorExpr outer = sum();
        if (s_.peek() == '.') {
            s_.expect('.');
            FunctorExpr inner = composite();
            return FunctorExpr::composite(std::move(outer), std::move(inner));
        }
        return outer;
    }

    FunctorExpr sum() {
        std::vector<FunctorExpr> parts;
        parts.push_back(product());
        while (s_.accept('+')) parts.push_back(product());
        if (parts.size() == 1) return std::move(parts[0]);
        return FunctorExpr::coproduct(std::move(parts));
    }

    bool at_times() {
        char c = s_.peek();
        if (c == 'x') return !detail::is_ident_char(s_.raw(1));
        return false;
    }

    FunctorExpr product() {
        std::vector<FunctorExpr> parts;
        parts.push_back(postfix());
        while (at_times() || s_.accept("\xC3\x97")) {
            if (s_.peek() == 'x') s_.expect('x');
            parts.push_back(postfix());
        }
        if (parts.size() == 1) return std::move(parts[0]);
        return FunctorExpr::product(std::move(parts));
    }

    FunctorExpr postfix() {
        FunctorExpr f = primary();
        while (s_.peek() == '^') {
            std::size_t at = s_.pos();
            s_.expect('^');
            if (!s_.accept('{')) s_.fail_at(at, "expected '^{' for an exponent");
            auto alphabet = name_list('}', "exponent alphabet");
            f = FunctorExpr::exponent(std::move(f), std::move(alphabet));
        }
        return f;
    }

    std::vector<std::string> name_list(char close, const char* what) {
        std::vector<std::string> names;
        std::set<std::string> seen;
        std::size_t at = s_.pos();
        if (s_.accept(close)) s_.fail_at(at, std::string(what) + " must be nonempty");
        do {
            std::size_t p = s_.pos();
            std::string n = s_.ident("name");
            if (!seen.insert(n).second) s_.fail_at(p, "duplicate name '" + n + "' in " + what);
            names.push_back(std::move(n));
        } while (s_.accept(','));
        s_.expect(close);
        return names;
    }

    FunctorExpr primary() {
        char c = s_.peek();
        std::size_t at = s_.pos();
        if (c == '(') {
            s_.expect('(');
            FunctorExpr f = composite();
            s_.expect(')');
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = s_.ident("constant");
            for (char d : digits)
                if (!std::isdigit(static_cast<unsigned char>(d))) s_.fail_at(at, "malformed constant '" + digits + "'");
            long k = std::stol(digits);
            if (k <= 0) s_.fail_at(at, "constant set must be nonempty");
            if (k == 1) return FunctorExpr::constant({"*"});
            std::vector<std::string> atoms;
            for (long i = 0; i < k; ++i) atoms.push_back(std::to_string(i));
            return FunctorExpr::constant(std::move(atoms));
        }
        if (!s_.peek_ident()) s_.fail("expected a functor" + s_.found());
        std::string word = s_.ident("functor");
        if (word == "X") return FunctorExpr::identity();
        if (word == "P") {
            if (s_.peek() == '(') {
                s_.expect('(');
                s_.expect('X');
                s_.expect(')');
            }
            return FunctorExpr::powerset();
        }
        if (word == "D") {
            s_.expect('(');
            s_.expect('X');
            s_.expect(')');
            return FunctorExpr::distribution();
        }
        if (word == "C") {
            s_.expect('{');
            return FunctorExpr::constant(name_list('}', "constant set"));
        }
        if (word == "Sig") {
            s_.expect('(');
            std::vector<std::string> ops;
            std::vector<int> arities;
            std::set<std::string> seen;
            if (s_.peek() == ')') s_.fail("signature must be nonempty");
            do {
                std::size_t p = s_.pos();
                std::string op = s_.ident("operation name");
                if (!seen.insert(op).second) s_.fail_at(p, "duplicate operation '" + op + "'");
                s_.expect('/');
                std::size_t ap = s_.pos();
                std::string num = s_.number();
                long ar = 0;
                try {
                    ar = std::stol(num);
                } catch (const std::exception&) {
                    s_.fail_at(ap, "malformed arity '" + num + "'");
                }
                if (num.find_first_of("./") != std::string::npos) s_.fail_at(ap, "malformed arity '" + num + "'");
                if (ar < 0) s_.fail_at(ap, "arity must be >= 0 for operation '" + op + "'");
                ops.push_back(std::move(op));
                arities.push_back(static_cast<int>(ar));
            } while (s_.accept(','));
            s_.expect(')');
            return FunctorExpr::signature(std::move(ops), std::move(arities));
        }
        if (s_.raw() == '^' && s_.raw(1) == '(') {
            MonoidKind k;
            if (word == "R") k = MonoidKind::Real;
            else if (word == "Z") k = MonoidKind::Int;
            else if (word == "N") k = MonoidKind::Nat;
            else if (word == "B") k = MonoidKind::Bool2;
            else s_.fail_at(at, "unknown monoid kind '" + word + "'");
            s_.expect('^');
            s_.expect('(');
            s_.expect('X');
            s_.expect(')');
            return FunctorExpr::monoid_of(k);
        }
        s_.fail_at(at, "unknown functor '" + word + "'");
    }

    Scanner s_;
};

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i];
    }
    return out;
}

using Kind = FunctorExpr::Kind;

bool atomic(const FunctorExpr& f) {
    return f.kind != Kind::Product && f.kind != Kind::Coproduct && f.kind != Kind::Composite;
}

std::string print(const FunctorExpr& f) {
    switch (f.kind) {
    case Kind::Identity: return "X";
    case Kind::Constant:
        if (f.names.size() == 1 && f.names[0] == "*") return "1";
        return "C{" + join(f.names) + "}";
    case Kind::Powerset: return "P";
    case Kind::Monoid: return to_string(f.monoid) + "^(X)";
    case Kind::Distribution: return "D(X)";
    case Kind::Signature: {
        std::string out = "Sig(";
        for (std::size_t i = 0; i < f.names.size(); ++i) {
            if (i) out += ", ";
            out += f.names[i] + "/" + std::to_string(f.arities[i]);
        }
        return out + ")";
    }
    case Kind::Product: {
        std::string out;
        for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i) out += " x ";
            const auto& c = f.children[i];
            out += atomic(c) ? print(c) : "(" + print(c) + ")";
        }
        return out;
    }
    case Kind::Coproduct: {
        std::string out;
        for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i) out += " + ";
            const auto& c = f.children[i];
            bool paren = c.kind == Kind::Coproduct || c.kind == Kind::Composite;
            out += paren ? "(" + print(c) + ")" : print(c);
        }
        return out;
    }
    case Kind::Exponent: {
        const auto& b = f.children[0];
        return (atomic(b) ? print(b) : "(" + print(b) + ")") + "^{" + join(f.names) + "}";
    }
    case Kind::Composite: {
        const auto& o = f.children[0];
        std::string out = o.kind == Kind::Composite ? "(" + print(o) + ")" : print(o);
        return out + " . " + print(f.children[1]);
    }
    }
    return "?";
}

bool cancellative_rec(const FunctorExpr& f) {
    switch (f.kind) {
    case Kind::Identity:
    case Kind::Constant:
    case Kind::Distribution:
    case Kind::Signature: return true;
    case Kind::Powerset: return false;
    case Kind::Monoid: return f.monoid != MonoidKind::Bool2;
    case Kind::Product:
    case Kind::Coproduct:
    case Kind::Exponent:
        for (const auto& c : f.children)
            if (!cancellative_rec(c)) return false;
        return true;
    case Kind::Composite: return false;
    }
    return false;
}

}  // namespace

FunctorExpr parse_functor(std::string_view text) { return FunctorParser(text).parse(); }

std::string to_string(const FunctorExpr& f) { return print(f); }

std::string to_string(MonoidKind k) {
    switch (k) {
    case MonoidKind::Real: return "R";
    case MonoidKind::Int: return "Z";
    case MonoidKind::Nat: return "N";
    case MonoidKind::Bool2: return "B";
    }
    return "?";
}

bool contains_composite(const FunctorExpr& f) {
    if (f.kind == Kind::Composite) return true;
    for (const auto& c : f.children)
        if (contains_composite(c)) return true;
    return false;
}

ZipCheck is_zippable(const FunctorExpr& f) {
    switch (f.kind) {
    case Kind::Identity: return {true, "identity functor is zippable"};
    case Kind::Constant: return {true, "constant functors are zippable"};
    case Kind::Powerset: return {true, "finite powerset is zippable"};
    case Kind::Monoid: return {true, "monoid-valued functors are zippable"};
    case Kind::Distribution: return {true, "distribution functor is a subfunctor of R^(X), hence zippable"};
    case Kind::Signature: return {true, "signature functors are zippable"};
    case Kind::Product:
    case Kind::Coproduct:
    case Kind::Exponent: {
        for (const auto& c : f.children) {
            auto r = is_zippable(c);
            if (!r.zippable) return r;
        }
        const char* what = f.kind == Kind::Product ? "products" : f.kind == Kind::Coproduct ? "coproducts" : "exponents";
        return {true, std::string("zippable functors are closed under ") + what};
    }
    case Kind::Composite:
        throw IncompatibleError("functor '" + print(f) +
                                "' is a composite; zippability is not closed under composition, desugar it first");
    }
    return {false, "unknown functor"};
}

bool is_cancellative(const FunctorExpr& f) { return cancellative_rec(f); }

std::vector<FunctorExpr> composite_chain(const FunctorExpr& f) {
    std::vector<FunctorExpr> out;
    const FunctorExpr* cur = &f;
    // Left-nested composites are flattened too: (F . G) . H = F . (G . H).
    std::vector<const FunctorExpr*> stack{cur};
    while (!stack.empty()) {
        const FunctorExpr* g = stack.back();
        stack.pop_back();
        if (g->kind == Kind::Composite) {
            stack.push_back(&g->children[1]);
            stack.push_back(&g->children[0]);
        } else {
            out.push_back(*g);
        }
    }
    return out;
}

}  // namespace cocert
