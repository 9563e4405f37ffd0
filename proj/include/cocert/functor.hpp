#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cocert {

enum class MonoidKind : std::uint8_t { Real, Int, Nat, Bool2 };

// Term of the functor grammar.
struct FunctorExpr {
    enum class Kind : std::uint8_t {
        Identity,
        Constant,
        Powerset,
        Monoid,
        Distribution,
        Signature,
        Product,
        Coproduct,
        Exponent,
        Composite,
    };

    Kind kind = Kind::Identity;
    MonoidKind monoid = MonoidKind::Real;
    // Constant: atom names; Exponent: alphabet; Signature: operation names.
    std::vector<std::string> names;
    // Signature arities, parallel to names.
    std::vector<int> arities;
    // Product/Coproduct: components; Exponent: {base}; Composite: {outer, inner}.
    std::vector<FunctorExpr> children;

    static FunctorExpr identity();
    static FunctorExpr constant(std::vector<std::string> atoms);
    static FunctorExpr powerset();
    static FunctorExpr monoid_of(MonoidKind k);
    static FunctorExpr distribution();
    static FunctorExpr signature(std::vector<std::string> ops, std::vector<int> arities);
    static FunctorExpr product(std::vector<FunctorExpr> parts);
    static FunctorExpr coproduct(std::vector<FunctorExpr> parts);
    static FunctorExpr exponent(FunctorExpr base, std::vector<std::string> alphabet);
    static FunctorExpr composite(FunctorExpr outer, FunctorExpr inner);

    // Powerset and B^(X) share one implementation.
    bool is_set_like() const {
        return kind == Kind::Powerset || (kind == Kind::Monoid && monoid == MonoidKind::Bool2);
    }
    // Monoid-valued with a group or cancellative monoid, or Distribution: values are weight vectors.
    bool is_weighted() const {
        return kind == Kind::Distribution || (kind == Kind::Monoid && monoid != MonoidKind::Bool2);
    }

    friend bool operator==(const FunctorExpr&, const FunctorExpr&) = default;
};

FunctorExpr parse_functor(std::string_view text);
std::string to_string(const FunctorExpr& f);
std::string to_string(MonoidKind k);

struct ZipCheck {
    bool zippable;
    std::string reason;
};

// Throws IncompatibleError if a Composite node is present.
ZipCheck is_zippable(const FunctorExpr& f);
bool is_cancellative(const FunctorExpr& f);
bool contains_composite(const FunctorExpr& f);

// F1 . F2 . ... . Fk  ->  {F1, ..., Fk}; a non-composite functor yields {f}.
std::vector<FunctorExpr> composite_chain(const FunctorExpr& f);

}  // namespace cocert
