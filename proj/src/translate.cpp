#include "cocert/translate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "scanner.hpp"

namespace cocert {

using FK = FunctorExpr::Kind;
using DK = DSNode::Kind;

std::string to_string(LogicKind k) {
    switch (k) {
    case LogicKind::HennessyMilner: return "hm";
    case LogicKind::Weighted: return "weighted";
    case LogicKind::Signature: return "signature";
    case LogicKind::Prob: return "prob";
    }
    return "?";
}

LogicKind parse_logic_kind(const std::string& s) {
    if (s == "hm") return LogicKind::HennessyMilner;
    if (s == "weighted") return LogicKind::Weighted;
    if (s == "signature") return LogicKind::Signature;
    if (s == "prob") return LogicKind::Prob;
    throw InputError("unknown logic '" + s + "' (expected hm, weighted, signature or prob)");
}

bool DomainLogic::cancellative_weights() const {
    return kind == LogicKind::Weighted &&
           (functor.kind == FK::Distribution || functor.monoid != MonoidKind::Bool2);
}

bool DomainLogic::simple() const {
    return cancellative_weights() || kind == LogicKind::Signature;
}

namespace {

bool is_unit_constant(const FunctorExpr& f) { return f.kind == FK::Constant && f.names.size() == 1; }

bool is_partial_distribution(const FunctorExpr& f) {
    return f.kind == FK::Coproduct && f.children.size() == 2 && f.children[0].kind == FK::Distribution &&
           is_unit_constant(f.children[1]);
}

}  // namespace

DomainLogic make_logic(LogicKind kind, const FunctorExpr& f) {
    DomainLogic L;
    L.kind = kind;
    L.functor = f;
    bool ok = false;
    switch (kind) {
    case LogicKind::HennessyMilner: ok = f.is_set_like(); break;
    case LogicKind::Weighted: ok = f.kind == FK::Monoid || f.kind == FK::Distribution; break;
    case LogicKind::Signature: ok = f.kind == FK::Signature; break;
    case LogicKind::Prob:
        if (f.kind == FK::Exponent && is_partial_distribution(f.children[0])) {
            L.shape = DomainLogic::ProbShape::Labelled;
            L.actions = f.names;
            ok = true;
        } else if (is_partial_distribution(f)) {
            L.shape = DomainLogic::ProbShape::Partial;
            ok = true;
        } else if (f.kind == FK::Distribution) {
            L.shape = DomainLogic::ProbShape::Total;
            ok = true;
        }
        break;
    }
    if (!ok) throw IncompatibleError("logic '" + to_string(kind) + "' does not apply to functor " + to_string(f));
    return L;
}

std::optional<DomainLogic> natural_logic(const FunctorExpr& f) {
    for (auto k : {LogicKind::HennessyMilner, LogicKind::Prob, LogicKind::Weighted, LogicKind::Signature}) {
        try {
            return make_logic(k, f);
        } catch (const IncompatibleError&) {
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- dag

DSDag::DSDag() { nodes_.push_back(DSNode{}); }

DSEdge DSDag::add(DSNode n) {
    nodes_.push_back(std::move(n));
    return {static_cast<std::uint32_t>(nodes_.size() - 1), false};
}

DSEdge DSDag::conj(DSEdge a, DSEdge b) {
    if (a == top()) return b;
    if (b == top()) return a;
    DSNode n;
    n.kind = DK::And;
    n.arity = 2;
    n.args[0] = a;
    n.args[1] = b;
    return add(std::move(n));
}

DSEdge DSDag::disj(DSEdge a, DSEdge b) {
    if (a == top() || b == top()) return top();
    DSNode n;
    n.kind = DK::Or;
    n.arity = 2;
    n.args[0] = a;
    n.args[1] = b;
    return add(std::move(n));
}

DSEdge DSDag::var(std::uint32_t i) {
    DSNode n;
    n.kind = DK::Var;
    n.tag = i;
    return add(std::move(n));
}

DSEdge DSDag::diamond(DSEdge a) {
    DSNode n;
    n.kind = DK::Diamond;
    n.arity = 1;
    n.args[0] = a;
    return add(std::move(n));
}

DSEdge DSDag::weight(Rational m, DSEdge a) {
    DSNode n;
    n.kind = DK::Weight;
    n.param = std::move(m);
    n.arity = 1;
    n.args[0] = a;
    return add(std::move(n));
}

DSEdge DSDag::index(std::vector<std::uint32_t> set, DSEdge a) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    DSNode n;
    n.kind = DK::Index;
    n.index = std::move(set);
    n.arity = 1;
    n.args[0] = a;
    return add(std::move(n));
}

DSEdge DSDag::prob(std::uint32_t action, Rational p, DSEdge a) {
    DSNode n;
    n.kind = DK::Prob;
    n.tag = action;
    n.param = std::move(p);
    n.arity = 1;
    n.args[0] = a;
    return add(std::move(n));
}

DSEdge DSDag::op_atom(std::uint32_t op) {
    DSNode n;
    n.kind = DK::OpAtom;
    n.tag = op;
    return add(std::move(n));
}

// ---------------------------------------------------------------- interpretations

namespace {

// Distribution part of a value for one action, or null when the action is in the +1 branch.
const FValue* dist_part(const FValue& v, const DomainLogic& L, std::uint32_t action) {
    switch (L.shape) {
    case DomainLogic::ProbShape::Labelled: {
        const FValue& c = v.items.at(action);
        return c.tag == 0 ? &c.items[0] : nullptr;
    }
    case DomainLogic::ProbShape::Partial: return v.tag == 0 ? &v.items[0] : nullptr;
    case DomainLogic::ProbShape::Total: return &v;
    }
    return nullptr;
}

Rational weight_at(const FValue& v, Colour c) {
    if (v.kind == FValue::Kind::ColourSet)
        return std::binary_search(v.colours.begin(), v.colours.end(), c) ? Rational(1) : Rational(0);
    return c < v.weights.size() ? v.weights[c] : Rational(0);
}

std::size_t action_count(const DomainLogic& L) {
    return L.shape == DomainLogic::ProbShape::Labelled ? L.actions.size() : 1;
}

}  // namespace

DSEdge tau(const FValue& o, const DomainLogic& L, DSDag& dag) {
    switch (L.kind) {
    case LogicKind::HennessyMilner: {
        DSEdge live = dag.diamond(dag.top());
        return o.colours.empty() ? !live : live;
    }
    case LogicKind::Weighted: return dag.weight(weight_at(o, 0), dag.top());
    case LogicKind::Signature: return dag.op_atom(o.tag);
    case LogicKind::Prob: {
        DSEdge acc = dag.top();
        for (std::uint32_t a = 0; a < action_count(L); ++a) {
            DSEdge m = dag.prob(a, Rational(1), dag.top());
            acc = dag.conj(acc, dist_part(o, L, a) ? m : !m);
        }
        return acc;
    }
    }
    return dag.top();
}

DSEdge lambda(const FValue& t, const DomainLogic& L, DSDag& dag, DSEdge delta, const std::function<DSEdge()>& rho) {
    switch (L.kind) {
    case LogicKind::HennessyMilner: {
        bool has2 = std::binary_search(t.colours.begin(), t.colours.end(), 2U);
        bool has1 = std::binary_search(t.colours.begin(), t.colours.end(), 1U);
        if (has2 && !has1) return !dag.diamond(rho());
        if (has2 && has1) {
            DSEdge d = dag.diamond(delta);
            return dag.conj(d, dag.diamond(rho()));
        }
        if (has1) return !dag.diamond(delta);
        return dag.top();
    }
    case LogicKind::Weighted: {
        DSEdge d = dag.weight(weight_at(t, 2), delta);
        if (L.cancellative_weights()) return d;
        return dag.conj(d, dag.weight(weight_at(t, 1), rho()));
    }
    case LogicKind::Signature: {
        std::vector<std::uint32_t> I;
        for (std::size_t i = 0; i < t.colours.size(); ++i)
            if (t.colours[i] == 2) I.push_back(static_cast<std::uint32_t>(i + 1));
        return dag.index(std::move(I), delta);
    }
    case LogicKind::Prob: {
        DSEdge acc = dag.top();
        std::optional<DSEdge> r;
        for (std::uint32_t a = 0; a < action_count(L); ++a) {
            const FValue* d = dist_part(t, L, a);
            if (!d) continue;
            if (!r) r = rho();
            DSEdge m2 = dag.prob(a, weight_at(*d, 2), delta);
            acc = dag.conj(acc, dag.conj(m2, dag.prob(a, weight_at(*d, 1), *r)));
        }
        return acc;
    }
    }
    return dag.top();
}

DSEdge kappa(const FValue& s, const DomainLogic& L, DSDag& dag, DSEdge delta) {
    if (L.cancellative_weights()) return dag.weight(weight_at(s, 1), delta);
    if (L.kind == LogicKind::Signature) {
        std::vector<std::uint32_t> I;
        for (std::size_t i = 0; i < s.colours.size(); ++i)
            if (s.colours[i] == 1) I.push_back(static_cast<std::uint32_t>(i + 1));
        return dag.index(std::move(I), delta);
    }
    throw IncompatibleError("logic '" + to_string(L.kind) + "' has no unary interpretation of two-colour values");
}

// ---------------------------------------------------------------- translation

Translator::Translator(const FormulaDag& src, const DomainLogic& L, DSDag& out)
    : src_(src), L_(L), out_(out), memo_(src.size()) {}

DSEdge Translator::translate(EdgeRef e) {
    if (memo_.size() < src_.size()) memo_.resize(src_.size());
    DSEdge r = node(e.id);
    return e.neg ? !r : r;
}

DSEdge Translator::node(std::uint32_t id) {
    if (memo_[id]) return *memo_[id];
    const auto& n = src_.node(id);
    const FunctorExpr& f = L_.functor;
    DSEdge out;
    switch (n.kind) {
    case FormulaNode::Kind::Top: out = out_.top(); break;
    case FormulaNode::Kind::And: {
        DSEdge a = translate(n.args[0]);
        out = out_.conj(a, translate(n.args[1]));
        break;
    }
    case FormulaNode::Kind::Modal:
        if (n.arity == 0) {
            out = tau(n.label, L_, out_);
        } else if (n.arity == 1) {
            DSEdge d = translate(n.args[0]);
            if (L_.simple()) {
                out = kappa(n.label, L_, out_, d);
            } else {
                FValue t = relabel(n.label, f, {1, 2}, 3);
                out = lambda(t, L_, out_, d, [&] { return !d; });
            }
        } else if (n.args[0] == src_.top() && n.args[1] == src_.top()) {
            out = tau(relabel(n.label, f, {0, 0, 0}, 1), L_, out_);
        } else {
            DSEdge d = translate(n.args[0]);
            EdgeRef beta = n.args[1];
            EdgeRef removed = n.hint ? *n.hint : n.args[0];
            out = lambda(n.label, L_, out_, d, [&] {
                DSEdge b = translate(beta);
                return out_.conj(b, !translate(removed));
            });
        }
        break;
    }
    memo_[id] = out;
    return out;
}

DSCertificates translate(const CertificateSet& certs, const DomainLogic& L) {
    if (contains_composite(L.functor)) throw IncompatibleError("certificates of composite functors are not translated");
    DSCertificates out;
    Translator tr(certs.dag, L, out.dag);
    for (auto d : certs.delta) out.delta.push_back(tr.translate(d));
    return out;
}

// ---------------------------------------------------------------- semantics

namespace {

// Modal node applied to a value whose colours satisfying the argument are flagged in `in`.
bool holds_modal(const DSNode& n, const FValue& v, const std::vector<bool>& in, const DomainLogic& L) {
    auto member = [&](Colour c) { return c < in.size() && in[c]; };
    switch (n.kind) {
    case DK::Diamond:
        for (Colour c : v.colours)
            if (member(c)) return true;
        return false;
    case DK::Weight: {
        Rational sum;
        if (v.kind == FValue::Kind::ColourSet) {
            for (Colour c : v.colours)
                if (member(c)) sum = Rational(1);
        } else {
            for (Colour c = 0; c < v.weights.size(); ++c)
                if (member(c)) sum += v.weights[c];
        }
        return sum == n.param;
    }
    case DK::Index: {
        if (!n.index.empty() && n.index.back() > v.colours.size()) return false;
        for (std::size_t i = 0; i < v.colours.size(); ++i) {
            bool want = std::binary_search(n.index.begin(), n.index.end(), static_cast<std::uint32_t>(i + 1));
            if (want != member(v.colours[i])) return false;
        }
        return true;
    }
    case DK::Prob: {
        const FValue* d = dist_part(v, L, n.tag);
        if (!d) return false;
        Rational sum;
        for (Colour c = 0; c < d->weights.size(); ++c)
            if (member(c)) sum += d->weights[c];
        return sum >= n.param;
    }
    case DK::OpAtom: return v.tag == n.tag;
    default: break;
    }
    throw VerificationError("not a modal node");
}

// Evaluates a formula on one value over palette k; Var i denotes the colour set vars[i].
bool holds_on_value(DSEdge e, const DSDag& dag, const FValue& v, std::uint32_t k,
                    const std::vector<std::vector<bool>>& vars, const DomainLogic& L) {
    const auto& n = dag.node(e.id);
    bool r = false;
    switch (n.kind) {
    case DK::Top: r = true; break;
    case DK::And:
        r = holds_on_value(n.args[0], dag, v, k, vars, L) && holds_on_value(n.args[1], dag, v, k, vars, L);
        break;
    case DK::Or:
        r = holds_on_value(n.args[0], dag, v, k, vars, L) || holds_on_value(n.args[1], dag, v, k, vars, L);
        break;
    case DK::Var: throw VerificationError("variable outside a modality");
    default: {
        std::vector<bool> in(k, true);
        if (n.arity == 1) {
            DSEdge a = n.args[0];
            const auto& an = dag.node(a.id);
            if (an.kind == DK::Var) in = vars.at(an.tag);
            else if (an.kind != DK::Top) throw VerificationError("interpretation nests modalities");
            if (a.neg) in.flip();
        }
        r = holds_modal(n, v, in, L);
    }
    }
    return e.neg ? !r : r;
}

}  // namespace

Extension eval_ds(DSEdge root, const DSDag& dag, const Coalgebra& c, const DomainLogic& L) {
    if (!(c.functor == L.functor)) throw IncompatibleError("logic was built for a different functor");
    std::vector<Extension> memo(dag.size());
    std::vector<bool> done(dag.size(), false);
    std::vector<std::pair<std::uint32_t, bool>> stack{{root.id, false}};
    auto ext = [&](DSEdge a) {
        Extension x = memo[a.id];
        if (a.neg) x.complement();
        return x;
    };
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        if (done[id]) continue;
        const auto& n = dag.node(id);
        if (!expanded) {
            stack.emplace_back(id, true);
            for (std::uint8_t i = 0; i < n.arity; ++i) stack.emplace_back(n.args[i].id, false);
            continue;
        }
        Extension out(c.n());
        switch (n.kind) {
        case DK::Top: out = Extension(c.n(), true); break;
        case DK::And:
            out = ext(n.args[0]);
            out &= ext(n.args[1]);
            break;
        case DK::Or: {
            Extension a = ext(n.args[0]), b = ext(n.args[1]);
            a.complement();
            b.complement();
            a &= b;
            a.complement();
            out = a;
            break;
        }
        case DK::Var: throw IncompatibleError("formula contains a placeholder variable");
        default: {
            Extension a = n.arity ? ext(n.args[0]) : Extension(c.n(), true);
            static const std::vector<bool> in{false, true};
            for (StateId x = 0; x < c.n(); ++x) {
                FValue v = n.kind == DK::OpAtom
                               ? terminal_value(c.functor, c.structure[x])
                               : apply_coloring(c.functor, c.structure[x], 2,
                                                [&](StateId y) { return a.test(y) ? 1U : 0U; });
                if (holds_modal(n, v, in, L)) out.set(x);
            }
        }
        }
        memo[id] = std::move(out);
        done[id] = true;
    }
    return ext(root);
}

bool negation_free(DSEdge root, const DSDag& dag) {
    std::vector<bool> seen(dag.size(), false);
    std::vector<DSEdge> stack{root};
    while (!stack.empty()) {
        DSEdge e = stack.back();
        stack.pop_back();
        if (e.neg) return false;
        if (seen[e.id]) continue;
        seen[e.id] = true;
        const auto& n = dag.node(e.id);
        if (n.kind == DK::Or) return false;
        for (std::uint8_t i = 0; i < n.arity; ++i) stack.push_back(n.args[i]);
    }
    return true;
}

// ---------------------------------------------------------------- text

std::uint64_t ds_tree_size(DSEdge e, const DSDag& dag) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> t(e.id + 1, 0);
    for (std::uint32_t id = 0; id <= e.id; ++id) {
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

namespace {

void print_ds(DSEdge e, const DSDag& dag, const DomainLogic& L, std::string& out) {
    const auto& n = dag.node(e.id);
    if (e.neg && n.kind == DK::Diamond && n.args[0].neg) {
        out += "[]";
        print_ds(!n.args[0], dag, L, out);
        return;
    }
    if (e.neg) out += "~";
    switch (n.kind) {
    case DK::Top: out += "true"; return;
    case DK::And:
    case DK::Or:
        out += "(";
        print_ds(n.args[0], dag, L, out);
        out += n.kind == DK::And ? " & " : " | ";
        print_ds(n.args[1], dag, L, out);
        out += ")";
        return;
    case DK::Var: out += "@" + std::to_string(n.tag); return;
    case DK::Diamond: out += "<>"; break;
    case DK::Weight: out += "<" + n.param.str() + ">"; break;
    case DK::Index: {
        out += "<{";
        for (std::size_t i = 0; i < n.index.size(); ++i) out += (i ? "," : "") + std::to_string(n.index[i]);
        out += "}>";
        break;
    }
    case DK::Prob:
        out += "<" + (L.shape == DomainLogic::ProbShape::Labelled ? L.actions.at(n.tag) : std::string()) + ">_{" +
               n.param.str() + "}";
        break;
    case DK::OpAtom: out += L.functor.names.at(n.tag); return;
    }
    print_ds(n.args[0], dag, L, out);
}

class DSParser {
public:
    DSParser(std::string_view text, DSDag& dag, const DomainLogic& L) : sc_(text, 0, 0, false), dag_(dag), L_(L) {}

    DSEdge parse() {
        DSEdge e = formula();
        if (!sc_.at_end()) sc_.fail("unexpected trailing input" + sc_.found());
        return e;
    }

private:
    void need(LogicKind k, const char* what) {
        if (L_.kind != k) sc_.fail(std::string(what) + " is not part of the " + to_string(L_.kind) + " logic");
    }

    Rational literal() {
        std::size_t at = sc_.pos();
        std::string num = sc_.number();
        try {
            return Rational::parse(num);
        } catch (const std::exception& e) {
            sc_.fail_at(at, e.what());
        }
    }

    DSEdge formula() {
        char ch = sc_.peek();
        if (ch == '~') {
            sc_.accept('~');
            return !formula();
        }
        if (ch == '(') {
            sc_.accept('(');
            DSEdge a = formula();
            if (sc_.accept('&')) {
                DSEdge b = formula();
                sc_.expect(')');
                return dag_.conj(a, b);
            }
            if (sc_.accept('|')) {
                DSEdge b = formula();
                sc_.expect(')');
                return dag_.disj(a, b);
            }
            sc_.expect(')');
            return a;
        }
        if (ch == '[') {
            sc_.accept('[');
            sc_.expect(']');
            need(LogicKind::HennessyMilner, "[]");
            return !dag_.diamond(!formula());
        }
        if (ch == '<') return modal();
        std::size_t at = sc_.pos();
        if (!sc_.peek_ident()) sc_.fail("expected a formula" + sc_.found());
        std::string word = sc_.ident();
        if (word == "true") return dag_.top();
        if (word == "false") return !dag_.top();
        if (L_.kind == LogicKind::Signature) {
            const auto& ops = L_.functor.names;
            auto it = std::find(ops.begin(), ops.end(), word);
            if (it != ops.end()) return dag_.op_atom(static_cast<std::uint32_t>(it - ops.begin()));
        }
        sc_.fail_at(at, "unknown atom '" + word + "'");
    }

    DSEdge modal() {
        sc_.expect('<');
        if (sc_.accept('>')) {
            if (sc_.raw() == '_') return prob_tail(0, true);
            need(LogicKind::HennessyMilner, "<>");
            return dag_.diamond(formula());
        }
        if (sc_.peek() == '{') {
            need(LogicKind::Signature, "<{...}>");
            sc_.accept('{');
            std::vector<std::uint32_t> I;
            if (!sc_.accept('}')) {
                do {
                    std::size_t at = sc_.pos();
                    Rational r = literal();
                    if (!r.is_integer() || r.sign() <= 0) sc_.fail_at(at, "argument positions start at 1");
                    I.push_back(static_cast<std::uint32_t>(std::stoul(r.str())));
                } while (sc_.accept(','));
                sc_.expect('}');
            }
            sc_.expect('>');
            return dag_.index(std::move(I), formula());
        }
        if (L_.kind == LogicKind::Prob && L_.shape == DomainLogic::ProbShape::Labelled) {
            std::size_t at = sc_.pos();
            std::string a = sc_.ident("action");
            auto it = std::find(L_.actions.begin(), L_.actions.end(), a);
            if (it == L_.actions.end()) sc_.fail_at(at, "unknown action '" + a + "'");
            sc_.expect('>');
            return prob_tail(static_cast<std::uint32_t>(it - L_.actions.begin()), false);
        }
        need(LogicKind::Weighted, "<m>");
        Rational m = literal();
        sc_.expect('>');
        return dag_.weight(std::move(m), formula());
    }

    DSEdge prob_tail(std::uint32_t action, bool implicit) {
        need(LogicKind::Prob, "<a>_{p}");
        if (implicit && L_.shape == DomainLogic::ProbShape::Labelled) sc_.fail("name the action: <a>_{p}");
        sc_.expect('_');
        sc_.expect('{');
        std::size_t at = sc_.pos();
        Rational p = literal();
        if (p.sign() < 0 || p > Rational(1)) sc_.fail_at(at, "probability must lie in [0,1]");
        sc_.expect('}');
        return dag_.prob(action, std::move(p), formula());
    }

    detail::Scanner sc_;
    DSDag& dag_;
    const DomainLogic& L_;
};

}  // namespace

std::string format_ds(DSEdge e, const DSDag& dag, const DomainLogic& L, std::size_t limit) {
    auto size = ds_tree_size(e, dag);
    if (size > limit)
        throw InputError("expanded formula has " + std::to_string(size) + " nodes, above the limit of " +
                         std::to_string(limit));
    std::string out;
    print_ds(e, dag, L, out);
    return out;
}

DSEdge parse_ds(std::string_view text, DSDag& dag, const DomainLogic& L) { return DSParser(text, dag, L).parse(); }

// ---------------------------------------------------------------- interpretation check

namespace {

void collect_states(const Term& t, std::vector<StateId>& out) {
    if (t.kind == Term::Kind::State) {
        out.push_back(t.tag);
        return;
    }
    for (const auto& it : t.items) collect_states(it, out);
}

struct ValueSetHash {
    std::size_t operator()(const FValue& v) const { return v.hash(); }
};

// Values F(col)(c(x)) over all colourings of x's successors (sampled beyond 3^7 for k = 3).
std::vector<FValue> realizable(const Coalgebra& c, std::uint32_t k, std::uint64_t seed) {
    std::unordered_set<FValue, ValueSetHash> seen;
    std::vector<FValue> out;
    std::vector<Colour> col(c.n(), 0);
    std::mt19937_64 rng(seed);
    constexpr std::size_t cap = 2187;
    for (StateId x = 0; x < c.n(); ++x) {
        std::vector<StateId> succ;
        collect_states(c.structure[x], succ);
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        std::size_t total = 1;
        bool exhaustive = true;
        for (std::size_t i = 0; i < succ.size(); ++i) {
            total *= k;
            if (total > cap) {
                exhaustive = false;
                total = cap;
                break;
            }
        }
        for (std::size_t r = 0; r < total; ++r) {
            if (exhaustive) {
                std::size_t code = r;
                for (StateId y : succ) {
                    col[y] = static_cast<Colour>(code % k);
                    code /= k;
                }
            } else {
                std::uniform_int_distribution<Colour> d(0, k - 1);
                for (StateId y : succ) col[y] = d(rng);
            }
            FValue v = apply_coloring(c.functor, c.structure[x], k, [&](StateId y) { return col[y]; });
            if (seen.insert(v).second) out.push_back(std::move(v));
        }
    }
    return out;
}

std::string show(const FValue& v, const FunctorExpr& f) { return to_string(v, f); }

}  // namespace

DsiReport verify_dsi(const DomainLogic& L, const Coalgebra& c, std::uint64_t seed) {
    if (!(c.functor == L.functor)) throw IncompatibleError("logic was built for a different functor");
    const FunctorExpr& f = L.functor;
    DsiReport rep;
    DSDag dag;
    DSEdge d = dag.var(0), r = dag.var(1);

    auto r1 = realizable(c, 1, seed);
    for (const auto& o : r1) {
        ++rep.values_checked;
        DSEdge phi = tau(o, L, dag);
        for (const auto& o2 : r1) {
            bool h = holds_on_value(phi, dag, o2, 1, {}, L);
            if (h != (o2 == o))
                rep.violations.push_back("tau for " + show(o, f) + (h ? " holds at " : " fails at ") + show(o2, f));
        }
    }

    auto r3 = realizable(c, 3, seed);
    std::unordered_map<FValue, std::vector<const FValue*>, ValueSetHash> cls3;
    for (const auto& t : r3) cls3[relabel(t, f, {0, 1, 1}, 2)].push_back(&t);
    std::vector<std::vector<bool>> vars3{{false, false, true}, {false, true, false}};
    for (const auto& t : r3) {
        ++rep.values_checked;
        DSEdge phi = lambda(t, L, dag, d, [&] { return r; });
        for (const FValue* t2 : cls3[relabel(t, f, {0, 1, 1}, 2)]) {
            bool h = holds_on_value(phi, dag, *t2, 3, vars3, L);
            if (h != (*t2 == t))
                rep.violations.push_back("lambda for " + show(t, f) + (h ? " holds at " : " fails at ") + show(*t2, f));
        }
    }

    if (L.simple()) {
        auto r2 = realizable(c, 2, seed);
        std::unordered_map<FValue, std::vector<const FValue*>, ValueSetHash> cls2;
        for (const auto& s : r2) cls2[relabel(s, f, {0, 0}, 1)].push_back(&s);
        std::vector<std::vector<bool>> vars2{{false, true}};
        for (const auto& s : r2) {
            ++rep.values_checked;
            DSEdge phi = kappa(s, L, dag, d);
            for (const FValue* s2 : cls2[relabel(s, f, {0, 0}, 1)]) {
                bool h = holds_on_value(phi, dag, *s2, 2, vars2, L);
                if (h != (*s2 == s))
                    rep.violations.push_back("kappa for " + show(s, f) + (h ? " holds at " : " fails at ") + show(*s2, f));
            }
        }
    }
    return rep;
}

}  // namespace cocert
