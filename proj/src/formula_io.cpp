#include "cocert/certdag.hpp"
#include "scanner.hpp"

namespace cocert {

namespace {

class FormulaParser {
public:
    FormulaParser(std::string_view text, FormulaDag& dag, const FunctorExpr& f)
        : sc_(text, 0, 0, false), text_(text), dag_(dag), f_(f) {}

    EdgeRef parse() {
        EdgeRef e = formula();
        if (!sc_.at_end()) sc_.fail("unexpected trailing input" + sc_.found());
        return e;
    }

private:
    EdgeRef formula() {
        char ch = sc_.peek();
        if (ch == '~') {
            sc_.accept('~');
            return !formula();
        }
        if (ch == '(') {
            sc_.accept('(');
            EdgeRef a = formula();
            if (sc_.accept('&')) {
                EdgeRef b = formula();
                sc_.expect(')');
                return dag_.conj(a, b);
            }
            if (sc_.accept('|')) {
                EdgeRef b = formula();
                sc_.expect(')');
                return !dag_.conj(!a, !b);
            }
            sc_.expect(')');
            return a;
        }
        if (ch == '<') return modal();
        std::size_t at = sc_.pos();
        std::string word = sc_.peek_ident() ? sc_.ident() : "";
        if (word == "true") return dag_.top();
        if (word == "false") return !dag_.top();
        sc_.set_pos(at);
        sc_.fail("expected a formula" + sc_.found());
    }

    EdgeRef modal() {
        sc_.expect('<');
        std::size_t start = sc_.pos();
        std::size_t close = text_.find('>', start);
        if (close == std::string_view::npos) sc_.fail("unterminated modality label");
        std::string_view label = text_.substr(start, close - start);
        sc_.set_pos(close + 1);
        std::vector<EdgeRef> args;
        if (sc_.peek() == '(') {
            sc_.accept('(');
            args.push_back(formula());
            if (sc_.accept(',')) args.push_back(formula());
            sc_.expect(')');
        }
        auto arity = static_cast<std::uint8_t>(args.size());
        FValue v;
        try {
            v = parse_fvalue(label, f_, arity + 1);
        } catch (const ParseError& e) {
            throw ParseError(e.message(), 0, start + e.column());
        } catch (const InputError& e) {
            sc_.fail_at(start, e.what());
        }
        EdgeRef a = arity > 0 ? args[0] : dag_.top();
        EdgeRef b = arity > 1 ? args[1] : dag_.top();
        return dag_.modal(std::move(v), arity, a, b);
    }

    detail::Scanner sc_;
    std::string_view text_;
    FormulaDag& dag_;
    const FunctorExpr& f_;
};

}  // namespace

EdgeRef parse_formula(std::string_view text, FormulaDag& dag, const FunctorExpr& f) {
    return FormulaParser(text, dag, f).parse();
}

}  // namespace cocert
