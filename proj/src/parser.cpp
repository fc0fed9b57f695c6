#include "chs/parser.hpp"

#include <cctype>

namespace chs {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool ident_ahead() {
        skip_ws();
        return pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])));
    }
    bool digit_ahead() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected identifier", pos);
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    Integer uinteger() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected number", pos);
        return Integer(s.substr(start, pos - start));
    }
    Rational rational() {
        Integer num = uinteger();
        if (accept('/')) {
            Integer den = uinteger();
            if (den == 0) throw ParseError("zero denominator", pos);
            return Rational(num, den);
        }
        return Rational(num);
    }
};

struct Parser {
    Lexer lex;
    TablePtr table;
    ParseDiagnostics* diag;

    GradedExpr expr() {
        bool neg = lex.accept('-');
        GradedExpr acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (lex.accept('+'))
                acc = acc + term();
            else if (lex.accept('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    GradedExpr term() {
        GradedExpr acc = factor();
        while (lex.accept('*')) acc = acc * factor();
        return acc;
    }

    GradedExpr factor() {
        if (lex.accept('(')) {
            GradedExpr e = expr();
            lex.expect(')');
            return e;
        }
        if (lex.digit_ahead()) return GradedExpr::constant(table, lex.rational());
        if (lex.peek() == '-') {
            // unary minus on a factor (accepted as an extension)
            lex.accept('-');
            return -factor();
        }
        size_t at = lex.pos;
        std::string name = lex.ident();
        if (name == "exp" && lex.peek() == '(') {
            lex.expect('(');
            GradedExpr e = GradedExpr::exponential(table, linexpr());
            lex.expect(')');
            return e;
        }
        int id = table->find(name);
        if (id < 0) throw ParseError("unknown identifier '" + name + "'", at);
        GradedExpr v = GradedExpr::variable(table, id);
        if (lex.accept('^')) {
            size_t ppos = lex.pos;
            Integer k = lex.uinteger();
            if (k < 1) throw ParseError("power must be >= 1", ppos);
            if (table->entry(id).parity == Parity::Odd) {
                if (k >= 2) {
                    if (diag) diag->odd_power_collapsed = true;
                    return GradedExpr(table);  // odd square vanishes
                }
                return v;
            }
            GradedExpr acc = v;
            for (Integer i = 1; i < k; ++i) acc = acc * v;
            return acc;
        }
        return v;
    }

    std::vector<std::pair<int, Rational>> linexpr() {
        std::vector<std::pair<int, Rational>> lf;
        bool neg = lex.accept('-');
        linterm(lf, neg);
        for (;;) {
            if (lex.accept('+'))
                linterm(lf, false);
            else if (lex.accept('-'))
                linterm(lf, true);
            else
                break;
        }
        return lf;
    }

    void linterm(std::vector<std::pair<int, Rational>>& lf, bool neg) {
        Rational c(1);
        if (lex.digit_ahead()) {
            c = lex.rational();
            lex.expect('*');
        }
        if (neg) c = -c;
        size_t at = lex.pos;
        std::string name = lex.ident();
        int id = table->find(name);
        if (id < 0) throw ParseError("unknown identifier '" + name + "'", at);
        if (table->entry(id).parity != Parity::Even)
            throw ParseError("exp argument must be a linear form in even variables", at);
        lf.push_back({id, c});
    }
};

}  // namespace

GradedExpr parse_expr(const std::string& text, TablePtr table, ParseDiagnostics* diag) {
    Parser p{Lexer{text}, std::move(table), diag};
    GradedExpr e = p.expr();
    if (!p.lex.eof()) throw ParseError("unexpected trailing input", p.lex.pos);
    return e;
}

std::string print_expr(const GradedExpr& e) { return e.str(); }

}  // namespace chs
