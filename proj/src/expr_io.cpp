#include "plab/expr_io.hpp"

#include <cctype>

namespace plab {

namespace {

class Parser {
public:
    Parser(const TablePtr& table, const std::string& text) : table_(table), s_(text) {}

    RationalExpr run() {
        RationalExpr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalExpr expr() {
        RationalExpr acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    RationalExpr term() {
        RationalExpr acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RationalExpr d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalExpr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RationalExpr power() {
        RationalExpr base = primary();
        if (!accept('^')) return base;
        skip();
        bool neg = accept('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent", pos_);
        int n = std::stoi(s_.substr(start, pos_ - start));
        if (neg && base.is_zero()) throw ParseError("zero to a negative power", start);
        return base.pow(neg ? -n : n);
    }

    RationalExpr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalExpr e = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalExpr(table_, BigRational(BigInteger(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto idx = table_->find(name);
            if (!idx) throw UnknownSymbol(name);
            return RationalExpr(Polynomial::variable(table_, *idx));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    const TablePtr& table_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_expr(const TablePtr& table, const std::string& text) { return Parser(table, text).run(); }

Polynomial parse_poly(const TablePtr& table, const std::string& text) {
    RationalExpr e = parse_expr(table, text);
    if (!e.is_polynomial()) throw ParseError("expression is not a polynomial", 0);
    return e.num();
}

}  // namespace plab
