#include "orbitlab/expr.hpp"

#include <cctype>

namespace orbitlab {

namespace {

struct Token {
    enum class Kind { Number, Decimal, Ident, Op, End } kind;
    std::string text;
    long line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
        if (pos_ >= s_.size()) return {Token::Kind::End, "", line_, col_};
        long line = line_, col = col_;
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            bool decimal = false;
            while (pos_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                decimal = decimal || s_[pos_] == '.';
                num += s_[pos_];
                advance();
            }
            return {decimal ? Token::Kind::Decimal : Token::Kind::Number, num, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_')) {
                id += s_[pos_];
                advance();
            }
            return {Token::Kind::Ident, id, line, col};
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            advance();
            return {Token::Kind::Op, std::string(1, c), line, col};
        }
        throw Error(ErrorCode::SyntaxError,
                    "unexpected character '" + std::string(1, c) + "' at " + where(line, col));
    }

    static std::string where(long line, long col) {
        return "line " + std::to_string(line) + ", column " + std::to_string(col);
    }

private:
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& s_;
    size_t pos_ = 0;
    long line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : lexer_(text), vars_(variables) {
        shift();
    }

    RatFunc parse() {
        RatFunc e = expression();
        if (tok_.kind != Token::Kind::End)
            throw Error(ErrorCode::SyntaxError,
                        "unexpected token '" + tok_.text + "' at " + Lexer::where(tok_.line, tok_.col));
        return e;
    }

private:
    int nvars() const { return static_cast<int>(vars_.size()); }
    void shift() { tok_ = lexer_.next(); }
    bool is_op(const char* op) const { return tok_.kind == Token::Kind::Op && tok_.text == op; }

    RatFunc expression() {
        bool negate = false;
        while (is_op("+") || is_op("-")) {
            if (is_op("-")) negate = !negate;
            shift();
        }
        RatFunc acc = term();
        if (negate) acc = acc * Rational(-1);
        while (is_op("+") || is_op("-")) {
            bool minus = is_op("-");
            shift();
            RatFunc t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    RatFunc term() {
        RatFunc acc = factor();
        while (is_op("*") || is_op("/")) {
            bool div = is_op("/");
            shift();
            RatFunc f = factor();
            if (div) {
                if (f.num.is_zero())
                    throw Error(ErrorCode::SyntaxError, "division by the zero polynomial");
                acc = RatFunc(acc.num * f.den, acc.den * f.num);
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }

    RatFunc factor() {
        if (is_op("-")) {
            shift();
            return factor() * Rational(-1);
        }
        if (is_op("+")) {
            shift();
            return factor();
        }
        RatFunc base = atom();
        if (is_op("^")) {
            shift();
            long e = exponent();
            return base.pow(e);
        }
        return base;
    }

    long exponent() {
        bool neg = false;
        bool parenthesized = is_op("(");
        if (parenthesized) shift();
        while (is_op("-") || is_op("+")) {
            if (is_op("-")) neg = !neg;
            shift();
        }
        if (tok_.kind == Token::Kind::Decimal)
            throw Error(ErrorCode::NonIntegerExponent,
                        "exponent '" + tok_.text + "' is not an integer at " +
                            Lexer::where(tok_.line, tok_.col));
        if (tok_.kind != Token::Kind::Number)
            throw Error(ErrorCode::SyntaxError, "expected an integer exponent at " +
                                                    Lexer::where(tok_.line, tok_.col));
        long e = std::stol(tok_.text);
        shift();
        if (parenthesized) {
            if (!is_op(")"))
                throw Error(ErrorCode::SyntaxError, "expected ')' after exponent at " +
                                                        Lexer::where(tok_.line, tok_.col));
            shift();
        }
        return neg ? -e : e;
    }

    RatFunc atom() {
        if (tok_.kind == Token::Kind::Decimal)
            throw Error(ErrorCode::SyntaxError,
                        "decimal literal '" + tok_.text + "' is not supported at " +
                            Lexer::where(tok_.line, tok_.col) + "; use p/q");
        if (tok_.kind == Token::Kind::Number) {
            Rational r = parse_rational(tok_.text);
            shift();
            return RatFunc::constant(nvars(), r);
        }
        if (tok_.kind == Token::Kind::Ident) {
            for (size_t v = 0; v < vars_.size(); ++v)
                if (vars_[v] == tok_.text) {
                    shift();
                    return RatFunc::variable(nvars(), static_cast<int>(v));
                }
            throw Error(ErrorCode::UnknownVariable,
                        "unknown variable '" + tok_.text + "' at " +
                            Lexer::where(tok_.line, tok_.col));
        }
        if (is_op("(")) {
            shift();
            RatFunc e = expression();
            if (!is_op(")"))
                throw Error(ErrorCode::SyntaxError,
                            "expected ')' at " + Lexer::where(tok_.line, tok_.col));
            shift();
            return e;
        }
        throw Error(ErrorCode::SyntaxError, "unexpected token '" + tok_.text + "' at " +
                                                Lexer::where(tok_.line, tok_.col));
    }

    Lexer lexer_;
    std::vector<std::string> vars_;
    Token tok_;
};

}  // namespace

RatFunc parse_expression(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(text, variables).parse();
}

Rational parse_constant(const std::string& text) {
    RatFunc f = parse_expression(text, {});
    Rational den = f.den.eval({});
    if (den == 0) throw Error(ErrorCode::BadInput, "constant expression with zero denominator");
    return f.num.eval({}) / den;
}

RatFunc1 parse_ratfunc1(const std::string& text, const std::string& variable) {
    RatFunc f = parse_expression(text, {variable});
    return RatFunc1(f.num.to_poly1(), f.den.to_poly1());
}

std::string ratfunc_to_string(const RatFunc& f, const std::vector<std::string>& variables) {
    bool trivial_den =
        f.den == MultiPoly::constant(f.den.nvars(), Rational(1));
    if (trivial_den) return f.num.to_string(variables);
    return "(" + f.num.to_string(variables) + ")/(" + f.den.to_string(variables) + ")";
}

}  // namespace orbitlab
