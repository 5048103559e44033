#include "nonnoether/parser.hpp"

#include "nonnoether/errors.hpp"

#include <cctype>
#include <optional>

namespace nonnoether {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, ""};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            // rational literal p/q: the slash only ever follows an integer
            if (pos_ < s_.size() && s_[pos_] == '/') {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            tok_ = {Token::Number, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Ident, s_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Token::Plus, "+"}; return;
            case '-': tok_ = {Token::Minus, "-"}; return;
            case '*': tok_ = {Token::Star, "*"}; return;
            case '^': tok_ = {Token::Caret, "^"}; return;
            case '(': tok_ = {Token::LParen, "("}; return;
            case ')': tok_ = {Token::RParen, ")"}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_{Token::End, ""};
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& names)
        : lex_(text), names_(names), dim_(static_cast<int>(names.size())) {}

    Expr parse() {
        Expr e = parse_sum();
        if (lex_.peek().kind != Token::End) throw ParseError("trailing input after expression");
        return e;
    }

private:
    Expr parse_sum() {
        Expr e = parse_term();
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            Token op = lex_.take();
            Expr rhs = parse_term();
            if (op.kind == Token::Plus)
                e += rhs;
            else
                e -= rhs;
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            e = e * parse_factor();
        }
        return e;
    }

    Expr parse_factor() {
        Expr base = parse_atom();
        while (lex_.peek().kind == Token::Caret) {
            lex_.take();
            Token t = lex_.take();
            if (t.kind != Token::Number || t.text.find('/') != std::string::npos)
                throw ParseError("exponent must be a non-negative integer");
            base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
        }
        return base;
    }

    Expr parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Number:
                return Expr::constant(dim_, rational_from_string(t.text));
            case Token::Minus:
                return -parse_factor();
            case Token::LParen: {
                Expr e = parse_sum();
                expect(Token::RParen, ")");
                return e;
            }
            case Token::Ident: {
                if (t.text == "t") return Expr::time_var(dim_);
                if (t.text == "exp") {
                    expect(Token::LParen, "(");
                    std::vector<Rational> w = parse_linform();
                    if (lex_.peek().kind != Token::RParen)
                        throw NonLinearExponent(
                            "exp argument must be a rational-linear form in coordinates");
                    lex_.take();
                    return Expr::exp_linear(dim_, w);
                }
                return Expr::coord(dim_, coord_index(t.text));
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'");
        }
    }

    // linform := ('+'|'-')? weighted (('+'|'-') weighted)*
    // weighted := rational '*' coord | coord
    std::vector<Rational> parse_linform() {
        std::vector<Rational> w(static_cast<std::size_t>(dim_), Rational(0));
        bool first = true;
        while (true) {
            Rational sign(1);
            if (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
                if (lex_.take().kind == Token::Minus) sign = -1;
            } else if (!first) {
                break;
            }
            Rational weight(1);
            Token t = lex_.take();
            if (t.kind == Token::Number) {
                weight = rational_from_string(t.text);
                if (lex_.peek().kind == Token::Star) {
                    lex_.take();
                    t = lex_.take();
                } else {
                    throw NonLinearExponent("constant term inside exp()");
                }
            }
            if (t.kind != Token::Ident || t.text == "t" || t.text == "exp")
                throw NonLinearExponent("exp argument must be a rational-linear form in coordinates");
            w[static_cast<std::size_t>(coord_index(t.text))] += sign * weight;
            first = false;
            if (lex_.peek().kind != Token::Plus && lex_.peek().kind != Token::Minus) break;
        }
        return w;
    }

    int coord_index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        throw UnknownSymbol("unknown coordinate '" + name + "'");
    }

    void expect(Token::Kind k, const char* what) {
        if (lex_.take().kind != k) throw ParseError(std::string("expected '") + what + "'");
    }

    Lexer lex_;
    const std::vector<std::string>& names_;
    int dim_;
};

} // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& coord_names) {
    return Parser(text, coord_names).parse();
}

} // namespace nonnoether
