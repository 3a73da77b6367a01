#pragma once

/* Expression grammar shared by the CLI and by map documents:
 *
 *     expr   := term (('+' | '-') term)*
 *     term   := factor ('*' factor)*
 *     factor := '-' factor | atom ('^' signed-int)?
 *     atom   := rational | x<i> | u<i> | 'tau' | '(' expr ')'
 *
 * '*' is the operator product when lowering to a Symbol and the plain
 * commutative product when lowering to a map component, where tau is not
 * allowed.  Only tau admits negative exponents; everything else takes
 * natural powers.
 */

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wkb/errors.hpp"
#include "wkb/multipoly.hpp"
#include "wkb/rational.hpp"
#include "wkb/symbol.hpp"

namespace wkb {

namespace expr_detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, Slash, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

[[noreturn]] inline void parse_fail(std::size_t pos, const std::string& msg) {
    fail(ErrorKind::ParseError, "parse error at position " + std::to_string(pos + 1) + ": " + msg);
}

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
        } else {
            Tok k;
            switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '/': k = Tok::Slash; break;
            default:
                parse_fail(start, std::string("unexpected character '") + c + "'");
            }
            out.push_back({k, std::string(1, c), start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    enum Kind { Rat, VarX, VarU, Tau, Add, Sub, Neg, Mul, Pow } kind;
    Rational value;       // Rat
    int index = 0;        // VarX / VarU, 1-based
    long long exponent = 0; // Pow
    NodePtr lhs, rhs;
    std::size_t pos = 0;
};

inline NodePtr make_node(Node::Kind k, std::size_t pos) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->pos = pos;
    return n;
}

class Parser {
public:
    Parser(std::string_view src, int dim) : toks_(tokenize(src)), dim_(dim) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        if (cur().kind != Tok::End) parse_fail(cur().pos, "unexpected token '" + cur().text + "'");
        return e;
    }

private:
    const Token& cur() const { return toks_[i_]; }
    void advance() { ++i_; }

    bool accept(Tok k) {
        if (cur().kind == k) {
            advance();
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            auto kind = cur().kind == Tok::Plus ? Node::Add : Node::Sub;
            std::size_t pos = cur().pos;
            advance();
            auto n = make_node(kind, pos);
            n->lhs = std::move(e);
            n->rhs = parse_term();
            e = std::move(n);
        }
        return e;
    }

    NodePtr parse_term() {
        NodePtr e = parse_factor();
        while (cur().kind == Tok::Star) {
            std::size_t pos = cur().pos;
            advance();
            auto n = make_node(Node::Mul, pos);
            n->lhs = std::move(e);
            n->rhs = parse_factor();
            e = std::move(n);
        }
        return e;
    }

    NodePtr parse_factor() {
        if (cur().kind == Tok::Minus) {
            std::size_t pos = cur().pos;
            advance();
            auto n = make_node(Node::Neg, pos);
            n->lhs = parse_factor();
            return n;
        }
        NodePtr base = parse_atom();
        if (cur().kind == Tok::Caret) {
            std::size_t pos = cur().pos;
            advance();
            long long k = parse_signed_int();
            if (k < 0 && base->kind != Node::Tau)
                parse_fail(pos, "only tau admits negative exponents");
            auto n = make_node(Node::Pow, pos);
            n->exponent = k;
            n->lhs = std::move(base);
            return n;
        }
        return base;
    }

    long long parse_signed_int() {
        bool neg = accept(Tok::Minus);
        if (cur().kind != Tok::Number) parse_fail(cur().pos, "expected an integer exponent");
        long long v = std::stoll(cur().text);
        advance();
        return neg ? -v : v;
    }

    NodePtr parse_atom() {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Number: {
            auto n = make_node(Node::Rat, t.pos);
            Integer num(t.text);
            advance();
            if (accept(Tok::Slash)) {
                if (cur().kind != Tok::Number)
                    parse_fail(cur().pos, "expected a denominator");
                Integer den(cur().text);
                if (den == 0) parse_fail(cur().pos, "zero denominator");
                advance();
                n->value = Rational(num, den);
            } else {
                n->value = Rational(num);
            }
            return n;
        }
        case Tok::Ident:
            return parse_ident();
        case Tok::LParen: {
            advance();
            NodePtr e = parse_expr();
            if (!accept(Tok::RParen)) parse_fail(cur().pos, "expected ')'");
            return e;
        }
        default:
            parse_fail(t.pos, "expected a value");
        }
    }

    NodePtr parse_ident() {
        const Token& t = cur();
        if (t.text == "tau") {
            advance();
            return make_node(Node::Tau, t.pos);
        }
        if ((t.text[0] == 'x' || t.text[0] == 'u') && t.text.size() > 1) {
            bool digits = true;
            for (std::size_t k = 1; k < t.text.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(t.text[k]))) digits = false;
            if (digits) {
                int idx = std::stoi(t.text.substr(1));
                if (idx < 1 || idx > dim_)
                    fail(ErrorKind::IndexOutOfRange,
                         "parse error at position " + std::to_string(t.pos + 1) + ": variable " +
                             t.text + " out of range for dimension " + std::to_string(dim_));
                auto n = make_node(t.text[0] == 'x' ? Node::VarX : Node::VarU, t.pos);
                n->index = idx;
                advance();
                return n;
            }
        }
        parse_fail(t.pos, "unknown identifier '" + t.text + "'");
    }

    std::vector<Token> toks_;
    int dim_;
    std::size_t i_ = 0;
};

inline Symbol lower_symbol(const Node& n, int dim, long long floor) {
    switch (n.kind) {
    case Node::Rat: return Symbol::constant(dim, n.value, floor);
    case Node::VarX: return Symbol::generator_x(dim, n.index, floor);
    case Node::VarU: return Symbol::generator_u(dim, n.index, floor);
    case Node::Tau: return Symbol::tau_power(dim, 1, floor);
    case Node::Add: return lower_symbol(*n.lhs, dim, floor) + lower_symbol(*n.rhs, dim, floor);
    case Node::Sub: return lower_symbol(*n.lhs, dim, floor) - lower_symbol(*n.rhs, dim, floor);
    case Node::Neg: return -lower_symbol(*n.lhs, dim, floor);
    case Node::Mul: return star(lower_symbol(*n.lhs, dim, floor), lower_symbol(*n.rhs, dim, floor));
    case Node::Pow: {
        if (n.lhs->kind == Node::Tau) return Symbol::tau_power(dim, n.exponent, floor);
        Symbol base = lower_symbol(*n.lhs, dim, floor);
        Symbol r = Symbol::one(dim, floor);
        for (long long k = 0; k < n.exponent; ++k) r = star(r, base);
        return r;
    }
    }
    fail(ErrorKind::ParseError, "corrupt expression tree");
}

inline MultiPoly lower_poly(const Node& n, int dim) {
    switch (n.kind) {
    case Node::Rat: return MultiPoly::constant(dim, n.value);
    case Node::VarX: return MultiPoly::variable_x(dim, n.index);
    case Node::VarU: return MultiPoly::variable_u(dim, n.index);
    case Node::Tau:
        fail(ErrorKind::ParseError, "parse error at position " + std::to_string(n.pos + 1) +
                                        ": tau is not allowed in map components");
    case Node::Add: return lower_poly(*n.lhs, dim) + lower_poly(*n.rhs, dim);
    case Node::Sub: return lower_poly(*n.lhs, dim) - lower_poly(*n.rhs, dim);
    case Node::Neg: return -lower_poly(*n.lhs, dim);
    case Node::Mul: return lower_poly(*n.lhs, dim) * lower_poly(*n.rhs, dim);
    case Node::Pow: {
        if (n.exponent < 0)
            fail(ErrorKind::ParseError, "parse error at position " + std::to_string(n.pos + 1) +
                                            ": negative exponent in a map component");
        return pow(lower_poly(*n.lhs, dim), static_cast<unsigned>(n.exponent));
    }
    }
    fail(ErrorKind::ParseError, "corrupt expression tree");
}

} // namespace expr_detail

/* Lower with '*' as the operator product; atoms live at floor -depth. */
inline Symbol parse_operator_expr(std::string_view text, int dim, long long depth) {
    expr_detail::Parser p(text, dim);
    auto ast = p.parse();
    return expr_detail::lower_symbol(*ast, dim, -depth);
}

/* Lower with '*' commutative; tau and negative exponents are rejected. */
inline MultiPoly parse_map_component(std::string_view text, int dim) {
    expr_detail::Parser p(text, dim);
    auto ast = p.parse();
    return expr_detail::lower_poly(*ast, dim);
}

} // namespace wkb
