#pragma once

/* Canonical text rendering.  Terms are listed by descending tau-order and,
 * within an order, by descending graded-lex on (x_1..x_n, u_1..u_n); a
 * parse of the output reproduces the symbol exactly, and printing is a
 * fixed point on its own output. */

#include <string>
#include <vector>

#include "wkb/multipoly.hpp"
#include "wkb/rational.hpp"
#include "wkb/symbol.hpp"

namespace wkb {

namespace detail {

struct TextTerm {
    bool negative;
    std::string body;
};

/* "3/2*x1^2*u1*tau^-1" sans the sign, with unit coefficients and tau^0
 * suppressed. */
inline TextTerm render_term(int dim, const Exponents& e, const Rational& c, long long tau) {
    TextTerm t;
    t.negative = c < 0;
    Rational a = t.negative ? Rational(-c) : c;
    std::vector<std::string> parts;
    bool have_symbols = exponents_degree(e) > 0 || tau != 0;
    if (!(a == 1) || !have_symbols) parts.push_back(rational_to_string(a));
    for (std::size_t s = 0; s < e.size(); ++s) {
        if (e[s] == 0) continue;
        std::string v = slot_name(dim, static_cast<int>(s));
        if (e[s] > 1) v += "^" + std::to_string(e[s]);
        parts.push_back(std::move(v));
    }
    if (tau != 0) {
        if (tau == 1)
            parts.push_back("tau");
        else
            parts.push_back("tau^" + std::to_string(tau));
    }
    t.body = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) t.body += "*" + parts[i];
    return t;
}

inline std::string join_terms(const std::vector<TextTerm>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms[0].negative ? "-" + terms[0].body : terms[0].body;
    for (std::size_t i = 1; i < terms.size(); ++i)
        out += (terms[i].negative ? " - " : " + ") + terms[i].body;
    return out;
}

} // namespace detail

inline std::string to_text(const MultiPoly& p) {
    std::vector<detail::TextTerm> terms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back(detail::render_term(p.dim(), it->first, it->second, 0));
    return detail::join_terms(terms);
}

inline std::string to_text(const Symbol& s) {
    std::vector<detail::TextTerm> terms;
    for (auto jt = s.terms().rbegin(); jt != s.terms().rend(); ++jt)
        for (auto it = jt->second.terms().rbegin(); it != jt->second.terms().rend(); ++it)
            terms.push_back(detail::render_term(s.dim(), it->first, it->second, jt->first));
    return detail::join_terms(terms);
}

inline std::string order_to_text(const Symbol& s) {
    OrderInfo oi = order_info(s);
    if (!oi.finite) return "order -infinity";
    return "order " + std::to_string(oi.order) + ", principal " + to_text(oi.principal);
}

} // namespace wkb
