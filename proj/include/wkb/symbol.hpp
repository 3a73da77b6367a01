#pragma once

/* Truncated operator symbols: finite Laurent-style sums
 *
 *     P  =  sum_{j = floor..order}  p_j(x, u) tau^j
 *
 * with polynomial coefficients over Q.  A symbol carries an explicit
 * reliability floor; orders below the floor are unknown rather than
 * zero, and every operation propagates the tightest floor it can
 * honestly guarantee.  The zero symbol keeps its floor and has order
 * "minus infinity" (OrderInfo::finite == false).
 *
 * The product is the normal-ordered composition rule
 *
 *     sigma(P * Q) = sum_alpha tau^{-|alpha|}/alpha!
 *                    d_u^alpha sigma(P) d_x^alpha sigma(Q),
 *
 * which on generators gives u_i * x_i = x_i u_i + tau^{-1} and makes
 * [., x_i] = tau^{-1} d_{u_i} and [., u_i] = -tau^{-1} d_{x_i}.
 */

#include <map>
#include <utility>
#include <vector>

#include "wkb/errors.hpp"
#include "wkb/multipoly.hpp"
#include "wkb/rational.hpp"

namespace wkb {

class Symbol {
public:
    using TermMap = std::map<long long, MultiPoly>;

    explicit Symbol(int dim = 0, long long floor = 0) : dim_(dim), floor_(floor) {
        if (dim < 0) fail(ErrorKind::BadRequest, "negative dimension");
    }

    /* Embeds a polynomial coefficient at a single order; silently dropped
     * if the order lies below the floor. */
    static Symbol embed(const MultiPoly& p, long long order, long long floor) {
        Symbol s(p.dim(), floor);
        if (order >= floor && !p.is_zero()) s.terms_.emplace(order, p);
        return s;
    }

    static Symbol constant(int dim, const Rational& c, long long floor) {
        return embed(MultiPoly::constant(dim, c), 0, floor);
    }

    static Symbol one(int dim, long long floor) { return constant(dim, 1, floor); }

    static Symbol generator_x(int dim, int i, long long floor) {
        return embed(MultiPoly::variable_x(dim, i), 0, floor);
    }

    static Symbol generator_u(int dim, int i, long long floor) {
        return embed(MultiPoly::variable_u(dim, i), 0, floor);
    }

    static Symbol tau_power(int dim, long long k, long long floor) {
        return embed(MultiPoly::constant(dim, 1), k, floor);
    }

    int dim() const { return dim_; }
    long long floor() const { return floor_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /* Coefficient at an order inside the window; asking below the floor is
     * a logic error, not a zero. */
    MultiPoly coefficient(long long order) const {
        if (order < floor_)
            fail(ErrorKind::EmptyWindow, "coefficient requested below the reliability floor");
        auto it = terms_.find(order);
        return it != terms_.end() ? it->second : MultiPoly(dim_);
    }

    void set_coefficient(long long order, MultiPoly p) {
        if (order < floor_)
            fail(ErrorKind::EmptyWindow, "order below the reliability floor");
        if (p.dim() != dim_) fail(ErrorKind::DimensionMismatch, "coefficient dimension mismatch");
        if (p.is_zero())
            terms_.erase(order);
        else
            terms_.insert_or_assign(order, std::move(p));
    }

    void accumulate(long long order, const MultiPoly& p) {
        if (order < floor_ || p.is_zero()) return;
        auto it = terms_.find(order);
        if (it == terms_.end()) {
            terms_.emplace(order, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.dim_ == b.dim_ && a.floor_ == b.floor_ && a.terms_ == b.terms_;
    }

private:
    int dim_;
    long long floor_;
    TermMap terms_;
};

struct OrderInfo {
    bool finite = false;     // false: zero within the window, order -infinity
    long long order = 0;
    MultiPoly principal;
};

inline OrderInfo order_info(const Symbol& s) {
    if (s.is_zero()) return {false, 0, MultiPoly(s.dim())};
    auto top = s.terms().rbegin();
    return {true, top->first, top->second};
}

inline void check_same_dim(const Symbol& a, const Symbol& b) {
    if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "symbol dimensions differ");
}

/* Floor raised to at least f; known coefficients below it are forgotten. */
inline Symbol truncated(const Symbol& s, long long f) {
    long long nf = std::max(f, s.floor());
    Symbol r(s.dim(), nf);
    for (const auto& [j, p] : s.terms())
        if (j >= nf) r.set_coefficient(j, p);
    return r;
}

inline Symbol operator+(const Symbol& a, const Symbol& b) {
    check_same_dim(a, b);
    long long f = std::max(a.floor(), b.floor());
    Symbol r(a.dim(), f);
    for (const auto& [j, p] : a.terms())
        if (j >= f) r.accumulate(j, p);
    for (const auto& [j, p] : b.terms())
        if (j >= f) r.accumulate(j, p);
    return r;
}

inline Symbol operator-(const Symbol& a) {
    Symbol r(a.dim(), a.floor());
    for (const auto& [j, p] : a.terms()) r.set_coefficient(j, -p);
    return r;
}

inline Symbol operator-(const Symbol& a, const Symbol& b) { return a + (-b); }

inline Symbol operator*(const Rational& c, const Symbol& a) {
    Symbol r(a.dim(), a.floor());
    if (c == 0) return r;
    for (const auto& [j, p] : a.terms()) r.set_coefficient(j, p * c);
    return r;
}

/* Multiplication by tau^k shifts every order and the floor. */
inline Symbol tau_shift(const Symbol& a, long long k) {
    Symbol r(a.dim(), a.floor() + k);
    for (const auto& [j, p] : a.terms()) r.set_coefficient(j + k, p);
    return r;
}

namespace detail {

/* All alpha in N^n with |alpha| == total. */
inline void multiindices_rec(int n, unsigned total, std::vector<unsigned>& alpha, int pos,
                             std::vector<std::vector<unsigned>>& out) {
    if (pos == n - 1) {
        alpha[static_cast<std::size_t>(pos)] = total;
        out.push_back(alpha);
        return;
    }
    for (unsigned v = 0; v <= total; ++v) {
        alpha[static_cast<std::size_t>(pos)] = v;
        multiindices_rec(n, total - v, alpha, pos + 1, out);
    }
}

inline std::vector<std::vector<unsigned>> multiindices(int n, unsigned total) {
    std::vector<std::vector<unsigned>> out;
    if (n == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<unsigned> alpha(static_cast<std::size_t>(n), 0);
    multiindices_rec(n, total, alpha, 0, out);
    return out;
}

/* Plain d^alpha over the x-slots or the u-slots. */
inline MultiPoly multi_derivative(const MultiPoly& p, const std::vector<unsigned>& alpha,
                                  bool over_u) {
    MultiPoly r = p;
    int base = over_u ? p.dim() : 0;
    for (int i = 0; i < p.dim(); ++i)
        for (unsigned k = 0; k < alpha[static_cast<std::size_t>(i)]; ++k)
            r = derivative(r, base + i);
    return r;
}

} // namespace detail

/* The floor of a product: each factor's unknown tail enters multiplied by
 * the other factor's leading term, so reliability ends at
 * max(F_P + ord Q, F_Q + ord P); with a zero factor only the surviving
 * combination remains, and for two zeros the floors add. */
inline long long star_floor(const Symbol& p, const Symbol& q) {
    OrderInfo op = order_info(p), oq = order_info(q);
    if (!op.finite && !oq.finite) return p.floor() + q.floor();
    if (!op.finite) return p.floor() + oq.order;
    if (!oq.finite) return q.floor() + op.order;
    return std::max(p.floor() + oq.order, q.floor() + op.order);
}

inline Symbol star(const Symbol& p, const Symbol& q) {
    check_same_dim(p, q);
    int n = p.dim();
    Symbol r(n, star_floor(p, q));
    for (const auto& [j, pj] : p.terms()) {
        for (const auto& [l, ql] : q.terms()) {
            unsigned amax = std::min(pj.max_u_degree(), ql.max_x_degree());
            for (unsigned a = 0; a <= amax; ++a) {
                long long ord = j + l - static_cast<long long>(a);
                if (ord < r.floor()) break;
                for (const auto& alpha : detail::multiindices(n, a)) {
                    MultiPoly dp = divided_derivative(pj, alpha, /*over_u=*/true);
                    if (dp.is_zero()) continue;
                    MultiPoly dq = detail::multi_derivative(ql, alpha, /*over_u=*/false);
                    if (dq.is_zero()) continue;
                    r.accumulate(ord, dp * dq);
                }
            }
        }
    }
    return r;
}

inline Symbol commutator(const Symbol& p, const Symbol& q) {
    return star(p, q) - star(q, p);
}

/* Equality as far as both windows reach. */
inline bool equal_on_common_window(const Symbol& a, const Symbol& b) {
    check_same_dim(a, b);
    long long f = std::max(a.floor(), b.floor());
    return truncated(a, f).terms() == truncated(b, f).terms();
}

inline bool is_one_on_window(const Symbol& s) {
    return equal_on_common_window(s, Symbol::one(s.dim(), s.floor()));
}

/* Neumann-series inverse.  Requires a nonzero constant principal symbol;
 * the result is reliable down to floor - 2*order. */
inline Symbol invert(const Symbol& p) {
    OrderInfo oi = order_info(p);
    if (!oi.finite)
        fail(ErrorKind::NonInvertible, "symbol is zero within its window");
    if (!oi.principal.is_constant())
        fail(ErrorKind::NonInvertible, "principal symbol is not a nonzero constant");
    Rational c = oi.principal.constant_term();
    long long m = oi.order;
    long long f = p.floor() - m;

    Symbol b = tau_shift(Rational(1) / c * p, -m); // order 0, sigma_0 = 1, floor f
    Symbol nil = Symbol::one(p.dim(), f) - b;      // order <= -1
    Symbol sum = Symbol::one(p.dim(), f);
    Symbol pw = Symbol::one(p.dim(), f);
    while (true) {
        pw = truncated(star(pw, nil), f);
        if (pw.is_zero()) break;
        sum = sum + pw;
    }
    return Rational(1) / c * tau_shift(sum, -m);
}

/* Order-by-order square root with the chosen branch sign at the top.
 * Requires order 0 and a constant principal symbol that is the square of
 * a positive rational.  The floor is preserved. */
inline Symbol square_root(const Symbol& p, int sign = 1) {
    OrderInfo oi = order_info(p);
    if (!oi.finite || oi.order != 0)
        fail(ErrorKind::NotASquare, "square root requires a symbol of order 0");
    if (!oi.principal.is_constant())
        fail(ErrorKind::NotASquare, "principal symbol is not constant");
    auto root = exact_sqrt(oi.principal.constant_term());
    if (!root || *root == 0)
        fail(ErrorKind::NotASquare, "principal symbol is not a positive rational square");
    Rational q0 = sign >= 0 ? *root : -*root;

    Symbol q = Symbol::constant(p.dim(), q0, p.floor());
    for (long long k = 1; k <= -p.floor(); ++k) {
        Symbol qq = truncated(star(q, q), p.floor());
        MultiPoly defect = p.coefficient(-k) - qq.coefficient(-k);
        if (!defect.is_zero()) q.set_coefficient(-k, defect * (Rational(1) / (2 * q0)));
    }
    return q;
}

/* Formal adjoint: tau -> -tau followed by the normal-ordering sum
 * sigma(P^*) = sum_alpha tau^{-|alpha|}/alpha! d_u^alpha d_x^alpha
 * [sigma(P)(x, u, -tau)].  Anti-homomorphism; fixes x_i, u_i. */
inline Symbol adjoint(const Symbol& p) {
    Symbol r(p.dim(), p.floor());
    for (const auto& [j, pj] : p.terms()) {
        bool odd = ((j % 2) + 2) % 2 == 1;
        MultiPoly base = odd ? -pj : pj;
        unsigned amax = std::min(base.max_x_degree(), base.max_u_degree());
        for (unsigned a = 0; a <= amax; ++a) {
            long long ord = j - static_cast<long long>(a);
            if (ord < r.floor()) break;
            for (const auto& alpha : detail::multiindices(p.dim(), a)) {
                MultiPoly t = divided_derivative(base, alpha, /*over_u=*/true);
                if (t.is_zero()) continue;
                t = detail::multi_derivative(t, alpha, /*over_u=*/false);
                if (t.is_zero()) continue;
                r.accumulate(ord, t);
            }
        }
    }
    return r;
}

inline bool is_star_unitary(const Symbol& p) {
    OrderInfo oi = order_info(p);
    if (!oi.finite || oi.order != 0) return false;
    if (!(oi.principal == MultiPoly::constant(p.dim(), 1))) return false;
    return is_one_on_window(star(p, adjoint(p)));
}

/* Splits off the central (constant-coefficient) part as a dim-0 scalar
 * symbol; central + embed(residual) reassembles the input. */
struct CentralSplit {
    Symbol central;  // dim 0
    Symbol residual; // same dim as the input
};

inline CentralSplit central_part(const Symbol& s) {
    CentralSplit out{Symbol(0, s.floor()), Symbol(s.dim(), s.floor())};
    for (const auto& [j, pj] : s.terms()) {
        Rational c = pj.constant_term();
        if (c != 0) out.central.set_coefficient(j, MultiPoly::constant(0, c));
        MultiPoly rest = pj - MultiPoly::constant(s.dim(), c);
        if (!rest.is_zero()) out.residual.set_coefficient(j, std::move(rest));
    }
    return out;
}

inline Symbol scalar_embed(const Symbol& s0, int dim) {
    if (s0.dim() != 0) fail(ErrorKind::BadRequest, "scalar_embed expects a dim-0 symbol");
    Symbol r(dim, s0.floor());
    for (const auto& [j, p] : s0.terms())
        r.set_coefficient(j, MultiPoly::constant(dim, p.constant_term()));
    return r;
}

/* Bridge from the homogeneous picture: parts maps each tau-exponent k >= 0
 * to a polynomial part whose u-slots stand for the fiber variable, with
 * fiber-degree + k == j throughout.  Setting tau = 1 collapses the sum to
 * a single coefficient placed at order j. */
inline Symbol dehomogenize(int dim, const std::map<long long, MultiPoly>& parts, long long j,
                           long long floor) {
    MultiPoly total(dim);
    for (const auto& [k, part] : parts) {
        if (part.dim() != dim)
            fail(ErrorKind::DimensionMismatch, "homogeneous part dimension mismatch");
        if (k < 0)
            fail(ErrorKind::NonHomogeneous, "negative tau exponent in homogeneous input");
        for (const auto& [e, c] : part.terms()) {
            unsigned fiber = 0;
            for (int s = dim; s < 2 * dim; ++s) fiber += e[static_cast<std::size_t>(s)];
            if (static_cast<long long>(fiber) + k != j)
                fail(ErrorKind::NonHomogeneous,
                     "input is not homogeneous of degree " + std::to_string(j));
        }
        total += part;
    }
    return Symbol::embed(total, j, floor);
}

inline Symbol dehomogenize(int dim, const std::map<long long, MultiPoly>& parts, long long j) {
    return dehomogenize(dim, parts, j, j);
}

/* Truncated star exponential of a symbol of order <= -1. */
inline Symbol star_exp(const Symbol& a) {
    OrderInfo oi = order_info(a);
    if (oi.finite && oi.order > -1)
        fail(ErrorKind::BadRequest, "star_exp requires order <= -1");
    long long f = a.floor();
    Symbol sum = Symbol::one(a.dim(), f);
    Symbol term = Symbol::one(a.dim(), f);
    for (long long k = 1;; ++k) {
        term = Rational(1, k) * truncated(star(term, a), f); // a^k / k!
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}

/* Polar unitarization: S -> sqrt(S S^*)^{-1} * S is star-unitary whenever
 * S has order 0 and principal symbol 1. */
inline Symbol unitarize(const Symbol& s) {
    return star(invert(square_root(star(s, adjoint(s)), 1)), s);
}

} // namespace wkb
