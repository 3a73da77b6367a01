#pragma once

/* Exact multivariate polynomials over Q in paired variables
 * x_1..x_n, u_1..u_n, together with the bits of Cartan calculus the
 * symbol layer needs: partial derivatives, the Poisson bracket
 * {p,q} = sum_i (du_i p dx_i q - du_i q dx_i p), pullback along a
 * polynomial substitution, and radial (Poincare) primitives of closed
 * 1- and 2-forms on star-shaped domains.
 *
 * Variable slots: index a in [0, n) is x_{a+1}, index a in [n, 2n) is
 * u_{a-n+1}.  Exponent vectors always have length 2n.  Zero
 * coefficients are never stored.
 */

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wkb/errors.hpp"
#include "wkb/rational.hpp"

namespace wkb {

using Exponents = std::vector<unsigned>;

inline unsigned exponents_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

/* Graded lexicographic order: total degree first, then lex.  Iterating a
 * term map in reverse yields the canonical printing order (highest degree
 * first, ties broken by descending lex on (x_1..x_n, u_1..u_n)). */
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = exponents_degree(a), db = exponents_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

inline std::string slot_name(int dim, int slot) {
    if (slot < dim) return "x" + std::to_string(slot + 1);
    return "u" + std::to_string(slot - dim + 1);
}

class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit MultiPoly(int dim = 0) : dim_(dim) {
        if (dim < 0) fail(ErrorKind::BadRequest, "negative dimension");
    }

    static MultiPoly constant(int dim, Rational c) {
        MultiPoly p(dim);
        p.add_term(Exponents(2 * static_cast<std::size_t>(dim), 0), std::move(c));
        return p;
    }

    static MultiPoly monomial(int dim, Exponents e, Rational c) {
        MultiPoly p(dim);
        if (e.size() != 2 * static_cast<std::size_t>(dim))
            fail(ErrorKind::BadRequest, "exponent vector length does not match dimension");
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    /* i is 1-based, matching the variable names x1, u1, ... */
    static MultiPoly variable_x(int dim, int i) {
        check_index(dim, i);
        Exponents e(2 * static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        return monomial(dim, std::move(e), 1);
    }

    static MultiPoly variable_u(int dim, int i) {
        check_index(dim, i);
        Exponents e(2 * static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(dim + i - 1)] = 1;
        return monomial(dim, std::move(e), 1);
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && exponents_degree(terms_.begin()->first) == 0);
    }

    Rational constant_term() const {
        auto it = terms_.find(Exponents(2 * static_cast<std::size_t>(dim_), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /* -1 for the zero polynomial. */
    long long total_degree() const {
        if (terms_.empty()) return -1;
        return exponents_degree(terms_.rbegin()->first);
    }

    /* Max total degree in the x-slots alone (resp. u-slots); 0 for zero. */
    unsigned max_x_degree() const { return max_partial_degree(0, dim_); }
    unsigned max_u_degree() const { return max_partial_degree(dim_, 2 * dim_); }

    void add_term(Exponents e, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }
    friend MultiPoly operator-(MultiPoly a) { for (auto& [e, c] : a.terms_) c = -c; return a; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { a *= s; return a; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { a *= s; return a; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_dim(b);
        MultiPoly r(a.dim_);
        Exponents e(2 * static_cast<std::size_t>(a.dim_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t s = 0; s < e.size(); ++s) e[s] = ea[s] + eb[s];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    static void check_index(int dim, int i) {
        if (i < 1 || i > dim)
            fail(ErrorKind::IndexOutOfRange,
                 "variable index " + std::to_string(i) + " out of range for dimension " +
                     std::to_string(dim));
    }

    void check_dim(const MultiPoly& o) const {
        if (dim_ != o.dim_) fail(ErrorKind::DimensionMismatch, "polynomial dimensions differ");
    }

    unsigned max_partial_degree(int begin, int end) const {
        unsigned m = 0;
        for (const auto& [e, c] : terms_) {
            unsigned d = 0;
            for (int s = begin; s < end; ++s) d += e[static_cast<std::size_t>(s)];
            m = std::max(m, d);
        }
        return m;
    }

    int dim_;
    TermMap terms_;
};

inline MultiPoly pow(const MultiPoly& p, unsigned k) {
    MultiPoly r = MultiPoly::constant(p.dim(), 1);
    for (unsigned i = 0; i < k; ++i) r = r * p;
    return r;
}

/* d/d(slot a). */
inline MultiPoly derivative(const MultiPoly& p, int slot) {
    MultiPoly r(p.dim());
    for (const auto& [e, c] : p.terms()) {
        unsigned k = e[static_cast<std::size_t>(slot)];
        if (k == 0) continue;
        Exponents e2 = e;
        --e2[static_cast<std::size_t>(slot)];
        r.add_term(std::move(e2), c * k);
    }
    return r;
}

inline MultiPoly derivative_x(const MultiPoly& p, int i) { return derivative(p, i - 1); }
inline MultiPoly derivative_u(const MultiPoly& p, int i) { return derivative(p, p.dim() + i - 1); }

/* Divided-power derivative (d^alpha p)/alpha! over the x-slots or the
 * u-slots; computed termwise via binomial coefficients so no factorial
 * blowup occurs.  alpha has length dim. */
inline MultiPoly divided_derivative(const MultiPoly& p, const std::vector<unsigned>& alpha,
                                    bool over_u) {
    int n = p.dim();
    if (alpha.size() != static_cast<std::size_t>(n))
        fail(ErrorKind::BadRequest, "multi-index length does not match dimension");
    int base = over_u ? n : 0;
    MultiPoly r(n);
    for (const auto& [e, c] : p.terms()) {
        Rational factor = 1;
        Exponents e2 = e;
        bool dead = false;
        for (int i = 0; i < n && !dead; ++i) {
            unsigned a = alpha[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            unsigned k = e[static_cast<std::size_t>(base + i)];
            if (k < a) {
                dead = true;
                break;
            }
            factor *= Rational(binomial(k, a));
            e2[static_cast<std::size_t>(base + i)] = k - a;
        }
        if (!dead) r.add_term(std::move(e2), c * factor);
    }
    return r;
}

/* {p,q} = sum_i (du_i p dx_i q - du_i q dx_i p); {x_i, u_i} = -1. */
inline MultiPoly poisson(const MultiPoly& p, const MultiPoly& q) {
    if (p.dim() != q.dim()) fail(ErrorKind::DimensionMismatch, "polynomial dimensions differ");
    MultiPoly r(p.dim());
    for (int i = 1; i <= p.dim(); ++i) {
        r += derivative_u(p, i) * derivative_x(q, i);
        r -= derivative_u(q, i) * derivative_x(p, i);
    }
    return r;
}

/* Substitute x_i := images[i-1], u_i := images[n+i-1].  All images share a
 * common (possibly different) dimension, which becomes the result's. */
inline MultiPoly pullback(const MultiPoly& p, std::span<const MultiPoly> images) {
    int n = p.dim();
    if (images.size() != 2 * static_cast<std::size_t>(n))
        fail(ErrorKind::BadRequest, "substitution needs one image per variable");
    int m = images.empty() ? 0 : images[0].dim();
    for (const auto& q : images)
        if (q.dim() != m) fail(ErrorKind::DimensionMismatch, "substitution images differ in dimension");

    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power_of = [&](std::size_t slot, unsigned k) -> const MultiPoly& {
        auto& cache = powers[slot];
        if (cache.empty()) cache.push_back(MultiPoly::constant(m, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * images[slot]);
        return cache[k];
    };

    MultiPoly r(m);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(m, c);
        for (std::size_t s = 0; s < e.size(); ++s)
            if (e[s] > 0) t = t * power_of(s, e[s]);
        r += t;
    }
    return r;
}

inline MultiPoly pullback(const MultiPoly& p, const std::vector<MultiPoly>& images) {
    return pullback(p, std::span<const MultiPoly>(images));
}

/* A 1-form sum_a comp[a] dz_a over the 2n slots. */
struct OneForm {
    int dim = 0;
    std::vector<MultiPoly> comp;

    explicit OneForm(int d = 0)
        : dim(d), comp(2 * static_cast<std::size_t>(d), MultiPoly(d)) {}

    MultiPoly& x_comp(int i) { return comp[static_cast<std::size_t>(i - 1)]; }
    MultiPoly& u_comp(int i) { return comp[static_cast<std::size_t>(dim + i - 1)]; }
    const MultiPoly& x_comp(int i) const { return comp[static_cast<std::size_t>(i - 1)]; }
    const MultiPoly& u_comp(int i) const { return comp[static_cast<std::size_t>(dim + i - 1)]; }

    bool operator==(const OneForm& o) const { return dim == o.dim && comp == o.comp; }
};

/* An antisymmetric 2-form; the full (2n)x(2n) component matrix is stored,
 * comp[a][b] being the coefficient of dz_a ^ dz_b for a < b. */
struct TwoForm {
    int dim = 0;
    std::vector<std::vector<MultiPoly>> comp;

    explicit TwoForm(int d = 0)
        : dim(d),
          comp(2 * static_cast<std::size_t>(d),
               std::vector<MultiPoly>(2 * static_cast<std::size_t>(d), MultiPoly(d))) {}

    /* Sets comp[a][b] = p and comp[b][a] = -p. */
    void set(int a, int b, const MultiPoly& p) {
        comp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = p;
        comp[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = -p;
    }

    bool operator==(const TwoForm& o) const { return dim == o.dim && comp == o.comp; }
};

inline OneForm exterior_derivative(const MultiPoly& p) {
    OneForm w(p.dim());
    for (std::size_t a = 0; a < w.comp.size(); ++a) w.comp[a] = derivative(p, static_cast<int>(a));
    return w;
}

inline TwoForm exterior_derivative(const OneForm& w) {
    TwoForm r(w.dim);
    int N = 2 * w.dim;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            r.set(a, b, derivative(w.comp[static_cast<std::size_t>(b)], a) -
                            derivative(w.comp[static_cast<std::size_t>(a)], b));
    return r;
}

/* First pair (a, b), a < b, with d_a w_b != d_b w_a, if any. */
inline std::optional<std::pair<int, int>> nonclosed_pair(const OneForm& w) {
    int N = 2 * w.dim;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (derivative(w.comp[static_cast<std::size_t>(b)], a) !=
                derivative(w.comp[static_cast<std::size_t>(a)], b))
                return std::make_pair(a, b);
    return std::nullopt;
}

/* Radial primitive h(z) = int_0^1 <w(tz), z> dt of a closed 1-form:
 * a degree-d monomial in w contributes with weight 1/(d+1).  h(0) = 0. */
inline MultiPoly poincare_primitive(const OneForm& w) {
    if (auto bad = nonclosed_pair(w)) {
        fail(ErrorKind::NonClosedForm,
             "1-form is not closed: coefficients of " + slot_name(w.dim, bad->first) + " and " +
                 slot_name(w.dim, bad->second) + " have mismatched cross-derivatives");
    }
    MultiPoly h(w.dim);
    for (std::size_t a = 0; a < w.comp.size(); ++a) {
        for (const auto& [e, c] : w.comp[a].terms()) {
            Exponents e2 = e;
            ++e2[a];
            unsigned d = exponents_degree(e);
            h.add_term(std::move(e2), c / Rational(d + 1));
        }
    }
    return h;
}

/* Radial homotopy K applied to a 2-form: (K rho)_b = sum_a int_0^1
 * t rho_ab(tz) z_a dt, so a degree-d monomial picks up weight 1/(d+2).
 * d(K rho) == rho exactly when rho is closed; the caller is expected to
 * check that identity where it matters. */
inline OneForm poincare_primitive(const TwoForm& rho) {
    OneForm mu(rho.dim);
    int N = 2 * rho.dim;
    for (int b = 0; b < N; ++b) {
        for (int a = 0; a < N; ++a) {
            if (a == b) continue;
            for (const auto& [e, c] : rho.comp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].terms()) {
                Exponents e2 = e;
                ++e2[static_cast<std::size_t>(a)];
                unsigned d = exponents_degree(e);
                mu.comp[static_cast<std::size_t>(b)].add_term(std::move(e2), c / Rational(d + 2));
            }
        }
    }
    return mu;
}

} // namespace wkb
