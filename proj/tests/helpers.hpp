#pragma once

/* Shared test utilities: deterministic random generators for polynomials,
 * symbols, star-unitaries and central unitaries, plus builders for the
 * symplectic map specs the quantize/descent tests revolve around. */

#include <random>
#include <vector>

#include "wkb/wkb.hpp"

namespace wkbtest {

using namespace wkb;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Rational r(num(rng), den(rng));
    if (!allow_zero && r == 0) r = Rational(1, den(rng));
    return r;
}

inline Exponents random_exponents(Rng& rng, int dim, unsigned maxdeg) {
    Exponents e(2 * static_cast<std::size_t>(dim), 0);
    if (e.empty()) return e; // dim 0: only the constant monomial exists
    std::uniform_int_distribution<unsigned> deg(0, maxdeg);
    unsigned budget = deg(rng);
    std::uniform_int_distribution<std::size_t> slot(0, e.size() - 1);
    for (unsigned k = 0; k < budget; ++k) ++e[slot(rng)];
    return e;
}

inline MultiPoly random_poly(Rng& rng, int dim, unsigned maxdeg, int maxterms = 4) {
    MultiPoly p(dim);
    std::uniform_int_distribution<int> nterms(1, maxterms);
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) p.add_term(random_exponents(rng, dim, maxdeg), random_rational(rng));
    return p;
}

inline MultiPoly random_nonzero_poly(Rng& rng, int dim, unsigned maxdeg, int maxterms = 4) {
    for (;;) {
        MultiPoly p = random_poly(rng, dim, maxdeg, maxterms);
        if (!p.is_zero()) return p;
    }
}

/* Random polynomial with zero constant term (and at least one term). */
inline MultiPoly random_zero_constant_poly(Rng& rng, int dim, unsigned maxdeg, int maxterms = 4) {
    for (;;) {
        MultiPoly p = random_poly(rng, dim, maxdeg, maxterms);
        p -= MultiPoly::constant(dim, p.constant_term());
        if (!p.is_zero()) return p;
    }
}

inline Symbol random_symbol(Rng& rng, int dim, long long floor, long long maxorder,
                            unsigned maxdeg) {
    Symbol s(dim, floor);
    std::uniform_int_distribution<int> keep(0, 2);
    for (long long j = maxorder; j >= floor; --j)
        if (keep(rng) != 0) s.accumulate(j, random_poly(rng, dim, maxdeg, 3));
    return s;
}

inline Symbol random_nonzero_symbol(Rng& rng, int dim, long long floor, long long maxorder,
                                    unsigned maxdeg) {
    for (;;) {
        Symbol s = random_symbol(rng, dim, floor, maxorder, maxdeg);
        if (!s.is_zero()) return s;
    }
}

/* Order 0, sigma_0 = 1, random tail below. */
inline Symbol random_unit(Rng& rng, int dim, long long depth, unsigned maxdeg) {
    Symbol s = Symbol::one(dim, -depth);
    std::uniform_int_distribution<int> keep(0, 2);
    for (long long j = -1; j >= -depth; --j)
        if (keep(rng) != 0) s.accumulate(j, random_poly(rng, dim, maxdeg, 3));
    return s;
}

/* exp of an anti-self-adjoint generator is star-unitary. */
inline Symbol random_star_unitary(Rng& rng, int dim, long long depth, unsigned maxdeg) {
    Symbol b = random_symbol(rng, dim, -depth, -1, maxdeg);
    Symbol a = Rational(1, 2) * (b - adjoint(b));
    return star_exp(a);
}

/* Central unitary z(tau) with z(tau) z(-tau) = 1: odd coefficients are free,
 * even ones are forced by 2 z_{2m} = -sum_{0<a,b<2m, a+b=2m} (-1)^b z_a z_b. */
inline Symbol random_central_unitary(Rng& rng, long long depth) {
    std::vector<Rational> z(static_cast<std::size_t>(depth) + 1, Rational(0));
    z[0] = 1;
    for (long long m = 1; m <= depth; ++m) {
        if (m % 2 == 1) {
            z[static_cast<std::size_t>(m)] = random_rational(rng);
        } else {
            Rational acc = 0;
            for (long long a = 1; a < m; ++a) {
                long long b = m - a;
                Rational t = z[static_cast<std::size_t>(a)] * z[static_cast<std::size_t>(b)];
                acc += (b % 2 == 1) ? -t : t;
            }
            z[static_cast<std::size_t>(m)] = -acc / 2;
        }
    }
    Symbol s(0, -depth);
    for (long long m = 0; m <= depth; ++m)
        s.accumulate(-m, MultiPoly::constant(0, z[static_cast<std::size_t>(m)]));
    return s;
}

/* Map-spec builders.  Forward components express target coordinates in the
 * source ones; all of these fix the origin. */

inline SymplecticMapSpec shear_x(int dim, int i, const MultiPoly& hx, Rational shift = 0) {
    // (x, u + dh/dx) for h = hx(x); dim-1 form: (x, u + h'(x))
    SymplecticMapSpec m = SymplecticMapSpec::identity(dim, shift);
    MultiPoly dh = derivative_x(hx, i);
    m.g[static_cast<std::size_t>(i - 1)] += dh;
    m.inv_u[static_cast<std::size_t>(i - 1)] -= dh;
    return m;
}

inline SymplecticMapSpec rotation_map(Rational shift = 0) {
    SymplecticMapSpec m;
    m.dim = 1;
    m.shift = shift;
    m.f = {MultiPoly::variable_u(1, 1)};
    m.g = {-MultiPoly::variable_x(1, 1)};
    m.inv_x = {-MultiPoly::variable_u(1, 1)};
    m.inv_u = {MultiPoly::variable_x(1, 1)};
    return m;
}

/* Pointwise composite with the same orientation compose_automorphisms uses:
 * the composite of (first a, then b) as a record action. */
inline SymplecticMapSpec composite_spec(const SymplecticMapSpec& a, const SymplecticMapSpec& b,
                                        Rational shift = 0) {
    SymplecticMapSpec r;
    r.dim = a.dim;
    r.shift = shift;
    auto afwd = a.forward_images();
    auto binv = b.inverse_images();
    for (int i = 0; i < a.dim; ++i) {
        r.f.push_back(pullback(b.f[static_cast<std::size_t>(i)], afwd));
        r.g.push_back(pullback(b.g[static_cast<std::size_t>(i)], afwd));
        r.inv_x.push_back(pullback(a.inv_x[static_cast<std::size_t>(i)], binv));
        r.inv_u.push_back(pullback(a.inv_u[static_cast<std::size_t>(i)], binv));
    }
    return r;
}

/* x^2-shear, quarter rotation, x^2-shear; genuinely nonlinear with nonzero
 * lift corrections. */
inline SymplecticMapSpec shear_rotation_shear(Rational shift = 0) {
    MultiPoly x = MultiPoly::variable_x(1, 1);
    MultiPoly h = Rational(1, 3) * x * x * x; // h' = x^2
    SymplecticMapSpec s = shear_x(1, 1, h);
    return composite_spec(composite_spec(s, rotation_map()), s, shift);
}

template <typename F>
inline ErrorKind thrown_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    throw std::runtime_error("expected the operation to throw");
}

} // namespace wkbtest
