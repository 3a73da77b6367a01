#pragma once

/* Lifting polynomial symplectic maps to symbol-algebra automorphisms.
 *
 * A SymplecticMapSpec holds an exact polynomial map with an exact inverse;
 * quantize_map lifts it to generator images X_i, U_i satisfying the
 * canonical relations within the window, correcting order by order.  Each
 * stage's obstruction is packaged as an antisymmetric 2-form on the target
 * chart; the radial homotopy produces a potential whose components are the
 * next corrections.  An AutomorphismRecord acts on symbols by
 * normal-ordered substitution and composes contravariantly in the point
 * maps.  recognize_inner reconstructs, when possible, a conjugator P with
 * Ad(P) equal to a given record above the identity map, normalized to have
 * zero constant term below order 0.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wkb/errors.hpp"
#include "wkb/multipoly.hpp"
#include "wkb/rational.hpp"
#include "wkb/symbol.hpp"
#include "wkb/text.hpp"

namespace wkb {

struct SymplecticMapSpec {
    int dim = 0;
    std::vector<MultiPoly> f, g;         // forward images of x_i, u_i
    std::vector<MultiPoly> inv_x, inv_u; // inverse components, in target coordinates
    Rational shift = 0;                  // additive constant for the primitive

    static SymplecticMapSpec identity(int dim, Rational shift = 0) {
        SymplecticMapSpec m;
        m.dim = dim;
        m.shift = std::move(shift);
        for (int i = 1; i <= dim; ++i) {
            m.f.push_back(MultiPoly::variable_x(dim, i));
            m.g.push_back(MultiPoly::variable_u(dim, i));
            m.inv_x.push_back(MultiPoly::variable_x(dim, i));
            m.inv_u.push_back(MultiPoly::variable_u(dim, i));
        }
        return m;
    }

    std::vector<MultiPoly> forward_images() const {
        std::vector<MultiPoly> v = f;
        v.insert(v.end(), g.begin(), g.end());
        return v;
    }

    std::vector<MultiPoly> inverse_images() const {
        std::vector<MultiPoly> v = inv_x;
        v.insert(v.end(), inv_u.begin(), inv_u.end());
        return v;
    }

    bool forward_is_identity() const {
        for (int i = 1; i <= dim; ++i)
            if (!(f[static_cast<std::size_t>(i - 1)] == MultiPoly::variable_x(dim, i)) ||
                !(g[static_cast<std::size_t>(i - 1)] == MultiPoly::variable_u(dim, i)))
                return false;
        return true;
    }
};

inline void check_spec_shape(const SymplecticMapSpec& m) {
    auto n = static_cast<std::size_t>(m.dim);
    if (m.f.size() != n || m.g.size() != n || m.inv_x.size() != n || m.inv_u.size() != n)
        fail(ErrorKind::BadDocument, "map components do not match the dimension");
    for (const auto* vec : {&m.f, &m.g, &m.inv_x, &m.inv_u})
        for (const auto& p : *vec)
            if (p.dim() != m.dim) fail(ErrorKind::BadDocument, "map component dimension mismatch");
}

struct SymplecticCheck {
    bool ok = true;
    std::string failure; // first violated identity, empty when ok
};

/* Exact verification: the stated inverse really inverts on both sides and
 * the forward components satisfy {f_i, f_j} = {g_i, g_j} = 0,
 * {f_i, g_j} = -delta_ij. */
inline SymplecticCheck check_symplectic(const SymplecticMapSpec& m) {
    check_spec_shape(m);
    auto fwd = m.forward_images();
    auto inv = m.inverse_images();
    auto bad = [](std::string msg) { return SymplecticCheck{false, std::move(msg)}; };

    for (int i = 1; i <= m.dim; ++i) {
        if (!(pullback(m.f[static_cast<std::size_t>(i - 1)], inv) == MultiPoly::variable_x(m.dim, i)))
            return bad("f" + std::to_string(i) + " composed with the inverse is not x" +
                       std::to_string(i));
        if (!(pullback(m.g[static_cast<std::size_t>(i - 1)], inv) == MultiPoly::variable_u(m.dim, i)))
            return bad("g" + std::to_string(i) + " composed with the inverse is not u" +
                       std::to_string(i));
        if (!(pullback(m.inv_x[static_cast<std::size_t>(i - 1)], fwd) == MultiPoly::variable_x(m.dim, i)))
            return bad("inverse x" + std::to_string(i) + " composed with the forward map is not x" +
                       std::to_string(i));
        if (!(pullback(m.inv_u[static_cast<std::size_t>(i - 1)], fwd) == MultiPoly::variable_u(m.dim, i)))
            return bad("inverse u" + std::to_string(i) + " composed with the forward map is not u" +
                       std::to_string(i));
    }
    for (int i = 1; i <= m.dim; ++i) {
        for (int j = 1; j <= m.dim; ++j) {
            const auto& fi = m.f[static_cast<std::size_t>(i - 1)];
            const auto& fj = m.f[static_cast<std::size_t>(j - 1)];
            const auto& gi = m.g[static_cast<std::size_t>(i - 1)];
            const auto& gj = m.g[static_cast<std::size_t>(j - 1)];
            if (j > i) {
                if (!poisson(fi, fj).is_zero())
                    return bad("{f" + std::to_string(i) + ", f" + std::to_string(j) + "} = " +
                               to_text(poisson(fi, fj)) + ", want 0");
                if (!poisson(gi, gj).is_zero())
                    return bad("{g" + std::to_string(i) + ", g" + std::to_string(j) + "} = " +
                               to_text(poisson(gi, gj)) + ", want 0");
            }
            MultiPoly want = i == j ? MultiPoly::constant(m.dim, -1) : MultiPoly(m.dim);
            if (!(poisson(fi, gj) == want))
                return bad("{f" + std::to_string(i) + ", g" + std::to_string(j) + "} = " +
                           to_text(poisson(fi, gj)) + ", want " + (i == j ? "-1" : "0"));
        }
    }
    return {};
}

/* Primitive of the pulled-back action form: the 1-form
 * sum_i u_i dx_i - sum_j g_j df_j is closed exactly when the map is
 * symplectic; its radial primitive, rewritten in target coordinates
 * through the inverse, plus the spec's shift. */
inline MultiPoly compute_primitive(const SymplecticMapSpec& m) {
    auto chk = check_symplectic(m);
    if (!chk.ok) fail(ErrorKind::NotSymplectic, chk.failure);
    OneForm w(m.dim);
    for (int i = 1; i <= m.dim; ++i) w.x_comp(i) += MultiPoly::variable_u(m.dim, i);
    for (int j = 1; j <= m.dim; ++j) {
        const auto& fj = m.f[static_cast<std::size_t>(j - 1)];
        const auto& gj = m.g[static_cast<std::size_t>(j - 1)];
        for (int s = 0; s < 2 * m.dim; ++s) w.comp[static_cast<std::size_t>(s)] -= gj * derivative(fj, s);
    }
    MultiPoly h = poincare_primitive(w);
    return pullback(h, m.inverse_images()) + MultiPoly::constant(m.dim, m.shift);
}

/* A quantized symplectic map: generator images to the stated depth, the
 * scalar c-datum, and the primitive of the underlying map in target-chart
 * coordinates.  Invariants: sigma_0(x_images[i]) == map.f[i], likewise for
 * u, and all canonical commutation defects vanish within the window. */
struct AutomorphismRecord {
    int dim = 0;
    long long depth = 0; // images reliable down to order -depth
    Rational c = 0;
    std::vector<Symbol> x_images, u_images;
    MultiPoly primitive;
    SymplecticMapSpec map;
};

/* Human-readable list of violated record invariants; empty when valid. */
inline std::vector<std::string> record_defects(const AutomorphismRecord& rec) {
    std::vector<std::string> out;
    int n = rec.dim;
    long long f = -rec.depth;
    for (int i = 1; i <= n; ++i) {
        const Symbol& X = rec.x_images[static_cast<std::size_t>(i - 1)];
        const Symbol& U = rec.u_images[static_cast<std::size_t>(i - 1)];
        if (X.dim() != n || U.dim() != n || X.floor() > f || U.floor() > f) {
            out.push_back("image " + std::to_string(i) + " has the wrong dimension or window");
            continue;
        }
        if (!(X.coefficient(0) == rec.map.f[static_cast<std::size_t>(i - 1)]))
            out.push_back("principal symbol of the x" + std::to_string(i) +
                          " image differs from the map component");
        if (!(U.coefficient(0) == rec.map.g[static_cast<std::size_t>(i - 1)]))
            out.push_back("principal symbol of the u" + std::to_string(i) +
                          " image differs from the map component");
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const Symbol& Xi = rec.x_images[static_cast<std::size_t>(i - 1)];
            const Symbol& Xj = rec.x_images[static_cast<std::size_t>(j - 1)];
            const Symbol& Ui = rec.u_images[static_cast<std::size_t>(i - 1)];
            const Symbol& Uj = rec.u_images[static_cast<std::size_t>(j - 1)];
            if (j > i) {
                if (!commutator(Xi, Xj).is_zero())
                    out.push_back("[X" + std::to_string(i) + ", X" + std::to_string(j) +
                                  "] does not vanish within the window");
                if (!commutator(Ui, Uj).is_zero())
                    out.push_back("[U" + std::to_string(i) + ", U" + std::to_string(j) +
                                  "] does not vanish within the window");
            }
            Symbol defect = commutator(Xi, Uj);
            if (i == j)
                defect = defect + Symbol::tau_power(n, -1, defect.floor());
            if (!defect.is_zero())
                out.push_back("[X" + std::to_string(i) + ", U" + std::to_string(j) +
                              "] differs from its canonical value within the window");
        }
    }
    return out;
}

/* Order-by-order lift.  Stage k repairs the commutation defects at order
 * -(k+1): they are pulled back to the target chart, assembled into an
 * antisymmetric 2-form (the u-u defects sit in the position block, the x-x
 * defects in the momentum block, the mixed block is transposed), and the
 * radial homotopy yields a potential whose components are the stage-k
 * corrections. */
inline AutomorphismRecord quantize_map(const SymplecticMapSpec& m, long long depth) {
    if (depth < 1) fail(ErrorKind::BadRequest, "depth must be at least 1");
    auto chk = check_symplectic(m);
    if (!chk.ok) fail(ErrorKind::NotSymplectic, chk.failure);

    int n = m.dim;
    long long F = -depth;
    auto fwd = m.forward_images();
    auto inv = m.inverse_images();

    AutomorphismRecord rec;
    rec.dim = n;
    rec.depth = depth;
    rec.c = m.shift;
    rec.map = m;
    rec.primitive = compute_primitive(m);
    for (int i = 1; i <= n; ++i) {
        rec.x_images.push_back(Symbol::embed(m.f[static_cast<std::size_t>(i - 1)], 0, F));
        rec.u_images.push_back(Symbol::embed(m.g[static_cast<std::size_t>(i - 1)], 0, F));
    }

    auto& X = rec.x_images;
    auto& U = rec.u_images;
    for (long long k = 1; k < depth; ++k) {
        long long ord = -(k + 1);
        bool any = false;
        std::vector<std::vector<MultiPoly>> dxx(static_cast<std::size_t>(n)),
            duu(static_cast<std::size_t>(n)), dxu(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            dxx[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), MultiPoly(n));
            duu[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), MultiPoly(n));
            dxu[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), MultiPoly(n));
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j > i) {
                    dxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        commutator(X[static_cast<std::size_t>(i)], X[static_cast<std::size_t>(j)])
                            .coefficient(ord);
                    duu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        commutator(U[static_cast<std::size_t>(i)], U[static_cast<std::size_t>(j)])
                            .coefficient(ord);
                }
                dxu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    commutator(X[static_cast<std::size_t>(i)], U[static_cast<std::size_t>(j)])
                        .coefficient(ord);
                if (!dxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero() ||
                    !duu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero() ||
                    !dxu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
                    any = true;
            }
        }
        if (!any) continue;

        TwoForm rho(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j > i) {
                    rho.set(i, j, -pullback(duu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], inv));
                    rho.set(n + i, n + j,
                            -pullback(dxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], inv));
                }
                /* coefficient of dy_i ^ dv_j carries the (j, i) mixed defect */
                rho.set(i, n + j,
                        -pullback(dxu[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], inv));
            }
        }
        OneForm mu = poincare_primitive(rho);
        if (!(exterior_derivative(mu) == rho))
            fail(ErrorKind::SolverFailure,
                 "no valid correction at order " + std::to_string(ord) +
                     ": the defect 2-form is not closed");
        for (int i = 1; i <= n; ++i) {
            MultiPoly bi = mu.x_comp(i);
            MultiPoly ai = -mu.u_comp(i);
            if (!ai.is_zero())
                X[static_cast<std::size_t>(i - 1)] =
                    X[static_cast<std::size_t>(i - 1)] + Symbol::embed(pullback(ai, fwd), -k, F);
            if (!bi.is_zero())
                U[static_cast<std::size_t>(i - 1)] =
                    U[static_cast<std::size_t>(i - 1)] + Symbol::embed(pullback(bi, fwd), -k, F);
        }
    }

    auto defects = record_defects(rec);
    if (!defects.empty())
        fail(ErrorKind::SolverFailure, "lift verification failed: " + defects.front());
    return rec;
}

/* Action by normal-ordered substitution: each monomial c x^beta u^gamma
 * tau^j of the argument becomes c X^beta * U^gamma * tau^j.  The result is
 * reliable down to max(floor(P), order(P) - depth). */
inline Symbol apply_automorphism(const AutomorphismRecord& rec, const Symbol& p) {
    if (p.dim() != rec.dim) fail(ErrorKind::DimensionMismatch, "symbol/record dimension mismatch");
    int n = rec.dim;
    long long F = -rec.depth;
    OrderInfo oi = order_info(p);
    long long rf = p.floor();
    if (oi.finite) rf = std::max(rf, oi.order - rec.depth);
    Symbol r(n, rf);
    if (!oi.finite) return r;

    std::vector<std::vector<Symbol>> xp(static_cast<std::size_t>(n)), up(static_cast<std::size_t>(n));
    auto power = [&](std::vector<std::vector<Symbol>>& cache, const std::vector<Symbol>& base,
                     int i, unsigned k) -> const Symbol& {
        auto& row = cache[static_cast<std::size_t>(i)];
        if (row.empty()) row.push_back(Symbol::one(n, F));
        while (row.size() <= k) row.push_back(truncated(star(row.back(), base[static_cast<std::size_t>(i)]), F));
        return row[k];
    };

    for (const auto& [j, pj] : p.terms()) {
        for (const auto& [e, c] : pj.terms()) {
            Symbol t = Symbol::constant(n, c, F);
            for (int i = 0; i < n; ++i)
                if (e[static_cast<std::size_t>(i)] > 0)
                    t = truncated(star(t, power(xp, rec.x_images, i, e[static_cast<std::size_t>(i)])), F);
            for (int i = 0; i < n; ++i)
                if (e[static_cast<std::size_t>(n + i)] > 0)
                    t = truncated(star(t, power(up, rec.u_images, i, e[static_cast<std::size_t>(n + i)])), F);
            for (const auto& [o, q] : t.terms()) r.accumulate(o + j, q);
        }
    }
    return r;
}

/* compose(A, B) acts as P -> A(B(P)); point maps compose the other way
 * round, and the primitives add after transport. */
inline AutomorphismRecord compose_automorphisms(const AutomorphismRecord& a,
                                                const AutomorphismRecord& b) {
    if (a.dim != b.dim) fail(ErrorKind::DimensionMismatch, "record dimensions differ");
    int n = a.dim;
    AutomorphismRecord r;
    r.dim = n;
    r.depth = std::min(a.depth, b.depth);
    r.c = a.c + b.c;

    r.map.dim = n;
    r.map.shift = a.map.shift + b.map.shift;
    auto afwd = a.map.forward_images();
    auto binv = b.map.inverse_images();
    for (int i = 1; i <= n; ++i) {
        r.map.f.push_back(pullback(b.map.f[static_cast<std::size_t>(i - 1)], afwd));
        r.map.g.push_back(pullback(b.map.g[static_cast<std::size_t>(i - 1)], afwd));
        r.map.inv_x.push_back(pullback(a.map.inv_x[static_cast<std::size_t>(i - 1)], binv));
        r.map.inv_u.push_back(pullback(a.map.inv_u[static_cast<std::size_t>(i - 1)], binv));
    }
    r.primitive = b.primitive + pullback(a.primitive, binv);
    for (int i = 0; i < n; ++i) {
        r.x_images.push_back(apply_automorphism(a, b.x_images[static_cast<std::size_t>(i)]));
        r.u_images.push_back(apply_automorphism(a, b.u_images[static_cast<std::size_t>(i)]));
    }
    return r;
}

/* Inverse record: the point map swaps orientation, the primitive reverses
 * through the forward map, and the generator images are found by Newton
 * steps that kill the top order of A(X'_i) - x_i at each pass. */
inline AutomorphismRecord invert_automorphism(const AutomorphismRecord& a) {
    int n = a.dim;
    AutomorphismRecord r;
    r.dim = n;
    r.depth = a.depth;
    r.c = -a.c;
    r.map.dim = n;
    r.map.shift = -a.map.shift;
    r.map.f = a.map.inv_x;
    r.map.g = a.map.inv_u;
    r.map.inv_x = a.map.f;
    r.map.inv_u = a.map.g;
    r.primitive = -pullback(a.primitive, a.map.forward_images());

    long long F = -a.depth;
    auto ainv = a.map.inverse_images();
    auto solve = [&](const MultiPoly& seed, const Symbol& target) {
        Symbol cur = Symbol::embed(seed, 0, F);
        for (long long pass = 0; pass <= a.depth + 1; ++pass) {
            Symbol err = apply_automorphism(a, cur) - target;
            if (err.is_zero()) return cur;
            Symbol corr(n, F);
            for (const auto& [o, q] : err.terms()) corr.accumulate(o, pullback(q, ainv));
            cur = cur - corr;
        }
        fail(ErrorKind::SolverFailure, "inverse image iteration did not terminate");
    };
    for (int i = 1; i <= n; ++i) {
        r.x_images.push_back(
            solve(a.map.inv_x[static_cast<std::size_t>(i - 1)], Symbol::generator_x(n, i, F)));
        r.u_images.push_back(
            solve(a.map.inv_u[static_cast<std::size_t>(i - 1)], Symbol::generator_u(n, i, F)));
    }
    return r;
}

/* Conjugation record Ad(P): P * gen * P^{-1} above the identity map, with
 * the stated scalar c.  P needs a nonzero constant principal symbol; the
 * window ends at floor(P) - order(P). */
inline AutomorphismRecord ad_automorphism(const Symbol& p, const Rational& c = 0) {
    OrderInfo oi = order_info(p);
    if (!oi.finite || !oi.principal.is_constant())
        fail(ErrorKind::NonInvertible, "conjugation needs a nonzero constant principal symbol");
    Rational c0 = oi.principal.constant_term();
    Symbol pn = tau_shift(Rational(1) / c0 * p, -oi.order); // order 0, sigma_0 = 1
    long long F = pn.floor();
    if (F > -1) fail(ErrorKind::BadRequest, "conjugator window is empty below order 0");
    Symbol pinv = invert(pn);

    int n = p.dim();
    AutomorphismRecord r;
    r.dim = n;
    r.depth = -F;
    r.c = c;
    r.map = SymplecticMapSpec::identity(n, c);
    r.primitive = MultiPoly::constant(n, c);
    for (int i = 1; i <= n; ++i) {
        r.x_images.push_back(star(star(pn, Symbol::generator_x(n, i, F)), pinv));
        r.u_images.push_back(star(star(pn, Symbol::generator_u(n, i, F)), pinv));
    }
    return r;
}

struct InnerRecognition {
    Symbol inner;
    std::string central_ambiguity_note;
};

/* Reconstructs P with Ad(P) == rec for a record above the identity map.
 * Stage m reads the residuals of X_i * P - P * x_i (and the u-side) at
 * order -(m+1); they prescribe the gradient of the next coefficient, and
 * the radial primitive fixes the zero-constant representative of the
 * central-unit coset.  Non-gradient residuals mean the record is not
 * inner within the window. */
inline InnerRecognition recognize_inner(const AutomorphismRecord& rec) {
    int n = rec.dim;
    long long K = rec.depth;
    long long F = -K;
    for (int i = 1; i <= n; ++i) {
        if (!(rec.x_images[static_cast<std::size_t>(i - 1)].coefficient(0) ==
              MultiPoly::variable_x(n, i)) ||
            !(rec.u_images[static_cast<std::size_t>(i - 1)].coefficient(0) ==
              MultiPoly::variable_u(n, i)))
            fail(ErrorKind::BadRequest, "recognition requires a record above the identity map");
    }

    /* Residuals of X_i * P - P * x_i at order -(m+1) prescribe the gradient
     * of p_{-m}; at m = 0 the coefficient is already fixed at 1, so the
     * residuals there are a pure consistency test. */
    Symbol p = Symbol::one(n, F);
    for (long long m = 0; m < K; ++m) {
        long long ord = -(m + 1);
        OneForm w(n);
        bool all_zero = true;
        for (int i = 1; i <= n; ++i) {
            const Symbol& Xi = rec.x_images[static_cast<std::size_t>(i - 1)];
            const Symbol& Ui = rec.u_images[static_cast<std::size_t>(i - 1)];
            MultiPoly rx = (star(Xi, p) - star(p, Symbol::generator_x(n, i, F))).coefficient(ord);
            MultiPoly ru = (star(Ui, p) - star(p, Symbol::generator_u(n, i, F))).coefficient(ord);
            if (!rx.is_zero() || !ru.is_zero()) all_zero = false;
            w.u_comp(i) = rx;  // d_{u_i} p_{-m} = rx
            w.x_comp(i) = -ru; // d_{x_i} p_{-m} = -ru
        }
        if (all_zero) continue;
        if (m == 0)
            fail(ErrorKind::NotInner,
                 "order -1 commutation residuals do not vanish; the record is not inner");
        if (nonclosed_pair(w))
            fail(ErrorKind::NotInner,
                 "commutation residuals at order " + std::to_string(ord) +
                     " are not a gradient; the record is not inner within the window");
        p = p + Symbol::embed(poincare_primitive(w), -m, F);
    }

    for (int i = 1; i <= n; ++i) {
        const Symbol& Xi = rec.x_images[static_cast<std::size_t>(i - 1)];
        const Symbol& Ui = rec.u_images[static_cast<std::size_t>(i - 1)];
        if (!equal_on_common_window(star(Xi, p), star(p, Symbol::generator_x(n, i, F))) ||
            !equal_on_common_window(star(Ui, p), star(p, Symbol::generator_u(n, i, F))))
            fail(ErrorKind::NotInner, "no conjugator reproduces the images within the window");
    }

    InnerRecognition out;
    out.inner = truncated(p, -(K - 1));
    out.central_ambiguity_note =
        "conjugators form a coset under central units zeta(tau): P * zeta acts identically; "
        "this representative is normalized to zero constant term at every order below 0";
    return out;
}

} // namespace wkb
