#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace wkb;
using namespace wkbtest;

namespace {

Symbol Sx(long long floor = -6) { return Symbol::generator_x(1, 1, floor); }
Symbol Su(long long floor = -6) { return Symbol::generator_u(1, 1, floor); }

MultiPoly px() { return MultiPoly::variable_x(1, 1); }
MultiPoly pu() { return MultiPoly::variable_u(1, 1); }

} // namespace

TEST_CASE("star product on generators", "[symbol]") {
    REQUIRE(star(Sx(), Su()) == Symbol::embed(px() * pu(), 0, -6));
    REQUIRE(star(Su(), Sx()) ==
            Symbol::embed(px() * pu(), 0, -6) + Symbol::tau_power(1, -1, -6));

    // u1^2 * x1^2 = x1^2 u1^2 + 4 tau^-1 x1 u1 + 2 tau^-2
    Symbol lhs = star(star(Su(), Su()), star(Sx(), Sx()));
    Symbol want(1, -6);
    want.set_coefficient(0, px() * px() * pu() * pu());
    want.set_coefficient(-1, Rational(4) * px() * pu());
    want.set_coefficient(-2, MultiPoly::constant(1, 2));
    REQUIRE(lhs == want);

    // Mixed dimensions refuse to combine.
    REQUIRE(thrown_kind([] { return star(Sx(), Symbol::generator_x(2, 1, -6)); }) ==
            ErrorKind::DimensionMismatch);
}

TEST_CASE("canonical commutation relations", "[symbol]") {
    REQUIRE(commutator(Sx(), Su()) == -Symbol::tau_power(1, -1, -6));
    REQUIRE(commutator(Sx(), Sx()).is_zero());
    // The window does not deepen: [., x^2] stays reliable to the common floor.
    REQUIRE(commutator(Su(), star(Sx(), Sx())) ==
            truncated(tau_shift(Rational(2) * Sx(), -1), -6));

    for (int dim = 1; dim <= 2; ++dim)
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j) {
                Symbol c = commutator(Symbol::generator_u(dim, i, -6),
                                      Symbol::generator_x(dim, j, -6));
                Symbol want = i == j ? Symbol::tau_power(dim, -1, -6) : Symbol(dim, -6);
                REQUIRE(c == want);
            }
}

TEST_CASE("order and principal symbol", "[symbol]") {
    Symbol a = Symbol::one(1, -6) + tau_shift(Sx(), -1);
    OrderInfo oa = order_info(a);
    REQUIRE(oa.finite);
    REQUIRE(oa.order == 0);
    REQUIRE(oa.principal == MultiPoly::constant(1, 1));

    Symbol b = tau_shift(Su(), 2) + Sx();
    OrderInfo ob = order_info(b);
    REQUIRE(ob.finite);
    REQUIRE(ob.order == 2);
    REQUIRE(ob.principal == pu());

    OrderInfo oz = order_info(Symbol(1, -4));
    REQUIRE_FALSE(oz.finite);
}

TEST_CASE("window bookkeeping", "[symbol]") {
    Symbol a = Symbol::one(1, -6) + tau_shift(Sx(), -4);
    REQUIRE(a.floor() == -6);
    REQUIRE(a.coefficient(-4) == px());
    REQUIRE(a.coefficient(-3).is_zero());
    REQUIRE(thrown_kind([&] { return a.coefficient(-7); }) == ErrorKind::EmptyWindow);

    Symbol t = truncated(a, -2);
    REQUIRE(t.floor() == -2);
    REQUIRE(t == Symbol::one(1, -2));

    // Addition keeps only the common window.
    Symbol b = Symbol::one(1, -3);
    REQUIRE((a + b).floor() == -3);
    REQUIRE(equal_on_common_window(a + b, Rational(2) * Symbol::one(1, -6) + tau_shift(Sx(), -4)));

    // tau_shift moves terms and floor together.
    Symbol s = tau_shift(a, -2);
    REQUIRE(s.floor() == -8);
    REQUIRE(s.coefficient(-6) == px());
    REQUIRE(tau_shift(s, 2) == a);

    // embed drops coefficients below the floor instead of storing them.
    REQUIRE(Symbol::embed(px(), -7, -6).is_zero());
}

TEST_CASE("product floors track the unknown tails", "[symbol]") {
    Symbol p = Symbol::one(1, -6);                 // order 0, floor -6
    Symbol q = tau_shift(Symbol::one(1, -6), 1);   // order 1, floor -5
    REQUIRE(star(p, q).floor() == -5);
    REQUIRE(star(q, p).floor() == -5);
    REQUIRE(star(q, q).floor() == -4);

    Symbol z(1, -3); // zero within its window
    REQUIRE(star(z, q).floor() == -2);
    REQUIRE(star(z, q).is_zero());
    REQUIRE(star(z, Symbol(1, -4)).floor() == -7);
}

TEST_CASE("inversion on fixed inputs", "[symbol]") {
    REQUIRE(invert(Symbol::one(1, -6)) == Symbol::one(1, -6));

    Symbol a = Symbol::one(1, -3) - tau_shift(Su(-3), -1);
    Symbol inv_a(1, -3);
    inv_a.set_coefficient(0, MultiPoly::constant(1, 1));
    inv_a.set_coefficient(-1, pu());
    inv_a.set_coefficient(-2, pu() * pu());
    inv_a.set_coefficient(-3, pu() * pu() * pu());
    REQUIRE(invert(a) == inv_a);
    REQUIRE(is_one_on_window(star(a, invert(a))));
    REQUIRE(is_one_on_window(star(invert(a), a)));

    Symbol b = Symbol::one(1, -2) + tau_shift(Symbol::embed(px() * pu(), 0, -2), -1);
    Symbol inv_b(1, -2);
    inv_b.set_coefficient(0, MultiPoly::constant(1, 1));
    inv_b.set_coefficient(-1, -(px() * pu()));
    inv_b.set_coefficient(-2, px() * px() * pu() * pu());
    REQUIRE(invert(b) == inv_b);

    // Nonzero order rescales and shifts: (2 tau^2)^-1 = 1/2 tau^-2,
    // reliable down to floor - 2*order.
    Symbol c = Rational(2) * Symbol::tau_power(1, 2, -2);
    Symbol ic = invert(c);
    REQUIRE(ic == Rational(1, 2) * Symbol::tau_power(1, -2, -6));
    REQUIRE(ic.floor() == -6);

    REQUIRE(thrown_kind([] { return invert(Symbol(1, -4)); }) == ErrorKind::NonInvertible);
    REQUIRE(thrown_kind([] { return invert(Sx()); }) == ErrorKind::NonInvertible);
}

TEST_CASE("square roots on fixed inputs", "[symbol]") {
    REQUIRE(square_root(Symbol::one(1, -6)) == Symbol::one(1, -6));

    Symbol p = Symbol::one(1, -6) + tau_shift(Rational(2) * Su(), -1) +
               tau_shift(Symbol::embed(pu() * pu(), 0, -6), -2);
    REQUIRE(square_root(p) == Symbol::one(1, -6) + tau_shift(Su(), -1));

    Symbol q = Symbol::one(1, -2) + tau_shift(Rational(2) * Sx(-2), -1);
    Symbol r(1, -2);
    r.set_coefficient(0, MultiPoly::constant(1, 1));
    r.set_coefficient(-1, px());
    r.set_coefficient(-2, Rational(-1, 2) * px() * px());
    REQUIRE(square_root(q) == r);
    REQUIRE(truncated(star(r, r), -2) == q);

    // The two branches differ exactly by a global sign.
    REQUIRE(square_root(p, -1) == -square_root(p));

    REQUIRE(thrown_kind([] { return square_root(Symbol::tau_power(1, 2, -2)); }) ==
            ErrorKind::NotASquare);
    REQUIRE(thrown_kind([] { return square_root(Sx()); }) == ErrorKind::NotASquare);
    REQUIRE(thrown_kind([] { return square_root(Rational(2) * Symbol::one(1, -4)); }) ==
            ErrorKind::NotASquare);
    REQUIRE(thrown_kind([] { return square_root(Rational(-1) * Symbol::one(1, -4)); }) ==
            ErrorKind::NotASquare);
    REQUIRE(square_root(Rational(9, 4) * Symbol::one(1, -2)) ==
            Rational(3, 2) * Symbol::one(1, -2));
}

TEST_CASE("adjoint on fixed inputs", "[symbol]") {
    REQUIRE(adjoint(Sx()) == Sx());
    REQUIRE(adjoint(Su()) == Su());
    REQUIRE(adjoint(Symbol::tau_power(1, 1, -6)) == -Symbol::tau_power(1, 1, -6));

    // (x1 u1)^* = x1 u1 + tau^-1.
    Symbol xu = Symbol::embed(px() * pu(), 0, -6);
    REQUIRE(adjoint(xu) == xu + Symbol::tau_power(1, -1, -6));
    REQUIRE(adjoint(star(Sx(), Su())) == star(Su(), Sx()));
}

TEST_CASE("adjoint laws on random symbols", "[symbol][property]") {
    Rng rng(20260411);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol p = random_symbol(rng, dim, -6, 0, 3);
        Symbol q = random_symbol(rng, dim, -6, 0, 3);
        REQUIRE(adjoint(adjoint(p)) == p);
        REQUIRE(adjoint(p + q) == adjoint(p) + adjoint(q));
        REQUIRE(equal_on_common_window(adjoint(star(p, q)), star(adjoint(q), adjoint(p))));
    }
}

TEST_CASE("star-unitarity detection", "[symbol]") {
    REQUIRE(is_star_unitary(Symbol::one(1, -6)));
    REQUIRE_FALSE(is_star_unitary(Symbol::one(1, -6) + tau_shift(Sx(), -1)));
    REQUIRE_FALSE(is_star_unitary(Symbol::tau_power(1, 1, -6)));
    REQUIRE_FALSE(is_star_unitary(Symbol(1, -6)));

    Rng rng(20260412);
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        REQUIRE(is_star_unitary(random_star_unitary(rng, dim, 6, 2)));
        REQUIRE(is_star_unitary(unitarize(random_unit(rng, dim, 6, 2))));
    }
}

TEST_CASE("central part split", "[symbol]") {
    Symbol s = Rational(2) * Symbol::one(1, -4) +
               tau_shift(Rational(3) * Symbol::one(1, -4) + Sx(-4), -1);
    CentralSplit cs = central_part(s);
    REQUIRE(cs.central.dim() == 0);
    REQUIRE(cs.central ==
            Rational(2) * Symbol::one(0, -4) + Rational(3) * Symbol::tau_power(0, -1, -4));
    REQUIRE(cs.residual == truncated(tau_shift(Sx(-4), -1), -4));
    REQUIRE(scalar_embed(cs.central, 1) + cs.residual == s);

    CentralSplit cx = central_part(Sx());
    REQUIRE(cx.central.is_zero());
    REQUIRE(cx.residual == Sx());

    CentralSplit ct = central_part(Rational(5) * Symbol::tau_power(1, 2, 0));
    REQUIRE(ct.central == Rational(5) * Symbol::tau_power(0, 2, 0));
    REQUIRE(ct.residual.is_zero());

    REQUIRE(thrown_kind([] { return scalar_embed(Sx(), 1); }) == ErrorKind::BadRequest);
}

TEST_CASE("central scalars commute with everything", "[symbol][property]") {
    Rng rng(20260413);
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol z = scalar_embed(random_central_unitary(rng, 6), dim);
        Symbol p = random_symbol(rng, dim, -6, 0, 3);
        REQUIRE(commutator(z, p).is_zero());
    }
    // ...and noncentral symbols fail against some generator.
    REQUIRE_FALSE(commutator(Sx(), Su()).is_zero());
}

TEST_CASE("dehomogenization of graded parts", "[symbol]") {
    // Fiber degree + tau exponent must equal the grade; u-slots carry the
    // fiber variable.
    std::map<long long, MultiPoly> parts;
    parts[1] = pu();
    REQUIRE(dehomogenize(1, parts, 2) == Symbol::embed(pu(), 2, 2));

    parts.clear();
    parts[0] = pu() * pu();
    REQUIRE(dehomogenize(1, parts, 2) == Symbol::embed(pu() * pu(), 2, 2));

    parts.clear();
    parts[0] = pu() + px() * pu();
    REQUIRE(dehomogenize(1, parts, 1) == Symbol::embed(pu() + px() * pu(), 1, 1));

    parts.clear();
    parts[0] = pu() * pu();
    REQUIRE(thrown_kind([&] { return dehomogenize(1, parts, 1); }) == ErrorKind::NonHomogeneous);
    parts.clear();
    parts[-1] = pu();
    REQUIRE(thrown_kind([&] { return dehomogenize(1, parts, 0); }) == ErrorKind::NonHomogeneous);

    // Empty input still knows its dimension and grade.
    Symbol empty = dehomogenize(2, {}, 3);
    REQUIRE(empty.dim() == 2);
    REQUIRE(empty.is_zero());
    REQUIRE(empty.floor() == 3);
}

TEST_CASE("star exponential", "[symbol]") {
    Symbol e1 = star_exp(Symbol::tau_power(1, -1, -3));
    Symbol want(1, -3);
    want.set_coefficient(0, MultiPoly::constant(1, 1));
    want.set_coefficient(-1, MultiPoly::constant(1, 1));
    want.set_coefficient(-2, MultiPoly::constant(1, Rational(1, 2)));
    want.set_coefficient(-3, MultiPoly::constant(1, Rational(1, 6)));
    REQUIRE(e1 == want);

    // exp(-tau^-3) down to tau^-6.
    Symbol e2 = star_exp(Symbol::embed(MultiPoly::constant(0, -1), -3, -6));
    Symbol want2(0, -6);
    want2.set_coefficient(0, MultiPoly::constant(0, 1));
    want2.set_coefficient(-3, MultiPoly::constant(0, -1));
    want2.set_coefficient(-6, MultiPoly::constant(0, Rational(1, 2)));
    REQUIRE(e2 == want2);

    REQUIRE(thrown_kind([] { return star_exp(Symbol::one(1, -4)); }) == ErrorKind::BadRequest);

    // exp(a) * exp(-a) telescopes to 1 within the window.
    Rng rng(20260414);
    for (int trial = 0; trial < 8; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol a = random_symbol(rng, dim, -6, -1, 2);
        REQUIRE(is_one_on_window(star(star_exp(a), star_exp(-a))));
    }
}

TEST_CASE("star product laws on random symbols", "[symbol][property]") {
    Rng rng(20260415);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol p = random_nonzero_symbol(rng, dim, -6, 1, 3);
        Symbol q = random_nonzero_symbol(rng, dim, -6, 1, 3);
        Symbol r = random_nonzero_symbol(rng, dim, -6, 1, 3);

        // Associativity, with identical floors on both sides.
        REQUIRE(star(star(p, q), r) == star(p, star(q, r)));

        // Bilinearity up to the common window; the floors themselves can
        // legitimately differ when leading terms cancel in a sum.
        REQUIRE(equal_on_common_window(star(p + q, r), star(p, r) + star(q, r)));
        REQUIRE(equal_on_common_window(star(p, q + r), star(p, q) + star(p, r)));

        // The unit acts trivially.
        Symbol one = Symbol::one(dim, -6);
        REQUIRE(equal_on_common_window(star(one, p), p));
        REQUIRE(equal_on_common_window(star(p, one), p));

        // Orders add, principals multiply (no zero divisors over Q).
        OrderInfo op = order_info(p), oq = order_info(q), opq = order_info(star(p, q));
        REQUIRE(opq.finite);
        REQUIRE(opq.order == op.order + oq.order);
        REQUIRE(opq.principal == op.principal * oq.principal);

        // Leading commutator term is the Poisson bracket of the principals.
        Symbol c = commutator(p, q);
        MultiPoly pb = poisson(op.principal, oq.principal);
        long long lead = op.order + oq.order - 1;
        if (lead >= c.floor()) {
            REQUIRE(c.coefficient(lead) == pb);
            OrderInfo oc = order_info(c);
            if (oc.finite) REQUIRE(oc.order <= lead);
        }
    }
}

TEST_CASE("inverse and root behave on random units", "[symbol][property]") {
    Rng rng(20260416);
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol p = random_unit(rng, dim, 6, 3);
        REQUIRE(star(p, invert(p)) == Symbol::one(dim, -6));
        REQUIRE(star(invert(p), p) == Symbol::one(dim, -6));

        Symbol q = square_root(p);
        REQUIRE(star(q, q) == p);
        REQUIRE(square_root(p, -1) == -q);

        // Self-adjoint inputs get self-adjoint roots.
        Symbol sa = truncated(star(p, adjoint(p)), -6);
        REQUIRE(adjoint(sa) == sa);
        REQUIRE(adjoint(square_root(sa)) == square_root(sa));
    }
}

TEST_CASE("canonical text for symbols", "[symbol][text]") {
    Symbol s(1, -6);
    s.set_coefficient(-1, Rational(3, 2) * px() * px() * pu());
    REQUIRE(to_text(s) == "3/2*x1^2*u1*tau^-1");

    REQUIRE(to_text(Symbol(1, -6)) == "0");
    REQUIRE(to_text(Symbol::one(1, -6)) == "1");
    REQUIRE(to_text(Symbol::tau_power(1, 1, -6)) == "tau");
    REQUIRE(to_text(Symbol::tau_power(1, -2, -6)) == "tau^-2");
    REQUIRE(to_text(-Symbol::one(1, 0)) == "-1");
    REQUIRE(to_text(star(Su(), Sx())) == "x1*u1 + tau^-1");
    REQUIRE(to_text(Symbol::one(1, -6) - tau_shift(Sx(), -1)) == "1 - x1*tau^-1");

    Symbol m = tau_shift(Su(), 2) + Sx();
    REQUIRE(order_to_text(m) == "order 2, principal u1");
    REQUIRE(order_to_text(Symbol(1, -3)) == "order -infinity");

    // Parse of the canonical rendering reproduces the symbol exactly.
    Rng rng(20260417);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 2);
        Symbol p = random_symbol(rng, dim, -6, 1, 3);
        Symbol back = parse_operator_expr(to_text(p), dim, 6);
        if (order_info(p).finite && order_info(p).order > 0) {
            // Positive orders keep the parse floor at -depth as well.
            REQUIRE(equal_on_common_window(back, p));
        } else {
            REQUIRE(back == p);
        }
    }
}
