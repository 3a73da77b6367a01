/* Tour of the symbol calculus: star products, inverses, roots, adjoints,
 * exponentials, and recognition of conjugation records. */

#include <iostream>

#include "wkb/wkb.hpp"

using namespace wkb;

int main() {
    long long depth = 6;
    Symbol x = Symbol::generator_x(1, 1, -depth);
    Symbol u = Symbol::generator_u(1, 1, -depth);

    std::cout << "window depth " << depth << ", one variable pair\n\n";

    std::cout << "x1 * u1          = " << to_text(star(x, u)) << "\n";
    std::cout << "u1 * x1          = " << to_text(star(u, x)) << "\n";
    std::cout << "[u1, x1]         = " << to_text(commutator(u, x)) << "\n\n";

    Symbol p = parse_operator_expr("1 + x1*u1*tau^-1", 1, depth);
    std::cout << "P                = " << to_text(p) << "\n";
    std::cout << "P^-1             = " << to_text(invert(p)) << "\n";
    std::cout << "P^-1 * P         = " << to_text(star(invert(p), p)) << "\n";
    std::cout << "sqrt(P)          = " << to_text(square_root(p, 1)) << "\n";
    std::cout << "P^*              = " << to_text(adjoint(p)) << "\n\n";

    // Exponentials of anti-self-adjoint symbols are star-unitary.
    Symbol a = tau_shift(x, -1);
    Symbol e = star_exp(a);
    std::cout << "E = exp(x1/tau)  = " << to_text(e) << "\n";
    std::cout << "E * E^*          = " << to_text(star(e, adjoint(e))) << "\n";
    std::cout << "unitary?           " << (is_star_unitary(e) ? "yes" : "no") << "\n\n";

    // Conjugation by an invertible symbol gives an automorphism record; the
    // recognizer recovers the conjugator from the record alone.
    Symbol q = parse_operator_expr("1 + (x1 + u1^2)*tau^-1", 1, depth);
    AutomorphismRecord rec = ad_automorphism(q);
    std::cout << "Ad(Q) images:\n";
    std::cout << "  X1 = " << to_text(rec.x_images[0]) << "\n";
    std::cout << "  U1 = " << to_text(rec.u_images[0]) << "\n";
    InnerRecognition found = recognize_inner(rec);
    std::cout << "recovered Q      = " << to_text(found.inner) << "\n";
    std::cout << "note: " << found.central_ambiguity_note << "\n";
    return 0;
}
