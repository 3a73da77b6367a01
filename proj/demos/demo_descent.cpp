/* Covering walkthrough: lift chart transitions to automorphism records,
 * check that triples close up to inner automorphisms, and inspect the
 * central defect left by a perturbed covering. */

#include <iostream>
#include <vector>

#include "wkb/wkb.hpp"

using namespace wkb;

namespace {

SymplecticMapSpec rotation(Rational shift) {
    SymplecticMapSpec m;
    m.dim = 1;
    m.shift = std::move(shift);
    MultiPoly x = MultiPoly::variable_x(1, 1), u = MultiPoly::variable_u(1, 1);
    m.f = {u};
    m.g = {-x};
    m.inv_x = {-u};
    m.inv_u = {x};
    return m;
}

SymplecticMapSpec cubic_shear(Rational shift) {
    SymplecticMapSpec m = SymplecticMapSpec::identity(1, std::move(shift));
    MultiPoly x = MultiPoly::variable_x(1, 1);
    m.g[0] += pow(x, 2) * Rational(3); // u + d/dx (x^3)
    m.inv_u[0] -= pow(x, 2) * Rational(3);
    return m;
}

void report(const CoveringSpec& cov) {
    const auto& ch = cov.charts;
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a + 1; b < ch.size(); ++b)
            for (std::size_t c = b + 1; c < ch.size(); ++c) {
                TripleDefect t = triple_defect(cov, ch[a], ch[b], ch[c]);
                std::cout << "  triple (" << t.i << ", " << t.j << ", " << t.k
                          << "): inner = " << to_text(t.inner)
                          << ", c = " << rational_to_string(t.c) << "\n";
            }
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a + 1; b < ch.size(); ++b)
            for (std::size_t c = b + 1; c < ch.size(); ++c)
                for (std::size_t d = c + 1; d < ch.size(); ++d) {
                    QuadrupleReport q = verify_w_cocycle(cov, ch[a], ch[b], ch[c], ch[d]);
                    std::cout << "  quadruple (" << q.i << ", " << q.j << ", " << q.k << ", "
                              << q.l << "): zeta = " << to_text(q.zeta)
                              << (q.zeta_is_one ? " (trivial)" : " (central)")
                              << ", c-identity " << (q.c_identity_holds ? "holds" : "FAILS")
                              << "\n";
                }
}

} // namespace

int main() {
    long long depth = 5;

    // Chart lifts; the transitions below are their pairwise quotients, so
    // every defect must telescope away.
    std::vector<AutomorphismRecord> lifts;
    lifts.push_back(quantize_map(SymplecticMapSpec::identity(1, Rational(1, 2)), depth));
    lifts.push_back(quantize_map(cubic_shear(Rational(-1)), depth));
    lifts.push_back(quantize_map(rotation(Rational(1, 3)), depth));

    CoveringSpec cov;
    cov.dim = 1;
    cov.depth = depth;
    cov.charts = {0, 1, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            cov.transitions.emplace(
                std::make_pair(i, j),
                compose_automorphisms(lifts[static_cast<std::size_t>(i)],
                                      invert_automorphism(lifts[static_cast<std::size_t>(j)])));
    validate_covering(cov);
    std::cout << "coboundary covering (three charts):\n";
    report(cov);

    // Perturb two transitions by conjugations that do not quite commute;
    // the quadruple defect survives as a central unit.
    CoveringSpec pcov;
    pcov.dim = 1;
    pcov.depth = depth;
    pcov.charts = {0, 1, 2, 3};
    AutomorphismRecord ident = quantize_map(SymplecticMapSpec::identity(1), depth);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) pcov.transitions.emplace(std::make_pair(i, j), ident);
    pcov.transitions[{0, 1}] =
        ad_automorphism(star_exp(Symbol::embed(MultiPoly::variable_u(1, 1), -1, -depth)));
    pcov.transitions[{1, 2}] =
        ad_automorphism(star_exp(Symbol::embed(MultiPoly::variable_x(1, 1), -1, -depth)));
    validate_covering(pcov);
    std::cout << "\nperturbed covering (four charts):\n";
    report(pcov);
    return 0;
}
