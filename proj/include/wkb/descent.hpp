#pragma once

/* Descent data over a finite covering.  A transition entry keyed
 * (to = i, from = j) stores a polynomial symplectic map whose forward
 * components express chart-j coordinates in terms of chart-i coordinates,
 * together with its quantized record.  For a consistent covering the
 * composite R_ij o R_jk o R_ik^{-1} sits above the identity map; its
 * conjugator (canonically normalized) is the triple defect, and the
 * transported primitives give the scalar c-datum.  Quadruple defects zeta
 * are forced central and obey exact cocycle identities, which is what
 * verify_w_cocycle checks.  The same machinery, with sections supplied
 * explicitly, yields the 3-cocycle of a lien and the comparison data of a
 * lien isomorphism. */

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wkb/errors.hpp"
#include "wkb/quantize.hpp"
#include "wkb/symbol.hpp"

namespace wkb {

struct CoveringSpec {
    int dim = 0;
    long long depth = 0;
    std::vector<int> charts;
    std::map<std::pair<int, int>, AutomorphismRecord> transitions; // key (to, from)

    const AutomorphismRecord& transition(int to, int from) const {
        auto it = transitions.find({to, from});
        if (it == transitions.end())
            fail(ErrorKind::BadDocument, "missing transition (" + std::to_string(to) + ", " +
                                             std::to_string(from) + ")");
        return it->second;
    }
};

/* Record invariants and map consistency for every listed transition. */
inline void validate_covering(const CoveringSpec& cov) {
    for (const auto& [key, rec] : cov.transitions) {
        auto tag = "(" + std::to_string(key.first) + ", " + std::to_string(key.second) + ")";
        if (rec.dim != cov.dim || rec.depth < cov.depth)
            fail(ErrorKind::BadDocument, "transition " + tag + " has the wrong dimension or depth");
        auto chk = check_symplectic(rec.map);
        if (!chk.ok)
            fail(ErrorKind::NotSymplectic, "transition " + tag + " is not symplectic: " + chk.failure);
        auto defects = record_defects(rec);
        if (!defects.empty())
            fail(ErrorKind::InconsistentCovering,
                 "transition " + tag + " fails record checks: " + defects.front());
    }
}

struct TripleDefect {
    int i = 0, j = 0, k = 0;
    Symbol inner;    // canonical conjugator of the composite around the triple
    Rational c = 0;  // constant of the transported primitive defect
};

/* a_pq rewritten in chart-p coordinates through the stored forward map. */
inline MultiPoly transported_primitive(const AutomorphismRecord& rec) {
    return pullback(rec.primitive, rec.map.forward_images());
}

inline TripleDefect triple_defect(const CoveringSpec& cov, int i, int j, int k) {
    const auto& rij = cov.transition(i, j);
    const auto& rjk = cov.transition(j, k);
    const auto& rik = cov.transition(i, k);

    AutomorphismRecord d =
        compose_automorphisms(compose_automorphisms(rij, rjk), invert_automorphism(rik));
    if (!d.map.forward_is_identity())
        fail(ErrorKind::InconsistentCovering,
             "transition maps around (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                 std::to_string(k) + ") do not compose to the identity");

    TripleDefect out;
    out.i = i;
    out.j = j;
    out.k = k;
    out.inner = recognize_inner(d).inner;

    MultiPoly chi = transported_primitive(rij) +
                    pullback(transported_primitive(rjk), rij.map.forward_images()) -
                    transported_primitive(rik);
    if (!chi.is_constant())
        fail(ErrorKind::InconsistentCovering,
             "primitive defect around (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                 std::to_string(k) + ") is not constant");
    out.c = chi.constant_term();
    return out;
}

struct QuadrupleReport {
    int i = 0, j = 0, k = 0, l = 0;
    TripleDefect t_ijk, t_ijl, t_ikl, t_jkl;
    Symbol zeta;            // central by construction; an error otherwise
    bool zeta_is_one = false;
    Rational c_lhs = 0, c_rhs = 0;
    bool c_identity_holds = false;
};

inline QuadrupleReport verify_w_cocycle(const CoveringSpec& cov, int i, int j, int k, int l) {
    QuadrupleReport rep;
    rep.i = i;
    rep.j = j;
    rep.k = k;
    rep.l = l;
    rep.t_ijk = triple_defect(cov, i, j, k);
    rep.t_ijl = triple_defect(cov, i, j, l);
    rep.t_ikl = triple_defect(cov, i, k, l);
    rep.t_jkl = triple_defect(cov, j, k, l);

    const auto& rij = cov.transition(i, j);
    Symbol lhs = star(apply_automorphism(rij, rep.t_jkl.inner), rep.t_ijl.inner);
    Symbol rhs = star(rep.t_ijk.inner, rep.t_ikl.inner);
    rep.zeta = star(invert(lhs), rhs);

    if (!central_part(rep.zeta).residual.is_zero())
        fail(ErrorKind::NonCentralDefect,
             "quadruple defect for (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                 std::to_string(k) + ", " + std::to_string(l) + ") is not central");
    rep.zeta_is_one = is_one_on_window(rep.zeta);
    rep.c_lhs = rep.t_ijk.c + rep.t_ikl.c;
    rep.c_rhs = rep.t_jkl.c + rep.t_ijl.c;
    rep.c_identity_holds = rep.c_lhs == rep.c_rhs;
    return rep;
}

/* Lien presentation: per-pair isomorphism records and per-triple sections. */
struct LienData {
    int dim = 0;
    long long depth = 0;
    std::vector<int> charts;
    std::map<std::pair<int, int>, AutomorphismRecord> isos; // key (to, from)
    std::map<std::tuple<int, int, int>, Symbol> sections;

    const AutomorphismRecord& iso(int to, int from) const {
        auto it = isos.find({to, from});
        if (it == isos.end())
            fail(ErrorKind::BadDocument,
                 "missing isomorphism (" + std::to_string(to) + ", " + std::to_string(from) + ")");
        return it->second;
    }

    const Symbol& section(int i, int j, int k) const {
        auto it = sections.find({i, j, k});
        if (it == sections.end())
            fail(ErrorKind::BadDocument, "missing section (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ", " + std::to_string(k) + ")");
        return it->second;
    }
};

struct LienQuadruple {
    int i = 0, j = 0, k = 0, l = 0;
    Symbol c;
    bool is_one = false;
};

struct Lien3Result {
    std::vector<LienQuadruple> quadruples;
    bool quintuple_identity = true;
};

inline Lien3Result compute_lien_3cocycle(const LienData& lien) {
    for (const auto& [key, a] : lien.sections) {
        OrderInfo oi = order_info(a);
        if (!oi.finite || !oi.principal.is_constant() || oi.principal.constant_term() == 0)
            fail(ErrorKind::BadRequest, "section (" + std::to_string(std::get<0>(key)) + ", " +
                                            std::to_string(std::get<1>(key)) + ", " +
                                            std::to_string(std::get<2>(key)) +
                                            ") is not invertible");
    }

    Lien3Result out;
    std::map<std::tuple<int, int, int, int>, Symbol> cs;
    const auto& ch = lien.charts;
    auto nch = ch.size();
    for (std::size_t a = 0; a < nch; ++a)
        for (std::size_t b = a + 1; b < nch; ++b)
            for (std::size_t c = b + 1; c < nch; ++c)
                for (std::size_t d = c + 1; d < nch; ++d) {
                    int i = ch[a], j = ch[b], k = ch[c], l = ch[d];
                    Symbol lhs = star(apply_automorphism(lien.iso(i, j), lien.section(j, k, l)),
                                      lien.section(i, j, l));
                    Symbol rhs = star(lien.section(i, j, k), lien.section(i, k, l));
                    Symbol defect = star(invert(lhs), rhs);
                    if (!central_part(defect).residual.is_zero())
                        fail(ErrorKind::NonCentralDefect,
                             "3-cocycle value for (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ", " + std::to_string(k) + ", " + std::to_string(l) +
                                 ") is not central");
                    LienQuadruple q{i, j, k, l, defect, is_one_on_window(defect)};
                    out.quadruples.push_back(q);
                    cs.emplace(std::make_tuple(i, j, k, l), defect);
                }

    for (std::size_t a = 0; a < nch; ++a)
        for (std::size_t b = a + 1; b < nch; ++b)
            for (std::size_t c = b + 1; c < nch; ++c)
                for (std::size_t d = c + 1; d < nch; ++d)
                    for (std::size_t e = d + 1; e < nch; ++e) {
                        int q0 = ch[a], q1 = ch[b], q2 = ch[c], q3 = ch[d], q4 = ch[e];
                        const Symbol& c0124 = cs.at({q0, q1, q2, q4});
                        const Symbol& c0234 = cs.at({q0, q2, q3, q4});
                        const Symbol& c1234 = cs.at({q1, q2, q3, q4});
                        const Symbol& c0134 = cs.at({q0, q1, q3, q4});
                        const Symbol& c0123 = cs.at({q0, q1, q2, q3});
                        Symbol lhs = star(c0124, c0234);
                        Symbol rhs = star(star(c1234, c0134), c0123);
                        if (!equal_on_common_window(lhs, rhs)) out.quintuple_identity = false;
                    }
    return out;
}

/* Comparison data between two liens over the same charts: per-chart
 * records u_i, per-pair twists l_ij. */
struct LienIsoData {
    std::map<int, AutomorphismRecord> u;
    std::map<std::pair<int, int>, Symbol> l;

    const AutomorphismRecord& chart_record(int i) const {
        auto it = u.find(i);
        if (it == u.end())
            fail(ErrorKind::BadDocument, "missing chart record " + std::to_string(i));
        return it->second;
    }

    const Symbol& twist(int i, int j) const {
        auto it = l.find({i, j});
        if (it == l.end())
            fail(ErrorKind::BadDocument,
                 "missing twist (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        return it->second;
    }
};

struct LienIsoTriple {
    int i = 0, j = 0, k = 0;
    Symbol d;
    bool is_one = false;
};

struct LienIsoResult {
    std::vector<LienIsoTriple> triples;
};

inline bool records_agree(const AutomorphismRecord& a, const AutomorphismRecord& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i) {
        if (!equal_on_common_window(a.x_images[static_cast<std::size_t>(i)],
                                    b.x_images[static_cast<std::size_t>(i)]) ||
            !equal_on_common_window(a.u_images[static_cast<std::size_t>(i)],
                                    b.u_images[static_cast<std::size_t>(i)]))
            return false;
        if (!(a.map.f[static_cast<std::size_t>(i)] == b.map.f[static_cast<std::size_t>(i)]) ||
            !(a.map.g[static_cast<std::size_t>(i)] == b.map.g[static_cast<std::size_t>(i)]))
            return false;
    }
    return true;
}

/* Verifies the intertwining equation g_ij o u_j == Ad(l_ij) o u_i o f_ij
 * on every pair (an error when violated), then computes the comparison
 * defect d per triple. */
inline LienIsoResult check_lien_isomorphism(const LienData& lienA, const LienData& lienB,
                                            const LienIsoData& iso) {
    for (const auto& [key, fij] : lienA.isos) {
        int i = key.first, j = key.second;
        const AutomorphismRecord& gij = lienB.iso(i, j);
        AutomorphismRecord lhs = compose_automorphisms(gij, iso.chart_record(j));
        AutomorphismRecord rhs = compose_automorphisms(
            compose_automorphisms(ad_automorphism(iso.twist(i, j)), iso.chart_record(i)), fij);
        if (!records_agree(lhs, rhs))
            fail(ErrorKind::IsoViolated,
                 "intertwining equation fails between charts " + std::to_string(i) + " and " +
                     std::to_string(j));
    }

    LienIsoResult out;
    const auto& ch = lienA.charts;
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a + 1; b < ch.size(); ++b)
            for (std::size_t c = b + 1; c < ch.size(); ++c) {
                int i = ch[a], j = ch[b], k = ch[c];
                Symbol num = star(apply_automorphism(lienB.iso(i, j), iso.twist(j, k)),
                                  star(iso.twist(i, j),
                                       apply_automorphism(iso.chart_record(i),
                                                          lienA.section(i, j, k))));
                Symbol den = star(lienB.section(i, j, k), iso.twist(i, k));
                Symbol d = star(invert(num), den);
                out.triples.push_back({i, j, k, d, is_one_on_window(d)});
            }
    return out;
}

} // namespace wkb
