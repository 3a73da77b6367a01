#pragma once

/* Document formats.  All loads are strict: unknown keys, malformed
 * coefficients ("num" or "num/den" with a nonzero denominator), wrong
 * exponent counts, and duplicate entries are rejected.  Zero coefficients
 * are normalized away on load, so emit(load(doc)) is a fixed point and
 * round-trips are bit-exact on canonical documents. */

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wkb/descent.hpp"
#include "wkb/errors.hpp"
#include "wkb/expr.hpp"
#include "wkb/multipoly.hpp"
#include "wkb/quantize.hpp"
#include "wkb/rational.hpp"
#include "wkb/symbol.hpp"
#include "wkb/text.hpp"

namespace wkb {

using Json = nlohmann::json;

namespace json_detail {

inline void expect(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::BadDocument, msg);
}

inline void check_keys(const Json& j, const std::vector<std::string>& required,
                       const std::vector<std::string>& optional, const std::string& what) {
    expect(j.is_object(), what + " must be an object");
    for (const auto& k : required)
        expect(j.contains(k), what + " is missing key '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        bool known = false;
        for (const auto& r : required)
            if (k == r) known = true;
        for (const auto& o : optional)
            if (k == o) known = true;
        expect(known, what + " has unknown key '" + k + "'");
    }
}

inline long long get_int(const Json& j, const std::string& key, const std::string& what) {
    expect(j.at(key).is_number_integer(), what + " key '" + key + "' must be an integer");
    return j.at(key).get<long long>();
}

inline Rational get_rational(const Json& j, const std::string& key, const std::string& what) {
    expect(j.at(key).is_string(), what + " key '" + key + "' must be a rational string");
    auto r = try_parse_rational(j.at(key).get<std::string>());
    expect(r.has_value(), what + " key '" + key + "' is not a valid rational");
    return *r;
}

inline Exponents get_exponents(const Json& j, const std::string& key, int dim,
                               const std::string& what) {
    const Json& arr = j.at(key);
    expect(arr.is_array() && arr.size() == static_cast<std::size_t>(dim),
           what + " key '" + key + "' must list one exponent per variable");
    Exponents e;
    for (const auto& v : arr) {
        expect(v.is_number_integer() && v.get<long long>() >= 0,
               what + " exponents must be nonnegative integers");
        e.push_back(static_cast<unsigned>(v.get<long long>()));
    }
    return e;
}

inline Json monomial_to_json(int dim, const Exponents& e, const Rational& c) {
    Json m;
    m["c"] = rational_to_string(c);
    m["x"] = Json::array();
    m["u"] = Json::array();
    for (int s = 0; s < dim; ++s) m["x"].push_back(e[static_cast<std::size_t>(s)]);
    for (int s = dim; s < 2 * dim; ++s) m["u"].push_back(e[static_cast<std::size_t>(s)]);
    return m;
}

/* Monomials are emitted in descending graded-lex order. */
inline Json monomials_to_json(const MultiPoly& p) {
    Json arr = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        arr.push_back(monomial_to_json(p.dim(), it->first, it->second));
    return arr;
}

inline MultiPoly monomials_from_json(const Json& arr, int dim, const std::string& what) {
    expect(arr.is_array(), what + " must be an array of monomials");
    MultiPoly p(dim);
    for (const auto& m : arr) {
        check_keys(m, {"c", "x", "u"}, {}, what + " monomial");
        Rational c = get_rational(m, "c", what + " monomial");
        Exponents e = get_exponents(m, "x", dim, what + " monomial");
        Exponents eu = get_exponents(m, "u", dim, what + " monomial");
        e.insert(e.end(), eu.begin(), eu.end());
        expect(p.terms().find(e) == p.terms().end(), what + " has a duplicate monomial");
        p.add_term(std::move(e), std::move(c));
    }
    return p;
}

} // namespace json_detail

inline Json to_json(const Symbol& s) {
    Json j;
    j["dim"] = s.dim();
    j["floor"] = s.floor();
    j["terms"] = Json::array();
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
        Json t;
        t["tau"] = it->first;
        t["monomials"] = json_detail::monomials_to_json(it->second);
        j["terms"].push_back(std::move(t));
    }
    return j;
}

inline Symbol symbol_from_json(const Json& j) {
    using namespace json_detail;
    check_keys(j, {"dim", "floor", "terms"}, {}, "symbol");
    long long dim = get_int(j, "dim", "symbol");
    expect(dim >= 0, "symbol dimension must be nonnegative");
    long long floor = get_int(j, "floor", "symbol");
    Symbol s(static_cast<int>(dim), floor);
    expect(j.at("terms").is_array(), "symbol key 'terms' must be an array");
    for (const auto& t : j.at("terms")) {
        check_keys(t, {"tau", "monomials"}, {}, "symbol term");
        long long tau = get_int(t, "tau", "symbol term");
        expect(tau >= floor, "symbol term order lies below the floor");
        expect(s.terms().find(tau) == s.terms().end(), "symbol has a duplicate tau order");
        MultiPoly p = monomials_from_json(t.at("monomials"), static_cast<int>(dim), "symbol term");
        if (!p.is_zero()) s.set_coefficient(tau, std::move(p));
    }
    return s;
}

inline Json to_json(const SymplecticMapSpec& m) {
    Json j;
    j["dim"] = m.dim;
    j["forward"]["f"] = Json::array();
    j["forward"]["g"] = Json::array();
    j["inverse"]["x"] = Json::array();
    j["inverse"]["u"] = Json::array();
    for (const auto& p : m.f) j["forward"]["f"].push_back(to_text(p));
    for (const auto& p : m.g) j["forward"]["g"].push_back(to_text(p));
    for (const auto& p : m.inv_x) j["inverse"]["x"].push_back(to_text(p));
    for (const auto& p : m.inv_u) j["inverse"]["u"].push_back(to_text(p));
    j["shift"] = rational_to_string(m.shift);
    return j;
}

inline SymplecticMapSpec mapspec_from_json(const Json& j) {
    using namespace json_detail;
    check_keys(j, {"dim", "forward", "inverse"}, {"shift"}, "map");
    SymplecticMapSpec m;
    long long dim = get_int(j, "dim", "map");
    expect(dim >= 1, "map dimension must be positive");
    m.dim = static_cast<int>(dim);
    check_keys(j.at("forward"), {"f", "g"}, {}, "map forward");
    check_keys(j.at("inverse"), {"x", "u"}, {}, "map inverse");
    auto load = [&](const Json& arr, std::vector<MultiPoly>& out, const std::string& what) {
        expect(arr.is_array() && arr.size() == static_cast<std::size_t>(m.dim),
               what + " must list one component per index");
        for (const auto& e : arr) {
            expect(e.is_string(), what + " components must be expression strings");
            out.push_back(parse_map_component(e.get<std::string>(), m.dim));
        }
    };
    load(j.at("forward").at("f"), m.f, "map forward f");
    load(j.at("forward").at("g"), m.g, "map forward g");
    load(j.at("inverse").at("x"), m.inv_x, "map inverse x");
    load(j.at("inverse").at("u"), m.inv_u, "map inverse u");
    if (j.contains("shift")) m.shift = get_rational(j, "shift", "map");
    return m;
}

inline Json to_json(const AutomorphismRecord& r) {
    Json j;
    j["dim"] = r.dim;
    j["depth"] = r.depth;
    j["c"] = rational_to_string(r.c);
    j["map"] = to_json(r.map);
    j["x"] = Json::array();
    j["u"] = Json::array();
    for (const auto& s : r.x_images) j["x"].push_back(to_json(s));
    for (const auto& s : r.u_images) j["u"].push_back(to_json(s));
    j["primitive"]["monomials"] = json_detail::monomials_to_json(r.primitive);
    return j;
}

inline AutomorphismRecord record_from_json(const Json& j) {
    using namespace json_detail;
    check_keys(j, {"dim", "depth", "c", "map", "x", "u", "primitive"}, {}, "record");
    AutomorphismRecord r;
    long long dim = get_int(j, "dim", "record");
    expect(dim >= 1, "record dimension must be positive");
    r.dim = static_cast<int>(dim);
    r.depth = get_int(j, "depth", "record");
    expect(r.depth >= 1, "record depth must be at least 1");
    r.c = get_rational(j, "c", "record");
    r.map = mapspec_from_json(j.at("map"));
    expect(r.map.dim == r.dim, "record map dimension mismatch");
    auto load_images = [&](const Json& arr, std::vector<Symbol>& out, const std::string& what) {
        expect(arr.is_array() && arr.size() == static_cast<std::size_t>(r.dim),
               what + " must list one image per generator");
        for (const auto& e : arr) {
            Symbol s = symbol_from_json(e);
            expect(s.dim() == r.dim, what + " image dimension mismatch");
            expect(s.floor() <= -r.depth, what + " image window is shallower than the depth");
            out.push_back(std::move(s));
        }
    };
    load_images(j.at("x"), r.x_images, "record x");
    load_images(j.at("u"), r.u_images, "record u");
    check_keys(j.at("primitive"), {"monomials"}, {}, "record primitive");
    r.primitive = monomials_from_json(j.at("primitive").at("monomials"), r.dim, "record primitive");
    auto defects = record_defects(r);
    if (!defects.empty())
        fail(ErrorKind::BadDocument, "record fails its invariants: " + defects.front());
    return r;
}

namespace json_detail {

/* Shared loader for transition-like entries carrying a map and optional
 * precomputed images; returns the finished record. */
inline AutomorphismRecord transition_record(const Json& t, int dim, long long depth,
                                            const std::string& what) {
    SymplecticMapSpec m = mapspec_from_json(t.at("map"));
    expect(m.dim == dim, what + " map dimension mismatch");
    if (t.contains("shift")) {
        Rational s = get_rational(t, "shift", what);
        expect(m.shift == 0 || m.shift == s, what + " has conflicting shift values");
        m.shift = s;
    }
    if (!t.contains("record")) return quantize_map(m, depth);

    auto chk = check_symplectic(m);
    if (!chk.ok) fail(ErrorKind::NotSymplectic, what + ": " + chk.failure);
    AutomorphismRecord r;
    r.dim = dim;
    r.depth = depth;
    r.c = m.shift;
    r.map = m;
    r.primitive = compute_primitive(m);
    const Json& rec = t.at("record");
    check_keys(rec, {"x", "u"}, {}, what + " record");
    auto load_images = [&](const Json& arr, std::vector<Symbol>& out) {
        expect(arr.is_array() && arr.size() == static_cast<std::size_t>(dim),
               what + " record must list one image per generator");
        for (const auto& e : arr) {
            Symbol s = symbol_from_json(e);
            expect(s.dim() == dim, what + " record image dimension mismatch");
            expect(s.floor() <= -depth, what + " record image window is too shallow");
            out.push_back(std::move(s));
        }
    };
    load_images(rec.at("x"), r.x_images);
    load_images(rec.at("u"), r.u_images);
    return r;
}

inline std::vector<int> charts_from_json(const Json& arr, const std::string& what) {
    expect(arr.is_array() && !arr.empty(), what + " must be a nonempty array");
    std::vector<int> charts;
    for (const auto& c : arr) {
        expect(c.is_number_integer(), what + " entries must be integers");
        int id = static_cast<int>(c.get<long long>());
        for (int seen : charts)
            if (seen == id) expect(false, what + " has a duplicate entry");
        charts.push_back(id);
    }
    return charts;
}

} // namespace json_detail

inline CoveringSpec covering_from_json(const Json& j) {
    using namespace json_detail;
    check_keys(j, {"charts", "depth", "transitions"}, {}, "covering");
    CoveringSpec cov;
    cov.charts = charts_from_json(j.at("charts"), "covering charts");
    cov.depth = get_int(j, "depth", "covering");
    expect(cov.depth >= 1, "covering depth must be at least 1");
    expect(j.at("transitions").is_array(), "covering transitions must be an array");

    bool first = true;
    for (const auto& t : j.at("transitions")) {
        check_keys(t, {"from", "to", "map"}, {"record", "shift"}, "transition");
        int from = static_cast<int>(get_int(t, "from", "transition"));
        int to = static_cast<int>(get_int(t, "to", "transition"));
        bool from_ok = false, to_ok = false;
        for (int c : cov.charts) {
            if (c == from) from_ok = true;
            if (c == to) to_ok = true;
        }
        expect(from_ok && to_ok, "transition endpoints must be listed charts");
        expect(cov.transitions.find({to, from}) == cov.transitions.end(),
               "duplicate transition entry");
        SymplecticMapSpec probe = mapspec_from_json(t.at("map"));
        if (first) {
            cov.dim = probe.dim;
            first = false;
        }
        auto tag = "transition (" + std::to_string(to) + ", " + std::to_string(from) + ")";
        cov.transitions.emplace(std::make_pair(to, from),
                                transition_record(t, cov.dim, cov.depth, tag));
    }
    expect(!first, "covering lists no transitions");
    validate_covering(cov);
    return cov;
}

inline LienData lien_from_json(const Json& j) {
    using namespace json_detail;
    check_keys(j, {"dim", "depth", "charts", "isos", "sections"}, {}, "lien");
    LienData lien;
    long long dim = get_int(j, "dim", "lien");
    expect(dim >= 1, "lien dimension must be positive");
    lien.dim = static_cast<int>(dim);
    lien.depth = get_int(j, "depth", "lien");
    expect(lien.depth >= 1, "lien depth must be at least 1");
    lien.charts = charts_from_json(j.at("charts"), "lien charts");

    expect(j.at("isos").is_array(), "lien isos must be an array");
    for (const auto& t : j.at("isos")) {
        check_keys(t, {"from", "to"}, {"map", "record", "shift"}, "lien iso");
        int from = static_cast<int>(get_int(t, "from", "lien iso"));
        int to = static_cast<int>(get_int(t, "to", "lien iso"));
        expect(lien.isos.find({to, from}) == lien.isos.end(), "duplicate lien iso entry");
        Json entry = t;
        if (!entry.contains("map")) entry["map"] = to_json(SymplecticMapSpec::identity(lien.dim));
        auto tag = "lien iso (" + std::to_string(to) + ", " + std::to_string(from) + ")";
        AutomorphismRecord rec = transition_record(entry, lien.dim, lien.depth, tag);
        auto defects = record_defects(rec);
        if (!defects.empty())
            fail(ErrorKind::BadDocument, tag + " fails record checks: " + defects.front());
        lien.isos.emplace(std::make_pair(to, from), std::move(rec));
    }

    expect(j.at("sections").is_array(), "lien sections must be an array");
    for (const auto& s : j.at("sections")) {
        check_keys(s, {"i", "j", "k", "a"}, {}, "lien section");
        int i = static_cast<int>(get_int(s, "i", "lien section"));
        int jj = static_cast<int>(get_int(s, "j", "lien section"));
        int k = static_cast<int>(get_int(s, "k", "lien section"));
        Symbol a = symbol_from_json(s.at("a"));
        expect(a.dim() == lien.dim, "lien section dimension mismatch");
        expect(lien.sections.find({i, jj, k}) == lien.sections.end(),
               "duplicate lien section entry");
        lien.sections.emplace(std::make_tuple(i, jj, k), std::move(a));
    }
    return lien;
}

inline LienIsoData lieniso_from_json(const Json& j, int dim, long long depth) {
    using namespace json_detail;
    check_keys(j, {"u", "l"}, {}, "lien isomorphism");
    LienIsoData iso;
    expect(j.at("u").is_array(), "lien isomorphism key 'u' must be an array");
    for (const auto& t : j.at("u")) {
        check_keys(t, {"chart"}, {"map", "record", "inner", "shift"}, "chart record");
        int chart = static_cast<int>(get_int(t, "chart", "chart record"));
        expect(iso.u.find(chart) == iso.u.end(), "duplicate chart record");
        if (t.contains("inner")) {
            expect(!t.contains("map") && !t.contains("record") && !t.contains("shift"),
                   "chart record takes either 'inner' or map data, not both");
            Symbol p = symbol_from_json(t.at("inner"));
            expect(p.dim() == dim, "chart record inner symbol dimension mismatch");
            iso.u.emplace(chart, ad_automorphism(p));
        } else {
            Json entry = t;
            if (!entry.contains("map")) entry["map"] = to_json(SymplecticMapSpec::identity(dim));
            auto tag = "chart record " + std::to_string(chart);
            AutomorphismRecord rec = transition_record(entry, dim, depth, tag);
            auto defects = record_defects(rec);
            if (!defects.empty())
                fail(ErrorKind::BadDocument, tag + " fails record checks: " + defects.front());
            iso.u.emplace(chart, std::move(rec));
        }
    }
    expect(j.at("l").is_array(), "lien isomorphism key 'l' must be an array");
    for (const auto& t : j.at("l")) {
        check_keys(t, {"i", "j", "value"}, {}, "twist");
        int i = static_cast<int>(get_int(t, "i", "twist"));
        int jj = static_cast<int>(get_int(t, "j", "twist"));
        Symbol v = symbol_from_json(t.at("value"));
        expect(v.dim() == dim, "twist dimension mismatch");
        expect(iso.l.find({i, jj}) == iso.l.end(), "duplicate twist entry");
        iso.l.emplace(std::make_pair(i, jj), std::move(v));
    }
    return iso;
}

} // namespace wkb
