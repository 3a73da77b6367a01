#pragma once

/* Command-line front end.  run_command is the whole implementation; the
 * binary in tools/ is a two-line wrapper, and tests drive subcommands
 * in-process through the same entry point.
 *
 * Exit codes: 0 success (including nontrivial but mathematically
 * consistent defects), 1 failed verification on well-formed input,
 * 2 malformed input. */

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wkb/descent.hpp"
#include "wkb/errors.hpp"
#include "wkb/expr.hpp"
#include "wkb/json_io.hpp"
#include "wkb/quantize.hpp"
#include "wkb/symbol.hpp"
#include "wkb/text.hpp"

namespace wkb {

namespace cli_detail {

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::BadDocument, "cannot open file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        fail(ErrorKind::BadDocument, "invalid JSON in '" + path + "': " + e.what());
    }
}

inline Json order_report(const Symbol& s) {
    Json j;
    OrderInfo oi = order_info(s);
    if (oi.finite) {
        j["order"] = oi.order;
        j["principal"] = json_detail::monomials_to_json(oi.principal);
    } else {
        j["order"] = nullptr;
        j["principal"] = Json::array();
    }
    return j;
}

inline std::string indices_text(const std::vector<int>& idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += (i ? ", " : "") + std::to_string(idx[i]);
    return s + ")";
}

inline Json report_entry(const std::string& check, const std::vector<int>& idx,
                         const std::string& verdict, Json witness) {
    Json e;
    e["check"] = check;
    e["indices"] = idx;
    e["verdict"] = verdict;
    e["witness"] = std::move(witness);
    return e;
}

inline void emit(std::ostream& out, const std::string& output, const Json& json_doc,
                 const std::string& text_doc) {
    if (output == "json")
        out << json_doc.dump(2) << "\n";
    else
        out << text_doc << "\n";
}

struct DescentOutcome {
    Json report = Json::array();
    std::string text;
    bool pass = true;
    bool all_trivial = true;
};

inline DescentOutcome run_descent(const CoveringSpec& cov) {
    DescentOutcome o;
    const auto& ch = cov.charts;
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a + 1; b < ch.size(); ++b)
            for (std::size_t c = b + 1; c < ch.size(); ++c) {
                TripleDefect t = triple_defect(cov, ch[a], ch[b], ch[c]);
                bool trivial = is_one_on_window(t.inner) && t.c == 0;
                if (!trivial) o.all_trivial = false;
                Json w;
                w["inner"] = to_json(t.inner);
                w["c"] = rational_to_string(t.c);
                o.report.push_back(report_entry("triple-defect", {t.i, t.j, t.k},
                                                trivial ? "trivial" : "nontrivial", w));
                o.text += "triple " + indices_text({t.i, t.j, t.k}) + ": inner = " +
                          to_text(t.inner) + ", c = " + rational_to_string(t.c) + "\n";
            }
    for (std::size_t a = 0; a < ch.size(); ++a)
        for (std::size_t b = a + 1; b < ch.size(); ++b)
            for (std::size_t c = b + 1; c < ch.size(); ++c)
                for (std::size_t d = c + 1; d < ch.size(); ++d) {
                    QuadrupleReport q = verify_w_cocycle(cov, ch[a], ch[b], ch[c], ch[d]);
                    if (!q.c_identity_holds) o.pass = false;
                    if (!q.zeta_is_one) o.all_trivial = false;
                    std::string verdict = !q.c_identity_holds ? "failed"
                                          : q.zeta_is_one     ? "trivial"
                                                              : "central";
                    Json w;
                    w["zeta"] = to_json(q.zeta);
                    w["c_lhs"] = rational_to_string(q.c_lhs);
                    w["c_rhs"] = rational_to_string(q.c_rhs);
                    w["c_identity"] = q.c_identity_holds;
                    o.report.push_back(
                        report_entry("quadruple-cocycle", {q.i, q.j, q.k, q.l}, verdict, w));
                    o.text += "quadruple " + indices_text({q.i, q.j, q.k, q.l}) + ": zeta = " +
                              to_text(q.zeta) + (q.zeta_is_one ? " (trivial)" : " (central)") +
                              ", c-identity " + (q.c_identity_holds ? "holds" : "FAILS") + "\n";
                }
    o.text += o.pass ? (o.all_trivial ? "all defects trivial within the window"
                                      : "central defects present; cocycle identities hold")
                     : "cocycle verification FAILED";
    return o;
}

} // namespace cli_detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{"exact calculus for truncated operator symbols"};
    app.name("wkbcli");
    int dim = 1;
    long long depth = 6;
    std::string output = "text";
    bool negative = false;
    std::string lhs, rhs, file_a, file_b, file_c;

    auto add_common = [&](CLI::App* cmd, bool with_dim) {
        if (with_dim) cmd->add_option("--dim", dim, "number of variable pairs")->check(CLI::PositiveNumber);
        cmd->add_option("--depth", depth, "window depth below the leading order")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--output", output, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* star_cmd = app.add_subcommand("star", "product of two operator expressions");
    star_cmd->add_option("lhs", lhs, "left factor")->required();
    star_cmd->add_option("rhs", rhs, "right factor")->required();
    add_common(star_cmd, true);

    auto* invert_cmd = app.add_subcommand("invert", "inverse of an operator expression");
    invert_cmd->add_option("expr", lhs, "expression")->required();
    add_common(invert_cmd, true);

    auto* sqrt_cmd = app.add_subcommand("sqrt", "square root of an operator expression");
    sqrt_cmd->add_option("expr", lhs, "expression")->required();
    sqrt_cmd->add_flag("--negative", negative, "take the negative branch");
    add_common(sqrt_cmd, true);

    auto* adjoint_cmd = app.add_subcommand("adjoint", "formal adjoint of an expression");
    adjoint_cmd->add_option("expr", lhs, "expression")->required();
    add_common(adjoint_cmd, true);

    auto* order_cmd = app.add_subcommand("order", "order and principal part of an expression");
    order_cmd->add_option("expr", lhs, "expression")->required();
    add_common(order_cmd, true);

    auto* quantize_cmd = app.add_subcommand("quantize", "lift a symplectic map document");
    quantize_cmd->add_option("map", file_a, "map document")->required();
    add_common(quantize_cmd, false);

    auto* apply_cmd = app.add_subcommand("apply", "apply a record document to an expression");
    apply_cmd->add_option("record", file_a, "record document")->required();
    apply_cmd->add_option("expr", lhs, "expression")->required();
    add_common(apply_cmd, false);

    auto* recognize_cmd = app.add_subcommand("recognize", "recognize a record as inner");
    recognize_cmd->add_option("record", file_a, "record document")->required();
    recognize_cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* descent_cmd = app.add_subcommand("descent", "defects and cocycles of a covering");
    descent_cmd->add_option("covering", file_a, "covering document")->required();
    descent_cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* lien3_cmd = app.add_subcommand("lien3", "3-cocycle of a lien document");
    lien3_cmd->add_option("lien", file_a, "lien document")->required();
    lien3_cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* lieniso_cmd = app.add_subcommand("lieniso", "compare two liens through iso data");
    lieniso_cmd->add_option("lienA", file_a, "first lien document")->required();
    lieniso_cmd->add_option("lienB", file_b, "second lien document")->required();
    lieniso_cmd->add_option("iso", file_c, "isomorphism document")->required();
    lieniso_cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("wkbcli");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*star_cmd) {
            Symbol s = star(parse_operator_expr(lhs, dim, depth), parse_operator_expr(rhs, dim, depth));
            emit(out, output, to_json(s), to_text(s));
        } else if (*invert_cmd) {
            Symbol s = invert(parse_operator_expr(lhs, dim, depth));
            emit(out, output, to_json(s), to_text(s));
        } else if (*sqrt_cmd) {
            Symbol s = square_root(parse_operator_expr(lhs, dim, depth), negative ? -1 : 1);
            emit(out, output, to_json(s), to_text(s));
        } else if (*adjoint_cmd) {
            Symbol s = adjoint(parse_operator_expr(lhs, dim, depth));
            emit(out, output, to_json(s), to_text(s));
        } else if (*order_cmd) {
            Symbol s = parse_operator_expr(lhs, dim, depth);
            emit(out, output, order_report(s), order_to_text(s));
        } else if (*quantize_cmd) {
            SymplecticMapSpec m = mapspec_from_json(load_json_file(file_a));
            AutomorphismRecord rec = quantize_map(m, depth);
            std::string text = "c = " + rational_to_string(rec.c) +
                               "\nprimitive = " + to_text(rec.primitive);
            for (int i = 1; i <= rec.dim; ++i)
                text += "\nX" + std::to_string(i) + " = " +
                        to_text(rec.x_images[static_cast<std::size_t>(i - 1)]);
            for (int i = 1; i <= rec.dim; ++i)
                text += "\nU" + std::to_string(i) + " = " +
                        to_text(rec.u_images[static_cast<std::size_t>(i - 1)]);
            emit(out, output, to_json(rec), text);
        } else if (*apply_cmd) {
            AutomorphismRecord rec = record_from_json(load_json_file(file_a));
            Symbol p = parse_operator_expr(lhs, rec.dim, depth);
            Symbol s = apply_automorphism(rec, p);
            emit(out, output, to_json(s), to_text(s));
        } else if (*recognize_cmd) {
            AutomorphismRecord rec = record_from_json(load_json_file(file_a));
            InnerRecognition r = recognize_inner(rec);
            Json j;
            j["inner"] = to_json(r.inner);
            j["note"] = r.central_ambiguity_note;
            emit(out, output, j,
                 "inner = " + to_text(r.inner) + "\nnote: " + r.central_ambiguity_note);
        } else if (*descent_cmd) {
            CoveringSpec cov = covering_from_json(load_json_file(file_a));
            DescentOutcome o = run_descent(cov);
            emit(out, output, o.report, o.text);
            return o.pass ? 0 : 1;
        } else if (*lien3_cmd) {
            LienData lien = lien_from_json(load_json_file(file_a));
            Lien3Result res = compute_lien_3cocycle(lien);
            Json report = Json::array();
            std::string text;
            for (const auto& q : res.quadruples) {
                Json w;
                w["c"] = to_json(q.c);
                report.push_back(report_entry("lien-3-cocycle", {q.i, q.j, q.k, q.l},
                                              q.is_one ? "trivial" : "central", w));
                text += "quadruple " + indices_text({q.i, q.j, q.k, q.l}) + ": c = " +
                        to_text(q.c) + "\n";
            }
            report.push_back(report_entry("quintuple-identity", {},
                                          res.quintuple_identity ? "holds" : "fails",
                                          Json::object()));
            text += res.quintuple_identity ? "quintuple identity holds"
                                           : "quintuple identity FAILS";
            emit(out, output, report, text);
            return res.quintuple_identity ? 0 : 1;
        } else if (*lieniso_cmd) {
            LienData lienA = lien_from_json(load_json_file(file_a));
            LienData lienB = lien_from_json(load_json_file(file_b));
            if (lienA.dim != lienB.dim || lienA.charts != lienB.charts)
                fail(ErrorKind::BadRequest, "liens do not share charts and dimension");
            LienIsoData iso =
                lieniso_from_json(load_json_file(file_c), lienA.dim,
                                  std::min(lienA.depth, lienB.depth));
            LienIsoResult res = check_lien_isomorphism(lienA, lienB, iso);
            Json report = Json::array();
            std::string text = "intertwining equations hold on all pairs\n";
            for (const auto& t : res.triples) {
                Json w;
                w["d"] = to_json(t.d);
                report.push_back(report_entry("lien-iso-defect", {t.i, t.j, t.k},
                                              t.is_one ? "trivial" : "twisted", w));
                text += "triple " + indices_text({t.i, t.j, t.k}) + ": d = " + to_text(t.d) + "\n";
            }
            if (!text.empty() && text.back() == '\n') text.pop_back();
            emit(out, output, report, text);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_input_error() ? 2 : 1;
    }
    return 0;
}

} // namespace wkb
