#pragma once

#include <atomic>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatcert/flatness/pipeline.hpp"
#include "flatcert/groebner/io.hpp"
#include "flatcert/groebner/operations.hpp"
#include "flatcert/report/report.hpp"
#include "flatcert/weyl/tables.hpp"

namespace flatcert::cli {

/// Set by the interrupt handler; long computations stop at the next S-pair and checkpoint.
inline std::atomic<bool> interrupted{false};

namespace detail {

/// Exit code carrier for outcomes that are not errors (negative checks, inconclusive runs).
struct Outcome {
    nlohmann::json json;
    std::string text;
    int code = 0;
};

inline std::vector<int> parse_ints(const std::string& s, const std::string& what)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = flatcert::detail::trim(tok);
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "' in " + what, 0);
        }
    }
    return out;
}

inline weyl::Frobenius parse_sigma(const std::string& s)
{
    if (s == "split") return weyl::Frobenius::Split;
    if (s == "nonsplit") return weyl::Frobenius::NonSplit;
    throw ParseError("sigma must be split or nonsplit", 0);
}

inline weyl::Side parse_side(const std::string& s)
{
    if (s == "right") return weyl::Side::Right;
    if (s == "left") return weyl::Side::Left;
    throw ParseError("side must be left or right", 0);
}

inline std::set<int> parse_index_set(const std::string& s)
{
    std::set<int> out;
    for (int i : parse_ints(s, "index set")) {
        if (i < 0 || i > 3) throw ParseError("reflection index out of range", 0);
        out.insert(i);
    }
    return out;
}

inline std::string poly_lines(const std::vector<Polynomial>& ps)
{
    std::string out;
    for (auto& p : ps) out += format_poly(p) + "\n";
    return out;
}

inline nlohmann::json polys_json(const std::vector<Polynomial>& ps)
{
    auto a = nlohmann::json::array();
    for (auto& p : ps) a.push_back(format_poly(p));
    return a;
}

inline std::string certificate_text(const RadicalityCertificate& c)
{
    std::ostringstream o;
    o << c.ideal << "  tier " << to_string(c.tier) << "  basis " << c.basis_size << " elements\n";
    o << "verdict " << to_string(c.verdict.kind);
    if (!c.verdict.reason.empty()) o << " (" << c.verdict.reason << ")";
    o << "\n";
    o << "excluded primes:";
    for (auto& p : c.excluded_primes) o << " " << p.get_str();
    o << "\nmain basis unlucky primes:";
    for (auto& p : c.main_unlucky.primes) o << " " << p.get_str();
    o << "\n";
    for (auto& s : c.chain) {
        o << "  " << s.variable << "  " << to_string(s.kind);
        if (s.leading_coefficient) o << "  lc " << format_poly(*s.leading_coefficient);
        if (s.discriminant) o << "  disc " << format_poly(*s.discriminant);
        o << "\n";
    }
    if (c.winkler) {
        o << "winkler check at";
        for (auto p : c.winkler->primes) o << " " << p;
        o << (c.winkler->passed() ? ": passed\n" : ": failed\n");
    }
    return o.str();
}

inline std::string tree_text(const weyl::ReductionTree& t, const weyl::AffineDatum& d)
{
    std::ostringstream o;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        auto& n = t.nodes[i];
        o << i << "  " << weyl::format_word(n.element, true, d) << "  ";
        switch (n.kind) {
            case weyl::ReductionTree::Node::Conjugate:
                o << "KeepLength at s" << n.reflection << " -> " << n.next;
                break;
            case weyl::ReductionTree::Node::Split:
                o << "Split at s" << n.reflection << " -> closed " << n.closed << ", open " << n.open;
                break;
            case weyl::ReductionTree::Node::Leaf:
                o << "leaf " << to_string(n.minimal) << (n.nonempty ? " nonempty" : " empty") << " lines "
                  << n.affine_lines;
                break;
            default:
                o << "unresolved";
        }
        o << "  nu " << weyl::format_vector(n.newton) << (n.straight ? " straight" : "") << "\n";
    }
    return o.str();
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Output goes to `out`, diagnostics to
/// `err`. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    using detail::Outcome;
    CLI::App app{"Groebner bases, flatness certificates and affine Weyl tables"};
    app.name("flatcert");
    app.require_subcommand(1);

    std::string out_path, format = "json", checkpoint;
    std::uint64_t seed = 0;
    std::size_t max_steps = 0;
    bool timings = false;
    app.add_option("--out", out_path, "write the result to this file atomically");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "seed for property-test sampling");
    app.add_option("--max-steps", max_steps, "cap on S-pair reductions per basis computation");
    app.add_option("--checkpoint", checkpoint, "checkpoint file for long runs");
    app.add_flag("--timings", timings, "include wall-clock timings");

    report::RunManifest manifest;
    manifest.command.push_back("flatcert");
    manifest.command.insert(manifest.command.end(), args.begin(), args.end());

    auto read_input = [&](const std::string& path) {
        auto text = report::read_file(path);
        manifest.add_input(path, text);
        return text;
    };
    auto limits = [&] {
        GroebnerOptions o;
        o.max_pairs = max_steps;
        o.interrupt = &interrupted;
        return o;
    };
    std::function<Outcome()> action;

    auto leaf = [](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* c = parent->add_subcommand(name, help);
        c->fallthrough();
        return c;
    };

    // gb
    auto* gb = app.add_subcommand("gb", "Groebner bases")->require_subcommand(1);
    gb->fallthrough();
    std::string in_path, other_path, by, from_var;
    bool track = false;
    auto* gb_compute = leaf(gb, "compute", "reduced lex basis of an ideal");
    gb_compute->add_option("--in", in_path, "ideal file")->required();
    gb_compute->add_flag("--track", track, "also emit the matrix Z with G = Z F");
    gb_compute->callback([&] {
        action = [&] {
            auto I = parse_ideal(read_input(in_path));
            auto opt = limits();
            opt.track = track;
            if (!track) opt.checkpoint_path = checkpoint;
            opt.resume = !checkpoint.empty();
            auto G = buchberger(I, opt);
            Outcome o{basis_to_json(G), detail::poly_lines(G.elements), 0};
            o.json["schema"] = "flatcert.basis/1";
            if (G.z) {
                auto rows = nlohmann::json::array();
                for (auto& r : G.z->rows) rows.push_back(detail::polys_json(r));
                o.json["z"] = rows;
            }
            o.json["stats"] = {{"pairs_reduced", G.stats.pairs_reduced},
                               {"zero_reductions", G.stats.zero_reductions},
                               {"max_basis_size", G.stats.max_basis_size}};
            return o;
        };
    });
    auto* gb_check = leaf(gb, "check", "is the set a Groebner basis; with --of, the reduced basis of that ideal");
    gb_check->add_option("--in", in_path, "basis JSON or polynomial list")->required();
    gb_check->add_option("--of", other_path, "ideal the basis should generate");
    gb_check->callback([&] {
        action = [&] {
            auto text = read_input(in_path);
            std::vector<Polynomial> elems;
            auto first = text.find_first_not_of(" \t\r\n");
            if (first != std::string::npos && text[first] == '{' && nlohmann::json::parse(text).contains("checksum"))
                elems = basis_from_json(nlohmann::json::parse(text)).elements;
            else
                elems = parse_ideal(text).generators();
            bool ok = is_groebner_basis(elems);
            nlohmann::json j{{"schema", "flatcert.check/1"}, {"is_groebner_basis", ok}};
            if (!other_path.empty()) {
                auto I = parse_ideal(read_input(other_path));
                auto G = buchberger(I, limits());
                bool same = G.elements == elems;
                j["is_reduced_basis_of_input"] = same;
                ok = ok && same;
            }
            return Outcome{j, ok ? "yes\n" : "no\n", ok ? 0 : 1};
        };
    });

    // ideal
    auto* ideal = app.add_subcommand("ideal", "ideal operations")->require_subcommand(1);
    ideal->fallthrough();
    auto* quotient = leaf(ideal, "quotient", "basis of (I : s)");
    quotient->add_option("--in", in_path, "ideal file")->required();
    quotient->add_option("--by", by, "polynomial s")->required();
    quotient->callback([&] {
        action = [&] {
            auto I = parse_ideal(read_input(in_path));
            auto s = parse_poly(by, I.vars(), I.domain());
            auto Q = ideal_quotient(I, s, limits());
            auto G = buchberger(I, limits());
            Outcome o{basis_to_json(Q), detail::poly_lines(Q.elements), 0};
            o.json["schema"] = "flatcert.basis/1";
            o.json["nonzerodivisor"] = ideal_equal(Q, G);
            return o;
        };
    });
    auto* equal = leaf(ideal, "equal", "do two presentations generate the same ideal");
    equal->add_option("--in", in_path, "first ideal")->required();
    equal->add_option("--other", other_path, "second ideal")->required();
    equal->callback([&] {
        action = [&] {
            auto A = parse_ideal(read_input(in_path));
            auto Btext = read_input(other_path);
            auto B = parse_ideal(Btext);
            if (A.vars()->names() != B.vars()->names() || !(A.domain() == B.domain()))
                throw DomainMismatch("the two ideals live in different rings");
            IdealPresentation B2(A.vars(), A.domain());
            for (auto& g : B.generators()) B2.add(parse_poly(format_poly(g), A.vars(), A.domain()));
            bool eq = ideal_equal(A, B2, limits());
            return Outcome{{{"schema", "flatcert.check/1"}, {"equal", eq}}, eq ? "equal\n" : "different\n", eq ? 0 : 1};
        };
    });
    auto* elim = leaf(ideal, "eliminate", "elements of the basis free of the variables before --from");
    elim->add_option("--in", in_path, "ideal file")->required();
    elim->add_option("--from", from_var, "first variable kept")->required();
    elim->callback([&] {
        action = [&] {
            auto I = parse_ideal(read_input(in_path));
            auto idx = I.vars()->lookup(from_var);
            if (!idx) throw ParseError("unknown variable '" + from_var + "'", 0);
            auto G = buchberger(I, limits());
            auto sub = elimination_subset(G, *idx);
            nlohmann::json j{{"schema", "flatcert.elimination/1"},
                             {"from", from_var},
                             {"variables", I.vars()->names()},
                             {"elements", detail::polys_json(sub)}};
            return Outcome{j, sub.empty() ? "0\n" : detail::poly_lines(sub), 0};
        };
    });

    // flatness
    auto* flat = app.add_subcommand("flatness", "radicality certificates")->require_subcommand(1);
    flat->fallthrough();
    unsigned s_param = 2, n_param = 4;
    std::string tier = "required";
    bool no_winkler = false;
    auto* frun = leaf(flat, "run", "certify J(s,n) or raw generators");
    frun->add_option("--s", s_param, "minor size parameter");
    frun->add_option("--n", n_param, "matrix size");
    frun->add_option("--tier", tier, "required or extended")->check(CLI::IsMember({"required", "extended"}));
    frun->add_option("--in", in_path, "raw generators over Q instead of J(s,n)");
    frun->add_flag("--no-winkler", no_winkler, "skip the modular cross-check");
    frun->callback([&] {
        action = [&] {
            PipelineOptions opt;
            opt.tier = tier == "extended" ? Tier::Extended : Tier::Required;
            opt.checkpoint_path = checkpoint;
            opt.winkler = !no_winkler;
            opt.max_pairs = max_steps;
            opt.interrupt = &interrupted;
            opt.progress = [&err](const std::string& line) { err << "flatcert: " << line << std::endl; };
            RadicalityCertificate c;
            if (!in_path.empty()) {
                auto text = read_input(in_path);
                c = certify_generators(parse_ideal(text), in_path, opt);
            } else {
                c = certify(DeterminantalIdealSpec(s_param, n_param), opt);
            }
            Outcome o{to_json(c, timings), detail::certificate_text(c), exit_code(c.verdict)};
            if (timings) {
                std::map<std::string, double> t(c.timings.begin(), c.timings.end());
                manifest.timings = t;
            }
            return o;
        };
    });

    // weyl
    auto* weyl_cmd = app.add_subcommand("weyl", "extended affine Weyl group of type B3")->require_subcommand(1);
    weyl_cmd->fallthrough();
    std::string mu = "1,1,0", J = "0,1,2", sigma = "split", word, side = "right", preset_name;
    auto* adm = leaf(weyl_cmd, "adm", "J-minimal admissible elements");
    adm->add_option("--mu", mu, "dominant coweight");
    adm->add_option("--J", J, "parahoric type");
    adm->add_option("--sigma", sigma, "split or nonsplit");
    adm->callback([&] {
        action = [&] {
            auto& d = weyl::AffineDatum::b3();
            auto m = detail::parse_ints(mu, "--mu");
            if (m.size() != 3) throw ParseError("--mu needs three entries", 0);
            auto f = detail::parse_sigma(sigma);
            auto set = d.admissible_set({m[0], m[1], m[2]}, detail::parse_index_set(J));
            auto words = nlohmann::json::array();
            std::string text;
            for (auto& w : set) {
                words.push_back(weyl::format_word(w, false, d));
                text += weyl::format_word(w, true, d) + "\n";
            }
            nlohmann::json j{{"schema", "flatcert.weyl-adm/1"}, {"mu", m}, {"J", detail::parse_index_set(J)},
                             {"sigma", weyl::to_string(f)}, {"elements", words}, {"count", set.size()}};
            return Outcome{j, text, 0};
        };
    });
    auto* newton = leaf(weyl_cmd, "newton", "Newton point and straightness of an element");
    newton->add_option("--word", word, "word such as 3,2,1,0 or s3s2s1s0")->required();
    newton->add_option("--sigma", sigma, "split or nonsplit");
    newton->callback([&] {
        action = [&] {
            auto& d = weyl::AffineDatum::b3();
            auto w = weyl::parse_word(word, d);
            auto f = detail::parse_sigma(sigma);
            auto nu = d.newton_point(w, f);
            auto test = d.minimal_length_test(w, f);
            nlohmann::json j{{"schema", "flatcert.weyl-newton/1"},
                             {"element", weyl::format_word(w, false, d)},
                             {"sigma", weyl::to_string(f)},
                             {"length", d.length(w)},
                             {"newton", {flatcert::to_string(nu[0]), flatcert::to_string(nu[1]), flatcert::to_string(nu[2])}},
                             {"straight", d.is_sigma_straight(w, f)},
                             {"minimal", to_string(test.verdict)},
                             {"kottwitz", d.kottwitz(w)}};
            std::string text = weyl::format_word(w, true, d) + " → " + weyl::format_vector(nu) + "  length " +
                               std::to_string(d.length(w)) + "  " + to_string(test.verdict) + "\n";
            return Outcome{j, text, 0};
        };
    });
    auto* reduce = leaf(weyl_cmd, "reduce", "Deligne-Lusztig reduction tree");
    reduce->add_option("--word", word, "word such as 3,2,1,0 or s3s2s1s0")->required();
    reduce->add_option("--sigma", sigma, "split or nonsplit");
    reduce->add_option("--side", side, "left or right");
    reduce->callback([&] {
        action = [&] {
            auto& d = weyl::AffineDatum::b3();
            auto w = weyl::parse_word(word, d);
            auto f = detail::parse_sigma(sigma);
            auto t = d.reduction_tree(w, f, detail::parse_side(side));
            auto j = weyl::to_json(t, d);
            j["schema"] = "flatcert.weyl-reduce/1";
            j["element"] = weyl::format_word(w, false, d);
            j["sigma"] = weyl::to_string(f);
            j["side"] = side;
            return Outcome{j, detail::tree_text(t, d), 0};
        };
    });
    auto* classify = leaf(weyl_cmd, "classify", "classification of one element");
    classify->add_option("--word", word, "word such as 3,2,1,0 or s3s2s1s0")->required();
    classify->add_option("--sigma", sigma, "split or nonsplit");
    classify->add_option("--J", J, "parahoric type");
    classify->add_option("--side", side, "left or right");
    classify->callback([&] {
        action = [&] {
            auto& d = weyl::AffineDatum::b3();
            auto f = detail::parse_sigma(sigma);
            auto c = weyl::classify(weyl::parse_word(word, d), f, detail::parse_index_set(J), d, detail::parse_side(side));
            auto j = weyl::to_json(c, d);
            j["schema"] = "flatcert.weyl-classify/1";
            j["sigma"] = weyl::to_string(f);
            nlohmann::json table{{"sigma", weyl::to_string(f)}, {"rows", nlohmann::json::array({j})}};
            return Outcome{j, weyl::classification_text(table, d), 0};
        };
    });
    auto* table = leaf(weyl_cmd, "table", "classification of a preset's admissible set");
    table->add_option("--preset", preset_name, "gu24-split or gu24-nonsplit")->required();
    table->callback([&] {
        action = [&] {
            auto j = weyl::classification_table(weyl::preset(preset_name));
            return Outcome{j, weyl::classification_text(j), 0};
        };
    });

    // report
    auto* rep = app.add_subcommand("report", "report utilities")->require_subcommand(1);
    rep->fallthrough();
    std::string a_path, b_path;
    auto* diff = leaf(rep, "diff", "field-level difference of two reports");
    diff->add_option("a", a_path, "first report")->required();
    diff->add_option("b", b_path, "second report")->required();
    diff->callback([&] {
        action = [&] {
            auto parse = [&](const std::string& p) {
                try {
                    return nlohmann::json::parse(read_input(p));
                } catch (const nlohmann::json::exception& e) {
                    throw ParseError(p + ": " + e.what(), 0);
                }
            };
            auto d = report::diff_reports(parse(a_path), parse(b_path));
            return Outcome{report::to_json(d), report::diff_text(d), d.empty() ? 0 : 1};
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "flatcert: " << e.what() << "\n";
        return 2;
    }

    Outcome result;
    try {
        result = action();
    } catch (const ResourceLimit& e) {
        err << "flatcert: resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        err << "flatcert: internal error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "flatcert: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "flatcert: malformed JSON: " << e.what() << "\n";
        return 2;
    }

    if (!out_path.empty()) manifest.outputs.push_back(out_path);
    std::string body;
    if (format == "json") {
        report::attach_manifest(result.json, manifest);
        body = report::render(result.json);
    } else {
        body = result.text;
    }
    try {
        if (out_path.empty()) {
            out << body;
        } else {
            report::write_atomically(out_path, body);
            if (format == "text") report::write_atomically(out_path + ".manifest.json", report::render(manifest.to_json()));
        }
    } catch (const std::exception& e) {
        err << "flatcert: " << e.what() << "\n";
        return 2;
    }
    return result.code;
}

}  // namespace flatcert::cli
