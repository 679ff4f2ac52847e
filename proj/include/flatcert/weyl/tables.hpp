#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatcert/weyl/affine.hpp"

namespace flatcert::weyl {

/// Inputs of a classification table; all content is computed from these.
struct Preset {
    std::string name;
    Frobenius sigma = Frobenius::Split;
    Coweight mu{1, 1, 0};
    std::set<int> J{0, 1, 2};
};

inline Preset preset(const std::string& name)
{
    if (name == "gu24-split") return {name, Frobenius::Split, {1, 1, 0}, {0, 1, 2}};
    if (name == "gu24-nonsplit") return {name, Frobenius::NonSplit, {1, 1, 0}, {0, 1, 2}};
    throw PreconditionViolation("unknown preset '" + name + "' (expected gu24-split or gu24-nonsplit)");
}

enum class Category { FiniteSupport, Reducible, MinimalFullSupport, Unresolved };

inline std::string to_string(Category c)
{
    switch (c) {
        case Category::FiniteSupport: return "finite-support";
        case Category::Reducible: return "reducible";
        case Category::MinimalFullSupport: return "minimal-full-support";
        default: return "unresolved";
    }
}

struct Classification {
    AffineElem element;
    int length = 0;
    RationalVector newton{};
    std::set<int> sigma_support, I, support_union_I;
    bool finite_support = false;
    int vertex_type = 0;  // finite support only
    bool straight = false;
    MinimalVerdict minimal = MinimalVerdict::Unknown;
    Category category = Category::Unresolved;
    std::string emptiness;  // "nonempty", "empty" or "reduces"
    std::optional<ReductionTree> reduction;
};

inline Classification classify(const AffineElem& w, Frobenius f, const std::set<int>& J,
                               const AffineDatum& d = AffineDatum::b3(), Side side = Side::Right)
{
    Classification c;
    c.element = w;
    c.length = d.length(w);
    c.newton = d.newton_point(w, f);
    c.sigma_support = d.sigma_support(w, f);
    c.I = d.stable_subset_I(w, J, f);
    c.support_union_I = c.sigma_support;
    c.support_union_I.insert(c.I.begin(), c.I.end());
    c.finite_support = c.sigma_support.size() < 4;
    c.straight = Rational(c.length) == d.pairing_2rho(c.newton);
    c.minimal = d.minimal_length_test(w, f).verdict;
    if (c.finite_support) {
        c.category = Category::FiniteSupport;
        c.vertex_type = d.vertex_type(c.support_union_I);
        c.emptiness = "nonempty";
    } else if (is_minimal(c.minimal)) {
        c.category = Category::MinimalFullSupport;
        c.emptiness = "empty";
    } else if (c.minimal == MinimalVerdict::NotMinimal) {
        c.category = Category::Reducible;
        c.reduction = d.reduction_tree(w, f, side);
        c.emptiness = "reduces";
    } else {
        c.emptiness = "unknown";
    }
    return c;
}

namespace detail {

inline nlohmann::json vector_json(const RationalVector& v)
{
    return {flatcert::to_string(v[0]), flatcert::to_string(v[1]), flatcert::to_string(v[2])};
}

inline nlohmann::json set_json(const std::set<int>& s) { return nlohmann::json(std::vector<int>(s.begin(), s.end())); }

}  // namespace detail

inline nlohmann::json to_json(const ReductionTree& t, const AffineDatum& d = AffineDatum::b3())
{
    auto nodes = nlohmann::json::array();
    for (auto& n : t.nodes) {
        static const char* kinds[] = {"Conjugate", "Split", "Leaf", "Unresolved"};
        nlohmann::json j{{"element", format_word(n.element, false, d)},
                         {"kind", kinds[n.kind]},
                         {"length", d.length(n.element)},
                         {"newton", detail::vector_json(n.newton)},
                         {"straight", n.straight},
                         {"affine_lines", n.affine_lines},
                         {"tori", n.tori},
                         {"main_chain", n.on_main_chain}};
        if (n.kind == ReductionTree::Node::Conjugate) {
            j["reflection"] = n.reflection;
            j["next"] = n.next;
        }
        if (n.kind == ReductionTree::Node::Split) {
            j["reflection"] = n.reflection;
            j["closed"] = n.closed;
            j["open"] = n.open;
            j["open_left"] = format_word(n.open_left, false, d);
            j["open_right"] = format_word(n.open_right, false, d);
        }
        if (n.kind == ReductionTree::Node::Leaf) {
            j["minimal"] = to_string(n.minimal);
            j["nonempty"] = n.nonempty;
        }
        nodes.push_back(j);
    }
    nlohmann::json out{{"nodes", nodes}};
    if (auto* leaf = t.main_leaf()) {
        out["leaf"] = format_word(leaf->element, false, d);
        out["affine_dimension"] = leaf->affine_lines;
    }
    return out;
}

inline nlohmann::json to_json(const Classification& c, const AffineDatum& d = AffineDatum::b3())
{
    nlohmann::json j{{"element", format_word(c.element, false, d)},
                     {"length", c.length},
                     {"newton", detail::vector_json(c.newton)},
                     {"sigma_support", detail::set_json(c.sigma_support)},
                     {"I", detail::set_json(c.I)},
                     {"support_union_I", detail::set_json(c.support_union_I)},
                     {"finite_sigma_support", c.finite_support},
                     {"straight", c.straight},
                     {"minimal", to_string(c.minimal)},
                     {"category", to_string(c.category)},
                     {"emptiness", c.emptiness},
                     {"kottwitz", d.kottwitz(c.element)}};
    if (c.finite_support) j["vertex_type"] = c.vertex_type;
    if (c.reduction) j["reduction"] = to_json(*c.reduction, d);
    return j;
}

inline nlohmann::json classification_table(const Preset& p, const AffineDatum& d = AffineDatum::b3())
{
    auto rows = nlohmann::json::array();
    for (auto& w : d.admissible_set(p.mu, p.J)) rows.push_back(to_json(classify(w, p.sigma, p.J, d), d));
    return {{"schema", "flatcert.weyl-table/1"},
            {"preset", p.name},
            {"sigma", to_string(p.sigma)},
            {"mu", std::vector<int>(p.mu.begin(), p.mu.end())},
            {"J", detail::set_json(p.J)},
            {"rows", rows}};
}

/// Aligned text rendering with unicode reflection names, one row per element.
inline std::string classification_text(const nlohmann::json& table, const AffineDatum& d = AffineDatum::b3())
{
    std::string out = "preset " + table.value("preset", std::string("-")) + ", sigma " + table.at("sigma").get<std::string>() + "\n";
    std::vector<std::array<std::string, 5>> cells;
    std::array<std::size_t, 5> width{};
    for (auto& r : table.at("rows")) {
        auto w = parse_word(r.at("element").get<std::string>(), d);
        auto nu = r.at("newton");
        std::string newton = "(" + nu[0].get<std::string>() + ", " + nu[1].get<std::string>() + ", " + nu[2].get<std::string>() + ")";
        std::set<int> u = r.at("support_union_I").get<std::set<int>>();
        std::string extra = r.at("category").get<std::string>();
        if (r.contains("vertex_type")) extra += " type " + std::to_string(r.at("vertex_type").get<int>());
        if (r.contains("reduction") && r["reduction"].contains("leaf"))
            extra += " leaf " + format_word(parse_word(r["reduction"]["leaf"].get<std::string>(), d), true, d) +
                     " lines " + std::to_string(r["reduction"]["affine_dimension"].get<int>());
        std::array<std::string, 5> row{format_word(w, true, d) + " → " + newton, format_set(u, true),
                                       r.at("minimal").get<std::string>(), r.at("emptiness").get<std::string>(), extra};
        for (std::size_t i = 0; i < 5; ++i) width[i] = std::max(width[i], display_width(row[i]));
        cells.push_back(row);
    }
    for (auto& row : cells) {
        std::string line;
        for (std::size_t i = 0; i < 5; ++i) {
            line += row[i];
            if (i + 1 < 5) line += std::string(width[i] - display_width(row[i]) + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace flatcert::weyl
