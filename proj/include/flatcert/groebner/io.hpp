#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatcert/algebra/parse.hpp"
#include "flatcert/checksum.hpp"
#include "flatcert/groebner/ideal.hpp"

namespace flatcert {

namespace detail {

inline std::string trim(std::string s)
{
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline std::vector<std::string> split_names(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

/// Identifiers in order of first appearance.
inline std::vector<std::string> identifiers(const std::vector<std::string>& lines)
{
    std::vector<std::string> out;
    for (auto& l : lines)
        for (std::size_t i = 0; i < l.size();) {
            if (std::isalpha(static_cast<unsigned char>(l[i]))) {
                std::size_t j = i;
                while (j < l.size() && (std::isalnum(static_cast<unsigned char>(l[j])) || l[j] == '_')) ++j;
                auto id = l.substr(i, j - i);
                if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
                i = j;
            } else {
                ++i;
            }
        }
    return out;
}

inline nlohmann::json basis_body(const std::vector<std::string>& vars, const std::string& field,
                                 const std::vector<std::string>& elements)
{
    return {{"order", "lex"}, {"variables", vars}, {"field", field}, {"elements", elements}};
}

}  // namespace detail

/// Reads an ideal from text or JSON.
///
/// Text: optional "vars: a, b, c" and "field: Q|Fp:<p>" headers, then one polynomial per line;
/// '#' starts a comment. Without a vars header the variables are ordered by first appearance,
/// greatest first. JSON: {"variables": [...], "field": ..., "generators" or "elements": [...]}.
inline IdealPresentation parse_ideal(const std::string& text)
{
    std::vector<std::string> names, polys;
    std::string field = "Q";
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
        }
        if (!j.contains("variables")) throw ParseError("JSON input needs \"variables\"", 0);
        names = j["variables"].get<std::vector<std::string>>();
        field = j.value("field", std::string("Q"));
        const char* key = j.contains("generators") ? "generators" : "elements";
        if (!j.contains(key)) throw ParseError("JSON input needs \"generators\" or \"elements\"", 0);
        polys = j[key].get<std::vector<std::string>>();
    } else {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.rfind("vars:", 0) == 0)
                names = detail::split_names(line.substr(5));
            else if (line.rfind("field:", 0) == 0)
                field = detail::trim(line.substr(6));
            else
                polys.push_back(line);
        }
        if (names.empty()) names = detail::identifiers(polys);
    }
    if (polys.empty()) throw PreconditionViolation("input contains no polynomials");
    if (names.empty()) names = {"x"};
    auto vars = VariableTable::make(names);
    auto domain = CoefficientDomain::parse(field);
    IdealPresentation I(vars, domain);
    for (auto& p : polys) I.add(parse_poly(p, vars, domain));
    if (I.size() == 0) throw PreconditionViolation("all generators are zero");
    return I;
}

/// Basis file: {"order", "variables", "field", "elements", "checksum"} with the checksum taken
/// over the canonical serialization of the other four fields.
inline nlohmann::json basis_to_json(const GroebnerBasis& G)
{
    std::vector<std::string> elems;
    for (auto& g : G.elements) elems.push_back(format_poly(g));
    auto body = detail::basis_body(G.vars->names(), G.domain.to_string(), elems);
    auto j = body;
    j["checksum"] = fnv1a_hex(body.dump());
    return j;
}

inline GroebnerBasis basis_from_json(const nlohmann::json& j)
{
    for (const char* k : {"order", "variables", "field", "elements", "checksum"})
        if (!j.contains(k)) throw ParseError(std::string("basis file lacks \"") + k + "\"", 0);
    if (j["order"] != "lex") throw PreconditionViolation("only lex bases are supported");
    auto names = j["variables"].get<std::vector<std::string>>();
    auto elems = j["elements"].get<std::vector<std::string>>();
    auto body = detail::basis_body(names, j["field"].get<std::string>(), elems);
    if (fnv1a_hex(body.dump()) != j["checksum"].get<std::string>()) throw ParseError("basis checksum mismatch", 0);
    GroebnerBasis G;
    G.vars = VariableTable::make(names);
    G.domain = CoefficientDomain::parse(j["field"].get<std::string>());
    for (auto& e : elems) G.elements.push_back(parse_poly(e, G.vars, G.domain));
    return G;
}

}  // namespace flatcert
