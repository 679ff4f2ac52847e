#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <gmp.h>

#include "flatcert/checksum.hpp"
#include "flatcert/error.hpp"
#include "flatcert/groebner/buchberger.hpp"

namespace flatcert::report {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance record embedded in every emitted artifact under the key "manifest".
struct RunManifest {
    std::vector<std::string> command;
    std::map<std::string, std::string> input_hashes;  // path -> FNV-1a of the content
    std::optional<std::map<std::string, double>> timings;
    std::vector<std::string> outputs;

    void add_input(const std::string& path, const std::string& content) { input_hashes[path] = fnv1a_hex(content); }

    nlohmann::json to_json() const
    {
        std::string json_version = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_PATCH);
        nlohmann::json j{{"command", command},
                         {"input_hashes", input_hashes},
                         {"versions", {{"flatcert", kVersion}, {"nlohmann_json", json_version}, {"gmp", gmp_version}}},
                         {"outputs", outputs}};
        if (timings) j["timings"] = *timings;
        return j;
    }
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
inline std::string render(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_atomically(const std::string& path, const std::string& text) { flatcert::detail::write_atomically(path, text); }

inline void attach_manifest(nlohmann::json& artifact, const RunManifest& m) { artifact["manifest"] = m.to_json(); }

struct DiffEntry {
    enum Kind { Changed, Added, Removed } kind = Changed;
    std::string path;
    nlohmann::json a, b;  // a absent for Added, b absent for Removed
};

inline std::string to_string(DiffEntry::Kind k)
{
    return k == DiffEntry::Changed ? "changed" : k == DiffEntry::Added ? "added" : "removed";
}

namespace detail {

inline bool ignored_key(const std::string& k) { return k == "timings" || k == "manifest"; }

/// Arrays of objects carrying "element" or "variable" are matched by that field, others by index.
inline std::optional<std::string> array_key(const nlohmann::json& arr)
{
    if (arr.empty()) return std::nullopt;
    for (const char* key : {"element", "variable"}) {
        bool all = true;
        std::set<std::string> seen;
        for (auto& e : arr) {
            if (!e.is_object() || !e.contains(key) || !e[key].is_string() || !seen.insert(e[key].get<std::string>()).second) {
                all = false;
                break;
            }
        }
        if (all) return key;
    }
    return std::nullopt;
}

inline void diff_into(const nlohmann::json& a, const nlohmann::json& b, const std::string& path, std::vector<DiffEntry>& out)
{
    if (a.is_object() && b.is_object()) {
        for (auto& [k, v] : a.items()) {
            if (ignored_key(k)) continue;
            std::string p = path.empty() ? k : path + "." + k;
            if (!b.contains(k))
                out.push_back({DiffEntry::Removed, p, v, nullptr});
            else
                diff_into(v, b[k], p, out);
        }
        for (auto& [k, v] : b.items())
            if (!ignored_key(k) && !a.contains(k)) out.push_back({DiffEntry::Added, path.empty() ? k : path + "." + k, nullptr, v});
        return;
    }
    if (a.is_array() && b.is_array()) {
        auto ka = array_key(a), kb = array_key(b);
        if (ka && kb && *ka == *kb) {
            std::map<std::string, const nlohmann::json*> ma, mb;
            std::vector<std::string> order;
            for (auto& e : a) {
                ma[e[*ka].get<std::string>()] = &e;
                order.push_back(e[*ka].get<std::string>());
            }
            for (auto& e : b) {
                mb[e[*kb].get<std::string>()] = &e;
                if (!ma.count(e[*kb].get<std::string>())) order.push_back(e[*kb].get<std::string>());
            }
            for (auto& name : order) {
                std::string p = path + "[" + name + "]";
                if (!mb.count(name))
                    out.push_back({DiffEntry::Removed, p, *ma[name], nullptr});
                else if (!ma.count(name))
                    out.push_back({DiffEntry::Added, p, nullptr, *mb[name]});
                else
                    diff_into(*ma[name], *mb[name], p, out);
            }
            return;
        }
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::string p = path + "[" + std::to_string(i) + "]";
            if (i >= b.size())
                out.push_back({DiffEntry::Removed, p, a[i], nullptr});
            else if (i >= a.size())
                out.push_back({DiffEntry::Added, p, nullptr, b[i]});
            else
                diff_into(a[i], b[i], p, out);
        }
        return;
    }
    if (a != b) out.push_back({DiffEntry::Changed, path, a, b});
}

}  // namespace detail

/// Field-level differences between two reports of the same schema; "timings" and "manifest" are
/// ignored at every level. Empty exactly when the canonical content agrees.
inline std::vector<DiffEntry> diff_reports(const nlohmann::json& a, const nlohmann::json& b)
{
    auto schema = [](const nlohmann::json& j) { return j.is_object() ? j.value("schema", std::string()) : std::string(); };
    if (schema(a).empty() || schema(a) != schema(b))
        throw PreconditionViolation("schema mismatch: '" + schema(a) + "' vs '" + schema(b) + "'");
    std::vector<DiffEntry> out;
    detail::diff_into(a, b, "", out);
    return out;
}

inline nlohmann::json to_json(const std::vector<DiffEntry>& diff)
{
    auto arr = nlohmann::json::array();
    for (auto& d : diff) {
        nlohmann::json e{{"path", d.path}, {"kind", to_string(d.kind)}};
        if (d.kind != DiffEntry::Added) e["a"] = d.a;
        if (d.kind != DiffEntry::Removed) e["b"] = d.b;
        arr.push_back(e);
    }
    return {{"schema", "flatcert.diff/1"}, {"identical", diff.empty()}, {"differences", arr}};
}

inline std::string diff_text(const std::vector<DiffEntry>& diff)
{
    if (diff.empty()) return "identical\n";
    std::string out;
    for (auto& d : diff) {
        out += to_string(d.kind) + " " + d.path;
        if (d.kind == DiffEntry::Changed) out += ": " + d.a.dump() + " -> " + d.b.dump();
        if (d.kind == DiffEntry::Added) out += ": " + d.b.dump();
        if (d.kind == DiffEntry::Removed) out += ": " + d.a.dump();
        out += "\n";
    }
    return out;
}

}  // namespace flatcert::report
