#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatcert/error.hpp"

namespace flatcert {

inline constexpr std::size_t kMaxVariables = 48;

/// Ordered variable names. Index 0 is the lex-greatest variable.
class VariableTable {
public:
    explicit VariableTable(std::vector<std::string> names, std::map<std::string, std::string> aliases = {})
        : names_(std::move(names))
    {
        if (names_.size() > kMaxVariables)
            throw PreconditionViolation("at most " + std::to_string(kMaxVariables) + " variables are supported");
        std::set<std::string> seen;
        for (const auto& n : names_) {
            if (n.empty() || !seen.insert(n).second) throw PreconditionViolation("duplicate or empty variable name '" + n + "'");
        }
        for (auto& [alias, target] : aliases) {
            auto idx = index_of_name(target);
            if (!idx) throw PreconditionViolation("alias '" + alias + "' targets unknown variable '" + target + "'");
            if (seen.count(alias)) throw PreconditionViolation("alias '" + alias + "' shadows a variable name");
            alias_to_index_[alias] = *idx;
        }
        for (auto& [alias, idx] : alias_to_index_) index_to_alias_[idx] = alias;
    }

    static std::shared_ptr<const VariableTable> make(std::vector<std::string> names,
                                                     std::map<std::string, std::string> aliases = {})
    {
        return std::make_shared<const VariableTable>(std::move(names), std::move(aliases));
    }

    /// Upper triangle x_ij (i <= j) of a symmetric n x n matrix, row-major, named "x<i><j>".
    /// For n = 6 the 21-letter alphabet a..z (without j, k, w, x, y) is attached as aliases.
    static std::shared_ptr<const VariableTable> symmetric(std::size_t n)
    {
        if (n < 1 || n > 9) throw PreconditionViolation("symmetric tables support 1 <= n <= 9");
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j) names.push_back(symmetric_name(i, j));
        std::map<std::string, std::string> aliases;
        if (n == 6) {
            static const char* letters = "abcdefghilmnopqrstuvz";
            for (std::size_t k = 0; k < names.size(); ++k) aliases[std::string(1, letters[k])] = names[k];
        }
        return make(std::move(names), std::move(aliases));
    }

    static std::string symmetric_name(std::size_t i, std::size_t j)
    {
        if (i > j) std::swap(i, j);
        return "x" + std::to_string(i) + std::to_string(j);
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::string> alias(std::size_t i) const
    {
        auto it = index_to_alias_.find(i);
        if (it == index_to_alias_.end()) return std::nullopt;
        return it->second;
    }
    bool has_aliases() const { return !alias_to_index_.empty(); }
    std::map<std::string, std::string> alias_map() const
    {
        std::map<std::string, std::string> out;
        for (auto& [a, idx] : alias_to_index_) out[a] = names_[idx];
        return out;
    }

    /// Resolves a variable name or alias.
    std::optional<std::size_t> lookup(const std::string& token) const
    {
        if (auto idx = index_of_name(token)) return idx;
        auto it = alias_to_index_.find(token);
        if (it != alias_to_index_.end()) return it->second;
        return std::nullopt;
    }

    /// New table with `name` prepended as the greatest variable; aliases are carried over.
    std::shared_ptr<const VariableTable> with_leading(const std::string& name) const
    {
        std::vector<std::string> names{name};
        names.insert(names.end(), names_.begin(), names_.end());
        return make(std::move(names), alias_map());
    }

    friend bool operator==(const VariableTable& a, const VariableTable& b)
    {
        return a.names_ == b.names_ && a.alias_to_index_ == b.alias_to_index_;
    }

private:
    std::optional<std::size_t> index_of_name(const std::string& n) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    std::vector<std::string> names_;
    std::map<std::string, std::size_t> alias_to_index_;
    std::map<std::size_t, std::string> index_to_alias_;
};

using VariableTablePtr = std::shared_ptr<const VariableTable>;

inline bool same_table(const VariableTablePtr& a, const VariableTablePtr& b)
{
    return a == b || (a && b && *a == *b);
}

}  // namespace flatcert
