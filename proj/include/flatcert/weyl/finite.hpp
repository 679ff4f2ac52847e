#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flatcert/error.hpp"

namespace flatcert::weyl {

inline constexpr std::size_t kMaxRank = 8;

/// Signed permutation u with u(e_i) = sign_i * e_{p(i)}, stored as img[i] = sign_i * (p(i) + 1).
struct SignedPerm {
    std::uint8_t rank = 0;
    std::array<std::int8_t, kMaxRank> img{};

    static SignedPerm identity(std::size_t n)
    {
        if (n > kMaxRank) throw PreconditionViolation("rank too large");
        SignedPerm u;
        u.rank = static_cast<std::uint8_t>(n);
        for (std::size_t i = 0; i < n; ++i) u.img[i] = static_cast<std::int8_t>(i + 1);
        return u;
    }
    std::size_t target(std::size_t i) const { return static_cast<std::size_t>(std::abs(img[i]) - 1); }
    int sign(std::size_t i) const { return img[i] < 0 ? -1 : 1; }
    bool is_identity() const { return *this == identity(rank); }

    template <class V>
    V apply(const V& x) const
    {
        V y{};
        for (std::size_t i = 0; i < rank; ++i) y[target(i)] += sign(i) * x[i];
        return y;
    }
    // (u * v)(e_i) = u(v(e_i))
    friend SignedPerm operator*(const SignedPerm& u, const SignedPerm& v)
    {
        SignedPerm w;
        w.rank = u.rank;
        for (std::size_t i = 0; i < u.rank; ++i)
            w.img[i] = static_cast<std::int8_t>(v.sign(i) * u.img[v.target(i)]);
        return w;
    }
    SignedPerm inverse() const
    {
        SignedPerm w;
        w.rank = rank;
        for (std::size_t i = 0; i < rank; ++i) w.img[target(i)] = static_cast<std::int8_t>(sign(i) * int(i + 1));
        return w;
    }
    std::size_t negative_count() const
    {
        return static_cast<std::size_t>(std::count_if(img.begin(), img.begin() + rank, [](auto v) { return v < 0; }));
    }
    auto operator<=>(const SignedPerm&) const = default;
};

/// Finite Weyl group of type B, C or D realized by signed permutations; simple reflections
/// s_1..s_{m-1} swap neighbouring coordinates, s_m flips the last sign (B, C) or maps
/// (x_{m-1}, x_m) to (-x_m, -x_{m-1}) (D).
class FiniteWeylGroup {
public:
    FiniteWeylGroup(char type, std::size_t rank) : type_(type), rank_(rank)
    {
        if (type != 'B' && type != 'C' && type != 'D') throw PreconditionViolation("finite type must be B, C or D");
        if (rank < (type == 'D' ? 3u : 2u) || rank > 6) throw PreconditionViolation("unsupported rank");
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            auto s = SignedPerm::identity(rank);
            std::swap(s.img[i], s.img[i + 1]);
            gens_.push_back(s);
        }
        auto s = SignedPerm::identity(rank);
        if (type == 'D') {
            s.img[rank - 2] = static_cast<std::int8_t>(-int(rank));
            s.img[rank - 1] = static_cast<std::int8_t>(-int(rank - 1));
        } else {
            s.img[rank - 1] = static_cast<std::int8_t>(-int(rank));
        }
        gens_.push_back(s);
        // breadth-first enumeration gives lengths as Cayley-graph distances
        std::deque<SignedPerm> queue{SignedPerm::identity(rank)};
        length_[queue.front()] = 0;
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            elements_.push_back(x);
            for (auto& g : gens_) {
                auto y = x * g;
                if (!length_.count(y)) {
                    length_[y] = length_[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }

    char type() const { return type_; }
    std::size_t rank() const { return rank_; }
    std::size_t order() const { return elements_.size(); }
    /// Simple reflection s_i, 1 <= i <= rank.
    const SignedPerm& s(std::size_t i) const { return gens_.at(i - 1); }
    const std::vector<SignedPerm>& elements() const { return elements_; }
    SignedPerm identity() const { return SignedPerm::identity(rank_); }
    std::size_t length(const SignedPerm& w) const { return length_.at(w); }

    SignedPerm from_word(const std::vector<int>& word) const
    {
        auto w = identity();
        for (int i : word) w = w * s(static_cast<std::size_t>(i));
        return w;
    }
    /// Reduced word by stripping right descents, least index first.
    std::vector<int> reduced_word(SignedPerm w) const
    {
        std::vector<int> out;
        while (length(w) > 0)
            for (std::size_t i = 1; i <= rank_; ++i) {
                auto v = w * s(i);
                if (length(v) < length(w)) {
                    out.push_back(static_cast<int>(i));
                    w = v;
                    break;
                }
            }
        std::reverse(out.begin(), out.end());
        return out;
    }
    bool bruhat_leq(const SignedPerm& u, const SignedPerm& w) const
    {
        if (u == w) return true;
        if (length(u) >= length(w)) return false;
        for (std::size_t i = 1; i <= rank_; ++i) {
            auto ws = w * s(i);
            if (length(ws) < length(w)) {
                auto us = u * s(i);
                return bruhat_leq(length(us) < length(u) ? us : u, ws);
            }
        }
        return false;
    }
    /// Elements of the parabolic subgroup W_I.
    std::vector<SignedPerm> parabolic(const std::set<int>& I) const
    {
        std::set<SignedPerm> seen{identity()};
        std::deque<SignedPerm> queue{identity()};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (int i : I) {
                auto y = x * s(static_cast<std::size_t>(i));
                if (seen.insert(y).second) queue.push_back(y);
            }
        }
        return {seen.begin(), seen.end()};
    }

    struct DoubleCoset {
        SignedPerm representative;  // the unique element of minimal length
        std::vector<SignedPerm> members;
        std::size_t min_length = 0;
        std::size_t max_length = 0;  // l_I(w)
    };

    /// W_I \ W / W_I with minimal representatives, ordered by representative length then word.
    std::vector<DoubleCoset> double_cosets(const std::set<int>& I) const
    {
        auto WI = parabolic(I);
        std::set<SignedPerm> assigned;
        std::vector<DoubleCoset> out;
        for (auto& w : elements_) {
            if (assigned.count(w)) continue;
            std::set<SignedPerm> coset;
            for (auto& a : WI)
                for (auto& b : WI) coset.insert(a * w * b);
            DoubleCoset d{w, {coset.begin(), coset.end()}, length(w), length(w)};
            std::size_t minimal_count = 0;
            for (auto& x : coset) {
                assigned.insert(x);
                d.max_length = std::max(d.max_length, length(x));
                if (length(x) < d.min_length) {
                    d.min_length = length(x);
                    d.representative = x;
                }
            }
            for (auto& x : coset) minimal_count += length(x) == d.min_length;
            if (minimal_count != 1) throw InternalError("double coset without a unique minimal element");
            out.push_back(std::move(d));
        }
        std::sort(out.begin(), out.end(), [&](const DoubleCoset& a, const DoubleCoset& b) {
            if (a.min_length != b.min_length) return a.min_length < b.min_length;
            return reduced_word(a.representative) < reduced_word(b.representative);
        });
        return out;
    }

private:
    char type_;
    std::size_t rank_;
    std::vector<SignedPerm> gens_;
    std::vector<SignedPerm> elements_;
    std::map<SignedPerm, std::size_t> length_;
};

}  // namespace flatcert::weyl
