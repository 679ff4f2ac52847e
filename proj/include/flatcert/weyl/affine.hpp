#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatcert/algebra/rational.hpp"
#include "flatcert/weyl/finite.hpp"

namespace flatcert::weyl {

using Coweight = std::array<int, 3>;
using RationalVector = std::array<Rational, 3>;

/// The element x -> lambda + u(x), i.e. t^lambda * u.
struct AffineElem {
    Coweight lambda{};
    SignedPerm u = SignedPerm::identity(3);
    auto operator<=>(const AffineElem&) const = default;
};

enum class Frobenius { Split, NonSplit };
enum class Side { Left, Right };

inline std::string to_string(Frobenius f) { return f == Frobenius::Split ? "split" : "nonsplit"; }
inline std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

/// Index 4 in conjugation paths stands for the length-zero element tau.
inline constexpr int kTau = 4;

enum class MinimalVerdict { MinimalByStraight, MinimalByBound, MinimalBySearch, NotMinimal, Unknown };

inline std::string to_string(MinimalVerdict v)
{
    switch (v) {
        case MinimalVerdict::MinimalByStraight: return "MinimalByStraight";
        case MinimalVerdict::MinimalByBound: return "MinimalByBound";
        case MinimalVerdict::MinimalBySearch: return "MinimalBySearch";
        case MinimalVerdict::NotMinimal: return "NotMinimal";
        default: return "Unknown";
    }
}

inline bool is_minimal(MinimalVerdict v)
{
    return v == MinimalVerdict::MinimalByStraight || v == MinimalVerdict::MinimalByBound ||
           v == MinimalVerdict::MinimalBySearch;
}

struct MinimalLengthResult {
    MinimalVerdict verdict = MinimalVerdict::Unknown;
    std::vector<int> path;            // length-preserving conjugators, then the decreasing one
    std::optional<AffineElem> shorter;
    std::size_t visited = 0;
};

struct ReductionStep {
    enum Kind { KeepLength, Split, Increase } kind = KeepLength;
    AffineElem conjugate;                // s w sigma(s)
    std::optional<AffineElem> open;      // companion chosen by the side: s w or w sigma(s)
};

/// Deligne-Lusztig reduction tree. Conjugate nodes have `next`; Split nodes have `closed`
/// (length - 2, one affine-line factor) and `open` (length - 1, one torus factor); leaves are
/// minimal-length elements or have finite sigma-support.
struct ReductionTree {
    struct Node {
        enum Kind { Conjugate, Split, Leaf, Unresolved } kind = Leaf;
        AffineElem element;
        int reflection = -1;
        int next = -1, closed = -1, open = -1;
        AffineElem open_left, open_right;  // both companions of a split
        std::size_t affine_lines = 0;      // closed-branch splits on the way from the root
        std::size_t tori = 0;              // open-branch splits on the way from the root
        bool on_main_chain = false;        // reached from the root through closed branches only
        MinimalVerdict minimal = MinimalVerdict::Unknown;
        bool nonempty = false;             // leaves: finite sigma-support
        RationalVector newton{};
        bool straight = false;
    };
    std::vector<Node> nodes;

    /// Leaf reached through closed branches only.
    const Node* main_leaf() const
    {
        for (auto& n : nodes)
            if (n.on_main_chain && n.kind == Node::Leaf) return &n;
        return nullptr;
    }
};

/// Extended affine Weyl group of type B3~ on the coweight lattice Z^3.
/// s_1, s_2 swap coordinates, s_3 negates the last one, s_0 = t^{(1,1,0)} s_theta.
class AffineDatum {
public:
    static const AffineDatum& b3()
    {
        static const AffineDatum d;
        return d;
    }

    static constexpr std::array<std::array<int, 4>, 4> expected_coxeter_matrix()
    {
        return {{{1, 2, 3, 2}, {2, 1, 3, 2}, {3, 3, 1, 4}, {2, 2, 4, 1}}};
    }

    AffineElem identity() const { return {}; }
    const AffineElem& s(int i) const { return simple_.at(static_cast<std::size_t>(i)); }
    const AffineElem& tau() const { return tau_; }
    const RationalVector& rho() const { return rho_; }
    static constexpr int rank() { return 3; }

    AffineElem multiply(const AffineElem& a, const AffineElem& b) const
    {
        AffineElem r;
        auto ub = a.u.apply(b.lambda);
        for (int i = 0; i < 3; ++i) r.lambda[i] = a.lambda[i] + ub[i];
        r.u = a.u * b.u;
        return r;
    }
    AffineElem inverse(const AffineElem& a) const
    {
        AffineElem r;
        r.u = a.u.inverse();
        auto l = r.u.apply(a.lambda);
        for (int i = 0; i < 3; ++i) r.lambda[i] = -l[i];
        return r;
    }
    AffineElem translation(const Coweight& l) const { return {l, SignedPerm::identity(3)}; }
    AffineElem finite(const SignedPerm& u) const { return {{0, 0, 0}, u}; }

    /// Alcove-crossing length: sum over positive roots a of |<l,a>| if u^-1 a > 0, else |<l,a> - 1|.
    int length(const AffineElem& w) const
    {
        auto ui = w.u.inverse();
        int len = 0;
        for (auto& a : positive_roots_) {
            auto b = ui.apply(a);
            int pairing = w.lambda[0] * a[0] + w.lambda[1] * a[1] + w.lambda[2] * a[2];
            len += positive(b) ? std::abs(pairing) : std::abs(pairing - 1);
        }
        return len;
    }

    /// Component in Omega = {1, tau}: 1 when the coordinate sum is odd.
    int kottwitz(const AffineElem& w) const { return ((w.lambda[0] + w.lambda[1] + w.lambda[2]) % 2 + 2) % 2; }
    bool in_affine_part(const AffineElem& w) const { return kottwitz(w) == 0; }

    AffineElem from_word(const std::vector<int>& word, bool with_tau = false) const
    {
        AffineElem w;
        for (int i : word) {
            if (i < 0 || i > 3) throw PreconditionViolation("reflection index out of range");
            w = multiply(w, s(i));
        }
        return with_tau ? multiply(w, tau_) : w;
    }

    /// Word of the affine part w * tau^-k: strips right descents, least index first.
    std::vector<int> reduced_word(AffineElem w) const
    {
        if (kottwitz(w)) w = multiply(w, inverse(tau_));
        std::vector<int> out;
        int len = length(w);
        while (len > 0) {
            bool found = false;
            for (int i = 0; i < 4 && !found; ++i) {
                auto v = multiply(w, s(i));
                int lv = length(v);
                if (lv < len) {
                    out.push_back(i);
                    w = v;
                    len = lv;
                    found = true;
                }
            }
            if (!found) throw InternalError("no descent for an element of positive length");
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    /// Bruhat order; elements in different Omega components are incomparable.
    bool bruhat_leq(const AffineElem& u, const AffineElem& w) const
    {
        if (kottwitz(u) != kottwitz(w)) return false;
        return bruhat_rec(u, w, length(u), length(w));
    }

    /// Index of the simple reflection sigma(s_i).
    int sigma_index(int i, Frobenius f) const
    {
        if (f == Frobenius::Split || i >= 2) return i;
        return 1 - i;
    }
    AffineElem sigma(const AffineElem& w, Frobenius f) const
    {
        if (f == Frobenius::Split) return w;
        return multiply(multiply(tau_, w), inverse(tau_));
    }
    /// g w sigma(g)^-1
    AffineElem sigma_conjugate(const AffineElem& g, const AffineElem& w, Frobenius f) const
    {
        return multiply(multiply(g, w), inverse(sigma(g, f)));
    }
    /// Conjugator by index: 0..3 simple reflections, kTau the length-zero element.
    const AffineElem& conjugator(int i) const { return i == kTau ? tau_ : s(i); }

    /// Dominant representative of mu / n for (w sigma)^n = t^mu.
    RationalVector newton_point(const AffineElem& w, Frobenius f, int multiple = 1) const
    {
        AffineElem power = w, twist = w;
        int n = 1;
        const int bound = 2 * 48;
        // (w sigma)^n is a pure translation only once sigma^n is trivial as well
        const int sigma_order = f == Frobenius::Split ? 1 : 2;
        while (!power.u.is_identity() || n % sigma_order != 0) {
            twist = sigma(twist, f);
            power = multiply(power, twist);
            if (++n > bound) throw InternalError("Newton point iteration bound exceeded");
        }
        for (int k = 1; k < multiple; ++k)
            for (int j = 0; j < n; ++j) {
                twist = sigma(twist, f);
                power = multiply(power, twist);
            }
        n *= multiple;
        std::array<int, 3> a{std::abs(power.lambda[0]), std::abs(power.lambda[1]), std::abs(power.lambda[2])};
        std::sort(a.begin(), a.end(), std::greater<int>());
        RationalVector nu;
        for (int i = 0; i < 3; ++i) {
            nu[i] = Rational(a[i], n);
            nu[i].canonicalize();
        }
        return nu;
    }

    Rational pairing_2rho(const RationalVector& v) const
    {
        Rational r = 0;
        for (int i = 0; i < 3; ++i) r += 2 * rho_[i] * v[i];
        return r;
    }

    bool is_sigma_straight(const AffineElem& w, Frobenius f) const
    {
        return Rational(length(w)) == pairing_2rho(newton_point(w, f));
    }

    std::set<int> support(const AffineElem& w) const
    {
        auto word = reduced_word(w);
        return {word.begin(), word.end()};
    }

    /// Union of the orbits of supp(w) under Ad(tau^k) o sigma, where tau^k is the Omega part of w.
    std::set<int> sigma_support(const AffineElem& w, Frobenius f) const
    {
        std::set<int> out = support(w);
        bool twisted = kottwitz(w) == 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i : std::set<int>(out)) {
                int j = theta(i, f, twisted);
                if (out.insert(j).second) changed = true;
            }
        }
        return out;
    }
    bool is_finite_sigma_support(const AffineElem& w, Frobenius f) const { return sigma_support(w, f).size() < 4; }

    /// Largest subset of J stable under Ad(w) o sigma, as a greatest fixed point.
    std::set<int> stable_subset_I(const AffineElem& w, const std::set<int>& J, Frobenius f) const
    {
        std::set<int> K = J;
        auto wi = inverse(w);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i : std::set<int>(K)) {
                auto y = multiply(multiply(w, s(sigma_index(i, f))), wi);
                bool inside = false;
                for (int j : K) inside = inside || y == s(j);
                if (!inside) {
                    K.erase(i);
                    changed = true;
                }
            }
        }
        return K;
    }

    /// Twice the size of the connected component of the set containing s_3 in the Dynkin diagram; 0 if absent.
    int vertex_type(const std::set<int>& K) const
    {
        if (!K.count(3)) return 0;
        std::set<int> comp{3};
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i : K)
                if (!comp.count(i))
                    for (int j : std::set<int>(comp))
                        if (expected_coxeter_matrix()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 2) {
                            comp.insert(i);
                            changed = true;
                            break;
                        }
        }
        return 2 * static_cast<int>(comp.size());
    }

    /// Minimal-length representative of W_J w.
    AffineElem min_left_coset_rep(AffineElem w, const std::set<int>& J) const
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int j : J) {
                auto v = multiply(s(j), w);
                if (length(v) < length(w)) {
                    w = v;
                    changed = true;
                }
            }
        }
        return w;
    }

    /// Adm(mu) = {w <= t^{x(mu)} for some x in W_0}, reduced to minimal representatives in ^J W.
    /// Result ordered by length, then reduced word.
    std::vector<AffineElem> admissible_set(const Coweight& mu, const std::set<int>& J) const
    {
        std::set<AffineElem> translations;
        for (auto& x : finite_group_.elements()) translations.insert(translation(x.apply(mu)));
        int bound = 0;
        for (auto& t : translations) bound = std::max(bound, length(t));
        AffineElem start = (((mu[0] + mu[1] + mu[2]) % 2) != 0) ? tau_ : identity();
        std::map<AffineElem, int> seen{{start, 0}};
        std::vector<AffineElem> layer{start}, all{start};
        for (int d = 1; d <= bound; ++d) {
            std::vector<AffineElem> next;
            for (auto& x : layer)
                for (int i = 0; i < 4; ++i) {
                    auto y = multiply(x, s(i));
                    if (!seen.count(y) && length(y) == d) {
                        seen[y] = d;
                        next.push_back(y);
                    }
                }
            all.insert(all.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        std::set<AffineElem> reps;
        for (auto& x : all)
            for (auto& t : translations)
                if (bruhat_leq(x, t)) {
                    reps.insert(min_left_coset_rep(x, J));
                    break;
                }
        std::vector<AffineElem> out(reps.begin(), reps.end());
        sort_canonically(out);
        return out;
    }

    void sort_canonically(std::vector<AffineElem>& v) const
    {
        std::sort(v.begin(), v.end(), [&](const AffineElem& a, const AffineElem& b) {
            int la = length(a), lb = length(b);
            if (la != lb) return la < lb;
            auto wa = reduced_word(a), wb = reduced_word(b);
            std::reverse(wa.begin(), wa.end());
            std::reverse(wb.begin(), wb.end());
            if (wa != wb) return wa > wb;
            return kottwitz(a) < kottwitz(b);
        });
    }

    /// Staged test: sigma-straight, then l(w) <= 2<nu, rho> + 1, then a breadth-first search over
    /// length-preserving sigma-conjugations by simple reflections and tau.
    MinimalLengthResult minimal_length_test(const AffineElem& w, Frobenius f, std::size_t max_states = 200000) const
    {
        MinimalLengthResult r;
        auto nu = newton_point(w, f);
        Rational l(length(w));
        if (l == pairing_2rho(nu)) {
            r.verdict = MinimalVerdict::MinimalByStraight;
            return r;
        }
        if (l <= pairing_2rho(nu) + 1) {  // 2<nu, rho> + 1
            r.verdict = MinimalVerdict::MinimalByBound;
            return r;
        }
        return conjugation_search(w, f, max_states);
    }

    /// Breadth-first search through the length-preserving sigma-conjugates of w for one that
    /// admits a length-decreasing conjugation.
    MinimalLengthResult conjugation_search(const AffineElem& w, Frobenius f, std::size_t max_states = 200000) const
    {
        MinimalLengthResult r;
        const int len = length(w);
        std::map<AffineElem, std::pair<AffineElem, int>> parent;
        parent.emplace(w, std::make_pair(w, -1));
        std::deque<AffineElem> queue{w};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (int i = 0; i <= kTau; ++i) {
                auto y = sigma_conjugate(conjugator(i), x, f);
                int ly = length(y);
                if (ly < len) {
                    std::vector<int> path{i};
                    for (auto z = x; parent.at(z).second >= 0; z = parent.at(z).first) path.push_back(parent.at(z).second);
                    std::reverse(path.begin(), path.end());
                    r.verdict = MinimalVerdict::NotMinimal;
                    r.path = std::move(path);
                    r.shorter = y;
                    r.visited = parent.size();
                    return r;
                }
                if (ly == len && !parent.count(y)) {
                    if (parent.size() >= max_states) {
                        r.verdict = MinimalVerdict::Unknown;
                        r.visited = parent.size();
                        return r;
                    }
                    parent.emplace(y, std::make_pair(x, i));
                    queue.push_back(y);
                }
            }
        }
        r.verdict = MinimalVerdict::MinimalBySearch;
        r.visited = parent.size();
        return r;
    }

    /// s w sigma(s) classified by the length change. The side picks the open companion of a split.
    ReductionStep dl_reduction_step(const AffineElem& w, int i, Frobenius f, Side side = Side::Right) const
    {
        ReductionStep st;
        const auto& sv = conjugator(i);
        st.conjugate = sigma_conjugate(sv, w, f);
        int d = length(st.conjugate) - length(w);
        if (d == 0) {
            st.kind = ReductionStep::KeepLength;
        } else if (d == -2) {
            st.kind = ReductionStep::Split;
            st.open = side == Side::Left ? multiply(sv, w) : multiply(w, sigma(sv, f));
        } else {
            st.kind = ReductionStep::Increase;
        }
        return st;
    }

    /// Reduces until every leaf has finite sigma-support or minimal length. Both branches of each
    /// split are followed.
    ReductionTree reduction_tree(const AffineElem& w, Frobenius f, Side side = Side::Right,
                                 std::size_t max_nodes = 10000) const
    {
        ReductionTree tree;
        build(tree, w, f, side, 0, 0, true, max_nodes);
        return tree;
    }

    /// Occurrences of s_m in the canonical reduced word.
    int count_reflection(const AffineElem& w, int m) const
    {
        auto word = reduced_word(w);
        return static_cast<int>(std::count(word.begin(), word.end(), m));
    }

    std::array<std::array<int, 4>, 4> coxeter_matrix() const
    {
        std::array<std::array<int, 4>, 4> m{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                auto p = multiply(s(i), s(j));
                auto x = p;
                int k = 1;
                while (x != identity() && k <= 12) {
                    x = multiply(x, p);
                    ++k;
                }
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
            }
        return m;
    }

    const FiniteWeylGroup& finite_group() const { return finite_group_; }

private:
    AffineDatum() : finite_group_('B', 3)
    {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                std::array<int, 3> a{}, b{};
                a[static_cast<std::size_t>(i)] = 1;
                a[static_cast<std::size_t>(j)] = -1;
                b[static_cast<std::size_t>(i)] = 1;
                b[static_cast<std::size_t>(j)] = 1;
                positive_roots_.push_back(a);
                positive_roots_.push_back(b);
            }
        for (int i = 0; i < 3; ++i) {
            std::array<int, 3> a{};
            a[static_cast<std::size_t>(i)] = 1;
            positive_roots_.push_back(a);
        }
        simple_[1] = finite(finite_group_.s(1));
        simple_[2] = finite(finite_group_.s(2));
        simple_[3] = finite(finite_group_.s(3));
        SignedPerm s_theta = SignedPerm::identity(3);  // x -> (-x2, -x1, x3)
        s_theta.img[0] = -2;
        s_theta.img[1] = -1;
        simple_[0] = {{1, 1, 0}, s_theta};
        rho_ = {Rational(5, 2), Rational(3, 2), Rational(1, 2)};

        if (coxeter_matrix() != expected_coxeter_matrix()) throw InternalError("Coxeter matrix of the datum is wrong");
        for (int i = 0; i < 4; ++i)
            if (length(s(i)) != 1) throw InternalError("simple reflection of length != 1");
        // tau: the unique x in W_0 with l(t^{(1,0,0)} x) = 0
        int found = 0;
        for (auto& x : finite_group_.elements()) {
            AffineElem c{{1, 0, 0}, x};
            if (length(c) == 0) {
                tau_ = c;
                ++found;
            }
        }
        if (found != 1) throw InternalError("length-zero element not unique");
        for (int i = 0; i < 4; ++i) {
            auto c = multiply(multiply(tau_, s(i)), inverse(tau_));
            if (c != s(sigma_index(i, Frobenius::NonSplit))) throw InternalError("tau does not swap s0 and s1");
        }
    }

    static bool positive(const std::array<int, 3>& b)
    {
        for (int v : b)
            if (v != 0) return v > 0;
        return false;
    }

    // Ad(tau) swaps s0 and s1 as well, so with a twist the two swaps cancel for NonSplit.
    int theta(int i, Frobenius f, bool twisted) const
    {
        int j = sigma_index(i, f);
        return twisted && j < 2 ? 1 - j : j;
    }

    bool bruhat_rec(const AffineElem& u, const AffineElem& w, int lu, int lw) const
    {
        if (lu >= lw) return lu == lw && u == w;
        if (lu == 0) return true;  // same Omega component, so u is the unique element of length 0 there
        for (int i = 0; i < 4; ++i) {
            auto ws = multiply(w, s(i));
            if (length(ws) < lw) {
                auto us = multiply(u, s(i));
                int lus = length(us);
                return lus < lu ? bruhat_rec(us, ws, lus, lw - 1) : bruhat_rec(u, ws, lu, lw - 1);
            }
        }
        return false;
    }

    int build(ReductionTree& tree, const AffineElem& w, Frobenius f, Side side, std::size_t lines, std::size_t tori,
              bool main, std::size_t max_nodes) const
    {
        int id = static_cast<int>(tree.nodes.size());
        ReductionTree::Node node;
        node.element = w;
        node.affine_lines = lines;
        node.tori = tori;
        node.on_main_chain = main;
        node.newton = newton_point(w, f);
        node.straight = Rational(length(w)) == pairing_2rho(node.newton);
        tree.nodes.push_back(node);
        if (tree.nodes.size() > max_nodes) {
            tree.nodes[static_cast<std::size_t>(id)].kind = ReductionTree::Node::Unresolved;
            return id;
        }
        auto test = minimal_length_test(w, f);
        tree.nodes[static_cast<std::size_t>(id)].minimal = test.verdict;
        // finite sigma-support already decomposes into classical varieties, so reduction stops there
        bool finite_support = is_finite_sigma_support(w, f);
        if (finite_support || is_minimal(test.verdict)) {
            auto& n = tree.nodes[static_cast<std::size_t>(id)];
            n.kind = ReductionTree::Node::Leaf;
            n.nonempty = finite_support;
            return id;
        }
        if (test.verdict == MinimalVerdict::Unknown) {
            tree.nodes[static_cast<std::size_t>(id)].kind = ReductionTree::Node::Unresolved;
            return id;
        }
        // walk the length-preserving conjugations, then split at the last conjugator
        int cur = id;
        AffineElem x = w;
        for (std::size_t k = 0; k + 1 < test.path.size(); ++k) {
            auto st = dl_reduction_step(x, test.path[k], f, side);
            if (st.kind != ReductionStep::KeepLength) throw InternalError("search path is not length preserving");
            auto& n = tree.nodes[static_cast<std::size_t>(cur)];
            n.kind = ReductionTree::Node::Conjugate;
            n.reflection = test.path[k];
            x = st.conjugate;
            ReductionTree::Node next;
            next.element = x;
            next.affine_lines = lines;
            next.tori = tori;
            next.on_main_chain = main;
            next.newton = node.newton;
            next.straight = node.straight;
            next.minimal = MinimalVerdict::NotMinimal;
            tree.nodes.push_back(next);
            int nid = static_cast<int>(tree.nodes.size()) - 1;
            tree.nodes[static_cast<std::size_t>(cur)].next = nid;
            cur = nid;
        }
        int i = test.path.back();
        auto st = dl_reduction_step(x, i, f, side);
        if (st.kind != ReductionStep::Split) throw InternalError("search path does not end in a split");
        {
            auto& n = tree.nodes[static_cast<std::size_t>(cur)];
            n.kind = ReductionTree::Node::Split;
            n.reflection = i;
            n.open_left = dl_reduction_step(x, i, f, Side::Left).open.value();
            n.open_right = dl_reduction_step(x, i, f, Side::Right).open.value();
        }
        int c = build(tree, st.conjugate, f, side, lines + 1, tori, main, max_nodes);
        int o = build(tree, *st.open, f, side, lines, tori + 1, false, max_nodes);
        tree.nodes[static_cast<std::size_t>(cur)].closed = c;
        tree.nodes[static_cast<std::size_t>(cur)].open = o;
        return id;
    }

    FiniteWeylGroup finite_group_;
    std::vector<std::array<int, 3>> positive_roots_;
    std::array<AffineElem, 4> simple_{};
    AffineElem tau_;
    RationalVector rho_;
};

/// Parses "3,2,1,0" or "s3s2s1s0" (also "1" or "" for the identity, "tau" as a trailing
/// length-zero factor).
inline AffineElem parse_word(const std::string& text, const AffineDatum& d = AffineDatum::b3())
{
    std::vector<int> word;
    bool with_tau = false;
    std::size_t pos = 0;
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.empty() || t == "1" || t == "e") return d.identity();
    if (t[0] == 's') {
        if (t.size() >= 3 && t.compare(t.size() - 3, 3, "tau") == 0) {
            with_tau = true;
            t.resize(t.size() - 3);
        }
        for (std::size_t i = 0; i < t.size(); i += 2) {
            if (t[i] != 's' || i + 1 >= t.size() || t[i + 1] < '0' || t[i + 1] > '3')
                throw ParseError("expected s0..s3 in '" + text + "'", i);
            word.push_back(t[i + 1] - '0');
        }
        return d.from_word(word, with_tau);
    }
    while (pos <= t.size()) {
        auto comma = t.find(',', pos);
        std::string tok = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok == "tau" || tok == "t") {
            if (comma != std::string::npos) throw ParseError("tau must be the last letter", pos);
            with_tau = true;
        } else if (tok.size() == 1 && tok[0] >= '0' && tok[0] <= '3') {
            word.push_back(tok[0] - '0');
        } else {
            throw ParseError("expected a reflection index 0..3, got '" + tok + "'", pos);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return d.from_word(word, with_tau);
}

/// "s3s2s1" (ASCII) or "s₃s₂s₁" (unicode); "1" for the identity; a trailing tau for the other Omega component.
inline std::string format_word(const AffineElem& w, bool unicode = false, const AffineDatum& d = AffineDatum::b3())
{
    static const char* sub[] = {"₀", "₁", "₂", "₃"};
    std::string out;
    for (int i : d.reduced_word(w)) out += unicode ? std::string("s") + sub[i] : "s" + std::to_string(i);
    if (d.kottwitz(w)) out += unicode ? "τ" : "tau";
    return out.empty() ? "1" : out;
}

/// Number of UTF-8 code points, used for column alignment.
inline std::size_t display_width(const std::string& s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](unsigned char c) { return (c & 0xC0) != 0x80; }));
}

inline std::string format_vector(const RationalVector& v)
{
    return "(" + flatcert::to_string(v[0]) + ", " + flatcert::to_string(v[1]) + ", " + flatcert::to_string(v[2]) + ")";
}

inline std::string format_set(const std::set<int>& s, bool unicode = false)
{
    static const char* sub[] = {"₀", "₁", "₂", "₃"};
    std::string out = "{";
    for (int i : s) {
        if (out.size() > 1) out += ", ";
        out += unicode ? std::string("s") + sub[i] : "s" + std::to_string(i);
    }
    return out + "}";
}

}  // namespace flatcert::weyl
