#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flatcert/groebner/buchberger.hpp"
#include "flatcert/groebner/division.hpp"

namespace flatcert {

/// Elements of G involving only variables with index >= k. For lex this is a basis of the elimination ideal.
inline std::vector<Polynomial> elimination_subset(const std::vector<Polynomial>& G, std::size_t k)
{
    std::vector<Polynomial> out;
    for (auto& g : G)
        if (!g.is_zero() && g.leading_monomial().leading_variable() >= k) out.push_back(g);
    return out;
}

inline std::vector<Polynomial> elimination_subset(const GroebnerBasis& G, std::size_t k)
{
    return elimination_subset(G.elements, k);
}

namespace detail {

inline std::vector<Polynomial> verified_row(const Polynomial& target, const std::vector<Polynomial>& row,
                                            const std::vector<Polynomial>& gens)
{
    if (combine_row(row, gens, target.vars(), target.domain()) != target)
        throw InternalError("lift identity does not hold");
    return row;
}

}  // namespace detail

/// Expresses each target in the generators of a Groebner basis: targets[i] = sum_k rows[i][k] * G[k].
inline LiftMatrix lift_over_basis(const std::vector<Polynomial>& targets, const std::vector<Polynomial>& G)
{
    LiftMatrix out{LiftDirection::FFromG, {}};
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto d = divide(targets[i], G);
        if (!d.remainder.is_zero()) throw NotAMember(i);
        out.rows.push_back(detail::verified_row(targets[i], d.quotients, G));
    }
    return out;
}

/// Expresses each target in the generators of F; runs a tracked basis computation of F.
inline LiftMatrix lift(const std::vector<Polynomial>& targets, const IdealPresentation& F,
                       const GroebnerOptions& opt = {})
{
    GroebnerOptions tracked = opt;
    tracked.track = true;
    tracked.checkpoint_path.clear();
    GroebnerBasis gb = buchberger(F, tracked);
    LiftMatrix out{LiftDirection::TargetsFromF, {}};
    const auto& gens = F.generators();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto d = divide(targets[i], gb.elements);
        if (!d.remainder.is_zero()) throw NotAMember(i);
        std::vector<Polynomial> row(gens.size(), Polynomial(F.vars(), F.domain()));
        for (std::size_t j = 0; j < gb.elements.size(); ++j) {
            if (d.quotients[j].is_zero()) continue;
            for (std::size_t k = 0; k < gens.size(); ++k)
                if (!gb.z->rows[j][k].is_zero()) row[k] += d.quotients[j] * gb.z->rows[j][k];
        }
        out.rows.push_back(detail::verified_row(targets[i], row, gens));
    }
    return out;
}

enum class SyzygySet {
    AllPairs,  // one Schreyer row per pair i < j
    Minimal,   // only pairs whose cofactor L/lm(g_i) is minimal among j > i; Koszul rows for coprime pairs
};

/// Syzygies of a Groebner basis built from the division of S(g_i, g_j). Both variants generate
/// the syzygy module: their leading terms generate the leading module in the Schreyer order.
inline SyzygyMatrix syzygy_matrix(const std::vector<Polynomial>& G, SyzygySet set = SyzygySet::AllPairs)
{
    SyzygyMatrix out;
    if (G.empty()) return out;
    const auto& vars = G.front().vars();
    const auto& dom = G.front().domain();
    for (std::size_t i = 0; i < G.size(); ++i) {
        std::vector<Monomial> cof(G.size());
        for (std::size_t j = i + 1; j < G.size(); ++j)
            cof[j] = lcm(G[i].leading_monomial(), G[j].leading_monomial()) / G[i].leading_monomial();
        for (std::size_t j = i + 1; j < G.size(); ++j) {
            bool coprime_pair = coprime(G[i].leading_monomial(), G[j].leading_monomial());
            if (set == SyzygySet::Minimal) {
                bool redundant = false;
                for (std::size_t k = i + 1; k < G.size() && !redundant; ++k)
                    if (k != j && cof[k].divides(cof[j]) && (cof[k] != cof[j] || k < j)) redundant = true;
                if (redundant) continue;
            }
            std::vector<Polynomial> row(G.size(), Polynomial(vars, dom));
            if (set == SyzygySet::Minimal && coprime_pair) {
                row[i] = G[j];
                row[j] = -G[i];
            } else {
                Monomial mi = cof[j], mj = lcm(G[i].leading_monomial(), G[j].leading_monomial()) / G[j].leading_monomial();
                Rational ci = dom.inverse(G[i].leading_coefficient()), cj = dom.inverse(G[j].leading_coefficient());
                Polynomial s = G[i].times_monomial(ci, mi) - G[j].times_monomial(cj, mj);
                auto d = divide(s, G);
                if (!d.remainder.is_zero()) throw PreconditionViolation("syzygy_matrix expects a Groebner basis");
                for (std::size_t k = 0; k < G.size(); ++k) row[k] = -d.quotients[k];
                row[i] += Polynomial::monomial(vars, dom, ci, mi);
                row[j] -= Polynomial::monomial(vars, dom, cj, mj);
            }
            if (!combine_row(row, G, vars, dom).is_zero()) throw InternalError("syzygy row does not annihilate G");
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

inline SyzygyMatrix syzygy_matrix(const GroebnerBasis& G, SyzygySet set = SyzygySet::AllPairs)
{
    return syzygy_matrix(G.elements, set);
}

inline bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b)
{
    return same_table(a.vars, b.vars) && a.domain == b.domain && a.elements == b.elements;
}

inline bool ideal_equal(const IdealPresentation& a, const IdealPresentation& b, const GroebnerOptions& opt = {})
{
    if (!same_table(a.vars(), b.vars()) || !(a.domain() == b.domain()))
        throw DomainMismatch("ideals over different rings");
    return ideal_equal(buchberger(a, opt), buchberger(b, opt));
}

/// Name for an auxiliary variable that clashes with no name or alias of the table.
inline std::string fresh_variable_name(const VariableTable& vars)
{
    for (std::string cand : {"t", "aux", "tau"})
        if (!vars.lookup(cand)) return cand;
    for (int k = 0;; ++k)
        if (!vars.lookup("aux" + std::to_string(k))) return "aux" + std::to_string(k);
}

/// Intermediate data of the auxiliary-variable quotient construction.
struct QuotientComputation {
    IdealPresentation auxiliary;  // t*f_i and t*s - s over the widened table
    GroebnerBasis auxiliary_basis;
    GroebnerBasis quotient;       // reduced basis of (I : s)
};

/// (I : s) via the basis of <t*f_1, ..., t*f_r, t*s - s> with t the greatest variable.
inline QuotientComputation ideal_quotient_full(const IdealPresentation& I, const Polynomial& s,
                                               const GroebnerOptions& opt = {})
{
    if (s.is_zero()) throw PreconditionViolation("quotient by the zero polynomial");
    if (!same_table(s.vars(), I.vars()) || !(s.domain() == I.domain()))
        throw DomainMismatch("divisor does not live in the ideal's ring");
    auto wide = I.vars()->with_leading(fresh_variable_name(*I.vars()));
    Polynomial t = Polynomial::variable(wide, I.domain(), 0);
    IdealPresentation aux(wide, I.domain());
    for (auto& f : I.generators()) aux.add(t * f.embed_leading(wide));
    Polynomial sw = s.embed_leading(wide);
    aux.add(t * sw - sw);
    GroebnerBasis aux_gb = buchberger(aux, opt);
    IdealPresentation q(I.vars(), I.domain());
    for (auto& g : elimination_subset(aux_gb, 1)) q.add(exact_divide(g.drop_leading(I.vars()), s));
    if (q.size() == 0) throw InternalError("quotient ideal came out empty");
    GroebnerOptions plain = opt;
    plain.track = false;
    plain.checkpoint_path.clear();
    GroebnerBasis qb = buchberger(q, plain);
    return {std::move(aux), std::move(aux_gb), std::move(qb)};
}

inline GroebnerBasis ideal_quotient(const IdealPresentation& I, const Polynomial& s, const GroebnerOptions& opt = {})
{
    return ideal_quotient_full(I, s, opt).quotient;
}

/// Row-reduced basis of the degree-d part of a homogeneous ideal, by linear algebra on
/// the products m * g with deg(m * g) = d.
inline std::vector<Polynomial> graded_component(const IdealPresentation& I, unsigned d)
{
    for (auto& g : I.generators())
        if (!g.is_homogeneous()) throw PreconditionViolation("graded_component needs homogeneous generators");
    const std::size_t n = I.vars()->size();
    std::map<Monomial, Polynomial, std::greater<Monomial>> pivots;  // lm -> monic row

    auto insert = [&](Polynomial row) {
        // eliminate against existing pivots
        bool changed = true;
        while (changed && !row.is_zero()) {
            changed = false;
            for (auto& t : row.terms()) {
                auto it = pivots.find(t.monomial);
                if (it != pivots.end()) {
                    row = row - it->second.scaled(t.coefficient);
                    changed = true;
                    break;
                }
            }
        }
        if (row.is_zero()) return;
        row = row.monic();
        Monomial lm = row.leading_monomial();
        for (auto& [m, p] : pivots) {
            for (auto& t : p.terms())
                if (t.monomial == lm) {
                    p = p - row.scaled(t.coefficient);
                    break;
                }
        }
        pivots.emplace(lm, std::move(row));
    };

    std::vector<unsigned> e(n, 0);
    for (auto& g : I.generators()) {
        unsigned dg = g.total_degree();
        if (dg > d) continue;
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
            if (i + 1 == n || left == 0) {
                if (n) e[i] = left;
                Monomial m = Monomial::from_exponents(std::span<const unsigned>(e));
                insert(g.times_monomial(Rational(1), m));
                if (n) e[i] = 0;
                return;
            }
            for (unsigned k = 0; k <= left; ++k) {
                e[i] = k;
                rec(i + 1, left - k);
            }
            e[i] = 0;
        };
        rec(0, d - dg);
    }
    std::vector<Polynomial> out;
    for (auto& [m, p] : pivots) out.push_back(p);
    return out;
}

/// Whether f lies in the span of a row-reduced family (as returned by graded_component).
inline bool in_span(const Polynomial& f, const std::vector<Polynomial>& rref)
{
    std::map<Monomial, const Polynomial*, std::greater<Monomial>> piv;
    for (auto& p : rref) piv[p.leading_monomial()] = &p;
    Polynomial r = f;
    while (!r.is_zero()) {
        auto it = piv.find(r.leading_monomial());
        if (it == piv.end()) return false;
        r = r - it->second->scaled(r.leading_coefficient());
    }
    return true;
}

}  // namespace flatcert
