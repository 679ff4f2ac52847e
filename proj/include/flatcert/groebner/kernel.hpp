#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "flatcert/algebra/polynomial.hpp"
#include "flatcert/groebner/ring.hpp"

namespace flatcert {

/// Record of a reduction f -> r: r = scale * (f - sum_k q_k * g_k).
struct QuotientLog {
    Rational scale = 1;
    std::map<std::size_t, std::vector<Term>> quotients;
};

template <class Ring>
WorkPoly<typename Ring::Coef> to_work(const Ring& ring, const Polynomial& f, Rational* scale = nullptr)
{
    std::vector<std::pair<Rational, Monomial>> in;
    in.reserve(f.size());
    for (auto& t : f.terms()) in.emplace_back(t.coefficient, t.monomial);
    WorkPoly<typename Ring::Coef> out;
    Rational k = ring.import(in, out);
    if (scale) *scale = k;
    return out;
}

template <class Ring>
Polynomial from_work(const Ring& ring, const WorkPoly<typename Ring::Coef>& f, const VariableTablePtr& vars)
{
    std::vector<Term> ts;
    ts.reserve(f.size());
    for (auto& t : f) ts.push_back({ring.to_rational(t.c), t.m});
    return Polynomial::from_terms(vars, ring.domain(), std::move(ts));
}

/// Leading-monomial index used to locate reducers quickly.
struct ReducerIndex {
    std::vector<Monomial> lms;
    std::vector<std::size_t> ids;

    void add(std::size_t id, const Monomial& lm)
    {
        ids.push_back(id);
        lms.push_back(lm);
    }
    /// First registered reducer whose leading monomial divides u.
    std::ptrdiff_t find(const Monomial& u) const
    {
        const std::uint64_t su = u.support();
        for (std::size_t k = 0; k < lms.size(); ++k) {
            if (lms[k].support() & ~su) continue;
            if (lms[k].divides(u)) return static_cast<std::ptrdiff_t>(ids[k]);
        }
        return -1;
    }
};

struct ReduceOptions {
    bool full = true;               // reduce every term, not only the leading one
    bool log = false;               // record quotients
    std::size_t max_bits = 0;       // coefficient cap, 0 = none
    std::size_t content_every = 24; // integer ring: divide out content periodically
};

/// Reduces f by the basis elements registered in `index`. The result is not normalized.
template <class Ring>
WorkPoly<typename Ring::Coef> reduce(const Ring& ring, WorkPoly<typename Ring::Coef> f,
                                     const std::vector<WorkPoly<typename Ring::Coef>>& basis,
                                     const ReducerIndex& index, const ReduceOptions& opt, QuotientLog* log)
{
    using C = typename Ring::Coef;
    WorkPoly<C> rem, next;
    std::size_t start = 0, steps = 0;
    C a, b, tmp;
    Rational running = 1; // product of the a factors so far
    while (start < f.size()) {
        const Monomial& u = f[start].m;
        std::ptrdiff_t gi = index.find(u);
        if (gi < 0) {
            if (!opt.full) break;
            rem.push_back(std::move(f[start]));
            ++start;
            continue;
        }
        const auto& g = basis[static_cast<std::size_t>(gi)];
        ring.factors(f[start].c, g.front().c, a, b);
        Monomial mult = u / g.front().m;
        bool scale_a = !ring.is_one(a);
        if (scale_a)
            for (auto& t : rem) ring.scale(t.c, a);
        if (log) {
            if (scale_a) running *= ring.to_rational(a);
            log->quotients[static_cast<std::size_t>(gi)].push_back({ring.to_rational(b) / running, mult});
        }
        // next = a*f[start+1..] - b*mult*g[1..]
        next.clear();
        next.reserve(f.size() - start + g.size());
        std::size_t i = start + 1, j = 1;
        while (i < f.size() || j < g.size()) {
            if (j < g.size()) {
                Monomial gm = g[j].m * mult;
                while (i < f.size() && f[i].m > gm) {
                    if (scale_a) ring.scale(f[i].c, a);
                    next.push_back(std::move(f[i++]));
                }
                if (i < f.size() && f[i].m == gm) {
                    if (scale_a) ring.scale(f[i].c, a);
                    ring.sub_mul(f[i].c, b, g[j].c);
                    if (!ring.is_zero(f[i].c)) next.push_back(std::move(f[i]));
                    ++i;
                } else {
                    ring.neg_mul(tmp, b, g[j].c);
                    next.push_back({tmp, gm});
                }
                ++j;
            } else {
                if (scale_a) ring.scale(f[i].c, a);
                next.push_back(std::move(f[i++]));
            }
        }
        std::swap(f, next);
        start = 0;
        ++steps;
        if constexpr (!Ring::is_field) {
            if (opt.content_every && steps % opt.content_every == 0 && !f.empty()) {
                // divide rem and f by their joint content
                C g0 = 0;
                for (auto& t : rem) mpz_gcd(g0.get_mpz_t(), g0.get_mpz_t(), t.c.get_mpz_t());
                for (auto& t : f) {
                    if (g0 == 1) break;
                    mpz_gcd(g0.get_mpz_t(), g0.get_mpz_t(), t.c.get_mpz_t());
                }
                if (g0 > 1) {
                    for (auto& t : rem) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g0.get_mpz_t());
                    for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g0.get_mpz_t());
                    running /= Rational(g0);
                }
            }
            if (opt.max_bits && !f.empty() && ring.bits(f.front().c) > opt.max_bits)
                throw ResourceLimit("coefficient size exceeds " + std::to_string(opt.max_bits) + " bits");
        }
    }
    rem.insert(rem.end(), std::make_move_iterator(f.begin() + static_cast<std::ptrdiff_t>(start)),
               std::make_move_iterator(f.end()));
    if (log) log->scale = running;
    return rem;
}

/// S-polynomial in work form: a_f*(L/lm f)*f - a_g*(L/lm g)*g, with the multipliers returned.
template <class Ring>
WorkPoly<typename Ring::Coef> work_spoly(const Ring& ring, const WorkPoly<typename Ring::Coef>& f,
                                         const WorkPoly<typename Ring::Coef>& g, typename Ring::Coef& af,
                                         Monomial& mf, typename Ring::Coef& ag, Monomial& mg)
{
    Monomial L = lcm(f.front().m, g.front().m);
    mf = L / f.front().m;
    mg = L / g.front().m;
    // af * lc(f) == ag * lc(g)
    ring.factors(f.front().c, g.front().c, af, ag);
    using C = typename Ring::Coef;
    WorkPoly<C> out;
    out.reserve(f.size() + g.size());
    std::size_t i = 1, j = 1;
    C tmp;
    while (i < f.size() || j < g.size()) {
        bool take_f = false, take_g = false;
        Monomial fm, gm;
        if (i < f.size()) fm = f[i].m * mf;
        if (j < g.size()) gm = g[j].m * mg;
        if (i < f.size() && j < g.size()) {
            if (fm > gm) take_f = true;
            else if (gm > fm) take_g = true;
            else take_f = take_g = true;
        } else if (i < f.size()) {
            take_f = true;
        } else {
            take_g = true;
        }
        if (take_f && take_g) {
            C v = f[i].c;
            ring.scale(v, af);
            ring.sub_mul(v, ag, g[j].c);
            if (!ring.is_zero(v)) out.push_back({v, fm});
            ++i;
            ++j;
        } else if (take_f) {
            C v = f[i].c;
            ring.scale(v, af);
            out.push_back({v, fm});
            ++i;
        } else {
            ring.neg_mul(tmp, ag, g[j].c);
            out.push_back({tmp, gm});
            ++j;
        }
    }
    return out;
}

}  // namespace flatcert
