#pragma once

#include <vector>

#include "flatcert/groebner/ideal.hpp"
#include "flatcert/groebner/kernel.hpp"

namespace flatcert {

/// Calls fn with the field arithmetic matching `domain`.
template <class Fn>
decltype(auto) with_field(const CoefficientDomain& domain, Fn&& fn)
{
    if (domain.is_rational()) return fn(RationalField{});
    return fn(ModularField(domain.characteristic()));
}

struct DivisionResult {
    std::vector<Polynomial> quotients;  // one per divisor
    Polynomial remainder;
};

namespace detail {

inline void check_same_ring(const Polynomial& f, const std::vector<Polynomial>& G)
{
    for (auto& g : G) {
        if (!same_table(f.vars(), g.vars())) throw DomainMismatch("divisor over a different variable table");
        if (!(f.domain() == g.domain())) throw DomainMismatch("divisor over a different coefficient domain");
    }
}

}  // namespace detail

/// Multivariate division: f = sum q_k * G[k] + r, where no term of r is divisible by any lm(G[k]).
/// The first divisor (in list order) whose leading monomial divides the current term is used.
inline DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& G)
{
    detail::check_same_ring(f, G);
    return with_field(f.domain(), [&](auto ring) {
        using Ring = decltype(ring);
        std::vector<WorkPoly<typename Ring::Coef>> basis;
        ReducerIndex idx;
        for (std::size_t k = 0; k < G.size(); ++k) {
            basis.push_back(to_work(ring, G[k]));
            if (!G[k].is_zero()) idx.add(k, G[k].leading_monomial());
        }
        QuotientLog log;
        auto r = reduce(ring, to_work(ring, f), basis, idx, ReduceOptions{}, &log);
        DivisionResult out;
        for (std::size_t k = 0; k < G.size(); ++k) {
            auto it = log.quotients.find(k);
            out.quotients.push_back(it == log.quotients.end()
                                        ? Polynomial(f.vars(), f.domain())
                                        : Polynomial::from_terms(f.vars(), f.domain(), it->second));
        }
        out.remainder = from_work(ring, r, f.vars());
        return out;
    });
}

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G)
{
    detail::check_same_ring(f, G);
    return with_field(f.domain(), [&](auto ring) {
        using Ring = decltype(ring);
        std::vector<WorkPoly<typename Ring::Coef>> basis;
        ReducerIndex idx;
        for (std::size_t k = 0; k < G.size(); ++k) {
            basis.push_back(to_work(ring, G[k]));
            if (!G[k].is_zero()) idx.add(k, G[k].leading_monomial());
        }
        return from_work(ring, reduce(ring, to_work(ring, f), basis, idx, ReduceOptions{}, nullptr), f.vars());
    });
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) { return normal_form(f, G.elements); }

/// S(f, g) = (L/lt f) f - (L/lt g) g with L the lcm of the leading monomials.
inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g)
{
    if (f.is_zero() || g.is_zero()) throw PreconditionViolation("S-polynomial of a zero polynomial");
    Monomial L = lcm(f.leading_monomial(), g.leading_monomial());
    const auto& d = f.domain();
    return f.times_monomial(d.inverse(f.leading_coefficient()), L / f.leading_monomial()) -
           g.times_monomial(d.inverse(g.leading_coefficient()), L / g.leading_monomial());
}

/// Buchberger's criterion over all pairs.
inline bool is_groebner_basis(const std::vector<Polynomial>& G)
{
    std::vector<Polynomial> nz;
    for (auto& g : G)
        if (!g.is_zero()) nz.push_back(g);
    for (std::size_t i = 0; i < nz.size(); ++i)
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
            if (coprime(nz[i].leading_monomial(), nz[j].leading_monomial())) continue;
            if (!normal_form(s_polynomial(nz[i], nz[j]), nz).is_zero()) return false;
        }
    return true;
}

/// Exact quotient f / s; throws InternalError when s does not divide f.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& s)
{
    auto d = divide(f, {s});
    if (!d.remainder.is_zero()) throw InternalError("exact division left a remainder");
    return d.quotients.front();
}

}  // namespace flatcert
