#pragma once

#include <cstdint>
#include <vector>

#include "flatcert/algebra/domain.hpp"
#include "flatcert/algebra/monomial.hpp"
#include "flatcert/algebra/rational.hpp"

namespace flatcert {

template <class C>
struct WorkTerm {
    C c;
    Monomial m;
};

template <class C>
using WorkPoly = std::vector<WorkTerm<C>>;

/// Fraction-free arithmetic over Z. Polynomials are kept primitive with positive leading coefficient.
struct IntegerRing {
    using Coef = Integer;
    static constexpr bool is_field = false;

    CoefficientDomain domain() const { return CoefficientDomain::rationals(); }
    Rational to_rational(const Coef& c) const { return Rational(c); }
    bool is_one(const Coef& c) const { return c == 1; }
    std::size_t bits(const Coef& c) const { return bit_size(c); }

    // Cancelling the term cf*u by lg*lm(g) uses f <- a*f - b*(u/lm(g))*g.
    void factors(const Coef& cf, const Coef& lg, Coef& a, Coef& b) const
    {
        Coef d;
        mpz_gcd(d.get_mpz_t(), cf.get_mpz_t(), lg.get_mpz_t());
        mpz_divexact(a.get_mpz_t(), lg.get_mpz_t(), d.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), cf.get_mpz_t(), d.get_mpz_t());
        if (a < 0) {
            a = -a;
            b = -b;
        }
    }
    void scale(Coef& x, const Coef& a) const { x *= a; }
    // out = -b*y
    void neg_mul(Coef& out, const Coef& b, const Coef& y) const
    {
        mpz_mul(out.get_mpz_t(), b.get_mpz_t(), y.get_mpz_t());
        mpz_neg(out.get_mpz_t(), out.get_mpz_t());
    }
    // x -= b*y
    void sub_mul(Coef& x, const Coef& b, const Coef& y) const { mpz_submul(x.get_mpz_t(), b.get_mpz_t(), y.get_mpz_t()); }
    bool is_zero(const Coef& c) const { return c == 0; }

    /// Divides out the content and fixes the sign. Returns the rational factor applied.
    Rational normalize(WorkPoly<Coef>& f) const
    {
        if (f.empty()) return Rational(1);
        Coef g = 0;
        for (auto& t : f) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
            if (g == 1) break;
        }
        if (f.front().c < 0) g = -g;
        if (g != 1)
            for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
        Rational inv(Integer(1), g);
        inv.canonicalize();
        return inv;
    }

    /// Clears denominators; returns the scale k with result = k*input.
    Rational import(const std::vector<std::pair<Rational, Monomial>>& in, WorkPoly<Coef>& out) const
    {
        Integer den = 1;
        for (auto& [c, m] : in) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        out.clear();
        for (auto& [c, m] : in) out.push_back({Integer(c.get_num() * (den / c.get_den())), m});
        return Rational(den);
    }
};

/// Exact arithmetic over Q with monic normalization.
struct RationalField {
    using Coef = Rational;
    static constexpr bool is_field = true;

    CoefficientDomain domain() const { return CoefficientDomain::rationals(); }
    Rational to_rational(const Coef& c) const { return c; }
    bool is_one(const Coef& c) const { return c == 1; }
    std::size_t bits(const Coef& c) const { return bit_size(c); }
    void factors(const Coef& cf, const Coef& lg, Coef& a, Coef& b) const
    {
        a = 1;
        b = cf / lg;
    }
    void scale(Coef& x, const Coef& a) const { x *= a; }
    void neg_mul(Coef& out, const Coef& b, const Coef& y) const { out = -(b * y); }
    void sub_mul(Coef& x, const Coef& b, const Coef& y) const { x -= b * y; }
    bool is_zero(const Coef& c) const { return c == 0; }
    Rational normalize(WorkPoly<Coef>& f) const
    {
        if (f.empty() || f.front().c == 1) return Rational(1);
        Rational inv = 1 / f.front().c;
        for (auto& t : f) t.c *= inv;
        return inv;
    }
    Rational import(const std::vector<std::pair<Rational, Monomial>>& in, WorkPoly<Coef>& out) const
    {
        out.clear();
        for (auto& [c, m] : in) out.push_back({c, m});
        return Rational(1);
    }
};

/// Arithmetic in F_p for p < 2^31.
struct ModularField {
    using Coef = std::uint32_t;
    static constexpr bool is_field = true;
    std::uint32_t p;

    explicit ModularField(std::uint32_t prime) : p(prime) {}

    CoefficientDomain domain() const { return CoefficientDomain::prime_field(p); }
    Rational to_rational(const Coef& c) const { return Rational(static_cast<unsigned long>(c)); }
    bool is_one(const Coef& c) const { return c == 1; }
    std::size_t bits(const Coef&) const { return 0; }
    Coef mul(Coef x, Coef y) const { return static_cast<Coef>(static_cast<std::uint64_t>(x) * y % p); }
    Coef inv(Coef x) const
    {
        // Fermat: x^(p-2)
        std::uint64_t r = 1, b = x, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<Coef>(r);
    }
    void factors(const Coef& cf, const Coef& lg, Coef& a, Coef& b) const
    {
        a = 1;
        b = mul(cf, inv(lg));
    }
    void scale(Coef& x, const Coef& a) const { x = mul(x, a); }
    void neg_mul(Coef& out, const Coef& b, const Coef& y) const
    {
        Coef v = mul(b, y);
        out = v ? p - v : 0;
    }
    void sub_mul(Coef& x, const Coef& b, const Coef& y) const
    {
        Coef v = mul(b, y);
        x = x >= v ? x - v : x + (p - v);
    }
    bool is_zero(const Coef& c) const { return c == 0; }
    Rational normalize(WorkPoly<Coef>& f) const
    {
        if (f.empty() || f.front().c == 1) return Rational(1);
        Coef iv = inv(f.front().c);
        for (auto& t : f) t.c = mul(t.c, iv);
        return Rational(static_cast<unsigned long>(iv));
    }
    Rational import(const std::vector<std::pair<Rational, Monomial>>& in, WorkPoly<Coef>& out) const
    {
        auto d = domain();
        out.clear();
        for (auto& [c, m] : in) {
            Rational r = d.canonical(c);
            if (r != 0) out.push_back({static_cast<Coef>(r.get_num().get_ui()), m});
        }
        return Rational(1);
    }
};

}  // namespace flatcert
