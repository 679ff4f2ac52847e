#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "flatcert/algebra/domain.hpp"
#include "flatcert/algebra/monomial.hpp"
#include "flatcert/algebra/rational.hpp"
#include "flatcert/algebra/variables.hpp"
#include "flatcert/error.hpp"

namespace flatcert {

struct Term {
    Rational coefficient;
    Monomial monomial;
    friend bool operator==(const Term&, const Term&) = default;
};

/// How the coefficients of a polynomial over Q were last normalized.
enum class Normalization { Raw, Primitive, Monic };

/// Sparse polynomial with terms sorted strictly descending in lex order.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(VariableTablePtr vars, CoefficientDomain domain) : vars_(std::move(vars)), domain_(domain) {}

    static Polynomial constant(VariableTablePtr vars, CoefficientDomain domain, const Rational& c)
    {
        Polynomial p(std::move(vars), domain);
        p.push_checked(c, Monomial(p.vars_->size()));
        return p;
    }
    static Polynomial variable(VariableTablePtr vars, CoefficientDomain domain, std::size_t index)
    {
        Polynomial p(std::move(vars), domain);
        p.terms_.push_back({Rational(1), Monomial::variable(p.vars_->size(), index)});
        return p;
    }
    static Polynomial monomial(VariableTablePtr vars, CoefficientDomain domain, const Rational& c, const Monomial& m)
    {
        Polynomial p(std::move(vars), domain);
        p.push_checked(c, m);
        return p;
    }
    /// Builds from arbitrary terms: sorts, merges equal monomials, drops zeros.
    static Polynomial from_terms(VariableTablePtr vars, CoefficientDomain domain, std::vector<Term> terms)
    {
        Polynomial p(std::move(vars), domain);
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
        for (auto& t : terms) {
            if (t.monomial.size() != p.vars_->size()) throw DomainMismatch("term arity does not match variable table");
            if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
                p.terms_.back().coefficient = domain.canonical(p.terms_.back().coefficient + t.coefficient);
                if (p.terms_.back().coefficient == 0) p.terms_.pop_back();
            } else {
                p.push_checked(t.coefficient, t.monomial);
            }
        }
        return p;
    }

    const VariableTablePtr& vars() const { return vars_; }
    const CoefficientDomain& domain() const { return domain_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
    Normalization normalization() const { return form_; }

    const Term& leading_term() const
    {
        if (terms_.empty()) throw PreconditionViolation("leading term of the zero polynomial");
        return terms_.front();
    }
    const Monomial& leading_monomial() const { return leading_term().monomial; }
    const Rational& leading_coefficient() const { return leading_term().coefficient; }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max(d, t.monomial.degree());
        return d;
    }
    bool is_homogeneous() const
    {
        for (auto& t : terms_)
            if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
        return true;
    }
    unsigned degree_in(std::size_t var) const
    {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max(d, t.monomial[var]);
        return d;
    }
    /// Coefficient of var^k, as a polynomial free of var.
    Polynomial coefficient_in(std::size_t var, unsigned k) const
    {
        Polynomial out(vars_, domain_);
        for (auto& t : terms_) {
            if (t.monomial[var] != k) continue;
            Monomial m = t.monomial;
            m.set(var, 0);
            out.terms_.push_back({t.coefficient, m});
        }
        out.resort();
        return out;
    }
    /// Variables occurring in some term, as a bitmask over the table.
    std::uint64_t support() const
    {
        std::uint64_t s = 0;
        for (auto& t : terms_) s |= t.monomial.support();
        return s;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coefficient = domain_.canonical(-t.coefficient);
        r.form_ = Normalization::Raw;
        return r;
    }

    friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return combine(f, g, false); }
    friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return combine(f, g, true); }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g)
    {
        check_compatible(f, g);
        std::vector<Term> prods;
        prods.reserve(f.terms_.size() * g.terms_.size());
        for (auto& a : f.terms_)
            for (auto& b : g.terms_) prods.push_back({a.coefficient * b.coefficient, a.monomial * b.monomial});
        return from_terms(f.vars_, f.domain_, std::move(prods));
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& f) { return f.scaled(c); }

    Polynomial scaled(const Rational& c) const
    {
        Rational cc = domain_.canonical(c);
        Polynomial r(vars_, domain_);
        if (cc == 0) return r;
        for (auto& t : terms_) r.terms_.push_back({domain_.canonical(t.coefficient * cc), t.monomial});
        return r;
    }

    Polynomial times_monomial(const Rational& c, const Monomial& m) const
    {
        Rational cc = domain_.canonical(c);
        Polynomial r(vars_, domain_);
        if (cc == 0) return r;
        for (auto& t : terms_) r.terms_.push_back({domain_.canonical(t.coefficient * cc), t.monomial * m});
        return r;
    }

    Polynomial pow(unsigned e) const
    {
        Polynomial result = constant(vars_, domain_, 1);
        Polynomial base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
    Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
    Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

    /// Divides by the leading coefficient.
    Polynomial monic() const
    {
        if (is_zero()) return *this;
        Polynomial r = scaled(domain_.inverse(leading_coefficient()));
        r.form_ = Normalization::Monic;
        return r;
    }

    /// Over Q: integer coefficients with content 1 and positive leading coefficient.
    Polynomial primitive() const
    {
        if (is_zero() || !domain_.is_rational()) return monic();
        Integer den = 1, num = 0;
        for (auto& t : terms_) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den().get_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coefficient.get_num().get_mpz_t());
        }
        Rational scale(den, num);
        scale.canonicalize();
        if (leading_coefficient() < 0) scale = -scale;
        Polynomial r = scaled(scale);
        r.form_ = Normalization::Primitive;
        return r;
    }

    /// Re-expresses the polynomial over `wider`, which must equal this table with one variable prepended.
    Polynomial embed_leading(const VariableTablePtr& wider) const
    {
        if (wider->size() != vars_->size() + 1) throw DomainMismatch("embedding target must add exactly one variable");
        Polynomial r(wider, domain_);
        for (auto& t : terms_) r.terms_.push_back({t.coefficient, t.monomial.with_leading(0)});
        return r;
    }
    /// Inverse of embed_leading; the polynomial must not involve variable 0.
    Polynomial drop_leading(const VariableTablePtr& narrower) const
    {
        if (narrower->size() + 1 != vars_->size()) throw DomainMismatch("narrowing target must drop exactly one variable");
        Polynomial r(narrower, domain_);
        for (auto& t : terms_) r.terms_.push_back({t.coefficient, t.monomial.without_leading()});
        return r;
    }

    /// Same terms, reinterpreted over another domain (coefficients are canonicalized).
    Polynomial over(const CoefficientDomain& target) const
    {
        Polynomial r(vars_, target);
        for (auto& t : terms_) r.push_checked(t.coefficient, t.monomial);
        return r;
    }

    friend bool operator==(const Polynomial& f, const Polynomial& g)
    {
        return same_table(f.vars_, g.vars_) && f.domain_ == g.domain_ && f.terms_ == g.terms_;
    }

private:
    void push_checked(const Rational& c, const Monomial& m)
    {
        if (m.size() != vars_->size()) throw DomainMismatch("monomial arity does not match variable table");
        Rational cc = domain_.canonical(c);
        if (cc != 0) terms_.push_back({cc, m});
    }

    void resort()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    }

    static void check_compatible(const Polynomial& f, const Polynomial& g)
    {
        if (!f.vars_ || !g.vars_) throw DomainMismatch("polynomial without variable table");
        if (!same_table(f.vars_, g.vars_)) throw DomainMismatch("polynomials over different variable tables");
        if (!(f.domain_ == g.domain_)) throw DomainMismatch("polynomials over different coefficient domains");
    }

    static Polynomial combine(const Polynomial& f, const Polynomial& g, bool subtract)
    {
        check_compatible(f, g);
        Polynomial r(f.vars_, f.domain_);
        r.terms_.reserve(f.terms_.size() + g.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < f.terms_.size() || j < g.terms_.size()) {
            if (j == g.terms_.size() || (i < f.terms_.size() && f.terms_[i].monomial > g.terms_[j].monomial)) {
                r.terms_.push_back(f.terms_[i++]);
            } else if (i == f.terms_.size() || g.terms_[j].monomial > f.terms_[i].monomial) {
                Rational c = subtract ? Rational(-g.terms_[j].coefficient) : g.terms_[j].coefficient;
                r.terms_.push_back({f.domain_.canonical(c), g.terms_[j].monomial});
                ++j;
            } else {
                Rational c = subtract ? Rational(f.terms_[i].coefficient - g.terms_[j].coefficient)
                                      : Rational(f.terms_[i].coefficient + g.terms_[j].coefficient);
                c = f.domain_.canonical(c);
                if (c != 0) r.terms_.push_back({c, f.terms_[i].monomial});
                ++i;
                ++j;
            }
        }
        return r;
    }

    VariableTablePtr vars_;
    CoefficientDomain domain_ = CoefficientDomain::rationals();
    std::vector<Term> terms_;
    Normalization form_ = Normalization::Raw;
};

/// Coefficient-wise image over F_p. Throws DenominatorDivisibleByP if some denominator vanishes mod p.
inline Polynomial reduce_mod_prime(const Polynomial& f, std::uint32_t p)
{
    if (!f.domain().is_rational()) throw DomainMismatch("reduce_mod_prime expects a polynomial over Q");
    return f.over(CoefficientDomain::prime_field(p));
}

/// Splits g = a*x^2 + b*x + c and returns b^2 - 4ac.
inline Polynomial quadratic_discriminant(const Polynomial& g, std::size_t var)
{
    if (g.degree_in(var) != 2)
        throw PreconditionViolation("discriminant needs degree exactly 2 in " + g.vars()->name(var));
    Polynomial a = g.coefficient_in(var, 2), b = g.coefficient_in(var, 1), c = g.coefficient_in(var, 0);
    return b * b - Rational(4) * (a * c);
}

}  // namespace flatcert
