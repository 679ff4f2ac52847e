#include <gtest/gtest.h>

#include <random>

#include "flatcert/algebra/factor.hpp"
#include "flatcert/algebra/parse.hpp"

using namespace flatcert;

namespace {

VariableTablePtr xyz() { return VariableTable::make({"x", "y", "z"}); }

Polynomial P(const std::string& s, const VariableTablePtr& v, CoefficientDomain d = CoefficientDomain::rationals())
{
    return parse_poly(s, v, d);
}

Polynomial random_poly(std::mt19937& rng, const VariableTablePtr& v, int terms, int maxdeg, int coeff)
{
    std::uniform_int_distribution<int> c(-coeff, coeff), e(0, maxdeg);
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
        Monomial m(v->size());
        for (std::size_t k = 0; k < v->size(); ++k) m.set(k, static_cast<unsigned>(e(rng)));
        ts.push_back({Rational(c(rng)), m});
    }
    return Polynomial::from_terms(v, CoefficientDomain::rationals(), ts);
}

}  // namespace

TEST(Monomial, SymmetricTableOrder)
{
    auto v = VariableTable::symmetric(6);
    ASSERT_EQ(v->size(), 21u);
    EXPECT_EQ(v->name(0), "x11");
    EXPECT_EQ(v->name(1), "x12");
    EXPECT_EQ(v->name(6), "x22");
    EXPECT_EQ(v->name(20), "x66");
    auto a = Monomial::variable(21, 0), b = Monomial::variable(21, 1);
    EXPECT_EQ(lex_compare(a, b), std::strong_ordering::greater);
    EXPECT_EQ(lex_compare(a, a), std::strong_ordering::equal);
}

TEST(Monomial, LexIsMultiplicativeUpToDegreeThree)
{
    for (std::size_t nv : {3u, 4u}) {
        std::vector<Monomial> all;
        std::vector<unsigned> e(nv, 0);
        std::function<void(std::size_t, unsigned)> gen = [&](std::size_t i, unsigned left) {
            if (i == nv) {
                all.push_back(Monomial::from_exponents(std::span<const unsigned>(e)));
                return;
            }
            for (unsigned k = 0; k <= left; ++k) {
                e[i] = k;
                gen(i + 1, left - k);
            }
            e[i] = 0;
        };
        gen(0, 3);
        for (auto& u : all)
            for (auto& v : all) {
                auto c = lex_compare(u, v);
                EXPECT_EQ(lex_compare(v, u), 0 <=> c);
                for (auto& w : all) EXPECT_EQ(lex_compare(u * w, v * w), c);
            }
    }
}

TEST(Monomial, DivisibilityAndLcm)
{
    auto a = Monomial::from_exponents({2, 1, 0}), b = Monomial::from_exponents({1, 1, 0});
    EXPECT_TRUE(b.divides(a));
    EXPECT_FALSE(a.divides(b));
    EXPECT_EQ(a / b, Monomial::from_exponents({1, 0, 0}));
    EXPECT_EQ(lcm(a, Monomial::from_exponents({0, 3, 1})), Monomial::from_exponents({2, 3, 1}));
    EXPECT_THROW(Monomial::from_exponents({127}) * Monomial::from_exponents({1}), ResourceLimit);
    EXPECT_THROW(lex_compare(a, Monomial(2)), DomainMismatch);
}

TEST(Polynomial, AdditiveIdentity)
{
    auto v = xyz();
    auto f = P("x^2 - 3/2*y*z + 7", v);
    EXPECT_EQ(f + Polynomial(v, CoefficientDomain::rationals()), f);
}

TEST(Polynomial, TraceSquareIdentity)
{
    auto v = VariableTable::make({"a", "b", "c"});
    auto lhs = P("(a+c)^2", v) - P("a^2 + 2*b^2 + c^2", v);
    EXPECT_EQ(lhs, P("2*a*c - 2*b^2", v));
}

TEST(Polynomial, RingAxiomsOnRandomInputs)
{
    std::mt19937 rng(7);
    auto v = xyz();
    for (int it = 0; it < 50; ++it) {
        auto f = random_poly(rng, v, 4, 3, 9), g = random_poly(rng, v, 4, 3, 9), h = random_poly(rng, v, 3, 2, 9);
        EXPECT_EQ((f + g) * h, f * h + g * h);
        EXPECT_EQ(f * g, g * f);
        EXPECT_TRUE((f - f).is_zero());
    }
}

TEST(Polynomial, ReductionModTwoIsHomomorphism)
{
    std::mt19937 rng(11);
    auto v = xyz();
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(rng, v, 5, 3, 20), g = random_poly(rng, v, 5, 3, 20);
        EXPECT_EQ(reduce_mod_prime(f * g, 2), reduce_mod_prime(f, 2) * reduce_mod_prime(g, 2));
        EXPECT_EQ(reduce_mod_prime(f + g, 2), reduce_mod_prime(f, 2) + reduce_mod_prime(g, 2));
    }
}

TEST(Polynomial, LeadingTermMultiplicative)
{
    std::mt19937 rng(3);
    auto v = xyz();
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(rng, v, 4, 3, 9), g = random_poly(rng, v, 4, 3, 9);
        if (f.is_zero() || g.is_zero()) continue;
        auto fg = f * g;
        EXPECT_EQ(fg.leading_monomial(), f.leading_monomial() * g.leading_monomial());
        EXPECT_EQ(fg.leading_coefficient(), f.leading_coefficient() * g.leading_coefficient());
    }
}

TEST(Polynomial, LeadingTermExamples)
{
    auto v = VariableTable::symmetric(6);
    auto f = P("x55*x66 - x56^2", v);
    EXPECT_EQ(format_monomial(f.leading_monomial(), *v), "x55*x66");
    EXPECT_EQ(f.leading_coefficient(), 1);
    auto single = P("3*x12^2", v);
    EXPECT_EQ(single.leading_term(), single.terms().front());
    EXPECT_THROW(Polynomial(v, CoefficientDomain::rationals()).leading_term(), PreconditionViolation);
}

TEST(Polynomial, ReduceModPrimeExamples)
{
    auto v = xyz();
    auto f2 = CoefficientDomain::prime_field(2);
    EXPECT_EQ(reduce_mod_prime(P("1/3*x", v), 2), P("x", v, f2));
    EXPECT_EQ(reduce_mod_prime(P("x^2 + 2*x", v), 2), P("x^2", v, f2));
    EXPECT_THROW(reduce_mod_prime(P("1/2*x", v), 2), DenominatorDivisibleByP);
    EXPECT_EQ(reduce_mod_prime(P("1/2*x", v), 7), P("4*x", v, CoefficientDomain::prime_field(7)));
}

TEST(Parse, AliasesAndExamples)
{
    auto v = VariableTable::symmetric(6);
    EXPECT_EQ(P("u*z - v^2", v), P("x55*x66 - x56^2", v));
    EXPECT_TRUE(P("0", v).is_zero());
    EXPECT_EQ(P("m^2 + q^2 + t^2 + v^2 + z^2", v), P("x26^2 + x36^2 + x46^2 + x56^2 + x66^2", v));
    EXPECT_EQ(P("a", v), P("x11", v));
    EXPECT_EQ(P("l", v), P("x25", v));
}

TEST(Parse, Errors)
{
    auto v = xyz();
    EXPECT_THROW(P("2x", v), ParseError);
    EXPECT_THROW(P("x y", v), ParseError);
    EXPECT_THROW(P("x + w", v), ParseError);
    EXPECT_THROW(P("x +", v), ParseError);
    EXPECT_THROW(P("1/0", v), ParseError);
    EXPECT_THROW(P("", v), ParseError);
    try {
        P("x + * y", v);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Parse, RoundTrip)
{
    std::mt19937 rng(5);
    auto v = xyz();
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(rng, v, 5, 4, 30).scaled(Rational(1, 1 + it % 7));
        auto text = format_poly(f);
        EXPECT_EQ(P(text, v), f) << text;
        EXPECT_EQ(format_poly(P(text, v)), text);
    }
    EXPECT_EQ(format_poly(P("-x^2*y + 1/2*z - 3", v)), "-x^2*y + 1/2*z - 3");
}

TEST(Polynomial, NormalizationForms)
{
    auto v = xyz();
    auto f = P("2/3*x - 4/9*y", v);
    auto p = f.primitive();
    EXPECT_EQ(p, P("3*x - 2*y", v));
    EXPECT_EQ(p.normalization(), Normalization::Primitive);
    auto m = f.monic();
    EXPECT_EQ(m, P("x - 2/3*y", v));
    EXPECT_EQ(m.normalization(), Normalization::Monic);
    EXPECT_EQ(P("-2*x", v).primitive(), P("x", v));
}

TEST(Polynomial, DomainMismatch)
{
    auto v = xyz();
    EXPECT_THROW(P("x", v) + P("x", v, CoefficientDomain::prime_field(3)), DomainMismatch);
    EXPECT_THROW(P("x", v) * P("x", VariableTable::make({"x"})), DomainMismatch);
}

TEST(Polynomial, Discriminant)
{
    auto v = VariableTable::make({"x", "y"});
    EXPECT_EQ(quadratic_discriminant(P("x^2 - y", v), 0), P("4*y", v));
    EXPECT_TRUE(quadratic_discriminant(P("3*y*x^2", v), 0).is_zero());
    EXPECT_THROW(quadratic_discriminant(P("x - y", v), 0), PreconditionViolation);
}

TEST(Domain, ParseAndCanonical)
{
    EXPECT_TRUE(CoefficientDomain::parse("Q").is_rational());
    EXPECT_EQ(CoefficientDomain::parse("Fp:7").characteristic(), 7u);
    EXPECT_THROW(CoefficientDomain::parse("Fp:8"), PreconditionViolation);
    EXPECT_THROW(CoefficientDomain::parse("R"), ParseError);
    EXPECT_EQ(CoefficientDomain::prime_field(5).canonical(Rational(-1, 2)), 2);
}

TEST(Factor, PrimeFactors)
{
    EXPECT_TRUE(prime_factors(Integer(1)).empty());
    EXPECT_EQ(prime_factors(Integer(-12)), (std::vector<Integer>{2, 3}));
    EXPECT_EQ(prime_factors(Integer(809)), (std::vector<Integer>{809}));
    Integer big = Integer("1000000007") * Integer("998244353") * 4;
    EXPECT_EQ(prime_factors(big), (std::vector<Integer>{2, Integer("998244353"), Integer("1000000007")}));
}
