#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <span>

#include "flatcert/algebra/variables.hpp"
#include "flatcert/error.hpp"

namespace flatcert {

/// Dense exponent vector. Exponents are kept below 128 so that products and
/// divisibility tests can be done eight variables at a time.
class Monomial {
public:
    static constexpr unsigned kMaxExponent = 127;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars))
    {
        if (nvars > kMaxVariables) throw PreconditionViolation("too many variables");
    }

    static Monomial from_exponents(std::span<const unsigned> exps)
    {
        Monomial m(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
        return m;
    }
    static Monomial from_exponents(std::initializer_list<unsigned> exps)
    {
        return from_exponents(std::span<const unsigned>(exps.begin(), exps.size()));
    }
    static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1)
    {
        Monomial m(nvars);
        m.set(index, power);
        return m;
    }

    std::size_t size() const { return nvars_; }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }
    std::uint64_t support() const { return support_; }

    void set(std::size_t i, unsigned value)
    {
        if (i >= nvars_) throw PreconditionViolation("variable index out of range");
        if (value > kMaxExponent) throw ResourceLimit("exponent exceeds " + std::to_string(kMaxExponent));
        degree_ = static_cast<std::uint16_t>(degree_ - e_[i] + value);
        e_[i] = static_cast<std::uint8_t>(value);
        if (value) support_ |= bit(i);
        else support_ &= ~bit(i);
    }

    /// Index of the first (greatest) variable present, or size() for the unit monomial.
    std::size_t leading_variable() const
    {
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e_[i]) return i;
        return nvars_;
    }

    bool divides(const Monomial& other) const
    {
        if (support_ & ~other.support_) return false;
        if (degree_ > other.degree_) return false;
        std::uint64_t a[kWords], b[kWords];
        std::memcpy(a, e_.data(), sizeof a);
        std::memcpy(b, other.e_.data(), sizeof b);
        for (std::size_t w = 0; w < kWords; ++w)
            if ((((b[w] | kHigh) - a[w]) & kHigh) != kHigh) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        check_same(a, b);
        Monomial r(a.nvars_);
        std::uint64_t x[kWords], y[kWords];
        std::memcpy(x, a.e_.data(), sizeof x);
        std::memcpy(y, b.e_.data(), sizeof y);
        std::uint64_t overflow = 0;
        for (std::size_t w = 0; w < kWords; ++w) {
            x[w] += y[w];
            overflow |= x[w] & kHigh;
        }
        if (overflow) throw ResourceLimit("exponent exceeds " + std::to_string(kMaxExponent));
        std::memcpy(r.e_.data(), x, sizeof x);
        r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
        r.support_ = a.support_ | b.support_;
        return r;
    }

    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b)
    {
        check_same(a, b);
        if (!b.divides(a)) throw PreconditionViolation("monomial division is not exact");
        Monomial r(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) r.e_[i] = static_cast<std::uint8_t>(a.e_[i] - b.e_[i]);
        r.recompute();
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b)
    {
        check_same(a, b);
        Monomial r(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        r.recompute();
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support_ & b.support_) == 0; }

    /// Lexicographic comparison, variable 0 greatest.
    friend std::strong_ordering lex_compare(const Monomial& a, const Monomial& b)
    {
        check_same(a, b);
        return std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables) <=> 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.nvars_ == b.nvars_ && std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables) == 0;
    }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) { return lex_compare(a, b); }

    /// Copy with a fresh greatest variable (exponent `lead`) in front.
    Monomial with_leading(unsigned lead) const
    {
        Monomial r(nvars_ + 1);
        r.e_[0] = static_cast<std::uint8_t>(lead);
        std::memcpy(r.e_.data() + 1, e_.data(), nvars_);
        r.recompute();
        return r;
    }
    /// Drops variable 0, which must have exponent zero.
    Monomial without_leading() const
    {
        if (e_[0] != 0) throw PreconditionViolation("leading variable still present");
        Monomial r(nvars_ - 1);
        std::memcpy(r.e_.data(), e_.data() + 1, nvars_ - 1);
        r.recompute();
        return r;
    }

    std::size_t hash() const
    {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ e_[i]) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }

private:
    static constexpr std::size_t kWords = kMaxVariables / 8;
    static constexpr std::uint64_t kHigh = 0x8080808080808080ull;
    static_assert(kMaxVariables % 8 == 0 && kMaxVariables <= 64);

    static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

    static void check_same(const Monomial& a, const Monomial& b)
    {
        if (a.nvars_ != b.nvars_) throw DomainMismatch("monomials over different variable tables");
    }

    void recompute()
    {
        degree_ = 0;
        support_ = 0;
        for (std::size_t i = 0; i < nvars_; ++i) {
            degree_ = static_cast<std::uint16_t>(degree_ + e_[i]);
            if (e_[i]) support_ |= bit(i);
        }
    }

    alignas(8) std::array<std::uint8_t, kMaxVariables> e_{};
    std::uint64_t support_ = 0;
    std::uint16_t degree_ = 0;
    std::uint8_t nvars_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace flatcert
