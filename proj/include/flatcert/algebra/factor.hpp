#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "flatcert/algebra/rational.hpp"

namespace flatcert {

namespace detail {

inline bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n, or n on failure.
inline Integer pollard_brent(const Integer& n, unsigned long c)
{
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto step = [&](Integer& v) { v = (v * v + c) % n; };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        unsigned long k = 0;
        do {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                step(y);
                Integer diff = abs(x - y);
                q = (q * diff) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        } while (k < r && g == 1);
        r *= 2;
        if (r > (1ul << 26)) return n;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            Integer diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

inline void factor_into(Integer n, std::set<Integer>& out)
{
    if (n < 0) n = -n;
    if (n < 2) return;
    for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.insert(Integer(p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
    }
    if (n < 2) return;
    if (probably_prime(n)) {
        out.insert(n);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Integer d = pollard_brent(n, c);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

}  // namespace detail

/// Distinct prime divisors of |n|, ascending.
inline std::vector<Integer> prime_factors(const Integer& n)
{
    std::set<Integer> out;
    detail::factor_into(n, out);
    return {out.begin(), out.end()};
}

}  // namespace flatcert
