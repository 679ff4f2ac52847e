#pragma once

#include <set>
#include <string>
#include <vector>

#include "flatcert/algebra/factor.hpp"
#include "flatcert/groebner/operations.hpp"

namespace flatcert {

/// Coefficients other than +-1 met while scanning F, G, Z, Y, R, and their prime divisors.
struct UnluckyPrimeReport {
    std::set<Rational> raw;
    std::set<Integer> primes;
    std::size_t z_rows = 0, y_rows = 0, syzygy_rows = 0;

    void absorb(const Rational& c)
    {
        if (c == 1 || c == -1 || c == 0) return;
        if (!raw.insert(c).second) return;
        for (auto& p : prime_factors(c.get_num())) primes.insert(p);
        for (auto& p : prime_factors(c.get_den())) primes.insert(p);
    }
    void absorb(const Polynomial& f)
    {
        for (auto& t : f.terms()) absorb(t.coefficient);
    }
    void absorb(const std::vector<std::vector<Polynomial>>& rows)
    {
        for (auto& r : rows)
            for (auto& p : r) absorb(p);
    }
    void merge(const UnluckyPrimeReport& o)
    {
        raw.insert(o.raw.begin(), o.raw.end());
        primes.insert(o.primes.begin(), o.primes.end());
    }
};

/// Scans F, G and the matrices Z (G = Z F), Y (F = Y G) and R (R G = 0). G must carry Z, i.e.
/// come from a tracked run on F; otherwise a tracked run is performed here.
inline UnluckyPrimeReport unlucky_primes(const IdealPresentation& F, const GroebnerBasis& G,
                                         const GroebnerOptions& opt = {})
{
    if (!F.domain().is_rational()) throw DomainMismatch("unlucky primes are defined for bases over Q");
    UnluckyPrimeReport rep;
    for (auto& f : F.generators()) rep.absorb(f);
    for (auto& g : G.elements) rep.absorb(g);
    const LiftMatrix* z = G.z ? &*G.z : nullptr;
    GroebnerBasis tracked;
    if (!z || G.source != F.generators()) {
        GroebnerOptions t = opt;
        t.track = true;
        t.checkpoint_path.clear();
        tracked = buchberger(F, t);
        if (tracked.elements != G.elements) throw InternalError("G is not the reduced basis of F");
        z = &*tracked.z;
    }
    rep.absorb(z->rows);
    rep.z_rows = z->rows.size();
    auto y = lift_over_basis(F.generators(), G.elements);
    rep.absorb(y.rows);
    rep.y_rows = y.rows.size();
    auto r = syzygy_matrix(G, SyzygySet::Minimal);
    rep.absorb(r.rows);
    rep.syzygy_rows = r.rows.size();
    return rep;
}

}  // namespace flatcert
