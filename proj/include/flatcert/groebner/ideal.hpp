#pragma once

#include <optional>
#include <vector>

#include "flatcert/algebra/polynomial.hpp"

namespace flatcert {

/// Nonzero, deduplicated generators over a common table and domain.
class IdealPresentation {
public:
    IdealPresentation(VariableTablePtr vars, CoefficientDomain domain) : vars_(std::move(vars)), domain_(domain) {}

    static IdealPresentation from(const std::vector<Polynomial>& gens)
    {
        if (gens.empty()) throw PreconditionViolation("an ideal presentation needs at least one generator");
        IdealPresentation I(gens.front().vars(), gens.front().domain());
        for (auto& g : gens) I.add(g);
        return I;
    }
    static IdealPresentation from(const std::vector<Polynomial>& gens, VariableTablePtr vars, CoefficientDomain domain)
    {
        IdealPresentation I(std::move(vars), domain);
        for (auto& g : gens) I.add(g);
        return I;
    }

    /// Appends g unless it is zero or already present. Returns whether it was added.
    bool add(const Polynomial& g)
    {
        if (!same_table(g.vars(), vars_) || !(g.domain() == domain_))
            throw DomainMismatch("generator does not match the ideal's ring");
        if (g.is_zero()) return false;
        for (auto& h : gens_)
            if (h == g) return false;
        gens_.push_back(g);
        return true;
    }

    const std::vector<Polynomial>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    const VariableTablePtr& vars() const { return vars_; }
    const CoefficientDomain& domain() const { return domain_; }

private:
    VariableTablePtr vars_;
    CoefficientDomain domain_;
    std::vector<Polynomial> gens_;
};

enum class LiftDirection { GFromF, FFromG, TargetsFromF };

/// rows[i] holds the coefficients expressing target i in the source generators.
struct LiftMatrix {
    LiftDirection direction = LiftDirection::TargetsFromF;
    std::vector<std::vector<Polynomial>> rows;
};

/// Each row r satisfies sum_k r[k] * G[k] = 0.
struct SyzygyMatrix {
    std::vector<std::vector<Polynomial>> rows;
};

struct GroebnerStats {
    std::size_t pairs_considered = 0;
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t max_basis_size = 0;
    std::size_t max_coefficient_bits = 0;
};

/// Reduced lex Groebner basis, sorted by leading monomial descending. Over Q every element is monic.
struct GroebnerBasis {
    VariableTablePtr vars;
    CoefficientDomain domain = CoefficientDomain::rationals();
    std::vector<Polynomial> elements;
    std::vector<Polynomial> source;
    std::optional<LiftMatrix> z;  // elements = Z * source, present for tracked runs
    GroebnerStats stats;

    std::size_t size() const { return elements.size(); }
    bool is_unit() const { return elements.size() == 1 && elements.front().is_constant(); }
};

/// sum_k row[k] * gens[k]
inline Polynomial combine_row(const std::vector<Polynomial>& row, const std::vector<Polynomial>& gens,
                              const VariableTablePtr& vars, const CoefficientDomain& domain)
{
    if (row.size() != gens.size()) throw InternalError("row length does not match generator count");
    Polynomial acc(vars, domain);
    for (std::size_t k = 0; k < row.size(); ++k)
        if (!row[k].is_zero()) acc += row[k] * gens[k];
    return acc;
}

}  // namespace flatcert
