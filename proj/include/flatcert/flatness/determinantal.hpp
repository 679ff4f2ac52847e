#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flatcert/groebner/ideal.hpp"

namespace flatcert {

/// J(s, n) on the upper triangle of a generic symmetric n x n matrix.
struct DeterminantalIdealSpec {
    unsigned s = 2;
    unsigned n = 4;

    DeterminantalIdealSpec() = default;
    DeterminantalIdealSpec(unsigned s_, unsigned n_) : s(s_), n(n_)
    {
        // s = n is accepted as the degenerate case without minors
        if (s < 1 || n < 2 || s > n) throw PreconditionViolation("J(s,n) needs 1 <= s <= n and n >= 2");
        if (n > 9) throw PreconditionViolation("n > 9 is not supported");
    }
    std::string name() const { return "J(" + std::to_string(s) + "," + std::to_string(n) + ")"; }
    VariableTablePtr table() const { return VariableTable::symmetric(n); }
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// The symmetric matrix X with X[i][j] = x_{min(i,j)+1, max(i,j)+1}.
inline PolyMatrix symmetric_matrix(const VariableTablePtr& vars, unsigned n)
{
    PolyMatrix X(n, std::vector<Polynomial>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            X[i][j] = Polynomial::variable(vars, CoefficientDomain::rationals(),
                                           *vars->lookup(VariableTable::symmetric_name(i + 1, j + 1)));
    return X;
}

/// Determinant by Laplace expansion along the first row (fine for the small sizes used here).
inline Polynomial determinant(const PolyMatrix& M)
{
    const std::size_t k = M.size();
    if (k == 1) return M[0][0];
    if (k == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
    Polynomial acc(M[0][0].vars(), M[0][0].domain());
    for (std::size_t c = 0; c < k; ++c) {
        PolyMatrix sub;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) row.push_back(M[r][cc]);
            sub.push_back(std::move(row));
        }
        Polynomial term = M[0][c] * determinant(sub);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

inline Polynomial minor(const PolyMatrix& X, const std::vector<unsigned>& rows, const std::vector<unsigned>& cols)
{
    PolyMatrix M;
    for (unsigned r : rows) {
        std::vector<Polynomial> row;
        for (unsigned c : cols) row.push_back(X[r][c]);
        M.push_back(std::move(row));
    }
    return determinant(M);
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Trace, entries of X^2, all (s+1)-minors and, for s >= 3, the elementary symmetric
/// functions sigma_2..sigma_s of the eigenvalues. Duplicates are dropped.
inline IdealPresentation build_J(const DeterminantalIdealSpec& spec)
{
    auto vars = spec.table();
    const auto Q = CoefficientDomain::rationals();
    auto X = symmetric_matrix(vars, spec.n);
    IdealPresentation I(vars, Q);
    Polynomial trace(vars, Q);
    for (unsigned i = 0; i < spec.n; ++i) trace += X[i][i];
    I.add(trace);
    for (unsigned i = 0; i < spec.n; ++i)
        for (unsigned j = 0; j < spec.n; ++j) {
            Polynomial e(vars, Q);
            for (unsigned k = 0; k < spec.n; ++k) e += X[i][k] * X[k][j];
            I.add(e);
        }
    for (auto& rows : subsets(spec.n, spec.s + 1))
        for (auto& cols : subsets(spec.n, spec.s + 1)) I.add(minor(X, rows, cols));
    if (spec.s >= 3)
        for (unsigned k = 2; k <= spec.s; ++k) {
            Polynomial sigma(vars, Q);
            for (auto& idx : subsets(spec.n, k)) sigma += minor(X, idx, idx);
            I.add(sigma);
        }
    return I;
}

}  // namespace flatcert
