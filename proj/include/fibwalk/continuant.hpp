#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibwalk/coefficients.hpp"
#include "fibwalk/errors.hpp"
#include "fibwalk/fibonacci.hpp"
#include "fibwalk/scaled_real.hpp"

namespace fibwalk {

// The explicit sum-of-products expansion of order i enumerates f_i column
// products; beyond this order only the recurrence path is offered.
inline constexpr int kExplicitOrderCap = 20;

/// Symbolic cell of the product table: a lambda entry, a mu entry, or a unit.
struct TauCell {
    enum Kind { Lam, Mu, Unit };
    Kind kind = Unit;
    int offset = 0;

    bool operator==(const TauCell&) const = default;

    std::string label() const {
        switch (kind) {
            case Lam: return "\xce\xbb_" + std::to_string(offset);
            case Mu: return "\xce\xbc_" + std::to_string(offset);
            default: return "1";
        }
    }
};

/// Cell at row i, column j of the shifted product table. Columns beyond
/// f_{i+1} reduce to an earlier column first.
inline TauCell tau_cell(int i, std::uint64_t j, int m) {
    if (i < 1 || j < 1) throw error("tau_cell: row and column must be positive");
    const std::uint64_t jr = reduce_column(j, i);
    if (jr <= fibonacci(i - 1)) return {TauCell::Lam, m + i - 1};
    if (jr <= fibonacci(i)) return {TauCell::Mu, m + i - 2};
    return {TauCell::Unit, 0};
}

/// Numeric value of the table cell under the given coefficients.
inline double tau(int i, std::uint64_t j, int m, const CoefficientSet& coeffs) {
    const TauCell cell = tau_cell(i, j, m);
    switch (cell.kind) {
        case TauCell::Lam: return coeffs.lam.at(cell.offset);
        case TauCell::Mu: return coeffs.mu.at(cell.offset);
        default: return 1.0;
    }
}

/// Rectangular symbol table of a given order: rows 1..n, columns 1..f_n.
class TauTable {
public:
    static TauTable banded(int n, int m = 0) {
        if (n < 0) throw error("TauTable: negative order");
        TauTable t;
        t.order_ = n;
        if (n == 0) {
            t.cells_ = {{TauCell{}}};
            return t;
        }
        const std::uint64_t cols = fibonacci(n);
        t.cells_.resize(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            auto& row = t.cells_[static_cast<std::size_t>(i - 1)];
            row.reserve(cols);
            for (std::uint64_t j = 1; j <= cols; ++j)
                row.push_back(tau_cell(i, j, m));
        }
        return t;
    }

    int order() const { return order_; }
    int rows() const { return static_cast<int>(cells_.size()); }
    std::uint64_t cols() const { return cells_.empty() ? 0 : cells_[0].size(); }

    const TauCell& cell(int i, std::uint64_t j) const {
        return cells_[static_cast<std::size_t>(i - 1)]
                     [static_cast<std::size_t>(j - 1)];
    }

private:
    int order_ = 0;
    std::vector<std::vector<TauCell>> cells_;
};

/// Sum of column products over the order-i table; the desk-scale oracle for
/// the recurrence evaluator. a_explicit(0) = 1 (empty product).
inline double a_explicit(int i, int m, const CoefficientSet& coeffs) {
    if (i < 0) throw error("a_explicit: negative order");
    if (i > kExplicitOrderCap)
        throw capacity_error("a_explicit: order " + std::to_string(i) +
                             " exceeds the explicit cap of " +
                             std::to_string(kExplicitOrderCap));
    if (i == 0) return 1.0;
    const std::uint64_t cols = fibonacci(i);
    double sum = 0.0;
    for (std::uint64_t j = 1; j <= cols; ++j) {
        double prod = 1.0;
        for (int k = 1; k <= i; ++k) prod *= tau(k, j, m, coeffs);
        sum += prod;
    }
    return sum;
}

/// A_i^(m) by forward iteration of x_{k+1} = lam[m+k] x_k + mu[m+k-1] x_{k-1}
/// with x_0 = 1, x_1 = lam[m]. A_{-1} = 0 by convention.
inline ScaledReal a_recurrence(int i, int m, const CoefficientSet& coeffs) {
    if (i < -1) throw error("a_recurrence: order below -1");
    if (i == -1) return ScaledReal{};
    ScaledReal prev = ScaledReal::from(1.0);
    if (i == 0) return prev;
    ScaledReal cur = ScaledReal::from(coeffs.lam.at(m));
    for (int k = 1; k < i; ++k) {
        ScaledReal next = ScaledReal::from(coeffs.lam.at(m + k)) * cur +
                          ScaledReal::from(coeffs.mu.at(m + k - 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// General solution value of the inhomogeneous recurrence anchored by two
/// head values:
///   head1 * A_i^(m) + head0 * mu[m-1] * A_{i-1}^(m+1)
///     + sum_{n=1}^{i} A_{i-n}^(m+n) * inhom[m+n-1].
inline ScaledReal a_inhomogeneous(int i, int m, const CoefficientSet& coeffs,
                                  double head0, double head1) {
    if (i < 0) throw error("a_inhomogeneous: negative order");
    if (!coeffs.inhom)
        throw error("a_inhomogeneous: coefficient set has no source term");
    ScaledReal r = ScaledReal::from(head1) * a_recurrence(i, m, coeffs);
    if (i >= 1 && head0 != 0.0)
        r = r + ScaledReal::from(head0) * ScaledReal::from(coeffs.mu.at(m - 1)) *
                    a_recurrence(i - 1, m + 1, coeffs);
    for (int n = 1; n <= i; ++n)
        r = r + a_recurrence(i - n, m + n, coeffs) *
                    ScaledReal::from(coeffs.inhom->at(m + n - 1));
    return r;
}

/// Incremental evaluator for the triple (A_k^(m), A_{k-1}^(m+1), S_k) where
/// S_k is the particular solution driven by the source sequence:
///   S_0 = 0, S_1 = inhom[m], S_{k} = lam[m+k-1] S_{k-1} + mu[m+k-2] S_{k-2}
///                                    + inhom[m+k-1].
/// One step() advances k by one; all three share the same coefficients.
class InhomPass {
public:
    InhomPass(int m, const CoefficientSet& coeffs) : m_(m), coeffs_(&coeffs) {}

    int k() const { return k_; }
    const ScaledReal& homogeneous() const { return a_; }        // A_k^(m)
    const ScaledReal& homogeneous_prev_shift() const { return b_; }  // A_{k-1}^(m+1)
    const ScaledReal& particular() const { return s_; }         // S_k

    void step() {
        const int k = k_;
        if (k == 0) {
            a_ = ScaledReal::from(coeffs_->lam.at(m_));
            a_prev_ = ScaledReal::from(1.0);
            b_ = ScaledReal::from(1.0);  // A_0^(m+1)
            b_prev_ = ScaledReal{};      // A_{-1}^(m+1)
            if (coeffs_->inhom) s_ = ScaledReal::from(coeffs_->inhom->at(m_));
            s_prev_ = ScaledReal{};
        } else {
            const ScaledReal lam = ScaledReal::from(coeffs_->lam.at(m_ + k));
            const ScaledReal mu = ScaledReal::from(coeffs_->mu.at(m_ + k - 1));
            advance(a_, a_prev_, lam, mu, ScaledReal{});
            advance(b_, b_prev_, lam, mu, ScaledReal{});
            ScaledReal src;
            if (coeffs_->inhom) src = ScaledReal::from(coeffs_->inhom->at(m_ + k));
            advance(s_, s_prev_, lam, mu, src);
        }
        ++k_;
    }

private:
    static void advance(ScaledReal& cur, ScaledReal& prev, const ScaledReal& lam,
                        const ScaledReal& mu, const ScaledReal& src) {
        ScaledReal next = lam * cur + mu * prev + src;
        prev = cur;
        cur = next;
    }

    int m_;
    const CoefficientSet* coeffs_;
    int k_ = 0;
    // State at index k: A_k, A_{k-1}; B_k = A_{k-1}^(m+1), B_{k-1}; S_k, S_{k-1}.
    ScaledReal a_ = ScaledReal::from(1.0), a_prev_;  // A_0 = 1, A_{-1} = 0
    ScaledReal b_, b_prev_;                          // B_0 = A_{-1}^(m+1) = 0
    ScaledReal s_, s_prev_;
};

}  // namespace fibwalk
