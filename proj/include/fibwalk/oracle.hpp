#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fibwalk/errors.hpp"
#include "fibwalk/results.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

inline constexpr double kPivotFloor = 1e-13;

namespace detail {

// One-pass elimination for a tridiagonal system; no pivoting, the systems
// here are column diagonally dominant for absorbing specs. Breakdown is
// reported instead of masked.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& sup,
                                             std::vector<double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> d = diag;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(d[i - 1]) < kPivotFloor)
            throw singular_error("tridiagonal pivot below 1e-13 at state " +
                                 std::to_string(i - 1) +
                                 ": walk is not absorbed almost surely");
        const double w = sub[i] / d[i - 1];
        d[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(d[n - 1]) < kPivotFloor)
        throw singular_error("tridiagonal pivot below 1e-13 at state " +
                             std::to_string(n - 1) +
                             ": walk is not absorbed almost surely");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - sup[i] * x[i + 1]) / d[i];
    return x;
}

}  // namespace detail

/// Direct solve of the arrival balance system
///   (1 - r_n) x_n - p_{n-1} x_{n-1} - q_{n+1} x_{n+1} = delta(n, i0)
/// with x_{-1} = x_{N+1} = 0.
inline ArrivalVector solve_arrivals_direct(const WalkSpec& w, int i0) {
    const int N = w.n();
    const std::size_t len = static_cast<std::size_t>(N + 1);
    std::vector<double> sub(len, 0.0), diag(len), sup(len, 0.0), rhs(len, 0.0);
    for (int i = 0; i <= N; ++i) {
        const std::size_t n = static_cast<std::size_t>(i);
        diag[n] = 1.0 - w.r[n];
        if (i > 0) sub[n] = -w.p[n - 1];
        if (i < N) sup[n] = -w.q[n + 1];
    }
    rhs[static_cast<std::size_t>(i0)] = 1.0;
    ArrivalVector out;
    out.start = i0;
    out.x = detail::solve_tridiagonal(sub, diag, sup, std::move(rhs));
    out.method = Method::Direct;
    return out;
}

/// Direct solve of the absorption-time balance system
///   (1 - r_i) m_i - p_i m_{i+1} - q_i m_{i-1} = 1 - s_i
/// with m_{-1} = m_{N+1} = 0.
inline TimeVector solve_time_direct(const WalkSpec& w) {
    const int N = w.n();
    const std::size_t len = static_cast<std::size_t>(N + 1);
    std::vector<double> sub(len, 0.0), diag(len), sup(len, 0.0), rhs(len);
    for (int i = 0; i <= N; ++i) {
        const std::size_t n = static_cast<std::size_t>(i);
        diag[n] = 1.0 - w.r[n];
        if (i > 0) sub[n] = -w.q[n];
        if (i < N) sup[n] = -w.p[n];
        rhs[n] = 1.0 - w.s[n];
    }
    TimeVector out;
    out.m = detail::solve_tridiagonal(sub, diag, sup, std::move(rhs));
    out.method = Method::Direct;
    out.anchor = w.start;
    return out;
}

namespace detail {

/// States from which some absorption event (s_i > 0, or a leak edge at
/// either boundary) is reachable under positive-probability moves.
inline std::vector<bool> absorption_capable(const WalkSpec& w) {
    const int N = w.n();
    std::vector<bool> good(static_cast<std::size_t>(N + 1), false);
    for (int i = 0; i <= N; ++i)
        good[static_cast<std::size_t>(i)] = w.s[static_cast<std::size_t>(i)] > 0.0;
    if (w.q[0] > 0.0) good[0] = true;
    if (w.p[static_cast<std::size_t>(N)] > 0.0) good[static_cast<std::size_t>(N)] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i <= N; ++i) {
            const std::size_t n = static_cast<std::size_t>(i);
            if (good[n]) continue;
            if ((i < N && w.p[n] > 0.0 && good[n + 1]) ||
                (i > 0 && w.q[n] > 0.0 && good[n - 1])) {
                good[n] = true;
                changed = true;
            }
        }
    }
    return good;
}

}  // namespace detail

/// True iff from every state reachable from i0, some absorption event is
/// reachable.
inline bool is_absorbing(const WalkSpec& w, int i0) {
    const int N = w.n();
    const auto good = detail::absorption_capable(w);
    std::vector<bool> seen(static_cast<std::size_t>(N + 1), false);
    std::vector<int> stack{i0};
    seen[static_cast<std::size_t>(i0)] = true;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        if (!good[static_cast<std::size_t>(i)]) return false;
        const std::size_t n = static_cast<std::size_t>(i);
        if (i < N && w.p[n] > 0.0 && !seen[n + 1]) {
            seen[n + 1] = true;
            stack.push_back(i + 1);
        }
        if (i > 0 && w.q[n] > 0.0 && !seen[n - 1]) {
            seen[n - 1] = true;
            stack.push_back(i - 1);
        }
    }
    return true;
}

/// True iff the walk is absorbed almost surely from every state.
inline bool is_absorbing_everywhere(const WalkSpec& w) {
    const auto good = detail::absorption_capable(w);
    for (bool g : good)
        if (!g) return false;
    return true;
}

}  // namespace fibwalk
