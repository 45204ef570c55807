#pragma once

#include <string>

#include "fibwalk/coefficients.hpp"
#include "fibwalk/errors.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

namespace detail {

inline double guarded_div(double num, double den, const char* den_name,
                          int den_index) {
    if (den == 0.0)
        throw degenerate_error(std::string(den_name) + "[" +
                               std::to_string(den_index) +
                               "] = 0: product-form path unavailable");
    return num / den;
}

}  // namespace detail

/// Forward arrival coefficients for a walk started at i0:
///   lam[j] = (1 - r_j) / q_{j+1}   on [i0, N]   (q_{N+1} is the ghost)
///   mu[j]  = -p_j / q_{j+2}        on [i0, N-1]
inline CoefficientSet arrival_coeffs_forward(const WalkSpec& w, int i0) {
    const int N = w.n();
    CoefficientSet c;
    c.lam = OffsetSeq::build("lambda", i0, N, [&](int j) {
        return detail::guarded_div(1.0 - w.r[static_cast<std::size_t>(j)],
                                   w.q_at(j + 1), "q", j + 1);
    });
    c.mu = OffsetSeq::build("mu", i0, N - 1, [&](int j) {
        return detail::guarded_div(-w.p[static_cast<std::size_t>(j)],
                                   w.q_at(j + 2), "q", j + 2);
    });
    return c;
}

/// Backward arrival coefficients (rho/theta roles, negated offsets):
///   rho[j]   = (1 - r_{-j}) / p_{-j-1}   on [1-i0, 0]   (p_{-1} is the ghost)
///   theta[j] = -q_{-j} / p_{-j-2}        on [-i0, -1]
inline CoefficientSet arrival_coeffs_backward(const WalkSpec& w, int i0) {
    CoefficientSet c;
    c.lam = OffsetSeq::build("rho", 1 - i0, 0, [&](int j) {
        return detail::guarded_div(1.0 - w.r[static_cast<std::size_t>(-j)],
                                   w.p_at(-j - 1), "p", -j - 1);
    });
    c.mu = OffsetSeq::build("theta", -i0, -1, [&](int j) {
        return detail::guarded_div(-w.q[static_cast<std::size_t>(-j)],
                                   w.p_at(-j - 2), "p", -j - 2);
    });
    return c;
}

/// Forward absorption-time coefficients around an anchor:
///   omega[j] = (1 - r_j) / p_j
///   phi[j]   = -q_{j+1} / p_{j+1}
///   alpha[j] = -(1 - s_j) / p_j
/// Ranges stop at N-1 when p_N = 0 (closed right end); the anchor's own
/// omega/alpha are only derived for anchor 0.
inline CoefficientSet time_coeffs_forward(const WalkSpec& w, int anchor) {
    const int N = w.n();
    const int hi = (w.p[static_cast<std::size_t>(N)] > 0.0) ? N : N - 1;
    const int lo = (anchor == 0) ? 0 : anchor + 1;
    CoefficientSet c;
    c.lam = OffsetSeq::build("omega", lo, hi, [&](int j) {
        return detail::guarded_div(1.0 - w.r[static_cast<std::size_t>(j)],
                                   w.p[static_cast<std::size_t>(j)], "p", j);
    });
    c.mu = OffsetSeq::build("phi", anchor, hi - 1, [&](int j) {
        return detail::guarded_div(-w.q[static_cast<std::size_t>(j + 1)],
                                   w.p[static_cast<std::size_t>(j + 1)], "p",
                                   j + 1);
    });
    c.inhom = OffsetSeq::build("alpha", lo, hi, [&](int j) {
        return detail::guarded_div(-(1.0 - w.s[static_cast<std::size_t>(j)]),
                                   w.p[static_cast<std::size_t>(j)], "p", j);
    });
    return c;
}

/// Backward absorption-time coefficients (eta/zeta/beta roles):
///   eta[j]  = (1 - r_{-j}) / q_{-j}
///   zeta[j] = -p_{-j-1} / q_{-j-1}
///   beta[j] = -(1 - s_{-j}) / q_{-j}
/// Ranges stop short of state 0 when q_0 = 0 (closed left end).
inline CoefficientSet time_coeffs_backward(const WalkSpec& w, int anchor) {
    const int lo_state = (w.q[0] > 0.0) ? 0 : 1;  // deepest reachable equation
    const int hi = -lo_state;                     // offsets are negated states
    const int lo = 1 - anchor;
    CoefficientSet c;
    c.lam = OffsetSeq::build("eta", lo, hi, [&](int j) {
        return detail::guarded_div(1.0 - w.r[static_cast<std::size_t>(-j)],
                                   w.q[static_cast<std::size_t>(-j)], "q", -j);
    });
    c.mu = OffsetSeq::build("zeta", -anchor, hi - 1, [&](int j) {
        return detail::guarded_div(-w.p[static_cast<std::size_t>(-j - 1)],
                                   w.q[static_cast<std::size_t>(-j - 1)], "q",
                                   -j - 1);
    });
    c.inhom = OffsetSeq::build("beta", lo, hi, [&](int j) {
        return detail::guarded_div(-(1.0 - w.s[static_cast<std::size_t>(-j)]),
                                   w.q[static_cast<std::size_t>(-j)], "q", -j);
    });
    return c;
}

}  // namespace fibwalk
