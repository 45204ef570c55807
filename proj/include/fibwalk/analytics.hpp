#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibwalk/continuant.hpp"
#include "fibwalk/derive.hpp"
#include "fibwalk/errors.hpp"
#include "fibwalk/oracle.hpp"
#include "fibwalk/results.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

namespace detail {

// One side of an arrival solve. For a side holding L states beyond the
// start, built on a coefficient set whose continuant offsets begin at m0:
//   head_ratio = A_{L-1}^{(m0+1)} / A_L^{(m0)}
//   ratios[j-1] = x_{start±j} / x_start
//              = prod_{t=m0-1}^{m0+j-2} (-mu_t) · A_{L-j}^{(m0+j)} / A_L^{(m0)}
// The product form keeps every factor positive, so propagation away from
// the start is free of the cancellation the two-term expansion suffers
// under drift.
struct ArrivalSide {
    double head_ratio = 0.0;
    std::vector<double> ratios;
};

inline ArrivalSide arrival_side(const CoefficientSet& c, int L, int m0) {
    const ScaledReal full = a_recurrence(L, m0, c);
    if (full.is_zero())
        throw degenerate_error(
            "arrival continuant vanished: product-form path unavailable");
    ArrivalSide s;
    s.head_ratio = ScaledReal::ratio(a_recurrence(L - 1, m0 + 1, c), full);
    ScaledReal prod = ScaledReal::from(1.0);
    s.ratios.reserve(static_cast<std::size_t>(L));
    for (int j = 1; j <= L; ++j) {
        prod = prod * ScaledReal::from(-c.mu.at(m0 + j - 2));
        s.ratios.push_back(
            ScaledReal::ratio(prod * a_recurrence(L - j, m0 + j, c), full));
    }
    return s;
}

// A state's expected time expressed linearly over the two unknown heads:
// value = a·m_{anchor±1} + b·m_anchor + d.
struct LinearTime {
    ScaledReal a, b, d;
};

// Reduces the whole right of the anchor to one linear constraint
//   m_{anchor+1} = e - r·m_anchor,
// propagating the three-term recurrence symbolically up to the exit
// condition: m_{N+1} = 0 past an open right end (p_N > 0), or the raw
// balance at N when the end is closed (p_N = 0).
inline std::pair<double, double> time_constraint_forward(const WalkSpec& w,
                                                         int anchor) {
    const int N = w.n();
    const CoefficientSet c = time_coeffs_forward(w, anchor);
    const bool open = w.p[static_cast<std::size_t>(N)] > 0.0;
    const int hi = open ? N : N - 1;
    LinearTime prev{ScaledReal{}, ScaledReal::from(1.0), ScaledReal{}};
    LinearTime cur{ScaledReal::from(1.0), ScaledReal{}, ScaledReal{}};
    for (int i = anchor + 1; i <= hi; ++i) {
        const ScaledReal om = ScaledReal::from(c.lam.at(i));
        const ScaledReal ph = ScaledReal::from(c.mu.at(i - 1));
        LinearTime next{om * cur.a + ph * prev.a, om * cur.b + ph * prev.b,
                        om * cur.d + ph * prev.d +
                            ScaledReal::from(c.inhom->at(i))};
        prev = cur;
        cur = next;
    }
    ScaledReal c1, c0, d;
    if (open) {
        c1 = cur.a;
        c0 = cur.b;
        d = -cur.d;
    } else {
        const ScaledReal rn = ScaledReal::from(1.0 - w.r[static_cast<std::size_t>(N)]);
        const ScaledReal qn = ScaledReal::from(w.q[static_cast<std::size_t>(N)]);
        c1 = rn * cur.a - qn * prev.a;
        c0 = rn * cur.b - qn * prev.b;
        d = ScaledReal::from(1.0 - w.s[static_cast<std::size_t>(N)]) -
            (rn * cur.d - qn * prev.d);
    }
    if (c1.is_zero())
        throw degenerate_error(
            "time boundary constraint degenerated on the right side");
    return {ScaledReal::ratio(c0, c1), ScaledReal::ratio(d, c1)};
}

// Mirror image on the left of the anchor:
//   m_{anchor-1} = e - r·m_anchor,
// with m_{-1} = 0 past an open left end (q_0 > 0) or the raw balance at 0
// when q_0 = 0.
inline std::pair<double, double> time_constraint_backward(const WalkSpec& w,
                                                          int anchor) {
    const CoefficientSet c = time_coeffs_backward(w, anchor);
    const bool open = w.q[0] > 0.0;
    const int lo_state = open ? 0 : 1;
    LinearTime prev{ScaledReal{}, ScaledReal::from(1.0), ScaledReal{}};
    LinearTime cur{ScaledReal::from(1.0), ScaledReal{}, ScaledReal{}};
    for (int i = anchor - 1; i >= lo_state; --i) {
        const ScaledReal et = ScaledReal::from(c.lam.at(-i));
        const ScaledReal ze = ScaledReal::from(c.mu.at(-(i + 1)));
        LinearTime next{et * cur.a + ze * prev.a, et * cur.b + ze * prev.b,
                        et * cur.d + ze * prev.d +
                            ScaledReal::from(c.inhom->at(-i))};
        prev = cur;
        cur = next;
    }
    ScaledReal c1, c0, d;
    if (open) {
        c1 = cur.a;
        c0 = cur.b;
        d = -cur.d;
    } else {
        const ScaledReal r0 = ScaledReal::from(1.0 - w.r[0]);
        const ScaledReal p0 = ScaledReal::from(w.p[0]);
        c1 = r0 * cur.a - p0 * prev.a;
        c0 = r0 * cur.b - p0 * prev.b;
        d = ScaledReal::from(1.0 - w.s[0]) - (r0 * cur.d - p0 * prev.d);
    }
    if (c1.is_zero())
        throw degenerate_error(
            "time boundary constraint degenerated on the left side");
    return {ScaledReal::ratio(c0, c1), ScaledReal::ratio(d, c1)};
}

inline ArrivalVector arrivals_product_form(const WalkSpec& w, int i0) {
    const int N = w.n();
    ArrivalVector out;
    out.start = i0;
    out.method = Method::Fibonacci;
    out.x.assign(static_cast<std::size_t>(N) + 1, 0.0);

    // Closed form for x at the start: the balance equation there, with each
    // neighbour eliminated through its side's continuant head ratio.
    double denom = 1.0 - w.r[static_cast<std::size_t>(i0)];
    std::optional<ArrivalSide> fwd, bwd;
    if (i0 < N) {
        const CoefficientSet cf = arrival_coeffs_forward(w, i0);
        fwd = arrival_side(cf, N - i0, i0 + 1);
        denom += w.q[static_cast<std::size_t>(i0) + 1] * cf.mu.at(i0) *
                 fwd->head_ratio;
    }
    if (i0 > 0) {
        const CoefficientSet cb = arrival_coeffs_backward(w, i0);
        bwd = arrival_side(cb, i0, 1 - i0);
        denom += w.p[static_cast<std::size_t>(i0) - 1] * cb.mu.at(-i0) *
                 bwd->head_ratio;
    }
    if (!std::isfinite(denom) || denom <= 0.0)
        throw degenerate_error(
            "arrival closed form denominator is not positive");
    const double x0 = 1.0 / denom;
    out.x[static_cast<std::size_t>(i0)] = x0;
    if (fwd)
        for (int j = 1; j <= N - i0; ++j)
            out.x[static_cast<std::size_t>(i0 + j)] =
                x0 * fwd->ratios[static_cast<std::size_t>(j - 1)];
    if (bwd)
        for (int j = 1; j <= i0; ++j)
            out.x[static_cast<std::size_t>(i0 - j)] =
                x0 * bwd->ratios[static_cast<std::size_t>(j - 1)];
    return out;
}

// Expected absorption time for a single state, from the two one-sided
// constraint reductions meeting at that state. Each side is reduced with
// scaled continuant ratios, so no long error-accumulating sweep is involved.
inline double time_at_state(const WalkSpec& w, int i) {
    const int N = w.n();
    const bool has_fwd = i < N;
    const bool has_bwd = i > 0;
    double rf = 0.0, ef = 0.0, rb = 0.0, eb = 0.0;
    if (has_fwd) std::tie(rf, ef) = time_constraint_forward(w, i);
    if (has_bwd) std::tie(rb, eb) = time_constraint_backward(w, i);

    const std::size_t a = static_cast<std::size_t>(i);
    const double pa = w.p[a], qa = w.q[a];
    const double denom =
        (1.0 - w.r[a]) + (has_fwd ? pa * rf : 0.0) + (has_bwd ? qa * rb : 0.0);
    if (!std::isfinite(denom) || denom <= 0.0)
        throw degenerate_error("anchored time solve has non-positive pivot");
    return ((1.0 - w.s[a]) + (has_fwd ? pa * ef : 0.0) +
            (has_bwd ? qa * eb : 0.0)) /
           denom;
}

inline TimeVector time_anchored(const WalkSpec& w, int anchor) {
    const int N = w.n();
    TimeVector out;
    out.anchor = anchor;
    out.method = Method::Fibonacci;
    out.m.assign(static_cast<std::size_t>(N) + 1, 0.0);
    // Every state gets its own anchored solve: quadratic in N, but each
    // value is produced without cancellation, so the vector is identical
    // no matter which state the caller asked to anchor at.
    for (int i = 0; i <= N; ++i)
        out.m[static_cast<std::size_t>(i)] = time_at_state(w, i);
    return out;
}

inline void check_state(const WalkSpec& w, int i, const char* role) {
    if (i < 0 || i > w.n())
        throw validation_error(std::string(role) + " " + std::to_string(i) +
                               " outside [0, " + std::to_string(w.n()) + "]");
}

}  // namespace detail

/// Expected number of arrivals in every state for a walk started at i0,
/// counting the initial occupancy (so x[i0] >= 1). The product-form path is
/// used when its divisibility requirements hold; Method::Auto silently
/// degrades to the direct solve and records why.
inline ArrivalVector expected_arrivals(const WalkSpec& spec, int i0,
                                       Method method = Method::Auto) {
    const WalkSpec w = validate(spec);
    detail::check_state(w, i0, "start state");
    if (!is_absorbing(w, i0))
        throw divergence_error(
            "walk started at " + std::to_string(i0) +
            " is not absorbed almost surely: arrival counts diverge");
    if (method == Method::Direct) return solve_arrivals_direct(w, i0);
    try {
        return detail::arrivals_product_form(w, i0);
    } catch (const degenerate_error& e) {
        if (method == Method::Fibonacci) throw;
        ArrivalVector out = solve_arrivals_direct(w, i0);
        out.fallback_reason = e.what();
        return out;
    }
}

/// P(the walk started at i ever stands in j at a positive time for i = j,
/// or ever reaches j at all for i != j).
inline double visit_probability(const WalkSpec& spec, int i, int j,
                                Method method = Method::Auto) {
    const WalkSpec w = validate(spec);
    detail::check_state(w, i, "state i");
    detail::check_state(w, j, "state j");
    if (i == j) {
        const double xii = expected_arrivals(w, i, method).x[static_cast<std::size_t>(i)];
        return 1.0 - 1.0 / xii;
    }
    const double xij = expected_arrivals(w, i, method).x[static_cast<std::size_t>(j)];
    const double xjj = expected_arrivals(w, j, method).x[static_cast<std::size_t>(j)];
    return xij / xjj;
}

/// Where the walk ends: in-place absorption per state plus the two
/// off-interval exits.
inline AbsorptionReport absorption_report(const WalkSpec& spec, int i0,
                                          Method method = Method::Auto) {
    const WalkSpec w = validate(spec);
    detail::check_state(w, i0, "start state");
    const ArrivalVector av = expected_arrivals(w, i0, method);
    AbsorptionReport rep;
    rep.g.resize(av.x.size());
    for (std::size_t j = 0; j < av.x.size(); ++j) {
        rep.g[j] = w.s[j] * av.x[j];
        rep.u += rep.g[j];
    }
    rep.leak_left = w.q[0] * av.x.front();
    rep.leak_right = w.p.back() * av.x.back();
    return rep;
}

/// Expected time before absorption from every state. The anchor selects
/// which state's closed form seeds the Fibonacci-path propagation; the
/// resulting vector is anchor-independent up to roundoff.
inline TimeVector expected_time(const WalkSpec& spec, int anchor,
                                Method method = Method::Auto) {
    const WalkSpec w = validate(spec);
    detail::check_state(w, anchor, "anchor state");
    if (!is_absorbing_everywhere(w))
        throw divergence_error(
            "some state is not absorbed almost surely: expected times diverge");
    if (method == Method::Direct) {
        TimeVector out = solve_time_direct(w);
        out.anchor = anchor;
        return out;
    }
    try {
        return detail::time_anchored(w, anchor);
    } catch (const degenerate_error& e) {
        if (method == Method::Fibonacci) throw;
        TimeVector out = solve_time_direct(w);
        out.anchor = anchor;
        out.fallback_reason = e.what();
        return out;
    }
}

}  // namespace fibwalk
