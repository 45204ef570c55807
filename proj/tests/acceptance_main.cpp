// Acceptance gate: twelve self-contained checks over frozen fixtures and
// property corpora. Prints one PASS/FAIL line per check and exits non-zero
// if any fail. Each check also carries a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "fibwalk/fibwalk.hpp"

using namespace fibwalk;

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double rel(double got, double want) {
    const double scale = std::max(1.0, std::abs(want));
    return std::abs(got - want) / scale;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i)
        v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
    return v;
}

WalkSpec uniform_interior(double p, double q, int n) {
    WalkSpec w;
    w.p.assign(static_cast<std::size_t>(n) + 1, p);
    w.q.assign(static_cast<std::size_t>(n) + 1, q);
    w.r.assign(static_cast<std::size_t>(n) + 1, 0.0);
    w.s.assign(static_cast<std::size_t>(n) + 1, 1.0 - p - q);
    w.q[0] = 0.0;
    w.s[0] = 1.0 - p;
    w.p[static_cast<std::size_t>(n)] = 0.0;
    w.s[static_cast<std::size_t>(n)] = 1.0 - q;
    return w;
}

WalkSpec gamblers_ruin(int n) {
    WalkSpec w;
    w.p.assign(static_cast<std::size_t>(n) + 1, 0.5);
    w.q.assign(static_cast<std::size_t>(n) + 1, 0.5);
    w.r.assign(static_cast<std::size_t>(n) + 1, 0.0);
    w.s.assign(static_cast<std::size_t>(n) + 1, 0.0);
    w.p[0] = w.q[0] = 0.0;
    w.s[0] = 1.0;
    const std::size_t sn = static_cast<std::size_t>(n);
    w.p[sn] = w.q[sn] = 0.0;
    w.s[sn] = 1.0;
    return w;
}

struct Check {
    std::string name;
    double budget_ms;
    std::function<bool(std::string&)> body;
};

// --- individual checks -----------------------------------------------------

bool check_fixture(std::string& note) {
    const WalkSpec w = testutil::fixture4();
    const std::vector<double> want_x = {1.6, 1.2, 0.8, 0.4};
    const std::vector<double> want_g = {0.8, 0.0, 0.0, 0.2};
    const std::vector<double> want_m = {3.0, 5.0, 5.0, 3.0};
    double worst = 0.0;
    for (Method meth : {Method::Fibonacci, Method::Direct}) {
        const ArrivalVector av = expected_arrivals(w, 0, meth);
        const TimeVector tv = expected_time(w, 0, meth);
        for (std::size_t j = 0; j < 4; ++j) {
            worst = std::max(worst, rel(av.x[j], want_x[j]));
            worst = std::max(worst, rel(tv.m[j], want_m[j]));
        }
    }
    const AbsorptionReport rep = absorption_report(w, 0);
    for (std::size_t j = 0; j < 4; ++j)
        worst = std::max(worst, rel(rep.g[j], want_g[j]));
    worst = std::max(worst, rel(rep.u, 1.0));
    note = "max rel dev " + sci(worst);
    return worst <= 1e-12;
}

bool check_four_state_closed_form(std::string& note) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> pq(0.05, 0.45);
    std::uniform_real_distribution<double> rd(0.0, 0.1);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        WalkSpec w;
        for (int i = 0; i < 4; ++i) {
            const double p = pq(rng), q = pq(rng), r = rd(rng);
            w.p.push_back(p);
            w.q.push_back(q);
            w.r.push_back(r);
            w.s.push_back(1.0 - p - q - r);
        }
        const auto c = [&](int i) { return 1.0 - w.r[static_cast<std::size_t>(i)]; };
        const auto P = [&](int i) { return w.p[static_cast<std::size_t>(i)]; };
        const auto Q = [&](int i) { return w.q[static_cast<std::size_t>(i)]; };
        const double num =
            c(1) * c(2) * c(3) - P(1) * Q(2) * c(3) - c(1) * P(2) * Q(3);
        const double den =
            c(0) * c(1) * c(2) * c(3) - P(0) * Q(1) * c(2) * c(3) -
            c(0) * P(1) * Q(2) * c(3) - c(0) * c(1) * P(2) * Q(3) +
            P(0) * Q(1) * P(2) * Q(3);
        const double x0 = expected_arrivals(w, 0, Method::Fibonacci).x[0];
        worst = std::max(worst, rel(x0, num / den));
    }
    note = "100 specs, max rel dev " + sci(worst);
    return worst <= 1e-12;
}

bool check_binomial_identity(std::string& note) {
    double worst = 0.0;
    for (const auto& [p, q] : {std::pair{0.4, 0.4}, std::pair{0.5, 0.5}}) {
        for (int n = 1; n <= 8; ++n) {
            const WalkSpec w = uniform_interior(p, q, n);
            double num = 0.0, den = 0.0;
            for (int k = 0; 2 * k <= n; ++k)
                num += binom(n - k, k) * std::pow(-p * q, k);
            for (int k = 0; 2 * k <= n + 1; ++k)
                den += binom(n + 1 - k, k) * std::pow(-p * q, k);
            const double want = num / den;
            worst = std::max(
                worst, rel(expected_arrivals(w, 0, Method::Fibonacci).x[0], want));
            worst = std::max(
                worst, rel(expected_arrivals(w, 0, Method::Direct).x[0], want));
        }
    }
    // Shifted-binomial variant of the same formula, evaluated alongside:
    // at n = 3, p = q = 1/2 it gives 1, while the true value is 8/5.
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= 2; ++k) num += binom(4, k) * std::pow(-0.25, k);
    for (int k = 0; k <= 2; ++k) den += binom(5, k) * std::pow(-0.25, k);
    const double true_x0 = expected_arrivals(uniform_interior(0.5, 0.5, 3), 0).x[0];
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "max rel dev %.3g; shifted-binomial variant gives %.6g vs "
                  "true %.6g at n=3",
                  worst, num / den, true_x0);
    note = buf;
    return worst <= 1e-12 && rel(num / den, 1.0) <= 1e-12 &&
           rel(true_x0, 1.6) <= 1e-12;
}

bool check_partial_barrier(std::string& note) {
    bool exact = true;
    double worst_z = 0.0;
    for (double p : {0.35, 0.5, 0.6}) {
        const double q = 1.0 - p;
        const WalkSpec w = uniform_interior(p, q, 6);
        const AbsorptionReport rep = absorption_report(w, 0);
        const double x0 = expected_arrivals(w, 0).x[0];
        exact = exact && rep.g[0] == q * x0;  // s_0 = 1 - p = q exactly

        const std::uint64_t trials = 1000000;
        const SimulationResult sim = simulate(w, 0, trials, 7);
        const double ghat =
            static_cast<double>(sim.absorb_counts[0]) / static_cast<double>(trials);
        const double sigma =
            std::sqrt(rep.g[0] * (1.0 - rep.g[0]) / static_cast<double>(trials));
        worst_z = std::max(worst_z, std::abs(ghat - rep.g[0]) / sigma);
    }
    note = std::string("boundary identity ") + (exact ? "exact" : "BROKEN") +
           ", worst sim z " + sci(worst_z);
    return exact && worst_z <= 4.0;
}

bool check_explicit_vs_recurrence(std::string& note) {
    std::mt19937_64 rng(103);
    double worst = 0.0;
    bool counts_ok = true;
    for (int rep = 0; rep < 40; ++rep) {
        const CoefficientSet c = testutil::random_coeffs(rng, -12, 26);
        for (int i = 0; i <= 14; ++i)
            for (int m = -10; m <= 10; ++m) {
                const double e = a_explicit(i, m, c);
                const double r = a_recurrence(i, m, c).to_double();
                worst = std::max(worst, rel(e, r));
            }
    }
    // All-ones coefficients make every expansion term equal 1, so the value
    // counts the terms; the count must follow the f_0 = f_1 = 1 convention.
    CoefficientSet ones;
    ones.lam = OffsetSeq::build("lam", -12, 26, [](int) { return 1.0; });
    ones.mu = OffsetSeq::build("mu", -12, 26, [](int) { return 1.0; });
    double fprev = 1.0, fcur = 1.0;
    for (int i = 1; i <= 14; ++i) {
        const double terms = a_explicit(i, 0, ones);
        counts_ok = counts_ok && terms == fcur;
        const double fnext = fcur + fprev;
        fprev = fcur;
        fcur = fnext;
    }
    note = "max rel dev " + sci(worst) +
           (counts_ok ? ", term counts Fibonacci" : ", TERM COUNTS WRONG");
    return worst <= 1e-10 && counts_ok;
}

bool check_shift_identity(std::string& note) {
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
        const CoefficientSet c = testutil::random_coeffs(rng, -5, 40);
        for (int n = 0; n <= 30; ++n) {
            const ScaledReal lhs = a_recurrence(n + 1, 0, c);
            const ScaledReal rhs =
                ScaledReal::from(c.lam.at(0)) * a_recurrence(n, 1, c) +
                ScaledReal::from(c.mu.at(0)) * a_recurrence(n - 1, 2, c);
            if (lhs.is_zero() && rhs.is_zero()) continue;
            worst = std::max(worst, std::abs(ScaledReal::ratio(rhs, lhs) - 1.0));
        }
    }
    note = "max rel dev " + sci(worst);
    return worst <= 1e-12;
}

std::vector<WalkSpec> corpus200() {
    std::mt19937_64 rng(105);
    std::vector<WalkSpec> out;
    out.reserve(200);
    for (int i = 0; i < 200; ++i) out.push_back(testutil::random_spec(rng, 40));
    return out;
}

bool check_method_equivalence(std::string& note) {
    double worst = 0.0;
    for (const WalkSpec& w : corpus200()) {
        const int i0 = w.start;
        const ArrivalVector xf = expected_arrivals(w, i0, Method::Fibonacci);
        const ArrivalVector xd = expected_arrivals(w, i0, Method::Direct);
        const TimeVector mf = expected_time(w, i0, Method::Fibonacci);
        const TimeVector md = expected_time(w, i0, Method::Direct);
        for (std::size_t j = 0; j < xf.x.size(); ++j) {
            worst = std::max(worst, rel(xf.x[j], xd.x[j]));
            worst = std::max(worst, rel(mf.m[j], md.m[j]));
        }
    }
    note = "200 specs, max rel dev " + sci(worst);
    return worst <= 1e-8;
}

bool check_ghost_invariance(std::string& note) {
    std::mt19937_64 rng(106);
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const WalkSpec base = testutil::random_spec(rng, 20);
        const ArrivalVector x0 = expected_arrivals(base, base.start, Method::Fibonacci);
        const TimeVector m0 = expected_time(base, base.start, Method::Fibonacci);
        for (double gl : {0.1, 0.5, 1.0})
            for (double gr : {0.1, 0.5, 1.0}) {
                WalkSpec w = base;
                w.ghost_left = gl;
                w.ghost_right = gr;
                const ArrivalVector x = expected_arrivals(w, w.start, Method::Fibonacci);
                const TimeVector m = expected_time(w, w.start, Method::Fibonacci);
                for (std::size_t j = 0; j < x.x.size(); ++j) {
                    worst = std::max(worst, rel(x.x[j], x0.x[j]));
                    worst = std::max(worst, rel(m.m[j], m0.m[j]));
                }
            }
    }
    note = "max rel dev " + sci(worst);
    return worst <= 1e-12;
}

bool check_conservation(std::string& note) {
    double worst = 0.0;
    for (const WalkSpec& w : corpus200()) {
        const int i0 = w.start;
        const AbsorptionReport rep = absorption_report(w, i0);
        double total = rep.leak_left + rep.leak_right;
        for (double gj : rep.g) total += gj;
        worst = std::max(worst, std::abs(total - 1.0));

        const ArrivalVector av = expected_arrivals(w, i0);
        const TimeVector tv = expected_time(w, i0);
        double t = 0.0;
        for (std::size_t j = 0; j < av.x.size(); ++j)
            t += av.x[j] * (1.0 - w.s[j]);
        worst = std::max(worst, rel(t, tv.m[static_cast<std::size_t>(i0)]));
    }
    note = "200 specs, max dev " + sci(worst);
    return worst <= 1e-10;
}

bool check_gamblers_ruin(std::string& note) {
    double worst = 0.0;
    for (int n : {4, 10, 25}) {
        const WalkSpec w = gamblers_ruin(n);
        for (int i0 = 1; i0 < n; ++i0) {
            const AbsorptionReport rep = absorption_report(w, i0, Method::Direct);
            const TimeVector tv = expected_time(w, i0, Method::Direct);
            const double want_g0 = static_cast<double>(n - i0) / n;
            const double want_m = static_cast<double>(i0) * (n - i0);
            worst = std::max(worst, rel(rep.g[0], want_g0));
            worst = std::max(
                worst, rel(tv.m[static_cast<std::size_t>(i0)], want_m));
        }
    }
    note = "max rel dev " + sci(worst);
    return worst <= 1e-10;
}

bool check_simulator(std::string& note) {
    const std::uint64_t trials = 1000000;
    double worst_z = 0.0;
    bool identical = true;

    const auto zcheck = [&](const WalkSpec& w, int i0, std::uint64_t seed) {
        const SimulationResult ref = simulate(w, i0, trials, seed, 1000000, 1);
        for (unsigned workers : {4u, 16u}) {
            const SimulationResult alt = simulate(w, i0, trials, seed, 1000000, workers);
            identical = identical && alt.absorb_counts == ref.absorb_counts &&
                        alt.exit_left == ref.exit_left &&
                        alt.exit_right == ref.exit_right &&
                        alt.truncated == ref.truncated &&
                        alt.mean_steps == ref.mean_steps &&
                        alt.stderr_steps == ref.stderr_steps &&
                        alt.visit_means == ref.visit_means;
        }
        const AbsorptionReport rep = absorption_report(w, i0);
        const TimeVector tv = expected_time(w, i0);
        const double td = static_cast<double>(trials);
        for (std::size_t j = 0; j < rep.g.size(); ++j) {
            const double sigma = std::sqrt(rep.g[j] * (1.0 - rep.g[j]) / td);
            if (sigma == 0.0) continue;
            const double ghat = static_cast<double>(ref.absorb_counts[j]) / td;
            worst_z = std::max(worst_z, std::abs(ghat - rep.g[j]) / sigma);
        }
        if (ref.stderr_steps > 0.0)
            worst_z = std::max(
                worst_z, std::abs(ref.mean_steps -
                                  tv.m[static_cast<std::size_t>(i0)]) /
                             ref.stderr_steps);
    };

    zcheck(testutil::fixture4(), 0, 11);
    zcheck(gamblers_ruin(10), 5, 12);

    note = std::string("worker runs ") + (identical ? "identical" : "DIFFER") +
           ", worst z " + sci(worst_z);
    return identical && worst_z <= 4.0;
}

bool check_anchor_independence(std::string& note) {
    double worst = 0.0;
    for (const WalkSpec& w : corpus200()) {
        const int n = w.n();
        const TimeVector t0 = expected_time(w, 0, Method::Fibonacci);
        const TimeVector th = expected_time(w, n / 2, Method::Fibonacci);
        const TimeVector tn = expected_time(w, n, Method::Fibonacci);
        for (std::size_t j = 0; j < t0.m.size(); ++j) {
            worst = std::max(worst, rel(th.m[j], t0.m[j]));
            worst = std::max(worst, rel(tn.m[j], t0.m[j]));
        }
    }
    note = "200 specs x 3 anchors, max rel dev " + sci(worst);
    return worst <= 1e-9;
}

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {"four-state fixture values (x, g, u, m), both methods, 1e-12", 10.0,
         check_fixture},
        {"four-state closed form in raw parameters, 100 random specs, 1e-12",
         1000.0, check_four_state_closed_form},
        {"uniform-walk binomial continuant identity, n = 1..8, 1e-12", 100.0,
         check_binomial_identity},
        {"partial-barrier absorption q*x_0 exact + 1e6-trial simulation", 5000.0,
         check_partial_barrier},
        {"explicit expansion = recurrence, orders <= 14, shifts [-10,10], 1e-10",
         2000.0, check_explicit_vs_recurrence},
        {"one-step shift identity for continuants, n <= 30, 1e-12", 1000.0,
         check_shift_identity},
        {"product-form vs direct on 200 random walks (x and m), 1e-8", 5000.0,
         check_method_equivalence},
        {"ghost-parameter invariance over {0.1, 0.5, 1.0}^2, 1e-12", 1000.0,
         check_ghost_invariance},
        {"probability conservation and time-occupancy identity, 1e-10", 1000.0,
         check_conservation},
        {"symmetric ruin closed forms, n in {4, 10, 25}, 1e-10", 100.0,
         check_gamblers_ruin},
        {"simulator 4-sigma agreement + worker-count determinism, 1e6 trials",
         30000.0, check_simulator},
        {"absorption-time anchor independence on 200 walks, 1e-9", 5000.0,
         check_anchor_independence},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = checks[i].body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        const double ms =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();
        if (ms >= checks[i].budget_ms) {
            ok = false;
            note += " [over budget]";
        }
        if (!ok) ++failures;
        std::printf("[%2zu] %s  %s (%s; %.1f ms / %.0f ms)\n", i + 1,
                    ok ? "PASS" : "FAIL", checks[i].name.c_str(), note.c_str(),
                    ms, checks[i].budget_ms);
    }
    if (failures) std::printf("%d of %zu checks failed\n", failures, checks.size());
    return failures == 0 ? 0 : 1;
}
