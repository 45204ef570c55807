#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibwalk/fibwalk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyBreach = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitValidation = 3;
constexpr int kExitDegenerate = 4;

fibwalk::Method parse_method(const std::string& name) {
    if (name == "fib" || name == "fibonacci") return fibwalk::Method::Fibonacci;
    if (name == "direct") return fibwalk::Method::Direct;
    if (name == "auto") return fibwalk::Method::Auto;
    throw fibwalk::validation_error("unknown method \"" + name +
                                    "\" (expected fib, direct or auto)");
}

struct CommonArgs {
    std::string spec_path;
    int start = -1;  // -1: take the spec file's start (default 0)
    std::string format = "pretty";
};

fibwalk::WalkSpec load(const CommonArgs& args, int& start) {
    const fibwalk::SpecDocument doc = fibwalk::parse_spec_file(args.spec_path);
    const fibwalk::WalkSpec w = fibwalk::to_walk_spec(doc);
    start = args.start >= 0 ? args.start : w.start;
    if (start > w.n())
        throw fibwalk::validation_error("start state " + std::to_string(start) +
                                        " outside [0, " + std::to_string(w.n()) +
                                        "]");
    return w;
}

double rel_dev(double candidate, double reference) {
    const double diff = std::abs(candidate - reference);
    if (diff == 0.0) return 0.0;
    const double denom = std::abs(reference);
    return denom > 0.0 ? diff / denom : std::numeric_limits<double>::infinity();
}

int run_analyze(const CommonArgs& args, const std::string& method_name) {
    const fibwalk::Method method = parse_method(method_name);
    int start = 0;
    const fibwalk::WalkSpec w = load(args, start);
    const fibwalk::ArrivalVector av = fibwalk::expected_arrivals(w, start, method);
    const fibwalk::TimeVector tv = fibwalk::expected_time(w, start, method);

    fibwalk::AnalyzeReport rep;
    rep.start = start;
    rep.method = av.method;
    rep.fallback_reason = av.fallback_reason.empty() ? tv.fallback_reason
                                                     : av.fallback_reason;
    rep.x = av.x;
    rep.m = tv.m;
    rep.f.resize(av.x.size());
    for (int j = 0; j <= w.n(); ++j) {
        const std::size_t sj = static_cast<std::size_t>(j);
        if (j == start) {
            rep.f[sj] = 1.0 - 1.0 / av.x[sj];
        } else {
            const double xjj =
                fibwalk::expected_arrivals(w, j, method).x[sj];
            rep.f[sj] = av.x[sj] / xjj;
        }
    }
    rep.g.resize(av.x.size());
    for (std::size_t j = 0; j < av.x.size(); ++j) {
        rep.g[j] = w.s[j] * av.x[j];
        rep.u += rep.g[j];
    }
    rep.leak_left = w.q[0] * av.x.front();
    rep.leak_right = w.p.back() * av.x.back();
    std::cout << fibwalk::render_analyze(rep, fibwalk::parse_format(args.format));
    return kExitOk;
}

int run_simulate(const CommonArgs& args, std::uint64_t trials,
                 std::uint64_t seed, std::uint64_t max_steps,
                 unsigned workers) {
    int start = 0;
    const fibwalk::WalkSpec w = load(args, start);
    const fibwalk::SimulationResult sim =
        fibwalk::simulate(w, start, trials, seed, max_steps, workers);
    std::cout << fibwalk::render_simulate(sim, fibwalk::parse_format(args.format));
    return kExitOk;
}

int run_verify(const CommonArgs& args, std::uint64_t trials, std::uint64_t seed,
               std::uint64_t max_steps, double tol_analytic, double tol_sigma,
               bool inject_fault) {
    int start = 0;
    const fibwalk::WalkSpec w = load(args, start);
    const std::size_t i0 = static_cast<std::size_t>(start);

    const fibwalk::ArrivalVector xd =
        fibwalk::expected_arrivals(w, start, fibwalk::Method::Direct);
    const fibwalk::TimeVector md =
        fibwalk::expected_time(w, start, fibwalk::Method::Direct);

    fibwalk::VerifyReport rep;
    rep.tol_analytic = tol_analytic;
    rep.tol_sigma = tol_sigma;

    std::vector<double> xf, mf;
    try {
        xf = fibwalk::expected_arrivals(w, start, fibwalk::Method::Fibonacci).x;
        mf = fibwalk::expected_time(w, start, fibwalk::Method::Fibonacci).m;
    } catch (const fibwalk::degenerate_error& e) {
        rep.fib_available = false;
        rep.fib_skip_reason = e.what();
    }
    if (rep.fib_available && inject_fault && xf.size() > 2) xf[2] *= 1.001;

    double worst_excess = 0.0;  // breach severity scaled by its tolerance
    auto consider = [&](const std::string& name, double metric, double tol) {
        if (metric > tol && metric / tol >= worst_excess) {
            worst_excess = metric / tol;
            rep.worst = name;
            rep.pass = false;
        }
    };
    if (rep.fib_available) {
        for (std::size_t j = 0; j < xd.x.size(); ++j) {
            fibwalk::VerifyRow row;
            row.quantity = "x[" + std::to_string(j) + "]";
            row.fib = xf[j];
            row.direct = xd.x[j];
            row.rel_dev = rel_dev(xf[j], xd.x[j]);
            consider(row.quantity, row.rel_dev, tol_analytic);
            rep.analytic.push_back(row);
        }
        for (std::size_t j = 0; j < md.m.size(); ++j) {
            fibwalk::VerifyRow row;
            row.quantity = "m[" + std::to_string(j) + "]";
            row.fib = mf[j];
            row.direct = md.m[j];
            row.rel_dev = rel_dev(mf[j], md.m[j]);
            consider(row.quantity, row.rel_dev, tol_analytic);
            rep.analytic.push_back(row);
        }
    }

    const fibwalk::SimulationResult sim =
        fibwalk::simulate(w, start, trials, seed, max_steps);
    const double t = static_cast<double>(trials);
    auto push_sim = [&](const std::string& name, double observed,
                        double expected, double sigma) {
        fibwalk::VerifySimRow row;
        row.quantity = name;
        row.sim = observed;
        row.expected = expected;
        row.sigma = sigma;
        row.z = sigma > 0.0 ? std::abs(observed - expected) / sigma
               : observed == expected
                   ? 0.0
                   : std::numeric_limits<double>::infinity();
        consider(name, row.z, tol_sigma);
        rep.stochastic.push_back(row);
    };
    for (std::size_t j = 0; j < xd.x.size(); ++j) {
        const double expected = w.s[j] * xd.x[j];
        const double observed = static_cast<double>(sim.absorb_counts[j]) / t;
        push_sim("g[" + std::to_string(j) + "]", observed, expected,
                 std::sqrt(expected * (1.0 - expected) / t));
    }
    const double ll = w.q[0] * xd.x.front();
    const double lr = w.p.back() * xd.x.back();
    push_sim("leak_left", static_cast<double>(sim.exit_left) / t, ll,
             std::sqrt(ll * (1.0 - ll) / t));
    push_sim("leak_right", static_cast<double>(sim.exit_right) / t, lr,
             std::sqrt(lr * (1.0 - lr) / t));
    push_sim("mean_steps", sim.mean_steps, md.m[i0], sim.stderr_steps);

    std::cout << fibwalk::render_verify(rep, fibwalk::parse_format(args.format));
    return rep.pass ? kExitOk : kExitVerifyBreach;
}

int run_tables(int order, const std::string& format) {
    if (order < 0 || order > 12)
        throw fibwalk::validation_error("table order must lie in [0, 12]");
    std::cout << fibwalk::render_tau_table(fibwalk::TauTable::banded(order),
                                           fibwalk::parse_format(format));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact absorption analytics for [p,q,r,s] random walks on [0,N]"};
    app.require_subcommand(1);

    CommonArgs analyze_args, simulate_args, verify_args;
    std::string analyze_method = "auto";
    std::uint64_t sim_trials = 100000, sim_seed = 42, sim_max_steps = 1000000;
    unsigned sim_workers = 0;
    std::uint64_t ver_trials = 100000, ver_seed = 42, ver_max_steps = 1000000;
    double tol_analytic = 1e-8, tol_sigma = 4.0;
    bool inject_fault = false;
    int table_order = 6;
    std::string table_format = "pretty";

    auto add_common = [](CLI::App* cmd, CommonArgs& args) {
        cmd->add_option("spec", args.spec_path, "walk specification file")
            ->required();
        cmd->add_option("--start", args.start, "start state (default: file's)");
        cmd->add_option("--format", args.format, "csv, jsonlike or pretty");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "arrival counts, visit and absorption probabilities, times");
    add_common(analyze, analyze_args);
    analyze->add_option("--method", analyze_method, "fib, direct or auto");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "seeded Monte Carlo estimates of the same quantities");
    add_common(simulate, simulate_args);
    simulate->add_option("--trials", sim_trials, "number of trials");
    simulate->add_option("--seed", sim_seed, "random seed");
    simulate->add_option("--max-steps", sim_max_steps, "per-trial step cap");
    simulate->add_option("--workers", sim_workers,
                         "worker threads (0 = hardware)");

    CLI::App* verify = app.add_subcommand(
        "verify", "cross-check fibonacci path, direct solver and simulation");
    add_common(verify, verify_args);
    verify->add_option("--trials", ver_trials, "number of trials");
    verify->add_option("--seed", ver_seed, "random seed");
    verify->add_option("--max-steps", ver_max_steps, "per-trial step cap");
    verify->add_option("--tol-analytic", tol_analytic,
                       "max relative fib-vs-direct deviation");
    verify->add_option("--tol-sigma", tol_sigma, "max simulation z-score");
    verify->add_flag("--inject-fault", inject_fault)->group("");

    CLI::App* tables =
        app.add_subcommand("tables", "dump the symbolic product table");
    tables->add_option("--order", table_order, "table order n (0..12)");
    tables->add_option("--format", table_format, "csv, jsonlike or pretty");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(analyze_args, analyze_method);
        if (simulate->parsed())
            return run_simulate(simulate_args, sim_trials, sim_seed,
                                sim_max_steps, sim_workers);
        if (verify->parsed())
            return run_verify(verify_args, ver_trials, ver_seed, ver_max_steps,
                              tol_analytic, tol_sigma, inject_fault);
        return run_tables(table_order, table_format);
    } catch (const fibwalk::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const fibwalk::divergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const fibwalk::singular_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const fibwalk::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
