#pragma once

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibwalk/continuant.hpp"
#include "fibwalk/errors.hpp"
#include "fibwalk/results.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

enum class Format { Csv, JsonLike, Pretty };

inline Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "jsonlike") return Format::JsonLike;
    if (name == "pretty") return Format::Pretty;
    throw validation_error("unknown format \"" + name +
                           "\" (expected csv, jsonlike or pretty)");
}

/// 17 significant digits round-trip doubles exactly; 6 keep tables readable.
inline constexpr int kMachineDigits = 17;
inline constexpr int kPrettyDigits = 6;

inline std::string fmt_num(double v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

namespace detail {

inline std::string aligned_row(const std::vector<std::string>& cells,
                               const std::vector<std::size_t>& widths) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) line += "  ";
        line += cells[c];
        if (c + 1 < cells.size())
            line.append(widths[c] - std::min(widths[c], cells[c].size()), ' ');
    }
    return line + "\n";
}

inline std::string aligned_table(
    const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) out += aligned_row(row, widths);
    return out;
}

}  // namespace detail

/// Everything cmd-analyze prints: the per-state table plus totals.
struct AnalyzeReport {
    int start = 0;
    Method method = Method::Direct;
    std::string fallback_reason;
    std::vector<double> x, f, g, m;
    double u = 0.0, leak_left = 0.0, leak_right = 0.0;
};

inline std::string render_analyze(const AnalyzeReport& rep, Format format) {
    const std::size_t n = rep.x.size();
    if (format == Format::JsonLike) {
        nlohmann::json j;
        j["start"] = rep.start;
        j["method"] = method_name(rep.method);
        if (!rep.fallback_reason.empty())
            j["fallback_reason"] = rep.fallback_reason;
        j["x"] = rep.x;
        j["f"] = rep.f;
        j["g"] = rep.g;
        j["m"] = rep.m;
        j["u"] = rep.u;
        j["leak_left"] = rep.leak_left;
        j["leak_right"] = rep.leak_right;
        return j.dump(2) + "\n";
    }
    const int digits =
        format == Format::Csv ? kMachineDigits : kPrettyDigits;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"j", "x", "f", "g", "m"});
    for (std::size_t i = 0; i < n; ++i)
        rows.push_back({std::to_string(i), fmt_num(rep.x[i], digits),
                        fmt_num(rep.f[i], digits), fmt_num(rep.g[i], digits),
                        fmt_num(rep.m[i], digits)});
    std::string out;
    if (format == Format::Csv) {
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + row[c];
            out += "\n";
        }
        out += "\n";
        out += "u," + fmt_num(rep.u, digits) + "\n";
        out += "leak_left," + fmt_num(rep.leak_left, digits) + "\n";
        out += "leak_right," + fmt_num(rep.leak_right, digits) + "\n";
        out += std::string("method,") + method_name(rep.method) + "\n";
        if (!rep.fallback_reason.empty())
            out += "fallback_reason," + rep.fallback_reason + "\n";
        return out;
    }
    out = "start: " + std::to_string(rep.start) + "\n";
    out += detail::aligned_table(rows);
    out += "u = " + fmt_num(rep.u, digits) +
           "  leak_left = " + fmt_num(rep.leak_left, digits) +
           "  leak_right = " + fmt_num(rep.leak_right, digits) + "\n";
    out += std::string("method: ") + method_name(rep.method) + "\n";
    if (!rep.fallback_reason.empty())
        out += "fallback: " + rep.fallback_reason + "\n";
    return out;
}

inline std::string render_simulate(const SimulationResult& sim, Format format) {
    const double t = static_cast<double>(sim.trials);
    std::vector<double> g_hat(sim.absorb_counts.size()),
        g_err(sim.absorb_counts.size());
    double u_hat = 0.0;
    for (std::size_t i = 0; i < sim.absorb_counts.size(); ++i) {
        g_hat[i] = static_cast<double>(sim.absorb_counts[i]) / t;
        g_err[i] = std::sqrt(g_hat[i] * (1.0 - g_hat[i]) / t);
        u_hat += g_hat[i];
    }
    const double left = static_cast<double>(sim.exit_left) / t;
    const double right = static_cast<double>(sim.exit_right) / t;
    if (format == Format::JsonLike) {
        nlohmann::json j;
        j["trials"] = sim.trials;
        j["seed"] = sim.seed;
        j["max_steps"] = sim.max_steps;
        j["g"] = g_hat;
        j["g_stderr"] = g_err;
        j["u"] = u_hat;
        j["leak_left"] = left;
        j["leak_right"] = right;
        j["mean_steps"] = sim.mean_steps;
        j["stderr_steps"] = sim.stderr_steps;
        j["truncated"] = sim.truncated;
        j["visit_means"] = sim.visit_means;
        return j.dump(2) + "\n";
    }
    const int digits =
        format == Format::Csv ? kMachineDigits : kPrettyDigits;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"j", "g", "g_stderr", "visit_mean"});
    for (std::size_t i = 0; i < g_hat.size(); ++i)
        rows.push_back({std::to_string(i), fmt_num(g_hat[i], digits),
                        fmt_num(g_err[i], digits),
                        fmt_num(sim.visit_means[i], digits)});
    std::string out;
    const std::string footer[] = {
        "u," + fmt_num(u_hat, digits),
        "leak_left," + fmt_num(left, digits),
        "leak_right," + fmt_num(right, digits),
        "mean_steps," + fmt_num(sim.mean_steps, digits),
        "stderr_steps," + fmt_num(sim.stderr_steps, digits),
        "truncated," + std::to_string(sim.truncated),
        "trials," + std::to_string(sim.trials),
        "seed," + std::to_string(sim.seed)};
    if (format == Format::Csv) {
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + row[c];
            out += "\n";
        }
        out += "\n";
        for (const auto& line : footer) out += line + "\n";
        return out;
    }
    out += detail::aligned_table(rows);
    for (const auto& line : footer) {
        std::string human = line;
        std::replace(human.begin(), human.end(), ',', ' ');
        out += human.insert(human.find(' '), " =") + "\n";
    }
    return out;
}

/// One analytic cross-check line: Fibonacci path against the direct solver.
struct VerifyRow {
    std::string quantity;
    double fib = 0.0, direct = 0.0, rel_dev = 0.0;
};

/// One stochastic cross-check line: simulation against the direct solver.
struct VerifySimRow {
    std::string quantity;
    double sim = 0.0, expected = 0.0, sigma = 0.0, z = 0.0;
};

struct VerifyReport {
    bool fib_available = true;
    std::string fib_skip_reason;
    std::vector<VerifyRow> analytic;
    std::vector<VerifySimRow> stochastic;
    double tol_analytic = 1e-8, tol_sigma = 4.0;
    bool pass = true;
    std::string worst;  // offending quantity when pass is false
};

inline std::string render_verify(const VerifyReport& rep, Format format) {
    if (format == Format::JsonLike) {
        nlohmann::json j;
        j["fib_available"] = rep.fib_available;
        if (!rep.fib_skip_reason.empty())
            j["fib_skip_reason"] = rep.fib_skip_reason;
        j["analytic"] = nlohmann::json::array();
        for (const auto& row : rep.analytic)
            j["analytic"].push_back({{"quantity", row.quantity},
                                     {"fib", row.fib},
                                     {"direct", row.direct},
                                     {"rel_dev", row.rel_dev}});
        j["stochastic"] = nlohmann::json::array();
        for (const auto& row : rep.stochastic)
            j["stochastic"].push_back({{"quantity", row.quantity},
                                       {"sim", row.sim},
                                       {"expected", row.expected},
                                       {"sigma", row.sigma},
                                       {"z", row.z}});
        j["tol_analytic"] = rep.tol_analytic;
        j["tol_sigma"] = rep.tol_sigma;
        j["pass"] = rep.pass;
        if (!rep.worst.empty()) j["worst"] = rep.worst;
        return j.dump(2) + "\n";
    }
    const int digits =
        format == Format::Csv ? kMachineDigits : kPrettyDigits;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"quantity", "fib", "direct", "rel_dev"});
    for (const auto& r : rep.analytic)
        rows.push_back({r.quantity, fmt_num(r.fib, digits),
                        fmt_num(r.direct, digits), fmt_num(r.rel_dev, digits)});
    std::vector<std::vector<std::string>> sim_rows;
    sim_rows.push_back({"quantity", "sim", "expected", "sigma", "z"});
    for (const auto& r : rep.stochastic)
        sim_rows.push_back({r.quantity, fmt_num(r.sim, digits),
                            fmt_num(r.expected, digits),
                            fmt_num(r.sigma, digits), fmt_num(r.z, digits)});
    std::string out;
    if (format == Format::Csv) {
        auto emit = [&](const std::vector<std::vector<std::string>>& table) {
            for (const auto& row : table) {
                for (std::size_t c = 0; c < row.size(); ++c)
                    out += (c ? "," : "") + row[c];
                out += "\n";
            }
        };
        if (!rep.fib_available)
            out += "fib_skipped," + rep.fib_skip_reason + "\n";
        emit(rows);
        out += "\n";
        emit(sim_rows);
        out += "\n";
        out += std::string("pass,") + (rep.pass ? "true" : "false") + "\n";
        if (!rep.worst.empty()) out += "worst," + rep.worst + "\n";
        return out;
    }
    if (!rep.fib_available)
        out += "fibonacci path skipped: " + rep.fib_skip_reason + "\n";
    out += detail::aligned_table(rows);
    out += "\n" + detail::aligned_table(sim_rows);
    out += std::string("result: ") + (rep.pass ? "PASS" : "FAIL");
    if (!rep.worst.empty()) out += " (worst: " + rep.worst + ")";
    out += "\n";
    return out;
}

inline std::string render_tau_table(const TauTable& table, Format format) {
    if (format == Format::JsonLike) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 1; i <= table.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::uint64_t j = 1; j <= table.cols(); ++j)
                row.push_back(table.cell(i, j).label());
            rows.push_back(row);
        }
        nlohmann::json j;
        j["order"] = table.order();
        j["cols"] = table.cols();
        j["cells"] = rows;
        return j.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> rows;
    for (int i = 1; i <= table.rows(); ++i) {
        std::vector<std::string> row;
        for (std::uint64_t j = 1; j <= table.cols(); ++j)
            row.push_back(table.cell(i, j).label());
        rows.push_back(std::move(row));
    }
    if (format == Format::Csv) {
        std::string out;
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + row[c];
            out += "\n";
        }
        return out;
    }
    return detail::aligned_table(rows);
}

}  // namespace fibwalk
