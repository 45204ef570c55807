#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

/// Expected arrival counts x_{i0,j} for a fixed start, with method provenance.
struct ArrivalVector {
    int start = 0;
    std::vector<double> x;
    Method method = Method::Direct;
    std::string fallback_reason;  // non-empty iff a requested fibonacci/auto
                                  // path degraded to direct
};

/// Per-state absorption probabilities plus boundary leaks.
struct AbsorptionReport {
    std::vector<double> g;
    double leak_left = 0.0;
    double leak_right = 0.0;
    double u = 0.0;  // total in-interval absorption probability
};

/// Expected absorption times per state.
struct TimeVector {
    std::vector<double> m;
    Method method = Method::Direct;
    std::string fallback_reason;
    int anchor = 0;
};

/// Aggregate outcome of a seeded Monte Carlo run.
struct SimulationResult {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 0;
    std::vector<std::uint64_t> absorb_counts;  // per-state in-place absorptions
    std::uint64_t exit_left = 0;
    std::uint64_t exit_right = 0;
    std::uint64_t truncated = 0;
    double mean_steps = 0.0;    // over non-truncated trials
    double stderr_steps = 0.0;  // standard error of mean_steps
    std::vector<double> visit_means;  // mean occupancy per state, time zero included
};

}  // namespace fibwalk
