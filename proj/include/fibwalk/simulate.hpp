#pragma once

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "fibwalk/results.hpp"
#include "fibwalk/walk_spec.hpp"

namespace fibwalk {

namespace detail {

// Per-trial generator: splitmix64 seeded by a fixed mix of (seed, trial),
// so trial outcomes never depend on execution order or worker count.
// Uniforms take the top 53 bits of each output word.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : state_(mix(seed ^ mix(trial + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

struct SimTally {
    std::vector<std::uint64_t> absorb;
    std::vector<std::uint64_t> occupancy;
    std::uint64_t exit_left = 0, exit_right = 0, truncated = 0;
    std::uint64_t completed = 0;     // non-truncated trials
    std::uint64_t steps_sum = 0;
    unsigned __int128 steps_sq = 0;

    explicit SimTally(std::size_t states) : absorb(states, 0), occupancy(states, 0) {}

    void merge(const SimTally& o) {
        for (std::size_t i = 0; i < absorb.size(); ++i) {
            absorb[i] += o.absorb[i];
            occupancy[i] += o.occupancy[i];
        }
        exit_left += o.exit_left;
        exit_right += o.exit_right;
        truncated += o.truncated;
        completed += o.completed;
        steps_sum += o.steps_sum;
        steps_sq += o.steps_sq;
    }
};

inline void run_trials(const WalkSpec& w, int i0, std::uint64_t seed,
                       std::uint64_t max_steps, std::uint64_t first,
                       std::uint64_t last, SimTally& tally) {
    const int N = w.n();
    // Cumulative thresholds in the fixed draw order (p, q, r, s).
    std::vector<double> cp(w.p.size()), cq(w.p.size()), cr(w.p.size());
    for (std::size_t i = 0; i < w.p.size(); ++i) {
        cp[i] = w.p[i];
        cq[i] = cp[i] + w.q[i];
        cr[i] = cq[i] + w.r[i];
    }
    for (std::uint64_t t = first; t < last; ++t) {
        TrialRng rng(seed, t);
        int state = i0;
        std::uint64_t steps = 0;
        bool done = false, truncated_trial = false;
        while (!done) {
            const std::size_t n = static_cast<std::size_t>(state);
            ++tally.occupancy[n];
            const double u = rng.uniform();
            if (u >= cr[n]) {  // absorb in place, zero additional time
                ++tally.absorb[n];
                done = true;
                break;
            }
            ++steps;
            if (u < cp[n]) {
                if (state == N) {
                    ++tally.exit_right;
                    done = true;
                    break;
                }
                ++state;
            } else if (u < cq[n]) {
                if (state == 0) {
                    ++tally.exit_left;
                    done = true;
                    break;
                }
                --state;
            }
            // u in [cq, cr): stay.
            if (steps >= max_steps) {
                ++tally.truncated;
                truncated_trial = true;
                break;
            }
        }
        if (!truncated_trial) {
            ++tally.completed;
            tally.steps_sum += steps;
            tally.steps_sq += static_cast<unsigned __int128>(steps) * steps;
        }
    }
}

}  // namespace detail

/// Seeded Monte Carlo estimate of absorption statistics. The result is a
/// pure function of (spec, i0, trials, seed, max_steps); the worker count
/// only affects wall time.
inline SimulationResult simulate(const WalkSpec& w, int i0, std::uint64_t trials,
                                 std::uint64_t seed,
                                 std::uint64_t max_steps = 1000000,
                                 unsigned workers = 0) {
    const std::size_t states = w.p.size();
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) workers = 1;
    }
    if (static_cast<std::uint64_t>(workers) > trials)
        workers = static_cast<unsigned>(trials > 0 ? trials : 1);

    std::vector<detail::SimTally> tallies(workers, detail::SimTally(states));
    {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t rem = trials % workers;
        std::uint64_t begin = 0;
        for (unsigned k = 0; k < workers; ++k) {
            const std::uint64_t end = begin + chunk + (k < rem ? 1 : 0);
            threads.emplace_back([&, k, begin, end] {
                detail::run_trials(w, i0, seed, max_steps, begin, end, tallies[k]);
            });
            begin = end;
        }
        for (auto& th : threads) th.join();
    }
    detail::SimTally total(states);
    for (const auto& t : tallies) total.merge(t);

    SimulationResult res;
    res.trials = trials;
    res.seed = seed;
    res.max_steps = max_steps;
    res.absorb_counts = total.absorb;
    res.exit_left = total.exit_left;
    res.exit_right = total.exit_right;
    res.truncated = total.truncated;
    res.visit_means.resize(states);
    for (std::size_t i = 0; i < states; ++i)
        res.visit_means[i] =
            trials > 0 ? static_cast<double>(total.occupancy[i]) /
                             static_cast<double>(trials)
                       : 0.0;
    if (total.completed > 0) {
        const double n = static_cast<double>(total.completed);
        const double sum = static_cast<double>(total.steps_sum);
        const double sumsq = static_cast<double>(total.steps_sq);
        res.mean_steps = sum / n;
        if (total.completed > 1) {
            double var = (sumsq - sum * sum / n) / (n - 1.0);
            if (var < 0.0) var = 0.0;
            res.stderr_steps = std::sqrt(var / n);
        }
    }
    return res;
}

}  // namespace fibwalk
