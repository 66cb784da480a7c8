#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "datareq/curves.hpp"
#include "datareq/errors.hpp"
#include "datareq/estimator.hpp"
#include "datareq/fit.hpp"
#include "datareq/groundtruth.hpp"

namespace datareq {

// One multi-round collection run: which family drives the estimates, the
// target score, the correction factor, and the round budget T.
struct SimConfig {
    std::int64_t n0 = 0;
    int r = 5;
    int max_rounds = 1; // T
    double target = 0.0;
    double tau = 0.0;
    CurveFamily family = CurveFamily::PowerLaw;
    FitConfig fit_config{};
    std::int64_t n_cap = 0;        // <= 0: 1000 * curve full size
    bool clamp_unreachable = true; // cap unreachable estimates instead of skipping
};

// What one round did: the refit model, the total size it asked for, and the
// ground-truth score at that size.
struct RoundRecord {
    int round_index = 0; // 1-based
    std::optional<FittedModel> fitted;
    std::string fit_error;             // non-empty when the fit/estimate failed
    std::int64_t requested_total = 0;  // n0 + n_hat after the progress rule
    double achieved_score = 0.0;
    bool met_target = false;
    bool clamped = false; // unreachable estimate capped at n_cap
};

struct RoundError {
    int round_index = 0;
    std::string message;
};

struct SimulationTrace {
    SimConfig config;
    std::vector<RoundRecord> rounds;
    std::vector<RoundError> skipped_rounds; // only without clamping
    std::int64_t final_total = 0;
    std::int64_t true_minimum = 0; // n0 + n*
    double ratio = 0.0;            // final_total / true_minimum
    bool success = false;
};

// Runs the iterative collection loop against the curve: seed the regression
// set from the linear schedule, then per round refit, invert for the
// corrected target + tau, apply the strict progress rule (each request
// exceeds the previous total by at least 1), score the request on the
// curve, and append the new observation. Stops when the uncorrected target
// is met or T rounds elapse. Pure function of (curve, config).
// Throws InvalidTargetError when the target is not reachable on the curve.
SimulationTrace run(const GroundTruthCurve& curve, const SimConfig& config);

struct SweepEntry {
    double target = 0.0;
    std::optional<SimulationTrace> trace;
    std::string error; // set when the run for this target failed outright
};

// Independent run per target; per-target failures are collected, not fatal.
std::vector<SweepEntry> sweep(const GroundTruthCurve& curve,
                              const SimConfig& base_config,
                              const std::vector<double>& targets);

// k target scores evenly spaced strictly between value(n0 + 1) and
// value(full_size), endpoints excluded.
std::vector<double> default_target_grid(const GroundTruthCurve& curve,
                                        std::int64_t n0, int k = 25);

// Smallest tau on the grid {0, tau_step, ..., tau_max} whose sweep succeeds
// on every target. Plain grid search: with refitting between rounds,
// success need not be monotone in tau, so bisection would be unsound.
// Throws CalibrationError when no grid value works.
double calibrate_tau(const GroundTruthCurve& reference, const SimConfig& base,
                     const std::vector<double>& targets, double tau_max,
                     double tau_step);

// Minimum collected/required ratio over the traces. Throws EmptyInputError.
double min_ratio(const std::vector<SimulationTrace>& traces);

} // namespace datareq
