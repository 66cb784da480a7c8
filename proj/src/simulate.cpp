#include "datareq/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace datareq {

SimulationTrace run(const GroundTruthCurve& curve, const SimConfig& config) {
    if (config.max_rounds < 1) {
        throw InvalidDataError("simulation needs at least 1 round");
    }
    if (config.n0 > curve.full_size()) {
        throw InvalidDataError("n0 exceeds the curve's full size");
    }
    if (config.target > curve.max_score()) {
        throw InvalidTargetError("target " + std::to_string(config.target) +
                                 " not reachable on the ground-truth curve");
    }

    SimulationTrace trace;
    trace.config = config;
    trace.true_minimum =
        std::max(config.n0, curve.min_required(config.target));

    const std::int64_t n_cap =
        config.n_cap > 0 ? config.n_cap : 1000 * curve.full_size();
    const std::int64_t clamp_total =
        std::min(n_cap, 1000 * curve.full_size());

    std::vector<Observation> initial;
    for (std::int64_t s : schedule_sizes(Schedule{config.n0, config.r})) {
        initial.push_back({s, curve.value(s)});
    }
    RegressionSet regression{initial};

    std::int64_t prev_total = config.n0;
    for (int round = 1; round <= config.max_rounds; ++round) {
        RoundRecord record;
        record.round_index = round;

        std::int64_t requested = prev_total + 1; // strict progress floor
        try {
            const FittedModel model =
                fit(config.family, regression, config.fit_config);
            record.fitted = model;
            try {
                const std::int64_t n_hat = estimate_requirement(
                    model, config.n0, config.target, config.tau, n_cap);
                requested = std::max(config.n0 + n_hat, prev_total + 1);
            } catch (const UnreachableError& e) {
                if (!config.clamp_unreachable) {
                    trace.skipped_rounds.push_back({round, e.what()});
                    continue; // regression set unchanged; next round refits
                }
                requested = std::max(clamp_total, prev_total + 1);
                record.clamped = true;
            }
        } catch (const Error& e) {
            // Fit failed or the fitted model could not be inverted; fall back
            // to the minimal step so the loop still makes progress.
            record.fit_error = e.what();
        }

        record.requested_total = requested;
        record.achieved_score = curve.value(std::min(requested, n_cap));
        record.met_target = record.achieved_score >= config.target;
        regression.append({requested, record.achieved_score});
        prev_total = requested;
        trace.rounds.push_back(record);

        if (record.met_target) break;
    }

    trace.final_total = trace.rounds.empty() ? config.n0
                                             : trace.rounds.back().requested_total;
    trace.ratio = static_cast<double>(trace.final_total) /
                  static_cast<double>(trace.true_minimum);
    trace.success = !trace.rounds.empty() && trace.rounds.back().met_target;
    return trace;
}

std::vector<SweepEntry> sweep(const GroundTruthCurve& curve,
                              const SimConfig& base_config,
                              const std::vector<double>& targets) {
    std::vector<SweepEntry> entries;
    entries.reserve(targets.size());
    for (double target : targets) {
        SweepEntry entry;
        entry.target = target;
        SimConfig config = base_config;
        config.target = target;
        try {
            entry.trace = run(curve, config);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<double> default_target_grid(const GroundTruthCurve& curve,
                                        std::int64_t n0, int k) {
    if (k < 1) throw InvalidDataError("target grid needs k >= 1");
    const double lo = curve.value(n0 + 1);
    const double hi = curve.value(curve.full_size());
    std::vector<double> grid(k);
    for (int i = 0; i < k; ++i) {
        grid[i] = lo + (hi - lo) * (i + 1) / (k + 1);
    }
    return grid;
}

double calibrate_tau(const GroundTruthCurve& reference, const SimConfig& base,
                     const std::vector<double>& targets, double tau_max,
                     double tau_step) {
    if (tau_step <= 0.0) throw InvalidDataError("tau_step must be positive");
    if (tau_max < 0.0) throw InvalidDataError("tau_max must be >= 0");
    if (targets.empty()) throw EmptyInputError("calibrate_tau: no targets");

    for (int k = 0;; ++k) {
        const double tau = k * tau_step;
        if (tau > tau_max + 1e-12) break;
        SimConfig config = base;
        config.tau = tau;
        const std::vector<SweepEntry> entries = sweep(reference, config, targets);
        const bool all_met =
            std::all_of(entries.begin(), entries.end(), [](const SweepEntry& e) {
                return e.trace.has_value() && e.trace->success;
            });
        if (all_met) return tau;
    }
    throw CalibrationError("no tau <= " + std::to_string(tau_max) +
                           " meets every calibration target");
}

double min_ratio(const std::vector<SimulationTrace>& traces) {
    if (traces.empty()) throw EmptyInputError("min_ratio: no traces");
    double best = traces.front().ratio;
    for (const SimulationTrace& t : traces) best = std::min(best, t.ratio);
    return best;
}

} // namespace datareq
