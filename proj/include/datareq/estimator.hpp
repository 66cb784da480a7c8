#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "datareq/curves.hpp"
#include "datareq/errors.hpp"
#include "datareq/fit.hpp"
#include "datareq/groundtruth.hpp"

namespace datareq {

// Subset schedule: r nested subsets of an initial pool of n0 points,
// growing linearly so subset i has about n0*(i+1)/r points.
struct Schedule {
    std::int64_t n0 = 0;
    int r = 0;
};

// Sizes round(n0*(i+1)/r) for i = 0..r-1, rounded half-up; collisions are
// bumped upward and the last size is forced to n0. Throws
// InvalidScheduleError when r distinct positive sizes cannot exist (r > n0).
std::vector<std::int64_t> schedule_sizes(const Schedule& schedule);

// Additional points needed on top of n0 for the fitted model to reach
// target + tau, i.e. max(0, inverse_solve(target + tau, n0, n0 + n_cap) - n0).
// tau = 0 is the plain estimate; tau > 0 trades over-collection for a better
// chance of actually meeting the target. Throws UnreachableError /
// NotMonotoneError from the inversion.
std::int64_t estimate_requirement(const FittedModel& model, std::int64_t n0,
                                  double target, double tau, std::int64_t n_cap);

// Per-family estimates plus the ensemble's best/worst case. A family that
// declared the target unreachable appears as nullopt and makes the upper
// edge unbounded.
struct EstimateBundle {
    std::map<CurveFamily, std::optional<std::int64_t>> per_family;
    std::int64_t lower = 0;                // min over finite estimates
    std::optional<std::int64_t> upper;     // nullopt = unbounded
    std::vector<std::string> diagnostics;  // families dropped, with reasons
};

// Applies estimate_requirement to every fitted family. Families whose
// estimate fails outright (non-monotone fit, domain error) are dropped and
// listed in diagnostics. Throws NoEstimatesError when no family yields a
// finite estimate. Missing tau entries default to 0.
EstimateBundle bounds(const std::map<CurveFamily, FittedModel>& models,
                      std::int64_t n0, double target,
                      const std::map<CurveFamily, double>& taus,
                      std::int64_t n_cap);

// How the full fit-and-bound pipeline is run over a ground-truth curve.
// n_cap <= 0 means 1000 * full_size.
struct EnsembleConfig {
    int r = 5;
    FitConfig fit_config{};
    std::map<CurveFamily, double> taus{};
    std::int64_t n_cap = 0;
    std::vector<CurveFamily> families{kAllFamilies.begin(), kAllFamilies.end()};
};

struct CoverageStats {
    double hit_fraction = 0.0;     // lower <= n* <= upper
    double mean_lower_ratio = 0.0; // mean (n0+lower)/(n0+n*)
    double mean_upper_ratio = 0.0; // mean over finite uppers only
    int unbounded_upper_count = 0;
    int target_count = 0;
};

// For each target: fit the ensemble on the schedule over n0, form the
// bounds bundle, and compare against the true requirement n* from the
// curve. Requires every target reachable.
CoverageStats bound_coverage(const GroundTruthCurve& curve, std::int64_t n0,
                             const std::vector<double>& targets,
                             const EnsembleConfig& config);

} // namespace datareq
