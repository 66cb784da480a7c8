#include "datareq/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace datareq {

std::vector<std::int64_t> schedule_sizes(const Schedule& schedule) {
    if (schedule.n0 < 2 || schedule.r < 2) {
        throw InvalidScheduleError("schedule needs n0 >= 2 and r >= 2");
    }
    if (schedule.r > schedule.n0) {
        throw InvalidScheduleError("cannot draw " + std::to_string(schedule.r) +
                                   " distinct subset sizes from n0 = " +
                                   std::to_string(schedule.n0));
    }
    std::vector<std::int64_t> sizes(schedule.r);
    for (int i = 0; i < schedule.r; ++i) {
        const double raw = static_cast<double>(schedule.n0) * (i + 1) / schedule.r;
        sizes[i] = static_cast<std::int64_t>(std::floor(raw + 0.5)); // half-up
    }
    for (int i = 1; i < schedule.r; ++i) {
        if (sizes[i] <= sizes[i - 1]) sizes[i] = sizes[i - 1] + 1;
    }
    sizes.back() = schedule.n0;
    return sizes;
}

std::int64_t estimate_requirement(const FittedModel& model, std::int64_t n0,
                                  double target, double tau,
                                  std::int64_t n_cap) {
    if (n0 < 1 || n_cap < 1) {
        throw InvalidDataError("estimate_requirement: n0 and n_cap must be >= 1");
    }
    const std::int64_t total = inverse_solve(model.family, model.params,
                                             target + tau, n0, n0 + n_cap);
    return std::max<std::int64_t>(0, total - n0);
}

EstimateBundle bounds(const std::map<CurveFamily, FittedModel>& models,
                      std::int64_t n0, double target,
                      const std::map<CurveFamily, double>& taus,
                      std::int64_t n_cap) {
    EstimateBundle bundle;
    bool any_unreachable = false;
    std::optional<std::int64_t> lower, upper;

    for (const auto& [family, model] : models) {
        const auto tau_it = taus.find(family);
        const double tau = tau_it == taus.end() ? 0.0 : tau_it->second;
        try {
            const std::int64_t estimate =
                estimate_requirement(model, n0, target, tau, n_cap);
            bundle.per_family[family] = estimate;
            if (!lower || estimate < *lower) lower = estimate;
            if (!upper || estimate > *upper) upper = estimate;
        } catch (const UnreachableError&) {
            bundle.per_family[family] = std::nullopt;
            any_unreachable = true;
        } catch (const Error& e) {
            bundle.diagnostics.push_back(family_name(family) + ": " + e.what());
        }
    }

    if (!lower) {
        throw NoEstimatesError("no curve family produced a finite estimate");
    }
    bundle.lower = *lower;
    bundle.upper = any_unreachable ? std::nullopt : upper;
    return bundle;
}

CoverageStats bound_coverage(const GroundTruthCurve& curve, std::int64_t n0,
                             const std::vector<double>& targets,
                             const EnsembleConfig& config) {
    if (targets.empty()) throw EmptyInputError("bound_coverage: no targets");
    const std::int64_t n_cap =
        config.n_cap > 0 ? config.n_cap : 1000 * curve.full_size();

    const std::vector<std::int64_t> sizes =
        schedule_sizes(Schedule{n0, config.r});
    std::vector<Observation> points;
    points.reserve(sizes.size());
    for (std::int64_t s : sizes) points.push_back({s, curve.value(s)});
    const RegressionSet set{points};

    std::map<CurveFamily, FittedModel> models;
    for (CurveFamily family : config.families) {
        models.emplace(family, fit(family, set, config.fit_config));
    }

    CoverageStats stats;
    stats.target_count = static_cast<int>(targets.size());
    int hits = 0;
    double lower_ratio_sum = 0.0;
    double upper_ratio_sum = 0.0;
    int finite_uppers = 0;

    for (double target : targets) {
        const std::int64_t n_star =
            std::max<std::int64_t>(0, curve.min_required(target) - n0);
        const EstimateBundle bundle = bounds(models, n0, target, config.taus, n_cap);

        const bool hit = bundle.lower <= n_star &&
                         (!bundle.upper.has_value() || n_star <= *bundle.upper);
        if (hit) ++hits;

        const double denom = static_cast<double>(n0 + n_star);
        lower_ratio_sum += static_cast<double>(n0 + bundle.lower) / denom;
        if (bundle.upper.has_value()) {
            upper_ratio_sum += static_cast<double>(n0 + *bundle.upper) / denom;
            ++finite_uppers;
        } else {
            ++stats.unbounded_upper_count;
        }
    }

    stats.hit_fraction = static_cast<double>(hits) / targets.size();
    stats.mean_lower_ratio = lower_ratio_sum / targets.size();
    stats.mean_upper_ratio =
        finite_uppers > 0 ? upper_ratio_sum / finite_uppers
                          : std::numeric_limits<double>::quiet_NaN();
    return stats;
}

} // namespace datareq
