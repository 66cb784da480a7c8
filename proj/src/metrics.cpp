#include "datareq/metrics.hpp"

#include <cmath>

namespace datareq {

HoldoutSet::HoldoutSet(std::vector<Observation> points,
                       std::int64_t fit_range_max)
    : points_(std::move(points)) {
    if (points_.empty()) throw InvalidDataError("holdout set is empty");
    for (const Observation& pt : points_) {
        if (pt.n <= fit_range_max) {
            throw InvalidDataError(
                "holdout size " + std::to_string(pt.n) +
                " does not exceed the fit range maximum " +
                std::to_string(fit_range_max));
        }
        if (!std::isfinite(pt.score)) {
            throw InvalidDataError("holdout scores must be finite");
        }
    }
}

double rmse(const FittedModel& model, const HoldoutSet& holdout) {
    double sum = 0.0;
    for (const Observation& pt : holdout.points()) {
        const double predicted =
            evaluate(model.family, model.params, static_cast<double>(pt.n));
        const double diff = pt.score - predicted;
        sum += diff * diff;
    }
    return std::sqrt(sum / holdout.points().size());
}

double mean_log_ratio(const FittedModel& model, const HoldoutSet& holdout) {
    double sum = 0.0;
    for (const Observation& pt : holdout.points()) {
        const double predicted =
            evaluate(model.family, model.params, static_cast<double>(pt.n));
        if (predicted <= 0.0 || pt.score <= 0.0) {
            throw DomainError("log ratio needs positive predictions and scores");
        }
        sum += std::log(predicted) - std::log(pt.score);
    }
    return sum / holdout.points().size();
}

MeanSd aggregate(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInputError("aggregate: no values");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / values.size();
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (values.size() - 1))};
}

} // namespace datareq
