#pragma once

#include <cstdint>
#include <vector>

#include "datareq/curves.hpp"
#include "datareq/errors.hpp"
#include "datareq/fit.hpp"

namespace datareq {

// Extrapolation-only evaluation points: every size must lie strictly above
// the fitting range.
class HoldoutSet {
public:
    HoldoutSet(std::vector<Observation> points, std::int64_t fit_range_max);

    const std::vector<Observation>& points() const { return points_; }

private:
    std::vector<Observation> points_;
};

// Root-mean-squared prediction error over the holdout.
double rmse(const FittedModel& model, const HoldoutSet& holdout);

// Mean of ln(prediction) - ln(score): positive when the model is optimistic
// about scores (and hence under-estimates data needs), negative when
// pessimistic. Throws DomainError when a prediction or score is <= 0.
double mean_log_ratio(const FittedModel& model, const HoldoutSet& holdout);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n-1); 0 for one element
};

MeanSd aggregate(const std::vector<double>& values);

} // namespace datareq
