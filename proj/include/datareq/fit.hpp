#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "datareq/curves.hpp"
#include "datareq/errors.hpp"

namespace datareq {

// One (training-set size, score) observation.
struct Observation {
    std::int64_t n = 0;
    double score = 0.0;
};

// Ordered set of observations used to fit a curve. Sizes are strictly
// increasing and at least 1; scores must be finite. Needs >= 2 points.
class RegressionSet {
public:
    explicit RegressionSet(std::vector<Observation> points);

    // Appends a point with n strictly above the current maximum; used when a
    // collection round adds a fresh observation.
    void append(Observation point);

    const std::vector<Observation>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::int64_t max_n() const { return points_.back().n; }

private:
    std::vector<Observation> points_;
};

// Levenberg-Marquardt knobs. Defaults are ordinary LM practice; the weight
// base of 2 makes every point count twice as much as the one before it.
struct FitConfig {
    int max_iterations = 200;
    double initial_damping = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.1;
    double convergence_tol = 1e-10; // relative SSE change
    double weight_base = 2.0;
};

// Geometric per-point weights: weight of point i is weight_base^i in
// increasing-n order, unnormalized.
std::vector<double> weights(const RegressionSet& set, double weight_base);

// Weighted SSE of the model on the set, with the same undefined-point
// penalty the optimizer uses. Lets callers recompute FittedModel::residual_sse.
double weighted_sse(CurveFamily family, const Params& params,
                    const RegressionSet& set, double weight_base);

// Called after every accepted LM step with the new weighted SSE.
using FitObserver = std::function<void(int iteration, double sse)>;

// Fits one family by weighted Levenberg-Marquardt from initial_params().
// Jacobian by central finite differences; damping is multiplied by
// damping_up on rejected steps and damping_down on accepted ones; stops on
// relative SSE change below convergence_tol, iteration cap, or damping
// overflow (> 1e12). Residuals at points where the formula is undefined get
// a fixed 1e6 penalty so the optimizer can retreat. Throws FitError when not
// even the penalties produce a finite objective.
FittedModel fit(CurveFamily family, const RegressionSet& set,
                const FitConfig& config = {},
                const FitObserver& observer = {});

struct FitAllResult {
    std::map<CurveFamily, FittedModel> models;
    std::map<CurveFamily, std::string> failures; // family -> error message
};

// Fits all four families independently; one family failing does not abort
// the others. Throws AllFitsFailedError only if every family fails.
FitAllResult fit_all(const RegressionSet& set, const FitConfig& config = {});

} // namespace datareq
