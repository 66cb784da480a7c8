#pragma once

#include <cstdint>
#include <vector>

#include "datareq/curves.hpp"
#include "datareq/errors.hpp"

namespace datareq {

struct Anchor {
    std::int64_t n = 0;
    double score = 0.0;
};

enum class CurveMode {
    Monotone,    // anchor scores must be non-decreasing (default)
    NonMonotone, // observed curves that dip are accepted as-is
};

// Piecewise-linear score curve v(n) through anchor observations: a segment
// from the origin to the first anchor, linear interpolation between
// anchors, and a constant extension past the last one. Used as the
// simulation oracle in place of retraining a model.
class GroundTruthCurve {
public:
    explicit GroundTruthCurve(std::vector<Anchor> anchors,
                              CurveMode mode = CurveMode::Monotone);

    const std::vector<Anchor>& anchors() const { return anchors_; }
    CurveMode mode() const { return mode_; }
    std::int64_t full_size() const { return anchors_.back().n; }
    double max_score() const { return max_score_; }

    // Interpolated score at integer size n >= 0. Exact at anchors.
    double value(std::int64_t n) const;

    // Smallest integer n with value(n) >= target (first crossing). Exact:
    // a closed-form per-segment guess is corrected against value() itself.
    // Throws UnreachableError when no size reaches the target.
    std::int64_t min_required(double target) const;

private:
    std::vector<Anchor> anchors_;
    CurveMode mode_;
    double max_score_ = 0.0;
};

// Builds a curve by sampling a family at the given sizes and adding
// Normal(0, noise_sd^2) noise from a deterministic seeded generator.
// Scores are clamped to [0, 100]; in Monotone mode any noise-induced dip is
// replaced by the running maximum. noise_sd = 0 reproduces evaluate()
// exactly (no generator draw).
GroundTruthCurve synthesize(CurveFamily family, const Params& params,
                            const std::vector<std::int64_t>& sizes,
                            double noise_sd, std::uint64_t seed,
                            CurveMode mode = CurveMode::Monotone);

} // namespace datareq
