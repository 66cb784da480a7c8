#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "datareq/errors.hpp"

namespace datareq {

// The four parametric learning-curve families. All are concave and
// monotonically increasing for suitable parameters and map a training-set
// size n to a score.
enum class CurveFamily {
    PowerLaw,      // theta1 * n^theta2 + theta3
    Arctan,        // (200/pi) * atan(theta1 * (pi/2) * n + theta2) + theta3
    Logarithmic,   // theta1 * ln(n + theta2) + theta3
    AlgebraicRoot, // 100*n / (1 + |theta1*n|^theta2)^(1/theta2) + theta3
};

inline constexpr std::array<CurveFamily, 4> kAllFamilies = {
    CurveFamily::PowerLaw,
    CurveFamily::Arctan,
    CurveFamily::Logarithmic,
    CurveFamily::AlgebraicRoot,
};

// Stable lowercase identifiers used in CLI flags and JSON output.
std::string family_name(CurveFamily family);
CurveFamily family_from_name(const std::string& name); // throws InvalidDataError

// Curve parameters. theta1 scales, theta2 shapes, theta3 offsets
// (score units).
struct Params {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
};

// Result of fitting one family to a regression set. residual_sse is the
// weighted sum of squared residuals at `params` on the fitting set.
struct FittedModel {
    CurveFamily family = CurveFamily::PowerLaw;
    Params params;
    double residual_sse = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Evaluates the family formula at size n. Returns the raw formula value,
// without clamping to the score range. Throws DomainError where the
// formula is undefined (log of a non-positive argument, negative base with
// fractional exponent, zero root order).
double evaluate(CurveFamily family, const Params& params, double n);

// Limit of evaluate() as n -> infinity. nullopt means the family diverges
// (PowerLaw with positive exponent, Logarithmic). Throws DomainError for
// AlgebraicRoot with theta1 == 0, which has no saturation level.
std::optional<double> supremum(CurveFamily family, const Params& params);

// True iff the model is non-decreasing over [n_lo, n_hi]. Uses exact sign
// rules for PowerLaw and Arctan; otherwise probes a 64-point geometric grid
// over [max(n_lo, 1), n_hi] allowing -1e-9 per step. DomainErrors from
// evaluate propagate.
bool is_monotone_on(CurveFamily family, const Params& params, double n_lo,
                    double n_hi);

// Smallest integer n in [n_lo, n_hi] with evaluate(n) >= target, found by
// integer bisection. Requires n_lo < n_hi and a model monotone on the range
// (checked; throws NotMonotoneError). Throws UnreachableError when even
// evaluate(n_hi) < target.
std::int64_t inverse_solve(CurveFamily family, const Params& params,
                           double target, std::int64_t n_lo, std::int64_t n_hi);

// Optimizer starting point: product/shape terms start at 1, the bias term
// at 0. The logarithmic shift term starts at 1 so the initial model is
// defined at n = 0.
Params initial_params(CurveFamily family);

} // namespace datareq
