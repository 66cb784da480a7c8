#include "datareq/groundtruth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace datareq {

GroundTruthCurve::GroundTruthCurve(std::vector<Anchor> anchors, CurveMode mode)
    : anchors_(std::move(anchors)), mode_(mode) {
    if (anchors_.empty()) {
        throw InvalidDataError("ground-truth curve needs at least 1 anchor");
    }
    std::int64_t prev_n = 0;
    double prev_score = -std::numeric_limits<double>::infinity();
    for (const Anchor& a : anchors_) {
        if (a.n < 1) throw InvalidDataError("anchor sizes must be >= 1");
        if (a.n <= prev_n) {
            throw InvalidDataError("anchor sizes must be strictly increasing");
        }
        if (!std::isfinite(a.score) || a.score < 0.0 || a.score > 100.0) {
            throw InvalidDataError("anchor scores must lie in [0, 100]");
        }
        if (mode_ == CurveMode::Monotone && a.score < prev_score) {
            throw InvalidDataError(
                "anchor scores decrease; use NonMonotone mode for such curves");
        }
        prev_n = a.n;
        prev_score = a.score;
        max_score_ = std::max(max_score_, a.score);
    }
}

double GroundTruthCurve::value(std::int64_t n) const {
    if (n < 0) throw InvalidDataError("curve queried at negative size");
    if (n >= anchors_.back().n) return anchors_.back().score;

    // Anchors are reproduced exactly, not via the interpolation formula.
    auto it = std::lower_bound(
        anchors_.begin(), anchors_.end(), n,
        [](const Anchor& a, std::int64_t size) { return a.n < size; });
    if (it != anchors_.end() && it->n == n) return it->score;

    // it is the first anchor with n_i > n; the segment starts at the
    // previous anchor, or at the origin for n below the first anchor.
    const double right_n = static_cast<double>(it->n);
    const double right_s = it->score;
    double left_n = 0.0;
    double left_s = 0.0;
    if (it != anchors_.begin()) {
        const Anchor& prev = *(it - 1);
        left_n = static_cast<double>(prev.n);
        left_s = prev.score;
    }
    const double t = (static_cast<double>(n) - left_n) / (right_n - left_n);
    return left_s + (right_s - left_s) * t;
}

std::int64_t GroundTruthCurve::min_required(double target) const {
    if (target > max_score_) {
        throw UnreachableError("target " + std::to_string(target) +
                               " above best curve score " +
                               std::to_string(max_score_));
    }

    // Walk segments in order; the first whose right end reaches the target
    // contains the first crossing (a linear piece has no interior maximum).
    double left_n = 0.0;
    double left_s = 0.0;
    for (const Anchor& a : anchors_) {
        if (left_s >= target) {
            return static_cast<std::int64_t>(std::llround(left_n));
        }
        if (a.score >= target) {
            const std::int64_t lo = static_cast<std::int64_t>(std::llround(left_n));
            const std::int64_t hi = a.n;
            // Closed-form first guess, then exact correction against value().
            const double slope = (a.score - left_s) / (static_cast<double>(hi) - left_n);
            std::int64_t guess =
                lo + static_cast<std::int64_t>(std::ceil((target - left_s) / slope));
            guess = std::clamp(guess, lo + 1, hi);
            while (guess > lo + 1 && value(guess - 1) >= target) --guess;
            while (guess < hi && value(guess) < target) ++guess;
            return guess;
        }
        left_n = static_cast<double>(a.n);
        left_s = a.score;
    }
    if (left_s >= target) {
        return static_cast<std::int64_t>(std::llround(left_n));
    }
    throw UnreachableError("target not reached by any size");
}

GroundTruthCurve synthesize(CurveFamily family, const Params& params,
                            const std::vector<std::int64_t>& sizes,
                            double noise_sd, std::uint64_t seed,
                            CurveMode mode) {
    if (sizes.empty()) throw InvalidDataError("synthesize: no sizes given");
    if (noise_sd < 0.0) throw InvalidDataError("synthesize: negative noise_sd");

    std::mt19937_64 rng(seed);
    auto gaussian = [&rng]() {
        // Box-Muller on mt19937_64 output keeps the stream portable.
        const double u1 =
            (static_cast<double>(rng() >> 11) + 1.0) / 9007199254740993.0;
        const double u2 = static_cast<double>(rng() >> 11) / 9007199254740992.0;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    };

    std::vector<Anchor> anchors;
    anchors.reserve(sizes.size());
    double running_max = 0.0;
    for (std::int64_t n : sizes) {
        double s = evaluate(family, params, static_cast<double>(n));
        if (noise_sd > 0.0) s += noise_sd * gaussian();
        s = std::clamp(s, 0.0, 100.0);
        if (mode == CurveMode::Monotone) {
            running_max = std::max(running_max, s);
            s = running_max;
        }
        anchors.push_back(Anchor{n, s});
    }
    return GroundTruthCurve(std::move(anchors), mode);
}

} // namespace datareq
