#include "datareq/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace datareq {

namespace {

constexpr double kUndefinedResidual = 1e6;
constexpr double kDampingOverflow = 1e12;

// Residual of point i: sqrt(w_i) * (score_i - model(n_i)), with the fixed
// penalty standing in where the model is undefined or non-finite.
void residuals(CurveFamily family, const Params& p,
               const std::vector<Observation>& pts,
               const std::vector<double>& sqrt_w, std::vector<double>& out) {
    out.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r;
        try {
            const double predicted = evaluate(family, p, static_cast<double>(pts[i].n));
            r = std::isfinite(predicted) ? pts[i].score - predicted
                                         : kUndefinedResidual;
        } catch (const DomainError&) {
            r = kUndefinedResidual;
        }
        out[i] = sqrt_w[i] * r;
    }
}

double sum_squares(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

Params nudged(const Params& p, int k, double delta) {
    Params q = p;
    if (k == 0) q.theta1 += delta;
    if (k == 1) q.theta2 += delta;
    if (k == 2) q.theta3 += delta;
    return q;
}

double component(const Params& p, int k) {
    return k == 0 ? p.theta1 : (k == 1 ? p.theta2 : p.theta3);
}

// Gaussian elimination with partial pivoting on the 3x3 normal equations.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        }
        if (a[pivot][col] == 0.0 || !std::isfinite(a[pivot][col])) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int j = col; j < 3; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = b[row];
        for (int j = row + 1; j < 3; ++j) s -= a[row][j] * x[j];
        x[row] = s / a[row][row];
        if (!std::isfinite(x[row])) return false;
    }
    return true;
}

} // namespace

RegressionSet::RegressionSet(std::vector<Observation> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw InvalidDataError("regression set needs at least 2 points");
    }
    std::int64_t prev_n = 0;
    for (const Observation& pt : points_) {
        if (pt.n < 1) throw InvalidDataError("regression set sizes must be >= 1");
        if (pt.n <= prev_n) {
            throw InvalidDataError("regression set sizes must be strictly increasing");
        }
        if (!std::isfinite(pt.score)) {
            throw InvalidDataError("regression set scores must be finite");
        }
        prev_n = pt.n;
    }
}

void RegressionSet::append(Observation point) {
    if (point.n <= max_n()) {
        throw InvalidDataError("appended size must exceed the current maximum");
    }
    if (!std::isfinite(point.score)) {
        throw InvalidDataError("appended score must be finite");
    }
    points_.push_back(point);
}

std::vector<double> weights(const RegressionSet& set, double weight_base) {
    if (weight_base < 1.0) {
        throw InvalidDataError("weight_base must be >= 1");
    }
    std::vector<double> w(set.size());
    double cur = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = cur;
        cur *= weight_base;
    }
    return w;
}

double weighted_sse(CurveFamily family, const Params& params,
                    const RegressionSet& set, double weight_base) {
    const std::vector<double> w = weights(set, weight_base);
    std::vector<double> sqrt_w(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) sqrt_w[i] = std::sqrt(w[i]);
    std::vector<double> r;
    residuals(family, params, set.points(), sqrt_w, r);
    return sum_squares(r);
}

FittedModel fit(CurveFamily family, const RegressionSet& set,
                const FitConfig& cfg, const FitObserver& observer) {
    if (cfg.max_iterations < 1 || cfg.initial_damping <= 0.0 ||
        cfg.damping_up <= 1.0 || cfg.damping_down <= 0.0 ||
        cfg.damping_down >= 1.0 || cfg.convergence_tol <= 0.0) {
        throw InvalidDataError("fit config values out of range");
    }

    const std::vector<Observation>& pts = set.points();
    const std::vector<double> w = weights(set, cfg.weight_base);
    std::vector<double> sqrt_w(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) sqrt_w[i] = std::sqrt(w[i]);

    Params theta = initial_params(family);
    std::vector<double> r;
    residuals(family, theta, pts, sqrt_w, r);
    double sse = sum_squares(r);
    if (!std::isfinite(sse)) {
        throw FitError("initial objective not finite for family " +
                       family_name(family));
    }

    double damping = cfg.initial_damping;
    bool converged = false;
    int iterations = 0;
    std::vector<double> r_plus, r_minus, r_trial;

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        iterations = iter;

        // Central-difference Jacobian of the weighted residual vector.
        std::array<std::vector<double>, 3> jac;
        for (int k = 0; k < 3; ++k) {
            const double h = std::max(1e-6, 1e-6 * std::fabs(component(theta, k)));
            residuals(family, nudged(theta, k, +h), pts, sqrt_w, r_plus);
            residuals(family, nudged(theta, k, -h), pts, sqrt_w, r_minus);
            jac[k].resize(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) {
                jac[k][i] = (r_plus[i] - r_minus[i]) / (2.0 * h);
            }
        }

        // Normal equations: (J^T J + damping * diag(J^T J)) delta = -J^T r.
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < pts.size(); ++i) s += jac[a][i] * jac[b][i];
                jtj[a][b] = s;
                jtj[b][a] = s;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) s += jac[a][i] * r[i];
            jtr[a] = s;
        }

        bool accepted = false;
        while (true) {
            std::array<std::array<double, 3>, 3> m = jtj;
            for (int k = 0; k < 3; ++k) {
                m[k][k] += damping * std::max(jtj[k][k], 1e-12);
            }
            std::array<double, 3> delta{};
            std::array<double, 3> rhs = {-jtr[0], -jtr[1], -jtr[2]};
            const bool solved = solve3(m, rhs, delta);

            if (solved) {
                Params trial = theta;
                trial.theta1 += delta[0];
                trial.theta2 += delta[1];
                trial.theta3 += delta[2];
                residuals(family, trial, pts, sqrt_w, r_trial);
                const double trial_sse = sum_squares(r_trial);
                if (std::isfinite(trial_sse) && trial_sse < sse) {
                    const double rel_change = (sse - trial_sse) / std::max(sse, 1e-300);
                    theta = trial;
                    r.swap(r_trial);
                    sse = trial_sse;
                    damping *= cfg.damping_down;
                    if (observer) observer(iter, sse);
                    if (rel_change <= cfg.convergence_tol) converged = true;
                    accepted = true;
                    break;
                }
            }
            damping *= cfg.damping_up;
            if (damping > kDampingOverflow) break;
        }

        if (!accepted || converged) break;
    }

    return FittedModel{family, theta, sse, converged, iterations};
}

FitAllResult fit_all(const RegressionSet& set, const FitConfig& cfg) {
    FitAllResult result;
    for (CurveFamily family : kAllFamilies) {
        try {
            result.models.emplace(family, fit(family, set, cfg));
        } catch (const FitError& e) {
            // Bad config or a bad set would fail every family identically and
            // propagates instead; only genuine fit failures are per-family.
            result.failures.emplace(family, e.what());
        }
    }
    if (result.models.empty()) {
        throw AllFitsFailedError("all curve families failed to fit");
    }
    return result;
}

} // namespace datareq
